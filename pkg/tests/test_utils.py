from __future__ import annotations

import random

import pytest

from arrangements.derivation import is_logarithmic
from cli.batch import batch_exit_code
from utils import utils_config
from utils.utils_errors import EXIT_CONTRACT, EXIT_USAGE, ContractViolation, SpogcheckError, UsageError
from utils.utils_files import arrangement_files, load_arrangement, read_text, sibling_derivation_file
from utils.utils_gen_instances import (
    has_full_rank,
    main as gen_main,
    random_arrangement,
    random_logarithmic_family,
    random_rational,
)
from utils.utils_logger import get_log_file_path, sanitize_message


def test_error_hierarchy():
    assert issubclass(UsageError, SpogcheckError) and issubclass(UsageError, ValueError)
    assert issubclass(ContractViolation, SpogcheckError) and issubclass(ContractViolation, ValueError)
    assert UsageError("x").exit_code == EXIT_USAGE
    assert ContractViolation("x").exit_code == EXIT_CONTRACT
    assert batch_exit_code([EXIT_USAGE, EXIT_CONTRACT]) == EXIT_CONTRACT


def test_config_defaults(monkeypatch):
    for key in ("SPOGCHECK_LOG_LEVEL", "SPOGCHECK_LOG_FILE", "SPOGCHECK_JOBS", "SPOGCHECK_OUTPUT_FORMAT"):
        monkeypatch.delenv(key, raising=False)
    assert utils_config.get_log_level() == "INFO"
    assert utils_config.get_log_file() == utils_config.DEFAULT_LOG_FILE
    assert utils_config.get_default_jobs() == 1
    assert utils_config.get_default_output_format() == "text"


def test_config_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("SPOGCHECK_LOG_LEVEL", " debug ")
    monkeypatch.setenv("SPOGCHECK_LOG_FILE", str(tmp_path / "run.log"))
    monkeypatch.setenv("SPOGCHECK_JOBS", "4")
    monkeypatch.setenv("SPOGCHECK_OUTPUT_FORMAT", "JSON")
    assert utils_config.get_log_level() == "DEBUG"
    assert utils_config.get_log_file() == tmp_path / "run.log"
    assert utils_config.get_default_jobs() == 4
    assert utils_config.get_default_output_format() == "json"


@pytest.mark.parametrize("raw, expected", [("zero", 1), ("0", 1), ("-3", 1)])
def test_bad_job_counts_fall_back(monkeypatch, raw, expected):
    monkeypatch.setenv("SPOGCHECK_JOBS", raw)
    assert utils_config.get_default_jobs() == expected


def test_unknown_output_format_falls_back(monkeypatch):
    monkeypatch.setenv("SPOGCHECK_OUTPUT_FORMAT", "yaml")
    assert utils_config.get_default_output_format() == "text"


def test_read_text_errors(tmp_path):
    with pytest.raises(UsageError):
        read_text(tmp_path / "nope.arr", "arrangement")
    binary = tmp_path / "binary.arr"
    binary.write_bytes(b"\xff\xfe\xfa")
    with pytest.raises(UsageError):
        read_text(binary)


def test_file_helpers(data_dir, tmp_path):
    assert sibling_derivation_file(data_dir / "generic4.arr") == data_dir / "generic4.der"
    names = [p.name for p in arrangement_files(data_dir)]
    assert names == sorted(names)
    assert "generic4.arr" in names
    with pytest.raises(UsageError):
        arrangement_files(tmp_path)


def test_sanitize_message_escapes_braces():
    message = sanitize_message({"message": "minor {1,3} is zero"})
    assert "{{1,3}}" in message
    assert get_log_file_path().suffix == ".log"


def test_random_rational_is_nonzero():
    rng = random.Random(0)
    values = [random_rational(rng) for _ in range(200)]
    assert all(v != 0 for v in values)
    assert all(v.denominator == 1 for v in (random_rational(rng, allow_fractions=False) for _ in range(50)))


def test_generators_are_seeded():
    first = random_arrangement(random.Random(5), 3, 6)
    second = random_arrangement(random.Random(5), 3, 6)
    assert first == second
    assert first.validate().size == 6
    with pytest.raises(ValueError):
        random_arrangement(random.Random(0), 3, 2)


def test_random_logarithmic_family(case):
    a, basis = case("braid2")
    family = random_logarithmic_family(random.Random(1), a, 3, basis, max_degree=3)
    assert len(family) == 3
    assert all(theta.is_homogeneous() and is_logarithmic(theta, a) for theta in family)
    assert has_full_rank(basis)


def test_instance_script_writes_a_loadable_file(tmp_path):
    out = tmp_path / "random" / "r.arr"
    assert gen_main(["--seed", "3", "--vars", "3", "--size", "5", "--out", str(out)]) == 0
    arrangement = load_arrangement(out).validate()
    assert (arrangement.nvars, arrangement.size) == (3, 5)
