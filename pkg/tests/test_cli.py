from __future__ import annotations

import json
import shutil

import pytest

from cli.batch import batch_exit_code, run_batch
from cli.spog_cli import JobSpec, build_parser, main, run_job
from utils.utils_errors import EXIT_CONTRACT, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_USAGE, UsageError

PLANE_TRIPLE_DER = """\
vars: 2

d1: x1
d2: 0

d1: 0
d2: x1*x2

d1: 0
d2: x2
"""


@pytest.fixture
def run(capsys):
    def invoke(*argv: str) -> tuple[int, str]:
        code = main([str(a) for a in argv])
        return code, capsys.readouterr().out

    return invoke


@pytest.fixture
def plane_triple(tmp_path):
    arrangement = tmp_path / "xy.arr"
    arrangement.write_text("vars: 2\nx1\nx2\n", encoding="utf-8")
    derivations = tmp_path / "xy.der"
    derivations.write_text(PLANE_TRIPLE_DER, encoding="utf-8")
    return arrangement, derivations


def test_validate(run, data_dir):
    code, out = run("validate", data_dir / "boolean3.arr")
    assert code == EXIT_POSITIVE
    assert "Q = x1*x2*x3, |A| = 3" in out
    assert "ℓ = 3, essential: yes" in out


def test_validate_json(run, data_dir):
    code, out = run("validate", data_dir / "braid2.arr", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_POSITIVE
    assert data["kind"] == "validate"
    assert (data["vars"], data["size"]) == (2, 3)


def test_saito_exit_codes(run, data_dir):
    code, out = run("saito", data_dir / "braid2.arr", data_dir / "braid2.der")
    assert code == EXIT_POSITIVE
    assert "verdict: Free" in out
    assert "constant c = -1" in out

    code, out = run("saito", data_dir / "braid2.arr", data_dir / "braid2_q.der")
    assert code == EXIT_NEGATIVE
    assert "verdict: NotConclusive" in out


def test_spog_positive(run, data_dir):
    code, out = run("spog", data_dir / "generic4.arr", data_dir / "generic4.der")
    assert code == EXIT_POSITIVE
    assert "verdict: SPOG" in out
    assert "pivot: #2 (linear coefficient x3)" in out
    assert "relation degree: 3" in out


def test_spog_json(run, data_dir):
    code, out = run("spog", data_dir / "generic4.arr", data_dir / "generic4.der", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_POSITIVE
    assert data["kind"] == "spog"
    assert data["coefficients"] == ["-x1*x2 - x1*x3 - x2*x3", "x3", "x1", "x2"]


def test_spog_negative(run, data_dir):
    code, out = run("spog", data_dir / "boolean3.arr", data_dir / "boolean3_plus.der")
    assert code == EXIT_NEGATIVE
    assert "verdict: Fail(SaitoApplies)" in out
    assert "Saito on the rows without #1:" in out


def test_spog_in_four_variables(run, data_dir):
    args = ("spog", data_dir / "generic4_x4.arr", data_dir / "generic4_x4.der")
    code, out = run(*args)
    assert code == EXIT_NEGATIVE
    assert "verdict: SPOGConditionalOnPd1" in out
    code, out = run(*args, "--assume-pd1")
    assert code == EXIT_POSITIVE
    assert "pd <= 1 basis: assumed by caller" in out


def test_spog_with_oracle_cross_check(run, data_dir):
    code, out = run("spog", data_dir / "generic4.arr", data_dir / "generic4.der", "--oracle-verify", "--max-degree", "4")
    assert code == EXIT_POSITIVE
    assert "oracle up to degree 4: generates=True, minimal=True" in out


def test_minors_prints_relation_coefficients(run, plane_triple):
    code, out = run("minors", *plane_triple)
    assert code == EXIT_POSITIVE
    assert "{1,3}" in out
    assert "relation coefficients g = (0, 1, -x1)" in out


def test_minors_json(run, plane_triple):
    code, out = run("minors", *plane_triple, "--format", "json")
    data = json.loads(out)
    assert [p["sign_exponent"] for p in data["profiles"]] == [0, 1, 2]
    assert data["relation_coefficients"] == ["0", "1", "-x1"]


def test_oracle_dims(run, data_dir):
    code, out = run("oracle", "dims", data_dir / "generic4.arr", "--format", "json")
    assert code == EXIT_POSITIVE
    assert json.loads(out) == {"kind": "oracle-dims", "d_max": 4, "dimensions": [0, 1, 6, 14, 25]}

    code, out = run("oracle", "dims", data_dir / "boolean3.arr", "--max-degree", "2")
    assert "dim D(A)_d" in out


def test_oracle_min_gens(run, data_dir):
    code, out = run("oracle", "min-gens", data_dir / "generic4.arr", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_POSITIVE
    assert data["degrees"] == [1, 2, 2, 2]
    assert [(b["degree"], b["count"]) for b in data["blocks"]] == [(1, 1), (2, 3)]


def test_oracle_syzygies(run, data_dir):
    code, out = run("oracle", "syzygies", data_dir / "generic4.arr", data_dir / "generic4.der", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_POSITIVE
    assert data["d_max"] == 3
    assert list(data["syzygies"]) == ["3"]
    assert len(data["syzygies"]["3"]) == 1


def test_oracle_generates(run, data_dir):
    code, out = run("oracle", "generates", data_dir / "generic4.arr", data_dir / "generic4.der")
    assert code == EXIT_POSITIVE
    assert "generates up to degree 6: yes" in out

    code, out = run("oracle", "generates", data_dir / "generic4.arr", data_dir / "generic4_saito.der")
    assert code == EXIT_NEGATIVE
    assert "first failing degree 2" in out


def test_conjecture_reports(run, data_dir):
    code, out = run("conjectures", "resolution-shape", data_dir / "boolean3.arr")
    assert code == EXIT_POSITIVE
    assert "resolution shape up to degree 4: vacuous" in out

    code, out = run("conjectures", "generic-ideal", data_dir / "generic4.arr")
    assert code == EXIT_POSITIVE
    assert out.startswith("k = 0, 4 nonzero minors from 4 generators")
    assert "agreement in every degree up to 8: no" in out


def test_usage_errors(run, data_dir, tmp_path):
    code, _ = run("saito", data_dir / "boolean3.arr")
    assert code == EXIT_USAGE
    code, _ = run("validate", tmp_path / "missing.arr")
    assert code == EXIT_USAGE
    code, _ = run("saito", data_dir / "generic4.arr", data_dir / "generic4.der")
    assert code == EXIT_USAGE
    code, _ = run("oracle", "dims", data_dir / "boolean3.arr", "--max-degree", "-1")
    assert code == EXIT_USAGE
    assert main(["bogus"]) == EXIT_USAGE
    assert main(["spog"]) == EXIT_USAGE


def test_contract_violations(run, data_dir, tmp_path):
    bad = tmp_path / "pair.arr"
    bad.write_text("vars: 2\nx1\n2*x1\n", encoding="utf-8")
    code, _ = run("validate", bad)
    assert code == EXIT_CONTRACT

    not_log = tmp_path / "not_log.der"
    not_log.write_text("vars: 2\nd1: x2\nd2: 0\n\nd1: x1\nd2: x2\n", encoding="utf-8")
    code, _ = run("saito", data_dir / "braid2.arr", not_log)
    assert code == EXIT_CONTRACT


def test_zero_variable_header_is_a_usage_error(run, tmp_path):
    empty_space = tmp_path / "z.arr"
    empty_space.write_text("vars: 0\n0\n", encoding="utf-8")
    code, _ = run("validate", empty_space)
    assert code == EXIT_USAGE

    result = run_job(JobSpec("validate", empty_space))
    assert result.exit_code == EXIT_USAGE
    assert "at least one variable" in result.error


def test_generic_ideal_rejects_non_homogeneous_generators(run, tmp_path):
    arrangement = tmp_path / "b.arr"
    arrangement.write_text("vars: 2\nx1\nx2\n", encoding="utf-8")
    derivations = tmp_path / "b.der"
    derivations.write_text("vars: 2\n\nd1: x1^2 + x1\nd2: 0\n\nd1: 0\nd2: x2\n", encoding="utf-8")
    code, _ = run("conjectures", "generic-ideal", arrangement, derivations)
    assert code == EXIT_CONTRACT


def test_help_hides_certificate_verification(capsys):
    assert main(["--help"]) == EXIT_POSITIVE
    out = capsys.readouterr().out
    assert "spog" in out
    assert "verify-cert" not in out


def test_verify_cert(run, data_dir, tmp_path):
    _, out = run("spog", data_dir / "generic4.arr", data_dir / "generic4.der", "--format", "json")
    cert = tmp_path / "generic4.json"
    cert.write_text(out, encoding="utf-8")
    code, out = run("verify-cert", cert)
    assert code == EXIT_POSITIVE
    assert "certificate verified" in out

    data = json.loads(cert.read_text(encoding="utf-8"))
    data["coefficients"][0] = "x1*x2"
    cert.write_text(json.dumps(data), encoding="utf-8")
    code, out = run("verify-cert", cert)
    assert code == EXIT_NEGATIVE
    assert "certificate REJECTED" in out

    cert.write_text("{", encoding="utf-8")
    code, _ = run("verify-cert", cert)
    assert code == EXIT_USAGE


def test_folder_batch(run, data_dir, tmp_path):
    shutil.copy(data_dir / "boolean3.arr", tmp_path / "boolean3.arr")
    shutil.copy(data_dir / "boolean3.der", tmp_path / "boolean3.der")
    shutil.copy(data_dir / "braid2.arr", tmp_path / "braid2.arr")
    shutil.copy(data_dir / "braid2_q.der", tmp_path / "braid2.der")
    shutil.copy(data_dir / "generic4.arr", tmp_path / "generic4.arr")

    code, out = run("saito", tmp_path, "--jobs", "1")
    assert code == EXIT_NEGATIVE
    assert "== boolean3.arr (exit 0) ==" in out
    assert "== braid2.arr (exit 1) ==" in out
    assert "generic4.arr" not in out

    code, out = run("validate", tmp_path, "--format", "json")
    reports = json.loads(out)
    assert code == EXIT_POSITIVE
    assert [r["file"] for r in reports] == ["boolean3.arr", "braid2.arr", "generic4.arr"]
    assert all(r["report"]["kind"] == "validate" for r in reports)


def test_empty_folder_is_a_usage_error(run, tmp_path):
    code, _ = run("validate", tmp_path)
    assert code == EXIT_USAGE


def test_run_job_captures_errors(data_dir):
    result = run_job(JobSpec("saito", data_dir / "boolean3.arr"))
    assert result.exit_code == EXIT_USAGE
    assert "needs a derivation file" in result.error
    assert result.output == ""


def test_job_spec_rejects_bad_values(data_dir):
    with pytest.raises(UsageError):
        JobSpec("validate", data_dir / "boolean3.arr", max_degree=-2)
    with pytest.raises(UsageError):
        JobSpec("validate", data_dir / "boolean3.arr", output_format="xml")


def test_batch_helpers():
    assert run_batch([1, 2, 3], abs, jobs=1) == [1, 2, 3]
    assert batch_exit_code([0, 3, 1]) == 3
    assert batch_exit_code([]) == 0


def test_parser_defaults():
    args = build_parser().parse_args(["oracle", "dims", "data/generic4.arr"])
    assert args.max_degree is None
    assert args.subcommand == "dims"
