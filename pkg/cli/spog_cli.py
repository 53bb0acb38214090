"""
spog_cli.py - command-line frontend.

Run from the project root:

    python -m cli.spog_cli validate data/boolean3.arr
    python -m cli.spog_cli saito data/braid2.arr data/braid2.der
    python -m cli.spog_cli spog data/generic4.arr data/generic4.der --format json
    python -m cli.spog_cli minors data/boolean3.arr data/boolean3.der
    python -m cli.spog_cli oracle min-gens data/generic4.arr
    python -m cli.spog_cli conjectures generic-ideal data/generic4.arr
    python -m cli.spog_cli spog data/ --jobs 4        # every *.arr in a folder

Reports go to stdout, logs to stderr and logs/project_log.log.

Exit codes: 0 positive verdict, 1 negative or inconclusive verdict,
2 usage or parse error, 3 contract violation.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

import argparse
import io
import json
import pathlib
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, TextIO

# Imports from external packages
import pandas as pd

# Imports from local modules
from algebra.poly_grammar import format_polynomial
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation, require_homogeneous
from arrangements.minors import coefficients_from_profiles, minor_profiles
from checkers.certificates import MinorTable, certificate_to_dict, loads, verify_certificate
from checkers.conjectures import explore_conjecture_generic_ideal, explore_conjecture_resolution_shape
from checkers.criteria import SaitoCertificate, SpogCertificate, check_saito, check_spog
from cli.batch import batch_exit_code, run_batch
from oracle.graded_oracle import (
    default_degree_bound,
    graded_dimensions,
    minimal_generators,
    submodule_generates,
    syzygy_space,
)
from utils.utils_config import OUTPUT_FORMATS, get_default_jobs, get_default_output_format
from utils.utils_errors import EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_USAGE, SpogcheckError, UsageError
from utils.utils_files import (
    arrangement_files,
    load_arrangement,
    load_derivations,
    read_text,
    sibling_derivation_file,
)
from utils.utils_logger import configure_logger, logger

ORACLE_SUBCOMMANDS = ("dims", "min-gens", "syzygies", "generates")
CONJECTURE_SUBCOMMANDS = ("resolution-shape", "generic-ideal")
NEEDS_DERIVATIONS = {"saito", "spog", "minors"}

#####################################
# Job Specification
#####################################


@dataclass(frozen=True)
class JobSpec:
    command: str
    arrangement: pathlib.Path
    derivations: Optional[pathlib.Path] = None
    max_degree: Optional[int] = None
    output_format: str = "text"
    subcommand: Optional[str] = None
    assume_pd1: bool = False
    oracle_verify: bool = False

    def __post_init__(self) -> None:
        if self.max_degree is not None and self.max_degree < 0:
            raise UsageError(f"--max-degree must be non-negative, got {self.max_degree}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"unknown output format '{self.output_format}'")

    @property
    def wants_json(self) -> bool:
        return self.output_format == "json"


@dataclass(frozen=True)
class JobResult:
    spec: JobSpec
    exit_code: int
    output: str
    error: Optional[str] = None


#####################################
# Text Helpers
#####################################


def _derivation_text(theta: Derivation) -> str:
    return "(" + ", ".join(format_polynomial(c) for c in theta.components) + ")"


def _emit_json(out: TextIO, data: Any) -> None:
    out.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _emit_table(out: TextIO, rows: list[dict[str, Any]]) -> None:
    out.write(pd.DataFrame(rows).to_string(index=False) + "\n")


def _load_inputs(spec: JobSpec, required: bool) -> tuple[Arrangement, list[Derivation]]:
    arrangement = load_arrangement(spec.arrangement).validate()
    if spec.derivations is None:
        if required:
            raise UsageError(f"'{spec.command}' needs a derivation file")
        return arrangement, []
    return arrangement, load_derivations(spec.derivations, arrangement.nvars)


def _render_saito(cert: SaitoCertificate, out: TextIO, indent: str = "") -> None:
    out.write(f"{indent}verdict: {cert.verdict.value}\n")
    if cert.constant is not None:
        out.write(f"{indent}constant c = {cert.constant}\n")
    out.write(f"{indent}exponents: {cert.exponents}\n")
    out.write(f"{indent}det M = {format_polynomial(cert.determinant)}\n")
    match = "yes" if cert.degree_sum_matches else "no"
    out.write(f"{indent}degree sum {cert.degree_sum} = |A| = {cert.arrangement.size}: {match}\n")


def _render_spog(cert: SpogCertificate, out: TextIO) -> None:
    verdict = cert.verdict.value + (f"({cert.fail_reason.value})" if cert.fail_reason else "")
    out.write(f"verdict: {verdict}\n")
    if cert.pivot is not None:
        out.write(f"pivot: #{cert.pivot + 1} (linear coefficient {format_polynomial(cert.coefficients[cert.pivot])})\n")
    out.write(f"degrees: {cert.degrees}\n")
    for i, g in enumerate(cert.coefficients, start=1):
        out.write(f"  g_{i} = {format_polynomial(g)}\n")
    terms = " + ".join(f"({format_polynomial(g)})*θ{i}" for i, g in enumerate(cert.coefficients, start=1) if g)
    out.write(f"relation: {terms} = 0\n")
    out.write(f"relation degree: {cert.relation_degree}\n")
    out.write(f"primitive relation: {'yes' if cert.primitive else 'no'}\n")
    out.write(f"pd <= 1 basis: {cert.pd_basis}\n")
    if cert.modulo is not None:
        divisor = f" h = {format_polynomial(cert.modulo.divisor)}" if cert.modulo.divisor is not None else ""
        out.write(f"modulo test: {cert.modulo.outcome.value}{divisor}\n")
        out.write(f"  reading: {cert.modulo.interpretation}\n")
    if cert.saito is not None:
        out.write(f"Saito on the rows without #{cert.saito_omitted_row + 1}:\n")
        _render_saito(cert.saito, out, indent="  ")
    if cert.oracle is not None:
        o = cert.oracle
        out.write(f"oracle up to degree {o.d_max}: generates={o.generates}, minimal={o.minimal}, "
                  f"relation degree {o.relation_degree} with syzygy dimension {o.syzygy_dimension}\n")


#####################################
# Commands
#####################################


def cmd_validate(spec: JobSpec, out: TextIO) -> int:
    """Print Q(A), |A| and essentiality; exit 0 for any valid arrangement."""
    arrangement = load_arrangement(spec.arrangement).validate()
    q = format_polynomial(arrangement.defining_polynomial)
    essential = arrangement.is_essential()
    if spec.wants_json:
        _emit_json(out, {
            "kind": "validate",
            "vars": arrangement.nvars,
            "size": arrangement.size,
            "defining_polynomial": q,
            "essential": essential,
            "hyperplanes": [str(h) for h in arrangement.hyperplanes],
        })
    else:
        out.write(f"Q = {q}, |A| = {arrangement.size}\n")
        out.write(f"ℓ = {arrangement.nvars}, essential: {'yes' if essential else 'no'}\n")
    return EXIT_POSITIVE


def cmd_saito(spec: JobSpec, out: TextIO) -> int:
    """Saito report or certificate; exit 0 when Free, 1 when NotConclusive."""
    arrangement, thetas = _load_inputs(spec, required=True)
    cert = check_saito(arrangement, thetas)
    if spec.wants_json:
        _emit_json(out, certificate_to_dict(cert))
    else:
        _render_saito(cert, out)
    return EXIT_POSITIVE if cert.is_free else EXIT_NEGATIVE


def cmd_spog(spec: JobSpec, out: TextIO) -> int:
    """
    Run the SPOG check for one arrangement and its ℓ+1 derivations.

    Args:
        spec (JobSpec): Input paths plus --assume-pd1, --oracle-verify and --max-degree.
        out (TextIO): Where the report or JSON certificate is written.

    Returns:
        int: 0 for SPOG, 1 for SPOGConditionalOnPd1 or Fail.
    """
    arrangement, thetas = _load_inputs(spec, required=True)
    cert = check_spog(
        arrangement,
        thetas,
        pd1_assumed=spec.assume_pd1,
        oracle_verify=spec.oracle_verify,
        d_max=spec.max_degree,
    )
    if spec.wants_json:
        _emit_json(out, certificate_to_dict(cert))
    else:
        _render_spog(cert, out)
    return EXIT_POSITIVE if cert.is_positive else EXIT_NEGATIVE


def cmd_minors(spec: JobSpec, out: TextIO) -> int:
    """Print the maximal-minor table, with the relation coefficients for ℓ+1 rows."""
    arrangement, thetas = _load_inputs(spec, required=True)
    profiles = minor_profiles(thetas, arrangement)
    if spec.wants_json:
        _emit_json(out, certificate_to_dict(MinorTable(arrangement, tuple(thetas), tuple(profiles))))
    else:
        out.write(f"Q = {format_polynomial(arrangement.defining_polynomial)}\n")
        _emit_table(out, [
            {"I": p.label, "σ(I)": p.sign_exponent, "Δ_I": format_polynomial(p.minor),
             "g_I": format_polynomial(p.coefficient)}
            for p in profiles
        ])
        if len(thetas) == arrangement.nvars + 1:
            gs = coefficients_from_profiles(profiles, len(thetas), arrangement.nvars)
            out.write("relation coefficients g = (" + ", ".join(format_polynomial(g) for g in gs) + ")\n")
    return EXIT_POSITIVE


def cmd_oracle(spec: JobSpec, out: TextIO) -> int:
    """Dispatch the dims, min-gens, syzygies and generates oracle subcommands."""
    arrangement, thetas = _load_inputs(spec, required=spec.subcommand == "generates")
    sub = spec.subcommand

    if sub == "dims":
        d_max = spec.max_degree if spec.max_degree is not None else arrangement.size
        dims = graded_dimensions(arrangement, d_max)
        if spec.wants_json:
            _emit_json(out, {"kind": "oracle-dims", "d_max": d_max, "dimensions": dims})
        else:
            _emit_table(out, [{"d": d, "dim D(A)_d": n} for d, n in enumerate(dims)])
        return EXIT_POSITIVE

    if sub == "min-gens":
        d_max = spec.max_degree if spec.max_degree is not None else arrangement.size
        gens = minimal_generators(arrangement, max(d_max, 1))
        if spec.wants_json:
            _emit_json(out, {
                "kind": "oracle-min-gens",
                "d_max": gens.d_max,
                "degrees": list(gens.degrees),
                "blocks": [
                    {"degree": b.degree, "count": b.count,
                     "representatives": [[format_polynomial(c) for c in g.components] for g in b.representatives]}
                    for b in gens.blocks
                ],
            })
        else:
            out.write(f"generator degrees (up to degree {gens.d_max}): {', '.join(map(str, gens.degrees))}\n")
            for b in gens.blocks:
                out.write(f"degree {b.degree}: {b.count}\n")
                for g in b.representatives:
                    out.write(f"  {_derivation_text(g)}\n")
        return EXIT_POSITIVE

    if sub == "syzygies":
        if not thetas:
            thetas = list(minimal_generators(arrangement, arrangement.size).generators)
        degrees = require_homogeneous(thetas)
        d_max = spec.max_degree if spec.max_degree is not None else max(degrees) + 1
        spaces = {d: syzygy_space(thetas, d) for d in range(d_max + 1)}
        spaces = {d: basis for d, basis in spaces.items() if basis}
        if spec.wants_json:
            _emit_json(out, {
                "kind": "oracle-syzygies",
                "d_max": d_max,
                "degrees": degrees,
                "syzygies": {str(d): [[format_polynomial(f) for f in syz] for syz in basis]
                             for d, basis in spaces.items()},
            })
        else:
            out.write(f"generator degrees: {tuple(degrees)}\n")
            if not spaces:
                out.write(f"no syzygies up to degree {d_max}\n")
            for d, basis in spaces.items():
                out.write(f"degree {d}: dimension {len(basis)}\n")
                for syz in basis:
                    out.write("  (" + ", ".join(format_polynomial(f) for f in syz) + ")\n")
        return EXIT_POSITIVE

    if sub == "generates":
        report = submodule_generates(arrangement, thetas, spec.max_degree)
        if spec.wants_json:
            _emit_json(out, {
                "kind": "oracle-generates",
                "d_max": report.d_max,
                "generates": report.generates,
                "first_failing_degree": report.first_failing_degree,
                "span_dimensions": list(report.span_dimensions),
                "space_dimensions": list(report.space_dimensions),
            })
        elif report.generates:
            out.write(f"generates up to degree {report.d_max}: yes\n")
        else:
            out.write(f"generates up to degree {report.d_max}: no (first failing degree "
                      f"{report.first_failing_degree})\n")
        return EXIT_POSITIVE if report.generates else EXIT_NEGATIVE

    raise UsageError(f"unknown oracle subcommand '{sub}'")


def cmd_conjectures(spec: JobSpec, out: TextIO) -> int:
    """Exploratory reports; always exit 0 unless the input is rejected."""
    arrangement, thetas = _load_inputs(spec, required=False)
    if spec.subcommand == "resolution-shape":
        report = explore_conjecture_resolution_shape(arrangement, d_max=spec.max_degree)
        if spec.wants_json:
            _emit_json(out, {
                "kind": "conjecture-resolution-shape",
                "outcome": report.outcome.value,
                "d_max": report.d_max,
                "generator_degrees": list(report.generator_degrees),
                "relation_degrees": list(report.relation_degrees),
                "note": report.note,
            })
        else:
            out.write(f"resolution shape up to degree {report.d_max}: {report.outcome.value}\n")
            out.write(f"generator degrees {report.generator_degrees}, relation degrees {report.relation_degrees}\n")
            out.write(f"{report.note}\n")
        return EXIT_POSITIVE

    if spec.subcommand == "generic-ideal":
        report = explore_conjecture_generic_ideal(arrangement, thetas or None, spec.max_degree)
        frame = report.to_frame()
        if spec.wants_json:
            _emit_json(out, {
                "kind": "conjecture-generic-ideal",
                "k": report.k,
                "d_max": report.d_max,
                "generators": report.generator_count,
                "minors": report.minor_count,
                "agrees": report.agrees,
                "rows": [
                    {"degree": r.degree, "observed": r.observed, "predicted": r.predicted, "agrees": r.agrees}
                    for r in report.rows
                ],
            })
        else:
            out.write(f"k = {report.k}, {report.minor_count} nonzero minors from {report.generator_count} generators\n")
            out.write(frame.to_string(index=False) + "\n")
            out.write(f"agreement in every degree up to {report.d_max}: {'yes' if report.agrees else 'no'}\n")
        return EXIT_POSITIVE

    raise UsageError(f"unknown conjecture '{spec.subcommand}'")


def cmd_verify_cert(path: pathlib.Path, output_format: str, out: TextIO) -> int:
    """Re-verify a JSON certificate; exit 0 when every check passes."""
    result = verify_certificate(loads(read_text(path, "certificate")))
    if output_format == "json":
        _emit_json(out, {"kind": result.kind, "ok": result.ok,
                         "checks": [{"name": n, "passed": p} for n, p in result.checks]})
    else:
        for name, passed in result.checks:
            out.write(f"[{'ok' if passed else 'FAIL'}] {name}\n")
        out.write(f"certificate {'verified' if result.ok else 'REJECTED'}\n")
    return EXIT_POSITIVE if result.ok else EXIT_NEGATIVE


COMMANDS: dict[str, Callable[[JobSpec, TextIO], int]] = {
    "validate": cmd_validate,
    "saito": cmd_saito,
    "spog": cmd_spog,
    "minors": cmd_minors,
    "oracle": cmd_oracle,
    "conjectures": cmd_conjectures,
}


def run_job(spec: JobSpec) -> JobResult:
    """Run one job, capturing its report; errors become exit codes."""
    out = io.StringIO()
    try:
        code = COMMANDS[spec.command](spec, out)
    except SpogcheckError as e:
        logger.error(f"{spec.command} {spec.arrangement}: {e}")
        return JobResult(spec, e.exit_code, out.getvalue(), str(e))
    return JobResult(spec, code, out.getvalue())


#####################################
# Argument Parsing
#####################################


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=get_default_output_format(),
                        help="report format (default from SPOGCHECK_OUTPUT_FORMAT or text)")
    common.add_argument("--max-degree", type=int, default=None, metavar="D",
                        help="degree bound for oracle computations")
    common.add_argument("--jobs", type=int, default=get_default_jobs(), metavar="N",
                        help="worker processes when the arrangement argument is a folder")
    common.add_argument("--log-level", default=None, help="override SPOGCHECK_LOG_LEVEL")

    parser = argparse.ArgumentParser(
        prog="spogcheck",
        description="Certify freeness and SPOG generation of logarithmic derivation modules.",
    )
    subparsers = parser.add_subparsers(
        dest="command", required=True, metavar="{validate,saito,spog,minors,oracle,conjectures}"
    )

    p = subparsers.add_parser("validate", parents=[common], help="validate an arrangement file")
    p.add_argument("arrangement", type=pathlib.Path)

    for name, text in (("saito", "Saito's criterion for ℓ derivations"),
                       ("minors", "signed maximal minors and their coefficients")):
        p = subparsers.add_parser(name, parents=[common], help=text)
        p.add_argument("arrangement", type=pathlib.Path)
        p.add_argument("derivations", type=pathlib.Path, nargs="?")

    p = subparsers.add_parser("spog", parents=[common], help="SPOG criterion for ℓ+1 derivations")
    p.add_argument("arrangement", type=pathlib.Path)
    p.add_argument("derivations", type=pathlib.Path, nargs="?")
    p.add_argument("--assume-pd1", action="store_true", help="take pd D(A) <= 1 as given (ℓ > 3)")
    p.add_argument("--oracle-verify", action="store_true", help="cross-check with the graded oracle")

    p = subparsers.add_parser("oracle", parents=[common], help="graded linear-algebra oracle")
    p.add_argument("subcommand", choices=ORACLE_SUBCOMMANDS)
    p.add_argument("arrangement", type=pathlib.Path)
    p.add_argument("derivations", type=pathlib.Path, nargs="?")

    p = subparsers.add_parser("conjectures", parents=[common], help="exploratory conjecture reports")
    p.add_argument("subcommand", choices=CONJECTURE_SUBCOMMANDS)
    p.add_argument("arrangement", type=pathlib.Path)
    p.add_argument("derivations", type=pathlib.Path, nargs="?")

    p = subparsers.add_parser("verify-cert", parents=[common])
    p.add_argument("certificate", type=pathlib.Path)
    return parser


def _spec_from_args(args: argparse.Namespace, arrangement: pathlib.Path,
                    derivations: Optional[pathlib.Path]) -> JobSpec:
    return JobSpec(
        command=args.command,
        arrangement=arrangement,
        derivations=derivations,
        max_degree=args.max_degree,
        output_format=args.format,
        subcommand=getattr(args, "subcommand", None),
        assume_pd1=getattr(args, "assume_pd1", False),
        oracle_verify=getattr(args, "oracle_verify", False),
    )


def _run_folder(args: argparse.Namespace) -> int:
    files = arrangement_files(args.arrangement)
    specs = []
    for path in files:
        sibling = sibling_derivation_file(path)
        derivations = sibling if sibling.exists() else None
        if derivations is None and args.command in NEEDS_DERIVATIONS:
            logger.warning(f"skipping {path.name}: no {sibling.name}")
            continue
        specs.append(_spec_from_args(args, path, derivations))
    if not specs:
        raise UsageError(f"nothing to run in {args.arrangement}")
    results = run_batch(specs, run_job, max(args.jobs, 1))
    if args.format == "json":
        _emit_json(sys.stdout, [
            {"file": r.spec.arrangement.name, "exit_code": r.exit_code,
             "report": json.loads(r.output) if r.output.strip() else None, "error": r.error}
            for r in results
        ])
    else:
        for r in results:
            sys.stdout.write(f"== {r.spec.arrangement.name} (exit {r.exit_code}) ==\n{r.output}")
            if r.error:
                sys.stdout.write(f"error: {r.error}\n")
    return batch_exit_code([r.exit_code for r in results])


#####################################
# Main Function
#####################################


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for the command line.

    - Parses arguments and applies --log-level.
    - Runs one job, or one job per .arr file when given a folder.
    - Writes reports to stdout and returns the exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_POSITIVE
    if args.log_level:
        configure_logger(args.log_level.upper())
    logger.debug(f"spogcheck {args.command}: format={args.format}, max_degree={args.max_degree}, jobs={args.jobs}")

    try:
        if args.command == "verify-cert":
            return cmd_verify_cert(args.certificate, args.format, sys.stdout)
        if args.arrangement.is_dir():
            return _run_folder(args)
        spec = _spec_from_args(args, args.arrangement, getattr(args, "derivations", None))
    except SpogcheckError as e:
        logger.error(str(e))
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code

    result = run_job(spec)
    sys.stdout.write(result.output)
    if result.error:
        sys.stderr.write(f"error: {result.error}\n")
    return result.exit_code


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    sys.exit(main())
