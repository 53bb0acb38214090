"""
certificates.py - JSON form of certificates and their re-verification.

A certificate is self-contained: it carries the arrangement forms and the
input derivations as polynomial strings, so `verify_certificate` can
recompute every claim without any other file. Indices in JSON are
1-based; constants are rational strings such as "-1" or "3/2".
The schema is described in README.md.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Union

# Imports from local modules
from algebra.poly import LinearForm, Polynomial
from algebra.poly_grammar import format_polynomial, parse_polynomial
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation
from arrangements.minors import (
    MinorProfile,
    coefficients_from_profiles,
    minor_profiles,
    spog_coefficients,
    verify_syzygy,
)
from checkers.criteria import (
    PD1_ASSUMED,
    FailReason,
    ModuloDivisorReport,
    ModuloOutcome,
    OracleVerification,
    SaitoCertificate,
    SaitoVerdict,
    SpogCertificate,
    SpogVerdict,
    check_saito,
    check_spog,
    common_divisor_modulo,
    is_linear,
)
from utils.utils_errors import ContractViolation, UsageError
from utils.utils_logger import logger

SCHEMA_VERSION = 1


class CertificateFormatError(UsageError):
    """The JSON document is not a certificate this tool understands."""


@dataclass(frozen=True)
class MinorTable:
    arrangement: Arrangement
    derivations: tuple[Derivation, ...]
    profiles: tuple[MinorProfile, ...]


Certificate = Union[SaitoCertificate, SpogCertificate, MinorTable]

#####################################
# Encoding
#####################################


def _poly(f: Optional[Polynomial]) -> Optional[str]:
    return None if f is None else format_polynomial(f)


def _frac(c: Optional[Fraction]) -> Optional[str]:
    return None if c is None else str(c)


def _one_based(i: Optional[int]) -> Optional[int]:
    return None if i is None else i + 1


def _header(kind: str, arrangement: Arrangement, derivations: Sequence[Derivation]) -> dict[str, Any]:
    return {
        "kind": kind,
        "schema_version": SCHEMA_VERSION,
        "arrangement": {
            "vars": arrangement.nvars,
            "hyperplanes": [str(h) for h in arrangement.hyperplanes],
            "defining_polynomial": _poly(arrangement.defining_polynomial),
        },
        "derivations": [[_poly(c) for c in theta.components] for theta in derivations],
    }


def _saito_body(cert: SaitoCertificate) -> dict[str, Any]:
    return {
        "verdict": cert.verdict.value,
        "constant": _frac(cert.constant),
        "exponents": list(cert.exponents),
        "determinant": _poly(cert.determinant),
        "degree_sum": cert.degree_sum,
        "degree_sum_matches": cert.degree_sum_matches,
    }


def _modulo_dict(report: Optional[ModuloDivisorReport]) -> Optional[dict[str, Any]]:
    if report is None:
        return None
    return {
        "outcome": report.outcome.value,
        "divisor": _poly(report.divisor),
        "residues": [_poly(r) for r in report.residues],
        "pivot_variable": report.pivot_variable + 1,
        "interpretation": report.interpretation,
    }


def _oracle_dict(oracle: Optional[OracleVerification]) -> Optional[dict[str, Any]]:
    if oracle is None:
        return None
    return {
        "d_max": oracle.d_max,
        "generates": oracle.generates,
        "first_failing_degree": oracle.first_failing_degree,
        "minimal": oracle.minimal,
        "redundant_index": _one_based(oracle.redundant_index),
        "relation_degree": oracle.relation_degree,
        "syzygy_dimension": oracle.syzygy_dimension,
        "passed": oracle.passed,
    }


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    """
    JSON-ready form of a certificate.

    Args:
        cert (Certificate): A Saito, SPOG or minor-table certificate.

    Returns:
        dict: 1-based indices, rational strings and polynomials in the input grammar.
    """
    if isinstance(cert, SaitoCertificate):
        data = _header("saito", cert.arrangement, cert.derivations)
        data.update(_saito_body(cert))
        return data
    if isinstance(cert, SpogCertificate):
        data = _header("spog", cert.arrangement, cert.derivations)
        data.update({
            "verdict": cert.verdict.value,
            "fail_reason": cert.fail_reason.value if cert.fail_reason else None,
            "pivot": _one_based(cert.pivot),
            "coefficients": [_poly(g) for g in cert.coefficients],
            "degrees": list(cert.degrees),
            "relation_degree": cert.relation_degree,
            "relation": "sum g_i * theta_i = 0",
            "primitive": cert.primitive,
            "pd_basis": cert.pd_basis,
            "modulo": _modulo_dict(cert.modulo),
            "saito": _saito_body(cert.saito) if cert.saito else None,
            "saito_omitted_row": _one_based(cert.saito_omitted_row),
            "oracle": _oracle_dict(cert.oracle),
        })
        return data
    if isinstance(cert, MinorTable):
        data = _header("minors", cert.arrangement, cert.derivations)
        data["profiles"] = [
            {
                "indices": [i + 1 for i in p.indices],
                "sign_exponent": p.sign_exponent,
                "minor": _poly(p.minor),
                "coefficient": _poly(p.coefficient),
            }
            for p in cert.profiles
        ]
        nrows, nvars = len(cert.derivations), cert.arrangement.nvars
        if nrows == nvars + 1:
            data["relation_coefficients"] = [
                _poly(g) for g in coefficients_from_profiles(cert.profiles, nrows, nvars)
            ]
        return data
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def dumps(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2, sort_keys=True, ensure_ascii=False)


#####################################
# Decoding
#####################################


def _require(data: dict[str, Any], key: str) -> Any:
    if key not in data:
        raise CertificateFormatError(f"certificate is missing '{key}'")
    return data[key]


def _parse_header(data: dict[str, Any]) -> tuple[Arrangement, tuple[Derivation, ...]]:
    block = _require(data, "arrangement")
    nvars = int(_require(block, "vars"))
    arrangement = Arrangement(
        nvars,
        tuple(LinearForm.from_polynomial(parse_polynomial(h, nvars)) for h in _require(block, "hyperplanes")),
    )
    derivations = tuple(
        Derivation(tuple(parse_polynomial(c, nvars) for c in comps)) for comps in _require(data, "derivations")
    )
    return arrangement, derivations


def _parse_poly(text: Optional[str], nvars: int) -> Optional[Polynomial]:
    return None if text is None else parse_polynomial(text, nvars)


def _zero_based(i: Optional[int]) -> Optional[int]:
    return None if i is None else int(i) - 1


def _saito_from(data: dict[str, Any], arrangement: Arrangement, derivations: tuple[Derivation, ...]) -> SaitoCertificate:
    constant = data.get("constant")
    return SaitoCertificate(
        arrangement,
        derivations,
        SaitoVerdict(_require(data, "verdict")),
        None if constant is None else Fraction(constant),
        tuple(int(e) for e in _require(data, "exponents")),
        parse_polynomial(_require(data, "determinant"), arrangement.nvars),
    )


def _modulo_from(data: Optional[dict[str, Any]], nvars: int) -> Optional[ModuloDivisorReport]:
    if data is None:
        return None
    return ModuloDivisorReport(
        ModuloOutcome(data["outcome"]),
        _parse_poly(data.get("divisor"), nvars),
        tuple(parse_polynomial(r, nvars) for r in data["residues"]),
        int(data["pivot_variable"]) - 1,
        data.get("interpretation", ""),
    )


def _oracle_from(data: Optional[dict[str, Any]]) -> Optional[OracleVerification]:
    if data is None:
        return None
    return OracleVerification(
        data["d_max"],
        data["generates"],
        data["first_failing_degree"],
        data["minimal"],
        _zero_based(data["redundant_index"]),
        data["relation_degree"],
        data["syzygy_dimension"],
    )


def certificate_from_dict(data: dict[str, Any]) -> Certificate:
    """
    Rebuild a certificate from its JSON form without re-checking it.

    Args:
        data (dict): A decoded certificate document.

    Returns:
        Certificate: The parsed certificate with 0-based indices.

    Raises:
        CertificateFormatError: Missing keys, bad values or an unknown kind (exit 2).
    """
    try:
        kind = _require(data, "kind")
        arrangement, derivations = _parse_header(data)
        nvars = arrangement.nvars
        if kind == "saito":
            return _saito_from(data, arrangement, derivations)
        if kind == "spog":
            omitted = _zero_based(data.get("saito_omitted_row"))
            complement = derivations[:omitted] + derivations[omitted + 1:] if omitted is not None else ()
            return SpogCertificate(
                arrangement=arrangement,
                derivations=derivations,
                verdict=SpogVerdict(_require(data, "verdict")),
                coefficients=tuple(parse_polynomial(g, nvars) for g in _require(data, "coefficients")),
                degrees=tuple(int(d) for d in _require(data, "degrees")),
                relation_degree=data.get("relation_degree"),
                primitive=bool(data.get("primitive")),
                pd_basis=data.get("pd_basis", ""),
                fail_reason=FailReason(data["fail_reason"]) if data.get("fail_reason") else None,
                pivot=_zero_based(data.get("pivot")),
                modulo=_modulo_from(data.get("modulo"), nvars),
                saito=_saito_from(data["saito"], arrangement, complement) if data.get("saito") else None,
                saito_omitted_row=_zero_based(data.get("saito_omitted_row")),
                oracle=_oracle_from(data.get("oracle")),
            )
        if kind == "minors":
            profiles = tuple(
                MinorProfile(
                    tuple(int(i) - 1 for i in row["indices"]),
                    int(row["sign_exponent"]),
                    parse_polynomial(row["minor"], nvars),
                    parse_polynomial(row["coefficient"], nvars),
                )
                for row in _require(data, "profiles")
            )
            return MinorTable(arrangement, derivations, profiles)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, (CertificateFormatError, ContractViolation)):
            raise
        raise CertificateFormatError(f"malformed certificate: {e}") from e
    raise CertificateFormatError(f"unknown certificate kind '{kind}'")


def loads(text: str) -> Certificate:
    """Parse certificate JSON text; see certificate_from_dict."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise CertificateFormatError("a certificate must be a JSON object")
    return certificate_from_dict(data)


#####################################
# Re-verification
#####################################


@dataclass
class VerificationResult:
    kind: str
    checks: list[tuple[str, bool]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)

    def record(self, name: str, check: Callable[[], bool]) -> None:
        passed = bool(check())
        if not passed:
            logger.warning(f"certificate check failed: {name}")
        self.checks.append((name, passed))


def _verify_saito(cert: SaitoCertificate, result: VerificationResult, prefix: str = "") -> None:
    fresh = check_saito(cert.arrangement, cert.derivations)
    result.record(f"{prefix}determinant recomputed", lambda: fresh.determinant == cert.determinant)
    result.record(f"{prefix}verdict recomputed", lambda: fresh.verdict is cert.verdict)
    result.record(f"{prefix}exponents match degrees", lambda: fresh.exponents == cert.exponents)
    if cert.is_free:
        q = cert.arrangement.defining_polynomial
        result.record(f"{prefix}det = c·Q", lambda: cert.constant is not None and cert.constant != 0
                      and cert.determinant == q * cert.constant)


def verify_certificate(cert: Certificate) -> VerificationResult:
    """
    Recompute every claim in a parsed certificate.

    SPOG certificates are decided again from the embedded arrangement and
    derivations, with the same pd assumption and oracle bound they record.

    Args:
        cert (Certificate): The certificate to check.

    Returns:
        VerificationResult: One named check per claim; ok when all pass.
    """
    cert.arrangement.validate()
    if isinstance(cert, SaitoCertificate):
        result = VerificationResult("saito")
        _verify_saito(cert, result)
    elif isinstance(cert, SpogCertificate):
        result = VerificationResult("spog")
        result.record("relation combines to zero", lambda: verify_syzygy(cert.coefficients, cert.derivations))
        fresh = spog_coefficients(cert.derivations, cert.arrangement)
        result.record("coefficients recomputed from minors", lambda: fresh == cert.coefficients)
        rerun = check_spog(
            cert.arrangement,
            cert.derivations,
            pd1_assumed=cert.pd_basis == PD1_ASSUMED,
            oracle_verify=cert.oracle is not None,
            d_max=cert.oracle.d_max if cert.oracle is not None else None,
        )
        result.record("verdict recomputed", lambda: rerun.verdict is cert.verdict)
        result.record("fail reason recomputed", lambda: rerun.fail_reason is cert.fail_reason)
        result.record("pivot recomputed", lambda: rerun.pivot == cert.pivot)
        result.record("omitted row recomputed", lambda: rerun.saito_omitted_row == cert.saito_omitted_row)
        result.record("pd basis recomputed", lambda: rerun.pd_basis == cert.pd_basis)
        if cert.oracle is not None:
            result.record("oracle result recomputed", lambda: rerun.oracle == cert.oracle)
        if cert.verdict in (SpogVerdict.SPOG, SpogVerdict.SPOG_CONDITIONAL_ON_PD1):
            in_range = cert.pivot is not None and 0 <= cert.pivot < len(cert.coefficients)
            pivot_g = cert.coefficients[cert.pivot] if in_range else None
            result.record("pivot coefficient is a nonzero linear form",
                          lambda: pivot_g is not None and is_linear(pivot_g))
            if pivot_g is not None and is_linear(pivot_g):
                others = [g for j, g in enumerate(cert.coefficients) if j != cert.pivot]
                report = common_divisor_modulo(others, LinearForm.from_polynomial(pivot_g))
                result.record("no common divisor modulo the pivot", lambda: not report.has_nontrivial_divisor)
        if cert.fail_reason is FailReason.SAITO_APPLIES and cert.saito is not None:
            row = cert.saito_omitted_row
            result.record("omitted row has a constant coefficient", lambda: row is not None
                          and 0 <= row < len(cert.coefficients) and cert.coefficients[row].is_constant())
            _verify_saito(cert.saito, result, prefix="complement ")
    elif isinstance(cert, MinorTable):
        result = VerificationResult("minors")
        q = cert.arrangement.defining_polynomial
        fresh = minor_profiles(cert.derivations, cert.arrangement, require_rank=False)
        result.record("index sets recomputed", lambda: [p.indices for p in fresh] == [p.indices for p in cert.profiles])
        for mine, theirs in zip(cert.profiles, fresh):
            result.record(f"minor {mine.label} recomputed", lambda: mine.minor == theirs.minor)
            result.record(f"minor {mine.label} = g·Q", lambda: mine.coefficient * q == mine.minor)
    else:
        raise TypeError(f"not a certificate: {type(cert).__name__}")
    logger.info(f"verified {result.kind} certificate: {'ok' if result.ok else 'FAILED'}")
    return result
