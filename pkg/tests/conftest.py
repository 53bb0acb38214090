"""Shared builders and fixture-file access for the test suite."""

from __future__ import annotations

import pathlib
from typing import Callable, Optional

import pytest
import sympy

from algebra.poly import Polynomial
from algebra.poly_grammar import parse_polynomial
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation
from utils.utils_files import load_arrangement, load_derivations

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"


def poly(text: str, nvars: int = 3) -> Polynomial:
    return parse_polynomial(text, nvars)


def der(*components: str, nvars: Optional[int] = None) -> Derivation:
    nvars = nvars or len(components)
    return Derivation(tuple(parse_polynomial(c, nvars) for c in components))


def arr(nvars: int, *forms: str) -> Arrangement:
    return Arrangement.from_strings(nvars, list(forms))


def sympy_symbols(nvars: int) -> list[sympy.Symbol]:
    return list(sympy.symbols(f"x1:{nvars + 1}"))


def to_sympy(f: Polynomial) -> sympy.Expr:
    gens = sympy_symbols(f.nvars)
    local = {str(g): g for g in gens}
    return sympy.parse_expr(str(f).replace("^", "**"), local_dict=local)


def same_up_to_scalar(a: sympy.Expr, b: sympy.Expr, nvars: int) -> bool:
    gens = sympy_symbols(nvars)
    pa = sympy.Poly(a, *gens, domain="QQ")
    pb = sympy.Poly(b, *gens, domain="QQ")
    if pa.is_zero or pb.is_zero:
        return pa.is_zero and pb.is_zero
    return pa.monic() == pb.monic()


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture
def case() -> Callable[..., tuple[Arrangement, list[Derivation]]]:
    """case("generic4") or case("generic4", "generic4_saito") -> (arrangement, derivations)."""

    def load(stem: str, derivations: Optional[str] = None) -> tuple[Arrangement, list[Derivation]]:
        arrangement = load_arrangement(DATA_DIR / f"{stem}.arr").validate()
        der_path = DATA_DIR / f"{derivations or stem}.der"
        thetas = load_derivations(der_path, arrangement.nvars) if der_path.exists() else []
        return arrangement, thetas

    return load
