from __future__ import annotations

import random

import pytest

from algebra.poly import Polynomial
from algebra.rational_matrix import SpanBuilder
from arrangements.arrangement import Arrangement
from arrangements.derivation import euler, is_logarithmic, q_partial
from arrangements.minors import spog_coefficients
from checkers.criteria import check_saito
from conftest import arr, der, poly
from oracle.graded_oracle import (
    ResolutionEvidence,
    default_degree_bound,
    derivation_space,
    derivation_vector,
    dim_s,
    free_hilbert_value,
    graded_dimensions,
    ideal_graded_dimension,
    minimal_generators,
    resolution_evidence,
    spog_hilbert_value,
    submodule_generates,
    syzygy_space,
    vector_derivation,
)
from utils.utils_gen_instances import random_arrangement

BOOLEAN = arr(3, "x", "y", "z")
GENERIC4 = arr(3, "x", "y", "z", "x + y + z")
PRODUCT = arr(3, "x", "y", "x - y", "z")


def test_dim_s():
    assert [dim_s(3, d) for d in range(4)] == [1, 3, 6, 10]
    assert dim_s(3, -1) == 0
    assert dim_s(2, 5) == 6


def test_vectors_round_trip():
    theta = der("x^2 + x*y", "0", "x*z")
    v = derivation_vector(theta, 2)
    assert len(v) == 3 * 6
    assert vector_derivation(v, 3, 2) == theta


def test_derivation_space_examples():
    space = derivation_space(BOOLEAN, 1)
    assert space.dimension == 3
    assert set(space.basis) == {der("x", "0", "0"), der("0", "y", "0"), der("0", "0", "z")}
    assert derivation_space(GENERIC4, 0).dimension == 0
    assert derivation_space(GENERIC4, 2).dimension == 6
    assert derivation_space(GENERIC4, -1).dimension == 0


def test_derivation_space_elements_are_logarithmic_of_the_right_degree():
    space = derivation_space(GENERIC4, 3)
    assert space.dimension == spog_hilbert_value(3, (1, 2, 2, 2), 3, 3)
    for theta in space.basis:
        assert is_logarithmic(theta, GENERIC4)
        assert theta.is_homogeneous() and theta.degree() == 3


def test_euler_lies_in_degree_one():
    space = derivation_space(GENERIC4, 1)
    span = SpanBuilder(3 * 3)
    span.extend(space.vectors)
    assert span.contains(derivation_vector(euler(3), 1))


def test_graded_dimensions_of_boolean():
    assert graded_dimensions(BOOLEAN, 3) == [0, 3, 9, 18]


@pytest.mark.parametrize("stem", ["boolean3", "braid2", "product3"])
def test_free_fixtures_follow_free_hilbert_function(case, stem):
    a, basis = case(stem)
    cert = check_saito(a, basis)
    assert cert.is_free and cert.degree_sum == a.size
    dims = graded_dimensions(a, 8)
    assert dims == [free_hilbert_value(a.nvars, cert.exponents, d) for d in range(9)]


def test_generic_fixture_follows_one_relation_hilbert_function():
    dims = graded_dimensions(GENERIC4, 6)
    assert dims == [spog_hilbert_value(3, (1, 2, 2, 2), 3, d) for d in range(7)]


@pytest.mark.parametrize("seed", range(3))
def test_adding_hyperplanes_shrinks_each_graded_piece(seed):
    rng = random.Random(seed)
    big = random_arrangement(rng, 3, 5)
    small = Arrangement(3, big.hyperplanes[:4])
    assert all(b <= s for b, s in zip(graded_dimensions(big, 4), graded_dimensions(small, 4)))


def test_minimal_generator_degrees():
    assert minimal_generators(BOOLEAN, 3).degrees == (1, 1, 1)
    assert minimal_generators(PRODUCT, 4).degrees == (1, 1, 2)
    assert minimal_generators(GENERIC4, 4).degrees == (1, 2, 2, 2)


def test_minimal_generators_blocks():
    gens = minimal_generators(GENERIC4, 3)
    assert [(b.degree, b.count) for b in gens.blocks] == [(1, 1), (2, 3)]
    assert len(gens.generators) == 4
    with pytest.raises(ValueError):
        minimal_generators(GENERIC4, 0)


def test_oracle_generators_generate(case):
    gens = minimal_generators(GENERIC4, 4).generators
    assert submodule_generates(GENERIC4, gens).generates
    _, fixture = case("generic4")
    report = submodule_generates(GENERIC4, fixture)
    assert report.generates
    assert report.d_max == default_degree_bound(GENERIC4, [1, 2, 2, 2]) == 6
    assert report.span_dimensions == report.space_dimensions


@pytest.mark.parametrize("missing, degree", [(0, 1), (1, 2), (3, 2)])
def test_missing_generator_fails_at_its_degree(case, missing, degree):
    _, fixture = case("generic4")
    rest = fixture[:missing] + fixture[missing + 1:]
    report = submodule_generates(GENERIC4, rest)
    assert not report.generates
    assert report.first_failing_degree == degree


def test_q_partials_with_euler_do_not_generate():
    gens = [q_partial(GENERIC4, j) for j in range(3)] + [euler(3)]
    report = submodule_generates(GENERIC4, gens, 5)
    assert not report.generates
    assert report.first_failing_degree == 2


def test_syzygies_of_generic_fixture(case):
    a, fixture = case("generic4")
    assert syzygy_space(fixture, 2) == []
    (relation,) = syzygy_space(fixture, 3)
    gs = spog_coefficients(fixture, a)
    lead = next(i for i, f in enumerate(relation) if f)
    scale = gs[lead].exact_divide(relation[lead])
    assert scale.is_constant() and scale
    assert all(g == f * scale for g, f in zip(gs, relation))


def test_free_basis_has_no_syzygies(case):
    _, basis = case("boolean3")
    assert all(syzygy_space(basis, d) == [] for d in range(5))


def test_repeated_derivation_has_a_syzygy():
    gens = [der("x", "0", "0"), der("x", "0", "0"), der("0", "y", "0")]
    basis = syzygy_space(gens, 1)
    assert len(basis) == 1
    assert basis[0] == (Polynomial.one(3), -Polynomial.one(3), Polynomial.zero(3))
    assert syzygy_space([], 3) == []


def test_ideal_graded_dimension_of_principal_ideal():
    q = GENERIC4.defining_polynomial
    assert ideal_graded_dimension([q], 4) == 1
    assert ideal_graded_dimension([q], 5) == 3
    assert ideal_graded_dimension([q], 3) == 0
    assert ideal_graded_dimension([poly("x"), poly("y")], 2) == 5
    assert ideal_graded_dimension([], 2) == 0
    with pytest.raises(ValueError):
        ideal_graded_dimension([poly("x + 1")], 2)


def test_resolution_evidence_for_generic_fixture():
    evidence = resolution_evidence(GENERIC4, 5)
    assert isinstance(evidence, ResolutionEvidence)
    assert evidence.generator_degrees == (1, 2, 2, 2)
    assert evidence.relation_degrees == (3,)
    assert evidence.hilbert_consistent
    assert len(evidence.relations) == 1


def test_resolution_evidence_for_free_arrangement():
    evidence = resolution_evidence(BOOLEAN, 4)
    assert evidence.relation_degrees == ()
    assert evidence.hilbert_consistent
