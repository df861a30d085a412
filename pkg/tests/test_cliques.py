import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinkms.cliques import (
    NonUniformWeights,
    clique_polynomial,
    cliques_of,
    inclusion_exclusion,
    pinf,
    subset_joins,
    subset_polynomial,
)
from artinkms.polynomials import IntPolynomial
from artinkms.words import INF


def test_b3_cliques(monoid):
    M = monoid("b3")
    sizes = sorted(c.lcm_length for c in cliques_of(M))
    assert sizes == [0, 1, 1, 3]
    assert clique_polynomial(M) == IntPolynomial([1, -2, 0, 1])


def test_b4_polynomial(monoid):
    h = clique_polynomial(monoid("b4"))
    assert h == IntPolynomial([1, -3, 1, 2, 0, 0, -1])
    assert h == IntPolynomial([1, -1]) * IntPolynomial([1, -2, -1, 1, 1, 1])


def test_raam_polynomials(monoid):
    assert clique_polynomial(monoid("free2")) == IntPolynomial([1, -2])
    # s2 commutes with both ends, s1 and s3 generate a free submonoid
    assert clique_polynomial(monoid("raam_path3")) == IntPolynomial([1, -3, 2])
    assert clique_polynomial(monoid("raam_square")) == IntPolynomial([1, -2]) * IntPolynomial([1, -2])


def test_weighted_rejected(monoid):
    with pytest.raises(NonUniformWeights):
        clique_polynomial(monoid("b3_weighted"))


def test_affine_cliques_skip_full_set(monoid):
    M = monoid("a2tilde")
    assert max(len(c.members) for c in cliques_of(M)) == 2


def test_subset_polynomials(monoid):
    M = monoid("b3")
    assert subset_polynomial(M, [(0,)]) == IntPolynomial([1, -1])
    assert subset_polynomial(M, [(0,), (1,)]) == clique_polynomial(M)
    assert subset_polynomial(monoid("free2"), [(0,), (1,)]) == IntPolynomial([1, -2])


def test_inclusion_exclusion_drops_infinity():
    assert inclusion_exclusion([(), (0,), (1,), INF]) == IntPolynomial([1, -2])


def test_pinf_examples(monoid):
    b3 = pinf(monoid("b3"))
    assert b3.saturated and b3.elements == ((0,), (1,), (0, 1), (1, 0))
    raam = pinf(monoid("raam_square"))
    assert raam.saturated and len(raam.elements) == 4
    assert len(pinf(monoid("b4")).elements) == 22


def test_pinf_unsaturated_on_affine(monoid):
    assert not pinf(monoid("a2tilde"), step_cap=5_000).saturated


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(0, 2), min_size=1))
def test_subset_polynomial_vanishes_at_one(shared, J):
    M = shared("b4")
    g = subset_polynomial(M, [(s,) for s in sorted(J)])
    assert g(1) == 0


def test_subset_joins_shape(monoid):
    joins = subset_joins(monoid("b3"), [(0,), (1,)])
    assert len(joins) == 4
