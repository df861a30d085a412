import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinkms.lambda_tree import (
    LeafInput,
    build_tree,
    is_leaf,
    leftmost_chooser,
    normalize,
    random_chooser,
    remove_dominated,
    split_points,
    step,
    z_poly,
)
from artinkms.polynomials import IntPolynomial
from artinkms.words import INF


def test_b3_step(monoid):
    M = monoid("b3")
    lam1, lam2, p = step(M, [(1, 0), (0, 1)])
    assert p == (1,)
    assert lam1 == ((1,), (0, 1))
    assert lam2 == ((0,), (0, 1))


def test_step_with_infinite_complement(monoid):
    M = monoid("free2")
    lam1, lam2, p = step(M, [(0, 1), (1,)])
    assert lam1 == ((0,), (1,))
    assert lam2 == ((1,), INF)


def test_leaves(monoid):
    M = monoid("b3")
    assert is_leaf(normalize(M, [(0,), INF, (1,)]))
    assert is_leaf(normalize(M, [(), (0, 1)]))
    assert not is_leaf(normalize(M, [(0, 1)]))
    with pytest.raises(LeafInput):
        step(M, [(0,), (1,)])
    with pytest.raises(LeafInput):
        leftmost_chooser(M, ((0,),))


def test_split_points_cover_all_first_letters(monoid):
    M = monoid("b3")
    assert split_points(M, normalize(M, [(0, 1, 0), (1,)])) == [(0, 0), (0, 1)]


def test_z_poly_examples(monoid):
    M = monoid("b3")
    assert z_poly(M, [(0,), (1,)]) == IntPolynomial([1, -2, 0, 1])
    assert z_poly(M, [(), (0,)]) == IntPolynomial()
    assert z_poly(monoid("free2"), [(0,), INF]) == IntPolynomial([1, -1])


def test_remove_dominated(monoid):
    M = monoid("b3")
    assert remove_dominated(M, [(0,), (0, 1), INF]) == ((0,), INF)
    assert remove_dominated(M, [(0, 1, 0), (1, 0, 1)]) == (M.canonical((0, 1, 0)),)


@pytest.mark.parametrize("name", ["b3", "b4", "free2", "raam_path3", "b3_free_a1", "b3_direct_a1"])
def test_trees_finite(monoid, name):
    M = monoid(name)
    rng = random.Random(name)
    for _ in range(30):
        lam = [tuple(rng.randrange(M.rank) for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 3))]
        report = build_tree(M, lam)
        assert report.finite is True
        assert report.leaf_count == (report.node_count + 1) // 2


def test_tree_caps_give_undecided(monoid):
    M = monoid("b4")
    report = build_tree(M, [(0, 1, 2, 1, 0), (2, 1, 0, 1, 2)], depth_cap=1)
    assert report.finite is None
    assert report.to_dict()["finite"] == "Inconclusive"


def test_leaf_tree(monoid):
    r = build_tree(monoid("b3"), [(0,), (1,)])
    assert (r.finite, r.node_count, r.max_depth, r.leaf_count) == (True, 1, 0, 1)


b3_lists = st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=4).map(tuple), min_size=1, max_size=3)


@settings(max_examples=100, deadline=None)
@given(b3_lists, st.integers(0, 1000))
def test_recursion_identity(shared, lam, seed):
    M = shared("b3")
    if is_leaf(normalize(M, lam)):
        return
    chooser = random_chooser(random.Random(seed))
    lam1, lam2, p = step(M, lam, chooser)
    lhs = z_poly(M, lam)
    assert lhs == z_poly(M, lam1) + z_poly(M, lam2).shift(len(p))


@settings(max_examples=100, deadline=None)
@given(b3_lists)
def test_dominated_entries_do_not_change_z(shared, lam):
    M = shared("b3")
    assert z_poly(M, lam) == z_poly(M, remove_dominated(M, lam))
