import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinkms.words import INF, CapExceeded, WordSyntaxError

# computed once by exhaustive closure and frozen
B3_CLASS_S1S2S1S2 = {(0, 0, 1, 0), (0, 1, 0, 1), (1, 0, 1, 1)}


def test_b3_relation_class(monoid):
    M = monoid("b3")
    assert M.equivalence_class((0, 1, 0)).members == {(0, 1, 0), (1, 0, 1)}
    assert M.equivalence_class((0, 1)).members == {(0, 1)}


def test_b3_length_four_class(monoid):
    M = monoid("b3")
    cls = M.equivalence_class((0, 1, 0, 1))
    assert set(cls.members) == B3_CLASS_S1S2S1S2
    assert cls.representative == (0, 0, 1, 0)


def test_class_cap(monoid):
    M = monoid("b4")
    with pytest.raises(CapExceeded):
        M.equivalence_class((0, 1, 2, 0, 1, 0), cap=3)


def test_equal(monoid):
    b3, b4 = monoid("b3"), monoid("b4")
    assert b3.equal((0, 1, 0), (1, 0, 1))
    assert not b3.equal((0,), (1,))
    assert b4.equal((0, 2), (2, 0))
    assert not b4.equal((0, 1), (0, 1, 0))


def test_left_divides(monoid):
    M = monoid("b3")
    assert M.left_divides((0,), (1, 0, 1))
    assert not M.left_divides((0,), (1, 0))
    assert M.left_divides((), (1, 0))
    assert M.left_quotient((0,), (1, 0, 1)) == (1, 0)
    assert M.atom_left_divisors((1, 0, 1)) == [0, 1]


@pytest.mark.parametrize(
    "name, radius, counts",
    [
        ("b3", 2, [1, 2, 4]),
        ("b3", 3, [1, 2, 4, 7]),
        ("free2", 3, [1, 2, 4, 8]),
        ("b3", 8, [1, 2, 4, 7, 12, 20, 33, 54, 88]),
        ("b4", 8, [1, 3, 8, 19, 43, 94, 202, 429, 905]),
    ],
)
def test_growth(monoid, name, radius, counts):
    assert monoid(name).growth_coefficients(radius) == counts


def test_ball_cap(monoid):
    with pytest.raises(CapExceeded):
        monoid("free2").ball(10, cap=100)


def test_word_syntax(monoid):
    M = monoid("b3")
    assert M.parse_word("s1.s2.s1") == (0, 1, 0)
    assert M.parse_word("") == () and M.parse_word("e") == ()
    assert M.format_word((1, 0)) == "s2.s1"
    assert M.format_word(INF) == "inf"
    with pytest.raises(WordSyntaxError):
        M.parse_word("s1.s9")
    with pytest.raises(WordSyntaxError):
        M.validate((0, 5))


@pytest.mark.parametrize("name", ["b3", "b4", "i2_5", "raam_square", "b3_free_a1", "a2tilde"])
def test_greedy_canonical_matches_enumeration(monoid, name):
    greedy, brute = monoid(name), monoid(name)
    rng = random.Random(name)
    for _ in range(150):
        w = tuple(rng.randrange(greedy.rank) for _ in range(rng.randint(0, 7)))
        assert greedy.canonical(w) == brute.canonical_bfs(w)


words = st.lists(st.integers(0, 2), max_size=6).map(tuple)


@settings(max_examples=80, deadline=None)
@given(words, words, words)
def test_equality_is_an_equivalence(shared, u, v, w):
    M = shared("b4")
    assert M.equal(u, u)
    assert M.equal(u, v) == M.equal(v, u)
    if M.equal(u, v) and M.equal(v, w):
        assert M.equal(u, w)


@settings(max_examples=80, deadline=None)
@given(words)
def test_class_invariants(shared, w):
    M = shared("b4")
    cls = M.equivalence_class(w)
    assert all(len(x) == len(w) for x in cls.members)
    assert cls.representative == min(cls.members)
    assert M.canonical(w) in cls.members


@settings(max_examples=80, deadline=None)
@given(words, words)
def test_divisibility_antisymmetric(shared, p, q):
    M = shared("b4")
    if M.left_divides(p, q) and M.left_divides(q, p):
        assert M.equal(p, q)
    assert M.left_divides(p, p + q)
    assert M.equal(M.multiply(p, M.left_quotient(p, p + q)), p + q)
