"""Symbolic subsets of an Artin monoid built from cells pΩ_K.

Ω_K is the set of w with k ≰ w for every blocker k, and pΩ_K its left
translate.  Finite disjoint unions of cells form the sets handled here.
Every operation is constructive; ``verify_equal`` checks results by
brute-force membership on a ball.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

from .cliques import pinf
from .reversing import DEFAULT_STEP_CAP, LcmTag, lcm, shift
from .words import INF, ArtinMonoid, Word

DEFAULT_DEPTH_CAP = 10_000
DEFAULT_ITEM_CAP = 200_000


class IdentityArgument(ValueError):
    pass


class CellSyntaxError(ValueError):
    pass


class _Empty:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


@dataclass(frozen=True)
class Inconclusive:
    reason: str


@dataclass(frozen=True)
class Cell:
    prefix: Word
    blockers: tuple[Word, ...] = ()

    def format(self, M: ArtinMonoid) -> str:
        p = M.format_word(self.prefix) or "e"
        return f"{p} | " + ", ".join(M.format_word(k) or "e" for k in self.blockers)

    def to_dict(self, M: ArtinMonoid) -> dict:
        return {"prefix": M.format_word(self.prefix), "blockers": [M.format_word(k) for k in self.blockers]}


@dataclass
class SymbolicSet:
    cells: list[Cell] = field(default_factory=list)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def to_json(self, M: ArtinMonoid) -> str:
        return json.dumps([c.to_dict(M) for c in self.cells], sort_keys=True)


def _key(w: Word):
    return (len(w), w)


def make_cell(M: ArtinMonoid, prefix, blockers=()):
    """Normalised cell: canonical words, no duplicate or dominated blockers.

    Returns EMPTY when e is among the blockers.
    """
    p = M.canonical(prefix)
    ks = sorted({M.canonical(k) for k in blockers}, key=_key)
    if any(len(k) == 0 for k in ks):
        return EMPTY
    kept: list[Word] = []
    for k in ks:
        # ks is sorted by length, so a divisor of k is already in kept
        if not any(M.left_divides(x, k) for x in kept):
            kept.append(k)
    return Cell(p, tuple(kept))


def member(M: ArtinMonoid, w, c) -> bool:
    if c is EMPTY:
        return False
    rest = M.left_quotient(c.prefix, w)
    if rest is None:
        return False
    return not any(M.left_divides(k, rest) for k in c.blockers)


def member_set(M: ArtinMonoid, w, s: SymbolicSet) -> bool:
    return any(member(M, w, c) for c in s.cells)


def complement_principal(M: ArtinMonoid, p) -> SymbolicSet:
    """P ∖ pP as the cells s₁⋯s_{j-1}Ω_{s_j} along the canonical word of p."""
    p = M.canonical(p)
    if not p:
        raise IdentityArgument("P ∖ eP is empty; p must not be e")
    return SymbolicSet([Cell(p[:j], (p[j:j + 1],)) for j in range(len(p))])


def intersect_cells(M: ArtinMonoid, c1, c2, step_cap: int = DEFAULT_STEP_CAP):
    """c1 ∩ c2 as a single cell rΩ_K' with r = p₁ ∨ p₂, or EMPTY / Inconclusive."""
    if c1 is EMPTY or c2 is EMPTY:
        return EMPTY
    top = lcm(M, c1.prefix, c2.prefix, step_cap)
    if top.tag is LcmTag.INCONCLUSIVE:
        return Inconclusive(f"lcm of prefixes undecided after {top.steps_used} steps")
    if top.tag is LcmTag.NO_COMMON_MULTIPLE:
        return EMPTY
    r = top.lcm
    blockers = []
    for c in (c1, c2):
        for k in c.blockers:
            x = M.canonical(c.prefix + k)
            res = lcm(M, r, x, step_cap)
            if res.tag is LcmTag.INCONCLUSIVE:
                return Inconclusive(f"lcm of {r} and {x} undecided")
            if res.found:
                blockers.append(res.comp_left)
    return make_cell(M, r, blockers)


def intersect_sets(M: ArtinMonoid, a: SymbolicSet, b: SymbolicSet):
    out = []
    for c1 in a.cells:
        for c2 in b.cells:
            c = intersect_cells(M, c1, c2)
            if isinstance(c, Inconclusive):
                return c
            if c is not EMPTY:
                out.append(c)
    return SymbolicSet(out)


def target_set(M: ArtinMonoid, target: str) -> frozenset:
    if target == "atoms":
        return frozenset(M.atoms)
    if target == "pinf":
        ps = pinf(M)
        if not ps.saturated:
            raise RuntimeError("P_inf did not saturate")
        return frozenset(ps.elements)
    raise ValueError(f"unknown target {target!r}")


def rewrite_blockers(M: ArtinMonoid, K, target: str = "pinf", prefix=(),
                     depth_cap: int = DEFAULT_DEPTH_CAP, item_cap: int = DEFAULT_ITEM_CAP,
                     step_cap: int = DEFAULT_STEP_CAP):
    """Rewrite prefix·Ω_K as disjoint cells whose blockers lie in the target set.

    The first blocker d = s·q′ outside the target is peeled off its leading
    atom s:

        Ω_{d} ∩ Ω_R = Ω_{s} ∩ Ω_R  ⊔  s·(Ω_{q′} ∩ Ω_{s\\R})

    where s\\r = ∞ drops r and s\\r = e empties the second piece.  Returns
    Inconclusive when the depth or work cap is reached.
    """
    allowed = target_set(M, target) if isinstance(target, str) else frozenset(target)
    start = make_cell(M, prefix, K)
    out: list[Cell] = []
    if start is EMPTY:
        return SymbolicSet(out)
    stack = [(start, 0)]
    items = 0
    while stack:
        cell, depth = stack.pop()
        items += 1
        if depth > depth_cap or items > item_cap:
            return Inconclusive(f"rewrite cap reached (depth {depth}, items {items})")
        bad = [k for k in cell.blockers if k not in allowed]
        if not bad:
            out.append(cell)
            continue
        d = bad[0]
        s, tail = (d[0],), M.canonical(d[1:])
        rest = [k for k in cell.blockers if k != d]
        shifted = []
        for r in rest:
            try:
                x = shift(M, s, r, step_cap)
            except RuntimeError:
                return Inconclusive(f"lcm of {s} and {r} undecided")
            if x is not INF:
                shifted.append(x)
        second = make_cell(M, cell.prefix + s, [tail] + shifted)
        first = make_cell(M, cell.prefix, [s] + rest)
        # pushed in reverse so the output lists the s-free piece first
        if second is not EMPTY:
            stack.append((second, depth + 1))
        if first is not EMPTY:
            stack.append((first, depth + 1))
    return SymbolicSet(out)


# -- bounded-ball verification -----------------------------------------------------


@dataclass
class VerifyResult:
    equal: bool
    checked: int
    counterexample: Word | None = None
    reason: str = ""

    def __bool__(self):
        return self.equal


def _indicator(M: ArtinMonoid, A):
    """(membership function, multiplicity function or None)."""
    if isinstance(A, SymbolicSet):
        return (lambda w: member_set(M, w, A)), (lambda w: sum(member(M, w, c) for c in A.cells))
    if isinstance(A, Cell):
        return (lambda w: member(M, w, A)), None
    if callable(A):
        return A, None
    raise TypeError(f"cannot test membership in {A!r}")


def verify_equal(M: ArtinMonoid, A, B, L: int) -> VerifyResult:
    """Compare A and B on every element of length ≤ L, checking disjointness too."""
    fa, ma = _indicator(M, A)
    fb, mb = _indicator(M, B)
    ball = M.ball(L)
    for w in ball:
        for mult, name in ((ma, "left"), (mb, "right")):
            if mult is not None and mult(w) > 1:
                return VerifyResult(False, len(ball), w, f"{name} cells overlap")
        if fa(w) != fb(w):
            return VerifyResult(False, len(ball), w, "membership differs")
    return VerifyResult(True, len(ball))


def omega_indicator(M: ArtinMonoid, prefix, K) -> Callable:
    """Direct membership in prefix·Ω_K, independent of the cell normaliser."""
    prefix = M.canonical(prefix)
    K = [M.canonical(k) for k in K]

    def test(w):
        rest = M.left_quotient(prefix, w)
        return rest is not None and not any(M.left_divides(k, rest) for k in K)

    return test


@dataclass
class ClosureSample:
    s: Word
    q: Word
    K: tuple[Word, ...]
    outcome: str  # "ok", "inconclusive" or "counterexample"
    cells: SymbolicSet | None = None
    counterexample: Word | None = None


@dataclass
class ClosureReport:
    samples: list[ClosureSample]

    @property
    def all_ok(self) -> bool:
        return all(x.outcome == "ok" for x in self.samples)

    def counts(self) -> dict:
        out = {"ok": 0, "inconclusive": 0, "counterexample": 0}
        for x in self.samples:
            out[x.outcome] += 1
        return out


def closure_sample(M: ArtinMonoid, s, q, K, L: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> ClosureSample:
    """Express (P ∖ sP) ∩ qΩ_K with atom blockers and check it on the ball."""
    s, q = M.canonical(s), M.canonical(q)
    K = tuple(sorted({M.canonical(k) for k in K}, key=_key))
    meet = intersect_cells(M, Cell((), (s,)), make_cell(M, q, K))
    if isinstance(meet, Inconclusive):
        return ClosureSample(s, q, K, "inconclusive")
    if meet is EMPTY:
        result = SymbolicSet([])
    else:
        result = rewrite_blockers(M, meet.blockers, "atoms", prefix=meet.prefix, depth_cap=depth_cap)
        if isinstance(result, Inconclusive):
            return ClosureSample(s, q, K, "inconclusive")
    outside = omega_indicator(M, (), [s])
    inside = omega_indicator(M, q, K)
    check = verify_equal(M, result, lambda w: outside(w) and inside(w), L)
    if not check:
        return ClosureSample(s, q, K, "counterexample", result, check.counterexample)
    return ClosureSample(s, q, K, "ok", result)


def algebra_closure_check(M: ArtinMonoid, sample_size: int = 50, L: int = 6, seed: int = 0,
                          q_radius: int = 3) -> ClosureReport:
    rng = random.Random(seed)
    qs = M.ball(q_radius)
    samples = []
    for _ in range(sample_size):
        s = (rng.randrange(M.rank),)
        q = rng.choice(qs)
        K = tuple(a for a in M.atoms if rng.random() < 0.5)
        samples.append(closure_sample(M, s, q, K, L))
    return ClosureReport(samples)


# -- syntax -----------------------------------------------------------------


def parse_cell(M: ArtinMonoid, text: str):
    """Parse "p | k1, k2"; a missing bar means no blockers."""
    head, bar, tail = text.partition("|")
    prefix = M.parse_word(head)
    blockers = [M.parse_word(part) for part in tail.split(",")] if bar and tail.strip() else []
    return make_cell(M, prefix, blockers)


def parse_word_set(M: ArtinMonoid, text: str) -> list[Word]:
    """Comma-separated words, e.g. "s1.s2, s2"."""
    return [M.parse_word(part) for part in text.split(",") if part.strip()]


def load_symbolic_set(M: ArtinMonoid, text: str) -> SymbolicSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CellSyntaxError(str(exc)) from None
    cells = []
    for item in data:
        if not isinstance(item, dict) or set(item) != {"prefix", "blockers"}:
            raise CellSyntaxError(f"bad cell entry {item!r}")
        c = make_cell(M, M.parse_word(item["prefix"]), [M.parse_word(k) for k in item["blockers"]])
        if c is not EMPTY:
            cells.append(c)
    return SymbolicSet(cells)
