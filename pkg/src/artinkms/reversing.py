"""Right LCMs and complements by subword reversing.

The signed word p⁻¹q is reversed by repeatedly replacing a factor s⁻¹t
with (s\\t)(t\\s)⁻¹, where s\\t is the atom complement.  When no negative
letter is followed by a positive one the word reads A·B⁻¹ with p·A = q·B,
and that common multiple is the right LCM.  A pair of generators with
m = ∞ stops the process: no common multiple exists.

An independent brute-force oracle (search the right multiples of p by
increasing length for one divisible by q) is provided for cross-checks.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce

from .presentation import INFINITY
from .words import INF, ArtinMonoid, Word

DEFAULT_STEP_CAP = 1_000_000


class LcmTag(enum.Enum):
    LCM = "Lcm"
    NO_COMMON_MULTIPLE = "NoCommonMultiple"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class LcmResult:
    tag: LcmTag
    lcm: Word | None = None
    comp_left: Word | None = None
    comp_right: Word | None = None
    steps_used: int = 0

    @property
    def found(self) -> bool:
        return self.tag is LcmTag.LCM

    @property
    def inconclusive(self) -> bool:
        return self.tag is LcmTag.INCONCLUSIVE

    def value(self):
        """The LCM as a word, INF when there is none; raises if inconclusive."""
        if self.tag is LcmTag.LCM:
            return self.lcm
        if self.tag is LcmTag.NO_COMMON_MULTIPLE:
            return INF
        raise LcmInconclusive(f"lcm search inconclusive after {self.steps_used} steps")


class LcmInconclusive(RuntimeError):
    """An LCM needed downstream could not be decided within the caps."""


NO_LCM = LcmResult(LcmTag.NO_COMMON_MULTIPLE)


def atom_complement(M: ArtinMonoid, s: int, t: int):
    """s\\t: the word w with s·w = s ∨ t, or INF when m(s, t) = ∞."""
    if s == t:
        return ()
    m = M.presentation.m(s, t)
    if m == INFINITY:
        return INF
    return tuple(t if k % 2 == 0 else s for k in range(m - 1))


def _reverse(M: ArtinMonoid, p: Word, q: Word, step_cap: int):
    """Reverse p⁻¹q.  Returns (A, B, steps), (INF, None, steps) or (None, None, steps)."""
    return M.reverse(p, q, step_cap)


def lcm(M: ArtinMonoid, p, q, step_cap: int = DEFAULT_STEP_CAP) -> LcmResult:
    """Right LCM p ∨ q with complements p\\q and q\\p."""
    p, q = M.canonical(p), M.canonical(q)
    key = ("lcm", p, q)
    cached = M.cache.get(key)
    if cached is not None:
        return cached
    a, b, steps = _reverse(M, p, q, step_cap)
    if a is None:
        # not cached: a larger cap might succeed
        return LcmResult(LcmTag.INCONCLUSIVE, steps_used=steps)
    if a is INF:
        result = LcmResult(LcmTag.NO_COMMON_MULTIPLE, steps_used=steps)
    else:
        result = LcmResult(
            LcmTag.LCM,
            lcm=M.canonical(p + a),
            comp_left=M.canonical(a),
            comp_right=M.canonical(b),
            steps_used=steps,
        )
    M.cache[key] = result
    return result


def join(M: ArtinMonoid, p, q, step_cap: int = DEFAULT_STEP_CAP):
    """p ∨ q as a word, INF if none; INF propagates.  Raises LcmInconclusive."""
    if p is INF or q is INF:
        return INF
    return lcm(M, p, q, step_cap).value()


def shift(M: ArtinMonoid, x, p, step_cap: int = DEFAULT_STEP_CAP):
    """x⁻¹(x ∨ p), i.e. the complement x\\p; INF if x ∨ p = ∞."""
    if p is INF:
        return INF
    r = lcm(M, x, p, step_cap)
    if r.tag is LcmTag.LCM:
        return r.comp_left
    r.value()  # raises when inconclusive
    return INF


def lcm_set(M: ArtinMonoid, words, step_cap: int = DEFAULT_STEP_CAP) -> LcmResult:
    """∨K as a left fold of binary LCMs."""
    words = [M.canonical(w) for w in words]
    if not words:
        raise ValueError("lcm_set needs a nonempty list")

    def fold(acc: LcmResult, w) -> LcmResult:
        if acc.tag is not LcmTag.LCM:
            return acc
        r = lcm(M, acc.lcm, w, step_cap)
        return LcmResult(r.tag, r.lcm, steps_used=acc.steps_used + r.steps_used) if r.found else r

    start = LcmResult(LcmTag.LCM, lcm=words[0])
    result = reduce(fold, words[1:], start)
    if result.found:
        return LcmResult(LcmTag.LCM, lcm=result.lcm, steps_used=result.steps_used)
    return result


def oracle_lcm(M: ArtinMonoid, p, q, length_cap: int) -> LcmResult:
    """Brute-force right LCM: the shortest right multiple of p divisible by q.

    Every common multiple is a multiple of the LCM, so a common multiple of
    minimal length is the LCM itself.  A miss up to ``length_cap`` is
    reported as inconclusive: the search cannot certify that no common
    multiple exists.
    """
    p, q = M.canonical(p), M.canonical(q)
    start = max(len(p), len(q))
    if start > length_cap:
        return LcmResult(LcmTag.INCONCLUSIVE)
    for k, level in enumerate(M.right_multiples(p, length_cap - len(p))):
        if len(p) + k < len(q):
            continue
        for r in level:
            rest = M.left_quotient(q, r)
            if rest is not None:
                return LcmResult(
                    LcmTag.LCM, lcm=r, comp_left=M.left_quotient(p, r), comp_right=rest
                )
    return LcmResult(LcmTag.INCONCLUSIVE)


def compare_with_oracle(M: ArtinMonoid, p, q, length_cap: int, step_cap: int = DEFAULT_STEP_CAP) -> str:
    """'agree', 'disagree' or 'skip' (one side inconclusive with nothing to compare).

    A reversing LCM short enough for the oracle's cap must be found by the
    oracle too, and an oracle hit contradicts a NoCommonMultiple verdict.
    """
    r = lcm(M, p, q, step_cap)
    o = oracle_lcm(M, p, q, length_cap)
    if r.found and o.found:
        return "agree" if M.equal(r.lcm, o.lcm) else "disagree"
    if o.found:
        return "disagree" if r.tag is LcmTag.NO_COMMON_MULTIPLE else "skip"
    if r.found and len(r.lcm) <= length_cap:
        return "disagree"
    return "skip"
