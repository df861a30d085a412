"""Cliques, clique polynomials and the minimal set P_inf."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .polynomials import IntPolynomial
from .presentation import has_uniform_weights, is_spherical
from .reversing import DEFAULT_STEP_CAP, LcmTag, lcm, lcm_set
from .words import INF, ArtinMonoid, Word


class NonUniformWeights(ValueError):
    pass


class IdentityEntry(ValueError):
    pass


class CliqueDisagreement(RuntimeError):
    """The parabolic criterion and subword reversing disagree (a defect)."""


@dataclass(frozen=True)
class Clique:
    members: tuple[Word, ...]
    lcm: Word

    @property
    def lcm_length(self) -> int:
        return len(self.lcm)


@dataclass(frozen=True)
class PinfSet:
    elements: tuple[Word, ...]
    saturated: bool
    iterations_used: int


def cliques_of(M: ArtinMonoid, J=None, step_cap: int = 20_000) -> list[Clique]:
    """All cliques K ⊆ J of atoms (J defaults to every generator).

    A set of generators has a common multiple exactly when its parabolic
    Coxeter submatrix is of finite type; reversing is run alongside as a
    validator.  On a non-spherical subset reversing is expected to either
    hit an ∞ complement or run out of steps.
    """
    J = sorted(range(M.rank) if J is None else set(J))
    out = [Clique((), ())]
    for size in range(1, len(J) + 1):
        for K in combinations(J, size):
            spherical = is_spherical(M.presentation, K)
            words = [(s,) for s in K]
            r = lcm_set(M, words, step_cap)
            if spherical and not r.found:
                raise CliqueDisagreement(f"spherical {K} but reversing gave {r.tag.value}")
            if not spherical and r.found:
                raise CliqueDisagreement(f"non-spherical {K} but reversing found {r.lcm}")
            if spherical:
                out.append(Clique(tuple(words), r.lcm))
    return out


def _require_uniform(M: ArtinMonoid):
    if not has_uniform_weights(M.presentation):
        raise NonUniformWeights("polynomial in t = e^-β needs uniform weights")


def clique_polynomial(M: ArtinMonoid) -> IntPolynomial:
    """h(t) = Σ over cliques K of atoms of (-1)^|K| t^ℓ(∨K)."""
    _require_uniform(M)
    coeffs = {}
    for c in cliques_of(M):
        d = c.lcm_length
        coeffs[d] = coeffs.get(d, 0) + (-1) ** len(c.members)
    return IntPolynomial.from_dict(coeffs)


def subset_joins(M: ArtinMonoid, entries, step_cap: int = DEFAULT_STEP_CAP) -> list:
    """∨ of every sub-list, indexed by bitmask; INF where there is none.

    Entries may themselves be INF.  Index 0 (the empty sub-list) maps to e.
    """
    n = len(entries)
    joins = [()] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = joins[mask & (mask - 1)]
        x = entries[low]
        if rest is INF or x is INF:
            joins[mask] = INF
        else:
            joins[mask] = lcm(M, rest, x, step_cap).value()
    return joins


def inclusion_exclusion(joins) -> IntPolynomial:
    coeffs = {}
    for mask, j in enumerate(joins):
        if j is INF:
            continue
        sign = -1 if bin(mask).count("1") % 2 else 1
        coeffs[len(j)] = coeffs.get(len(j), 0) + sign
    return IntPolynomial.from_dict(coeffs)


def subset_polynomial(M: ArtinMonoid, J, step_cap: int = DEFAULT_STEP_CAP) -> IntPolynomial:
    """g_J(t) = Σ_{K ⊆ J} (-1)^|K| t^ℓ(∨K), non-cliques contributing 0.

    J is a set: entries equal in the monoid are merged.
    """
    _require_uniform(M)
    entries = sorted({M.canonical(w) for w in J})
    if any(len(w) == 0 for w in entries):
        raise IdentityEntry("J must not contain the identity")
    return inclusion_exclusion(subset_joins(M, entries, step_cap))


def pinf(M: ArtinMonoid, iteration_cap: int = 1000, step_cap: int = DEFAULT_STEP_CAP) -> PinfSet:
    """Smallest set containing the atoms and closed under p ↦ x⁻¹(x ∨ p).

    The identity is left out.  Each round applies every atom to the
    elements found in the previous round; ``saturated`` is False when the
    round cap is reached or an LCM stays undecided.
    """
    elements = {(s,) for s in range(M.rank)}
    frontier = sorted(elements)
    rounds = 0
    while frontier:
        if rounds >= iteration_cap:
            return PinfSet(_ordered(elements), False, rounds)
        rounds += 1
        new = set()
        for p in frontier:
            for x in range(M.rank):
                r = lcm(M, (x,), p, step_cap)
                if r.tag is LcmTag.INCONCLUSIVE:
                    return PinfSet(_ordered(elements | new), False, rounds)
                if r.found and r.comp_left and r.comp_left not in elements:
                    new.add(r.comp_left)
        elements |= new
        frontier = sorted(new)
    return PinfSet(_ordered(elements), True, rounds)


def _ordered(words):
    return tuple(sorted(words, key=lambda w: (len(w), w)))
