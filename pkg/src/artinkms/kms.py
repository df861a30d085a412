"""KMS inverse-temperature analysis for the length dynamics.

With t = e^{-β}, a gauge-invariant KMS_β state exists exactly when every
polynomial g_J(t) = Σ_{K ⊆ J} (-1)^|K| t^ℓ(∨K) is nonnegative, J running
over the finite subsets of a governing family (the atoms when a reduction
theorem is available, P_inf otherwise).  Everything here is exact: roots
are isolated by Sturm sequences and signs are decided over the rationals.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cliques import NonUniformWeights, pinf, subset_joins, subset_polynomial
from .polynomials import IntPolynomial, RootInterval, SturmChain, isolate_roots, sign_at
from .presentation import has_uniform_weights, reduction_guarantee
from .reversing import DEFAULT_STEP_CAP
from .words import INF, ArtinMonoid, Word

PINF_LIMIT = 20


class GuaranteeUnavailable(ValueError):
    """No reduction-to-atoms theorem covers this presentation."""


class UnsaturatedPinf(RuntimeError):
    pass


class FamilyTooLarge(ValueError):
    pass


class NoPositiveRoot(ValueError):
    pass


# -- the governing family ---------------------------------------------------


@dataclass(frozen=True)
class FamilyMember:
    J: tuple[Word, ...]
    poly: IntPolynomial


def _mask_order(n: int):
    """Nonempty masks ordered by size, then lexicographically by member indices."""
    masks = range(1, 1 << n)
    return sorted(masks, key=lambda m: (bin(m).count("1"), [i for i in range(n) if m >> i & 1]))


def family_elements(M: ArtinMonoid, family: str, force: bool = False,
                    allow_large: bool = False) -> list[Word]:
    _require_uniform(M)
    if family == "atoms":
        if reduction_guarantee(M.presentation) is None and not force:
            raise GuaranteeUnavailable(
                f"{M.presentation.name}: reduction to atoms is not known to hold; "
                "use the pinf family or force"
            )
        return M.atoms
    if family == "pinf":
        ps = pinf(M)
        if not ps.saturated:
            raise UnsaturatedPinf(f"P_inf did not saturate after {ps.iterations_used} rounds")
        if len(ps.elements) > PINF_LIMIT and not allow_large:
            raise FamilyTooLarge(
                f"P_inf has {len(ps.elements)} elements (limit {PINF_LIMIT}); override to proceed"
            )
        return list(ps.elements)
    raise ValueError(f"unknown family {family!r}")


def family_polynomials(M: ArtinMonoid, elements, step_cap: int = DEFAULT_STEP_CAP) -> list[FamilyMember]:
    """Distinct g_J over nonempty J ⊆ elements, each with its first J.

    All subset joins are computed once; the g_J then come from a
    subset-sum (zeta) transform of the signed monomials.
    """
    elements = list(elements)
    n = len(elements)
    joins = subset_joins(M, elements, step_cap)
    deg = max((len(j) for j in joins if j is not INF), default=0)
    table = []
    for mask, j in enumerate(joins):
        row = [0] * (deg + 1)
        if j is not INF:
            row[len(j)] = -1 if bin(mask).count("1") % 2 else 1
        table.append(row)
    for bit in range(n):
        b = 1 << bit
        for mask in range(1 << n):
            if mask & b:
                src, dst = table[mask ^ b], table[mask]
                for k in range(deg + 1):
                    dst[k] += src[k]
    seen = {}
    for mask in _mask_order(n):
        poly = IntPolynomial(table[mask])
        if poly not in seen:
            J = tuple(elements[i] for i in range(n) if mask >> i & 1)
            seen[poly] = FamilyMember(J, poly)
    return list(seen.values())


def _require_uniform(M: ArtinMonoid):
    if not has_uniform_weights(M.presentation):
        raise NonUniformWeights("root isolation needs uniform weights; use point evaluation")


# -- temperature space ---------------------------------------------------------


@dataclass
class Endpoint:
    beta: float
    t: RootInterval | None  # None at β = ±∞
    closed: bool

    def to_dict(self) -> dict:
        return {
            "beta": _float_out(self.beta),
            "closed": self.closed,
            "t": None if self.t is None else self.t.to_dict(),
        }


@dataclass
class Component:
    lower: Endpoint
    upper: Endpoint

    @property
    def is_point(self) -> bool:
        return self.lower.t is not None and self.lower.t is self.upper.t

    def contains(self, beta: float) -> bool:
        lo, hi = self.lower, self.upper
        above = beta > lo.beta or (lo.closed and beta == lo.beta)
        below = beta < hi.beta or (hi.closed and beta == hi.beta)
        return above and below

    def describe(self) -> str:
        if self.is_point:
            return f"{{{_fmt(self.lower.beta)}}}"
        left = "[" if self.lower.closed else "("
        right = "]" if self.upper.closed else ")"
        return f"{left}{_fmt(self.lower.beta)}, {_fmt(self.upper.beta)}{right}"

    def to_dict(self) -> dict:
        return {"lower": self.lower.to_dict(), "upper": self.upper.to_dict(), "point": self.is_point}


@dataclass
class _Piece:
    """A maximal open t-interval between roots, or a root itself."""

    lo: RootInterval | None  # None for t = 0
    hi: RootInterval | None  # None for t = +∞
    root: RootInterval | None
    sample: Fraction | None
    good: bool


@dataclass
class TemperatureSpace:
    components: list[Component]
    includes_plus_infinity: bool
    family: str
    polynomials: list[FamilyMember] = field(default_factory=list)
    roots: list[RootInterval] = field(default_factory=list)
    pieces: list = field(default_factory=list, repr=False)
    annotations: list[str] = field(default_factory=list)

    def contains(self, beta: float) -> bool:
        return any(c.contains(beta) for c in self.components)

    def describe(self) -> str:
        parts = [c.describe() for c in self.components]
        return " ∪ ".join(parts) if parts else "∅"

    def to_dict(self, M: ArtinMonoid | None = None) -> dict:
        return {
            "family": self.family,
            "components": [c.to_dict() for c in self.components],
            "includes_plus_infinity": self.includes_plus_infinity,
            "description": self.describe(),
            "polynomials": [
                {
                    "J": [_word(M, w) for w in m.J],
                    "coefficients": list(m.poly.coeffs),
                    "polynomial": str(m.poly),
                }
                for m in self.polynomials
            ],
            "annotations": list(self.annotations),
        }

    def csv_rows(self) -> list[dict]:
        rows = []
        for idx, c in enumerate(self.components):
            for side, ep in (("lower", c.lower), ("upper", c.upper)):
                t = None if ep.t is None else ep.t.tightened()
                rows.append({
                    "component": idx,
                    "endpoint": side,
                    "closed": ep.closed,
                    "beta": _float_out(ep.beta),
                    "polynomial": "" if t is None else " ".join(map(str, t.poly.coeffs)),
                    "t_lo_num": "" if t is None else t.lo.numerator,
                    "t_lo_den": "" if t is None else t.lo.denominator,
                    "t_hi_num": "" if t is None else t.hi.numerator,
                    "t_hi_den": "" if t is None else t.hi.denominator,
                    "t_approx": "" if t is None else repr(t.value()),
                })
        return rows


def _word(M, w):
    if M is None:
        return list(w)
    return M.format_word(w)


def _fmt(beta: float) -> str:
    if math.isinf(beta):
        return "∞" if beta > 0 else "-∞"
    return f"{beta:.12g}"


def _float_out(beta: float):
    if math.isinf(beta):
        return "inf" if beta > 0 else "-inf"
    return float(f"{beta:.12g}")


def beta_of(root: RootInterval) -> float:
    """β = -ln t for the isolated root t (t > 0)."""
    x = root.exact
    if x is not None:
        return 0.0 if x == 1 else -math.log(x)
    return -math.log(root.value())


def _separate(a: RootInterval, b: RootInterval) -> Fraction:
    """A rational strictly between the roots a < b."""
    while not a.hi < b.lo:
        if a.width() >= b.width() and a.lo != a.hi:
            a.refine(a.width() / 2)
        elif b.lo != b.hi:
            b.refine(b.width() / 2)
        else:
            a.refine(a.width() / 2)
    return (a.hi + b.lo) / 2


def _union_roots(polys: list[IntPolynomial]) -> list[RootInterval]:
    """All distinct positive roots of the given polynomials, sorted."""
    product = IntPolynomial([1])
    for p in polys:
        if p.degree > 0:
            product = product * p
    if product.degree <= 0:
        return []
    chain = SturmChain(product)
    return isolate_roots(product, 0, chain.root_bound())


def _all_nonneg_at(polys, x: Fraction) -> bool:
    return all(p(x) >= 0 for p in polys)


def _pieces(polys: list[IntPolynomial]) -> tuple[list[_Piece], list[RootInterval]]:
    roots = _union_roots(polys)
    pieces = []
    if not roots:
        for x in (Fraction(1, 2),):
            pieces.append(_Piece(None, None, None, x, _all_nonneg_at(polys, x)))
        return pieces, roots
    first = roots[0]
    while first.lo <= 0:
        first.refine(first.width() / 2)
    x = first.lo / 2
    pieces.append(_Piece(None, first, None, x, _all_nonneg_at(polys, x)))
    for k, r in enumerate(roots):
        good = all(sign_at(p, r) >= 0 for p in polys)
        pieces.append(_Piece(r, r, r, None, good))
        if k + 1 < len(roots):
            x = _separate(r, roots[k + 1])
            pieces.append(_Piece(r, roots[k + 1], None, x, _all_nonneg_at(polys, x)))
    last = roots[-1]
    x = last.hi + 1
    pieces.append(_Piece(last, None, None, x, _all_nonneg_at(polys, x)))
    return pieces, roots


def _t_to_beta_endpoint(root: RootInterval | None, at_zero: bool, closed: bool) -> Endpoint:
    if root is None:
        return Endpoint(math.inf if at_zero else -math.inf, None, False)
    return Endpoint(beta_of(root), root, closed)


def _assemble(pieces: list[_Piece]) -> list[Component]:
    """Merge runs of good pieces into components, then map t to β."""
    runs = []
    current = []
    for piece in pieces:
        if piece.good:
            current.append(piece)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    comps = []
    for run in runs:
        first, last = run[0], run[-1]
        # t-interval from first.lo to last.hi
        t_lo_closed = first.root is not None
        t_hi_closed = last.root is not None
        # larger t means smaller β
        lower = _t_to_beta_endpoint(last.hi, at_zero=False, closed=t_hi_closed)
        upper = _t_to_beta_endpoint(first.lo, at_zero=True, closed=t_lo_closed)
        if first.root is not None and first is last:
            upper = lower
        comps.append(Component(lower, upper))
    comps.sort(key=lambda c: c.lower.beta)
    return comps


def temperature_space(M: ArtinMonoid, family: str = "atoms", force: bool = False,
                      allow_large: bool = False) -> TemperatureSpace:
    elements = family_elements(M, family, force=force, allow_large=allow_large)
    members = family_polynomials(M, elements)
    polys = [m.poly for m in members]
    pieces, roots = _pieces(polys)
    comps = _assemble(pieces)
    space = TemperatureSpace(
        components=comps,
        includes_plus_infinity=pieces[0].good,
        family=family,
        polynomials=members,
        roots=roots,
        pieces=pieces,
    )
    space.annotations.extend(_annotations(M, space, family, force))
    return space


def _annotations(M, space, family, force) -> list[str]:
    notes = []
    if family == "atoms" and force and reduction_guarantee(M.presentation) is None:
        notes.append("forced: reduction to atoms is not known for this presentation")
    if family == "atoms":
        notes.append(f"reduction guarantee: {reduction_guarantee(M.presentation) or 'none'}")
    notes.append("β = 0 membership decided from the inequalities g_J(1) ≥ 0 as stated")
    full = subset_polynomial(M, M.atoms)
    zeros = [c.lower.beta for c in space.components if c.lower.t is not None and sign_at(full, c.lower.t) == 0]
    for b in sorted(set(zeros)):
        notes.append(f"the full atom family has g = 0 at β = {_fmt(b)}")
    return notes


# -- point evaluation -------------------------------------------------------------


@dataclass
class PositivityReport:
    t: Fraction | float
    exact: bool
    values: list[tuple[tuple[Word, ...], Fraction | float]]

    @property
    def verdict(self) -> bool:
        return all(v >= 0 for _, v in self.values)

    def to_dict(self, M: ArtinMonoid | None = None) -> dict:
        return {
            "t": _num_out(self.t),
            "exact": self.exact,
            "verdict": self.verdict,
            "values": [
                {"J": [_word(M, w) for w in J], "value": _num_out(v), "approx": float(v)}
                for J, v in self.values
            ],
        }


def _num_out(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return float(f"{x:.12g}")


def _weighted_g(M: ArtinMonoid, J, beta: float, step_cap: int) -> float:
    weights = [float(w) for w in M.presentation.weights]
    total = 0.0
    entries = list(J)
    joins = subset_joins(M, entries, step_cap)
    for mask, j in enumerate(joins):
        if j is INF:
            continue
        log_n = sum(math.log(weights[s]) for s in j)
        sign = -1 if bin(mask).count("1") % 2 else 1
        total += sign * math.exp(-beta * log_n)
    return total


def evaluate_positivity(M: ArtinMonoid, t=None, beta: float | None = None, family: str = "atoms",
                        Js=None, force: bool = True, step_cap: int = DEFAULT_STEP_CAP) -> PositivityReport:
    """g_J at a point, for explicit Js or every nonempty J in the family.

    Exact when t is rational and weights are uniform; otherwise floats.
    """
    if (t is None) == (beta is None):
        raise ValueError("give exactly one of t and beta")
    if Js is None:
        if has_uniform_weights(M.presentation):
            elements = family_elements(M, family, force=force)
        else:
            elements = M.atoms if family == "atoms" else list(pinf(M).elements)
        n = len(elements)
        Js = [tuple(elements[i] for i in range(n) if m >> i & 1) for m in _mask_order(n)]
    if not has_uniform_weights(M.presentation):
        if beta is None:
            raise NonUniformWeights("weighted presentations take β, not t")
        vals = [(tuple(J), _weighted_g(M, J, float(beta), step_cap)) for J in Js]
        return PositivityReport(float(beta), False, vals)
    if t is None:
        x = math.exp(-float(beta))
        exact = False
    elif isinstance(t, float):
        x, exact = t, False
    else:
        x, exact = Fraction(t), True
    vals = [(tuple(J), subset_polynomial(M, J, step_cap)(x)) for J in Js]
    return PositivityReport(x, exact, vals)


# -- critical temperature and gaps ---------------------------------------------------


def critical_beta(M: ArtinMonoid) -> tuple[float, RootInterval]:
    """β_c = -ln r for the smallest positive root r of the clique polynomial."""
    _require_uniform(M)
    h = subset_polynomial(M, M.atoms)
    roots = isolate_roots(h, 0, SturmChain(h).root_bound()) if h.degree > 0 else []
    if not roots:
        raise NoPositiveRoot(f"clique polynomial {h} has no positive root")
    r = roots[0]
    return beta_of(r), r


@dataclass
class Gap:
    lower: Endpoint
    upper: Endpoint
    witness_J: tuple[Word, ...]
    sample_t: Fraction
    value: Fraction

    def to_dict(self, M: ArtinMonoid | None = None) -> dict:
        return {
            "beta_interval": [_float_out(self.lower.beta), _float_out(self.upper.beta)],
            "witness": {
                "J": [_word(M, w) for w in self.witness_J],
                "t": _num_out(self.sample_t),
                "t_approx": float(self.sample_t),
                "g": _num_out(self.value),
                "g_approx": float(self.value),
            },
        }


@dataclass
class GapReport:
    gaps: list[Gap]
    space: TemperatureSpace

    @property
    def has_gap(self) -> bool:
        return bool(self.gaps)

    def to_dict(self, M: ArtinMonoid | None = None) -> dict:
        return {
            "has_gap": self.has_gap,
            "gaps": [g.to_dict(M) for g in self.gaps],
            "space": self.space.describe(),
        }


def _witness(space: TemperatureSpace, x: Fraction) -> tuple[tuple[Word, ...], Fraction]:
    for m in space.polynomials:  # ordered by (|J|, J)
        v = m.poly(x)
        if v < 0:
            return m.J, v
    raise AssertionError("bad piece without a failing polynomial")


def detect_gap(M: ArtinMonoid, family: str = "atoms", force: bool = False,
               allow_large: bool = False) -> GapReport:
    """Bounded β-intervals separating components, each with an exact witness."""
    space = temperature_space(M, family, force=force, allow_large=allow_large)
    gaps = []
    comps = space.components
    for left, right in zip(comps, comps[1:]):
        # t-samples of bad pieces lying strictly between the two components
        lo_beta, hi_beta = left.upper.beta, right.lower.beta
        bad = [
            p for p in space.pieces
            if not p.good and p.sample is not None and lo_beta < -math.log(p.sample) < hi_beta
        ]
        if not bad:
            bad = [p for p in space.pieces if not p.good and p.root is not None
                   and lo_beta < beta_of(p.root) < hi_beta]
            x = bad[0].root.exact if bad and bad[0].root.exact is not None else None
            if x is None:
                raise AssertionError("gap without rational sample")
        else:
            x = bad[0].sample
        J, v = _witness(space, x)
        gaps.append(Gap(left.upper, right.lower, J, x, v))
    return GapReport(gaps, space)


# -- measure of cells -------------------------------------------------------------


def mu_cell(M: ArtinMonoid, p, K, t, step_cap: int = DEFAULT_STEP_CAP):
    """μ(pΩ_K) = t^ℓ(p) · g_K(t); zero when e ∈ K."""
    K = [M.canonical(k) for k in K]
    if any(len(k) == 0 for k in K):
        return Fraction(0) if not isinstance(t, float) else 0.0
    x = t if isinstance(t, float) else Fraction(t)
    g = subset_polynomial(M, K, step_cap) if K else IntPolynomial([1])
    return x ** len(M.canonical(p)) * g(x)


def mu_set(M: ArtinMonoid, cells, t, step_cap: int = DEFAULT_STEP_CAP):
    total = Fraction(0) if not isinstance(t, float) else 0.0
    for c in cells:
        total += mu_cell(M, c.prefix, c.blockers, t, step_cap)
    return total


# -- plot-ready samples ---------------------------------------------------------


def sample_grid(M: ArtinMonoid, members: list[FamilyMember], points: int = 101,
                t_max=Fraction(1)) -> str:
    """CSV of g_J(t) on a uniform grid over [0, t_max]."""
    t_max = Fraction(t_max)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t"] + ["g_" + "_".join(M.format_word(w) or "e" for w in m.J) for m in members])
    for k in range(points):
        x = t_max * k / (points - 1) if points > 1 else Fraction(0)
        writer.writerow([repr(float(x))] + [repr(float(m.poly(x))) for m in members])
    return out.getvalue()


def rows_to_csv(rows: list[dict]) -> str:
    out = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


def root_rows(members: list[FamilyMember], M: ArtinMonoid | None = None) -> list[dict]:
    """One CSV row per positive root of each family polynomial."""
    rows = []
    for m in members:
        if m.poly.degree <= 0:
            continue
        for r in isolate_roots(m.poly, 0, SturmChain(m.poly).root_bound()):
            r = r.tightened()
            rows.append({
                "J": " ".join(_word(M, w) if M else str(w) for w in m.J),
                "polynomial": " ".join(map(str, m.poly.coeffs)),
                "lo_num": r.lo.numerator,
                "lo_den": r.lo.denominator,
                "hi_num": r.hi.numerator,
                "hi_den": r.hi.denominator,
                "t_approx": float(f"{r.value():.12g}"),
                "beta_approx": _float_out(beta_of(r)),
            })
    return rows


__all__ = [
    "FamilyMember", "GuaranteeUnavailable", "UnsaturatedPinf", "FamilyTooLarge", "NoPositiveRoot",
    "NonUniformWeights", "Endpoint", "Component", "TemperatureSpace", "PositivityReport", "Gap",
    "GapReport", "family_elements", "family_polynomials", "temperature_space", "evaluate_positivity",
    "critical_beta", "detect_gap", "mu_cell", "mu_set", "sample_grid", "rows_to_csv", "root_rows",
    "beta_of",
]
