"""Integer polynomials and exact real-root isolation by Sturm sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


class ZeroPolynomial(ValueError):
    pass


class IntPolynomial:
    """Univariate polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_dict(cls, terms: dict) -> IntPolynomial:
        if not terms:
            return cls()
        out = [0] * (max(terms) + 1)
        for d, c in terms.items():
            out[d] += c
        return cls(out)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by t^k."""
        return IntPolynomial((0,) * k + self.coeffs) if self.coeffs else self

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def exact_divide(self, other: IntPolynomial) -> IntPolynomial:
        """Quotient self / other; raises ValueError unless the division is exact."""
        q, r = _divmod([Fraction(c) for c in self.coeffs], [Fraction(c) for c in other.coeffs])
        if any(r) or any(c.denominator != 1 for c in q):
            raise ValueError(f"{other} does not divide {self} over the integers")
        return IntPolynomial(int(c) for c in q)

    def squarefree_part(self) -> IntPolynomial:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no square-free part")
        f = [Fraction(c) for c in self.coeffs]
        g = _gcd(f, [Fraction(c) for c in self.derivative().coeffs])
        q, _ = _divmod(f, g)
        return _primitive(q)

    def truncated_inverse(self, n: int) -> list[int]:
        """First n+1 coefficients of 1/self as a power series (needs constant term ±1)."""
        c0 = self.coeffs[0] if self.coeffs else 0
        if c0 not in (1, -1):
            raise ValueError("power-series inverse needs constant term ±1")
        out = []
        for k in range(n + 1):
            acc = 1 if k == 0 else 0
            for j in range(1, min(k, self.degree) + 1):
                acc -= self.coeffs[j] * out[k - j]
            out.append(acc * c0)
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if d == 0 else "t" if d == 1 else f"t^{d}"
            mag = abs(c)
            body = str(mag) if d == 0 or mag != 1 else ""
            term = body + mono
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)


CliquePolynomial = IntPolynomial


def _as_poly(x) -> IntPolynomial:
    return x if isinstance(x, IntPolynomial) else IntPolynomial([x])


# -- dense rational helpers (lowest degree first) ---------------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r = _trim(r)
    return q, r


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    return a


def _primitive(a) -> IntPolynomial:
    a = _trim(a)
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return IntPolynomial(c // g for c in ints)


def gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient."""
    return _primitive(_gcd([Fraction(c) for c in f.coeffs], [Fraction(c) for c in g.coeffs]))


# -- Sturm sequences ---------------------------------------------------------


class SturmChain:
    """Sturm sequence of the square-free part of a nonzero polynomial."""

    def __init__(self, poly: IntPolynomial):
        if poly.is_zero():
            raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
        self.poly = poly
        self.squarefree = poly.squarefree_part()
        f = [Fraction(c) for c in self.squarefree.coeffs]
        seq = [f, _trim([Fraction(c) for c in self.squarefree.derivative().coeffs])]
        while seq[-1]:
            _, r = _divmod(seq[-2], seq[-1])
            seq.append([-c for c in r])
        self.sequence = [s for s in seq if s]

    def variations(self, x: Fraction) -> int:
        signs = []
        for p in self.sequence:
            v = 0
            for c in reversed(p):
                v = v * x + c
            if v:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, a, b) -> int:
        """Number of distinct real roots in (a, b]."""
        return self.variations(Fraction(a)) - self.variations(Fraction(b))

    def root_bound(self) -> Fraction:
        """Cauchy bound: every real root lies in (-B, B)."""
        c = self.squarefree.coeffs
        lead = abs(c[-1])
        return 1 + max((Fraction(abs(x), lead) for x in c[:-1]), default=Fraction(0))


@dataclass
class RootInterval:
    """A real root isolated in (lo, hi]; lo == hi means the root is exactly lo."""

    chain: SturmChain = field(repr=False)
    lo: Fraction
    hi: Fraction

    @property
    def poly(self) -> IntPolynomial:
        return self.chain.poly

    @property
    def exact(self) -> Fraction | None:
        if self.lo == self.hi:
            return self.lo
        if self.chain.squarefree(self.hi) == 0:
            return self.hi
        return None

    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, eps=Fraction(1, 10**12)) -> RootInterval:
        eps = Fraction(eps)
        f = self.chain.squarefree
        while self.hi - self.lo > eps:
            if f(self.hi) == 0:
                self.lo = self.hi
                break
            mid = (self.lo + self.hi) / 2
            if self.chain.count(self.lo, mid) == 1:
                self.hi = mid
            else:
                self.lo = mid
        return self

    def refine_lo_above(self, x) -> RootInterval:
        """Bisect until lo > x (the root must exceed x)."""
        while self.lo <= x and self.lo != self.hi:
            self.refine(self.width() / 2)
        return self

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def value(self, digits: int = 12) -> float:
        return self.tightened(Fraction(1, 10 ** (digits + 2))).approx

    def tightened(self, eps=Fraction(1, 2**48)) -> RootInterval:
        """A refined copy; the original interval is left alone."""
        return RootInterval(self.chain, self.lo, self.hi).refine(eps)

    def __lt__(self, other):
        return self.hi <= other.lo if self.hi != other.hi else False

    def to_dict(self) -> dict:
        tight = self.tightened()
        return {
            "polynomial": list(self.poly.coeffs),
            "lo": _rat(tight.lo),
            "hi": _rat(tight.hi),
            "approx": float(f"{self.value():.12g}"),
        }


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _divisors(n: int, limit: int = 10**6) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots by the rational root theorem (skipped for huge coefficients)."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    coeffs = p.coeffs
    out = set()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        out.add(Fraction(0))
    tail = IntPolynomial(coeffs[k:])
    nums, dens = _divisors(tail.coeffs[0]), _divisors(tail.coeffs[-1])
    if nums is None or dens is None:
        return sorted(out)
    for a in nums:
        for b in dens:
            for x in (Fraction(a, b), Fraction(-a, b)):
                if x not in out and tail(x) == 0:
                    out.add(x)
    return sorted(out)


def isolate_roots(p: IntPolynomial, lo, hi) -> list[RootInterval]:
    """Isolating intervals for all distinct real roots of p in (lo, hi].

    Rational roots are returned as exact points (lo == hi).
    """
    chain = SturmChain(p)
    lo, hi = Fraction(lo), Fraction(hi)
    exact = [x for x in rational_roots(chain.squarefree) if lo < x <= hi]
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = chain.count(a, b)
        if n == 0:
            continue
        if n == 1:
            hit = [x for x in exact if a < x <= b]
            out.append(RootInterval(chain, hit[0], hit[0]) if hit else RootInterval(chain, a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort(key=lambda r: r.lo)
    return out


def positive_roots(p: IntPolynomial) -> list[RootInterval]:
    chain = SturmChain(p)
    return isolate_roots(p, 0, chain.root_bound())


def sign_at(g: IntPolynomial, root: RootInterval) -> int:
    """Exact sign of g at the algebraic number isolated by ``root``."""
    if g.is_zero():
        return 0
    x = root.exact
    if x is not None:
        v = g(x)
        return (v > 0) - (v < 0)
    common = gcd(g, root.chain.squarefree)
    if common.degree > 0 and SturmChain(common).count(root.lo, root.hi) == 1:
        return 0
    gchain = SturmChain(g)
    r = RootInterval(root.chain, root.lo, root.hi)
    while gchain.count(r.lo, r.hi) > 0:
        r.refine(r.width() / 2)
        if r.lo == r.hi:
            v = g(r.lo)
            return (v > 0) - (v < 0)
    v = g(r.hi)
    return (v > 0) - (v < 0)
