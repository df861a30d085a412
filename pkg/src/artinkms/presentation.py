"""Artin monoid presentations given by Coxeter matrices.

A presentation is a list of generator names together with a symmetric
Coxeter matrix.  Infinity is stored as the integer ``0`` both on disk and
in memory, so every matrix is purely integral and ``1`` only ever appears
on the diagonal.

File format (UTF-8 JSON, no other keys allowed)::

    {"name": "B3", "generators": ["s1", "s2"], "coxeter": [[1, 3], [3, 1]]}

with an optional ``"weights"`` array of positive decimal strings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations

INFINITY = 0

_ALLOWED_KEYS = {"name", "generators", "coxeter", "weights"}


class PresentationError(ValueError):
    """Base class for invalid presentation input."""


class MalformedInput(PresentationError):
    pass


class AsymmetricMatrix(PresentationError):
    pass


class BadDiagonal(PresentationError):
    pass


class BadEntry(PresentationError):
    pass


class InconsistentWeights(PresentationError):
    pass


@dataclass(frozen=True)
class MonoidPresentation:
    name: str
    generators: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    weights: tuple[Fraction, ...] | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        _validate(self)
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.generators)})

    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> int:
        """Coxeter entry, with 0 meaning infinity."""
        return self.matrix[i][j]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} in {self.name}") from None

    def relations(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """The braid relations <st>^m = <ts>^m for s < t with finite m."""
        rels = []
        for s, t in combinations(range(self.rank), 2):
            m = self.m(s, t)
            if m != INFINITY:
                rels.append((alternating(s, t, m), alternating(t, s, m)))
        return rels

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "generators": list(self.generators),
            "coxeter": [list(row) for row in self.matrix],
        }
        if self.weights is not None:
            d["weights"] = [_fraction_to_decimal(w) for w in self.weights]
        return d


def alternating(s: int, t: int, length: int) -> tuple[int, ...]:
    """The alternating word s t s t ... of the given length."""
    return tuple(s if k % 2 == 0 else t for k in range(length))


def _validate(P: MonoidPresentation) -> None:
    n = len(P.generators)
    if len(set(P.generators)) != n:
        raise MalformedInput("duplicate generator names")
    for g in P.generators:
        if not isinstance(g, str) or not g or "." in g or "," in g or "|" in g or g.strip() != g:
            raise MalformedInput(f"bad generator name {g!r}")
    if len(P.matrix) != n or any(len(row) != n for row in P.matrix):
        raise MalformedInput("coxeter matrix must be n x n for n generators")
    for i in range(n):
        if P.matrix[i][i] != 1:
            raise BadDiagonal(f"m[{i}][{i}] = {P.matrix[i][i]}, expected 1")
        for j in range(n):
            if P.matrix[i][j] != P.matrix[j][i]:
                raise AsymmetricMatrix(f"m[{i}][{j}] != m[{j}][{i}]")
            if i != j and (P.matrix[i][j] == 1 or P.matrix[i][j] < 0):
                raise BadEntry(f"off-diagonal entry m[{i}][{j}] = {P.matrix[i][j]}")
    if P.weights is not None:
        if len(P.weights) != n:
            raise MalformedInput("need exactly one weight per generator")
        if any(w <= 0 for w in P.weights):
            raise MalformedInput("weights must be positive")
        for i, j in combinations(range(n), 2):
            m = P.matrix[i][j]
            if m != INFINITY and m % 2 == 1 and P.weights[i] != P.weights[j]:
                raise InconsistentWeights(
                    f"{P.generators[i]} and {P.generators[j]} are joined by odd m={m} "
                    "but carry different weights"
                )


def has_uniform_weights(P: MonoidPresentation) -> bool:
    """True when no weights were given, i.e. N(s) = e for every generator."""
    return P.weights is None


def _fraction_to_decimal(w: Fraction) -> str:
    if w.denominator == 1:
        return str(w.numerator)
    # exact only for terminating decimals; fall back to num/den
    den = w.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = 0
    while (w * 10**digits).denominator != 1:
        digits += 1
    scaled = abs(w.numerator * 10**digits // w.denominator)
    whole, frac = divmod(scaled, 10**digits)
    return f"{'-' if w < 0 else ''}{whole}.{frac:0{digits}d}"


def parse_presentation(text: str) -> MonoidPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedInput("top level must be an object")
    unknown = set(data) - _ALLOWED_KEYS
    if unknown:
        raise MalformedInput(f"unknown keys: {sorted(unknown)}")
    for key in ("name", "generators", "coxeter"):
        if key not in data:
            raise MalformedInput(f"missing key {key!r}")
    name, gens, cox = data["name"], data["generators"], data["coxeter"]
    if not isinstance(name, str):
        raise MalformedInput("name must be a string")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise MalformedInput("generators must be an array of strings")
    if not isinstance(cox, list) or not all(isinstance(r, list) for r in cox):
        raise MalformedInput("coxeter must be an array of arrays")
    for row in cox:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool) or x < 0:
                raise MalformedInput("coxeter entries must be non-negative integers")
    weights = None
    if "weights" in data:
        raw = data["weights"]
        if not isinstance(raw, list) or not all(isinstance(w, str) for w in raw):
            raise MalformedInput("weights must be an array of decimal strings")
        try:
            weights = tuple(Fraction(w) for w in raw)
        except (ValueError, ZeroDivisionError):
            raise MalformedInput("weights must be positive decimal strings") from None
    return MonoidPresentation(name, tuple(gens), tuple(tuple(r) for r in cox), weights)


def serialize_presentation(P: MonoidPresentation) -> str:
    return json.dumps(P.to_dict(), indent=2)


def load_presentation(path) -> MonoidPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Component:
    generators: tuple[int, ...]
    type: str

    @property
    def spherical(self) -> bool:
        return self.type != "non-spherical"


@dataclass(frozen=True)
class Classification:
    right_angled: bool
    finite_type: bool
    components: tuple[Component, ...]


def diagram_components(P: MonoidPresentation, gens=None) -> list[tuple[int, ...]]:
    """Connected components of the Coxeter diagram (edges where m != 2)."""
    gens = list(range(P.rank)) if gens is None else sorted(gens)
    return _components(gens, lambda i, j: P.m(i, j) != 2)


def free_factors(P: MonoidPresentation, gens=None) -> list[tuple[int, ...]]:
    """Components of the graph joining generators with finite m."""
    gens = list(range(P.rank)) if gens is None else sorted(gens)
    return _components(gens, lambda i, j: P.m(i, j) != INFINITY)


def _components(gens, adjacent):
    seen, out = set(), []
    for g in gens:
        if g in seen:
            continue
        comp, stack = [], [g]
        seen.add(g)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in gens:
                if w not in seen and adjacent(v, w):
                    seen.add(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def _component_type(P: MonoidPresentation, comp: tuple[int, ...]) -> str:
    n = len(comp)
    if n == 1:
        return "A1"
    edges = {}
    for i, j in combinations(comp, 2):
        m = P.m(i, j)
        if m == 2:
            continue
        if m == INFINITY:
            return "non-spherical"
        edges[(i, j)] = m
    if n == 2:
        m = next(iter(edges.values()))
        return {3: "A2", 4: "B2"}.get(m, f"I2({m})")
    if len(edges) != n - 1:
        return "non-spherical"  # a connected graph with a cycle
    nbrs = {v: [] for v in comp}
    for (i, j), m in edges.items():
        nbrs[i].append((j, m))
        nbrs[j].append((i, m))
    degrees = sorted(len(v) for v in nbrs.values())
    labels = sorted(edges.values())
    if degrees[-1] > 3:
        return "non-spherical"
    if degrees[-1] == 3:
        if labels[-1] != 3 or degrees.count(3) > 1:
            return "non-spherical"
        centre = next(v for v, nb in nbrs.items() if len(nb) == 3)
        arms = sorted(_arm_length(nbrs, centre, w) for w, _ in nbrs[centre])
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return f"E{n}"
        return "non-spherical"
    # a path
    ends = [v for v, nb in nbrs.items() if len(nb) == 1]
    path = [ends[0]]
    prev = None
    while len(path) < n:
        cur = path[-1]
        nxt = next(w for w, _ in nbrs[cur] if w != prev)
        prev = cur
        path.append(nxt)
    seq = [P.m(path[k], path[k + 1]) for k in range(n - 1)]
    if all(m == 3 for m in seq):
        return f"A{n}"
    big = [m for m in seq if m != 3]
    if len(big) > 1:
        return "non-spherical"
    m = big[0]
    at_end = seq[0] == m or seq[-1] == m
    if m == 4 and at_end:
        return f"B{n}"
    if m == 4 and n == 4:
        return "F4"
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return "non-spherical"


def _arm_length(nbrs, centre, start):
    length, prev, cur = 1, centre, start
    while True:
        nxt = [w for w, _ in nbrs[cur] if w != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def classify(P: MonoidPresentation, gens=None) -> Classification:
    """Classify the presentation (or the parabolic on ``gens``)."""
    gens = list(range(P.rank)) if gens is None else sorted(gens)
    comps = tuple(Component(c, _component_type(P, c)) for c in diagram_components(P, gens))
    right_angled = all(P.m(i, j) in (2, INFINITY) for i, j in combinations(gens, 2))
    finite_type = all(c.spherical for c in comps)
    return Classification(right_angled, finite_type, comps)


def is_spherical(P: MonoidPresentation, gens) -> bool:
    return classify(P, gens).finite_type


def reduction_guarantee(P: MonoidPresentation, gens=None) -> str | None:
    """Name the known theorem giving reduction of positivity to generators.

    Finite type and right-angled presentations qualify directly; otherwise
    the presentation qualifies when it splits as a nontrivial direct or free
    product whose factors qualify.  Returns ``None`` when nothing applies.
    """
    gens = list(range(P.rank)) if gens is None else sorted(gens)
    c = classify(P, gens)
    if c.finite_type:
        return "finite type"
    if c.right_angled:
        return "right-angled"
    for split, label in ((diagram_components, "direct product"), (free_factors, "free product")):
        parts = split(P, gens)
        if len(parts) > 1 and all(reduction_guarantee(P, part) for part in parts):
            return label
    return None


# ---------------------------------------------------------------------------
# constructions


def _merge_names(g1, g2):
    if not set(g1) & set(g2):
        return tuple(g1), tuple(g2)
    return tuple(f"{g}_1" for g in g1), tuple(f"{g}_2" for g in g2)


def _block(P1: MonoidPresentation, P2: MonoidPresentation, cross: int, sep: str) -> MonoidPresentation:
    n1, n2 = P1.rank, P2.rank
    g1, g2 = _merge_names(P1.generators, P2.generators)
    rows = []
    for i in range(n1 + n2):
        row = []
        for j in range(n1 + n2):
            if i < n1 and j < n1:
                row.append(P1.m(i, j))
            elif i >= n1 and j >= n1:
                row.append(P2.m(i - n1, j - n1))
            else:
                row.append(cross)
        rows.append(tuple(row))
    weights = None
    if P1.weights is not None or P2.weights is not None:
        w1 = P1.weights or (Fraction(1),) * n1
        w2 = P2.weights or (Fraction(1),) * n2
        if P1.weights is None or P2.weights is None:
            raise InconsistentWeights("cannot combine weighted and unweighted presentations")
        weights = w1 + w2
    return MonoidPresentation(f"{P1.name}{sep}{P2.name}", g1 + g2, tuple(rows), weights)


def free_product(P1: MonoidPresentation, P2: MonoidPresentation) -> MonoidPresentation:
    return _block(P1, P2, INFINITY, "*")


def direct_product(P1: MonoidPresentation, P2: MonoidPresentation) -> MonoidPresentation:
    return _block(P1, P2, 2, "x")


def from_matrix(name: str, matrix, generators=None) -> MonoidPresentation:
    n = len(matrix)
    gens = generators or tuple(f"s{i + 1}" for i in range(n))
    return MonoidPresentation(name, tuple(gens), tuple(tuple(r) for r in matrix))


def dihedral(m: int) -> MonoidPresentation:
    """I2(m): two generators with <st>^m = <ts>^m (m = 0 for the free monoid)."""
    return from_matrix(f"I2({m})" if m else "F2", [[1, m], [m, 1]])


def braid(n_strands: int) -> MonoidPresentation:
    """The positive braid monoid on n strands (type A_{n-1})."""
    k = n_strands - 1
    rows = [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(k)] for i in range(k)]
    return from_matrix(f"B{n_strands}", rows)


# ---------------------------------------------------------------------------
# bundled fixtures


def fixture_names() -> list[str]:
    root = resources.files("artinkms") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> MonoidPresentation:
    path = resources.files("artinkms") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no bundled fixture {name!r}")
    return parse_presentation(path.read_text(encoding="utf-8"))
