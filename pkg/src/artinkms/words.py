"""Exact word arithmetic in an Artin monoid.

Words are tuples of generator indices.  Since the braid relations are
homogeneous, every equivalence class is a finite set of words of equal
length; this module computes those classes by breadth-first closure
under single relation applications and uses them as the brute-force
decision procedure for equality and left divisibility.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .presentation import INFINITY, MonoidPresentation, alternating

Word = tuple  # tuple[int, ...]

DEFAULT_CLASS_CAP = 100_000
DEFAULT_BALL_CAP = 1_000_000


class _Infinity:
    """Marker for a missing right LCM (p ∨ q = ∞)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
_UNDECIDED = object()


class CapExceeded(RuntimeError):
    """A search was cut off by an explicit size cap."""


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class EquivClass:
    representative: Word
    members: frozenset

    @property
    def length(self) -> int:
        return len(self.representative)


class ArtinMonoid:
    """An Artin monoid with memoised equivalence classes.

    The caches are write-once (a class, once computed, never changes), so
    sharing an instance between readers is harmless.
    """

    def __init__(self, presentation: MonoidPresentation, class_cap: int = DEFAULT_CLASS_CAP):
        self.presentation = presentation
        self.class_cap = class_cap
        self.rank = presentation.rank
        self._classes: dict[Word, EquivClass] = {}
        self._swap = {}
        for s in range(self.rank):
            for t in range(self.rank):
                m = presentation.m(s, t)
                if s != t and m != INFINITY:
                    self._swap[(s, t)] = (m, alternating(s, t, m), alternating(t, s, m))
        self._canon: dict[Word, Word] = {}
        # shared scratch space for other modules (lcm memo and similar)
        self.cache: dict = {}

    def __repr__(self):
        return f"ArtinMonoid({self.presentation.name!r})"

    @property
    def atoms(self) -> list[Word]:
        return [(s,) for s in range(self.rank)]

    # -- syntax -------------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "e") and "e" not in self.presentation.generators:
            return ()
        try:
            return tuple(self.presentation.index(part.strip()) for part in text.split("."))
        except KeyError as exc:
            raise WordSyntaxError(str(exc)) from None

    def format_word(self, w) -> str:
        if w is INF:
            return "inf"
        return ".".join(self.presentation.generators[i] for i in w)

    def validate(self, w) -> Word:
        w = tuple(w)
        if any(not isinstance(x, int) or not 0 <= x < self.rank for x in w):
            raise WordSyntaxError(f"invalid letters in {w!r}")
        return w

    # -- equivalence classes -------------------------------------------------

    def _neighbours(self, w: Word):
        n = len(w)
        for i in range(n - 1):
            rule = self._swap.get((w[i], w[i + 1]))
            if rule is None:
                continue
            m, left, right = rule
            if i + m <= n and w[i:i + m] == left:
                yield w[:i] + right + w[i + m:]

    def equivalence_class(self, w, cap: int | None = None) -> EquivClass:
        w = tuple(w)
        cached = self._classes.get(w)
        if cached is not None:
            return cached
        cap = self.class_cap if cap is None else cap
        seen = {w}
        queue = deque([w])
        while queue:
            u = queue.popleft()
            for v in self._neighbours(u):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > cap:
                        raise CapExceeded(f"equivalence class of {w} exceeds {cap} words")
                    queue.append(v)
        assert all(len(u) == len(w) for u in seen)
        cls = EquivClass(min(seen), frozenset(seen))
        for u in seen:
            self._classes[u] = cls
        return cls

    def canonical(self, w) -> Word:
        """Lexicographically least word representing the same element.

        Built letter by letter: the least atom dividing w on the left, then
        the canonical form of the quotient.  Divisions come from reversing;
        if a reversing exceeds its budget the class is enumerated instead.
        """
        if w is INF:
            return INF
        w = tuple(w)
        if len(w) < 2:
            return w
        hit = self._canon.get(w)
        if hit is not None:
            return hit
        cls = self._classes.get(w)
        if cls is not None:
            return cls.representative
        out = []
        rest = w
        budget = 64 * len(w) ** 2 + 1024
        while len(rest) > 1:
            for s in sorted(set(rest)):
                q = self.divide_atom(s, rest, budget)
                if q is None:
                    continue
                if q is _UNDECIDED:
                    result = self.equivalence_class(w).representative
                    self._canon[w] = result
                    return result
                out.append(s)
                rest = q
                break
        result = tuple(out) + rest
        self._canon[w] = result
        return result

    def canonical_bfs(self, w) -> Word:
        """Class representative by exhaustive enumeration (the oracle route)."""
        w = tuple(w)
        return w if len(w) < 2 else self.equivalence_class(w).representative

    def divide_atom(self, s: int, w: Word, step_cap: int):
        """s\\w as a word when s ≤ w, None when not, _UNDECIDED past the cap."""
        a, b, _ = self.reverse((s,), w, step_cap)
        if a is None:
            return _UNDECIDED
        if a is INF or b:
            return None
        return a

    # -- subword reversing ------------------------------------------------------

    def complement(self, s: int, t: int):
        """s\\t: the word with s·(s\\t) = s ∨ t, or INF when m(s, t) = ∞."""
        if s == t:
            return ()
        rule = self._swap.get((t, s))
        if rule is None:
            return INF
        m, left, _ = rule  # left = <ts>^m, so its first m-1 letters are <ts>^(m-1)
        return left[:m - 1]

    def reverse(self, p: Word, q: Word, step_cap: int):
        """Reverse p⁻¹q to A·B⁻¹ with p·A = q·B.

        Returns (A, B, steps); (INF, None, steps) when an ∞ complement
        occurs; (None, None, steps) when the step cap runs out.  Leftmost
        reversing with two stacks: ``done`` holds the scanned prefix and
        ``todo`` the rest of the word with its first letter on top.
        """
        done = [(x, -1) for x in reversed(p)]
        todo = [(x, 1) for x in reversed(q)]
        steps = 0
        while todo:
            nxt = todo.pop()
            if not done or done[-1][1] > 0 or nxt[1] < 0:
                done.append(nxt)
                continue
            steps += 1
            if steps > step_cap:
                return None, None, steps
            s, t = done.pop()[0], nxt[0]
            st = self.complement(s, t)
            if st is INF:
                return INF, None, steps
            ts = self.complement(t, s)
            # s⁻¹t becomes (s\\t)(t\\s)⁻¹, pushed so its first letter is on top
            todo.extend((x, -1) for x in ts)
            todo.extend((x, 1) for x in reversed(st))
        positive = tuple(x for x, sign in done if sign > 0)
        negative = tuple(x for x, sign in reversed(done) if sign < 0)
        return positive, negative, steps

    def equal(self, u, v) -> bool:
        u, v = tuple(u), tuple(v)
        if len(u) != len(v):
            return False
        if u == v:
            return True
        return v in self.equivalence_class(u).members

    def left_divides(self, p, q) -> bool:
        """p ≤ q, i.e. q = p·r for some r."""
        return self.left_quotient(p, q) is not None

    def left_quotient(self, p, q) -> Word | None:
        """The element r with p·r = q, or None when p does not left-divide q.

        Well defined because Artin monoids are left cancellative.
        """
        p, q = tuple(p), tuple(q)
        k = len(p)
        if k > len(q):
            return None
        if k == 0:
            return self.canonical(q)
        p_members = self.equivalence_class(p).members
        for m in self.equivalence_class(q).members:
            if m[:k] in p_members:
                return self.canonical(m[k:])
        return None

    def atom_left_divisors(self, w) -> list[int]:
        """Generators s with s ≤ w."""
        if not w:
            return []
        return sorted({m[0] for m in self.equivalence_class(w).members})

    def multiply(self, *words) -> Word:
        out = ()
        for w in words:
            out += tuple(w)
        return self.canonical(out)

    # -- balls and growth ----------------------------------------------------

    def ball(self, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[Word]:
        """Canonical representatives of all elements of length ≤ radius."""
        out = []
        for level in self.spheres(radius, cap):
            out.extend(level)
        return out

    def spheres(self, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[list[Word]]:
        key = ("spheres", radius)
        if key in self.cache:
            return self.cache[key]
        levels = [[()]]
        total = 1
        for _ in range(radius):
            nxt = set()
            for w in levels[-1]:
                for s in range(self.rank):
                    nxt.add(self.canonical(w + (s,)))
            total += len(nxt)
            if total > cap:
                raise CapExceeded(f"ball of radius {radius} exceeds {cap} elements")
            levels.append(sorted(nxt))
        self.cache[key] = levels
        return levels

    def growth_coefficients(self, radius: int, cap: int = DEFAULT_BALL_CAP) -> list[int]:
        return [len(level) for level in self.spheres(radius, cap)]

    def right_multiples(self, p, extra: int):
        """Yield, level by level, the sets {p·w : ℓ(w) = k} for k = 0..extra."""
        level = {self.canonical(p)}
        yield sorted(level)
        for _ in range(extra):
            level = {self.canonical(w + (s,)) for w in level for s in range(self.rank)}
            yield sorted(level)
