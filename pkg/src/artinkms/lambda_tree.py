"""Lists over P ∪ {∞}, the λ₁/λ₂ recursion and the scalar Z-functional.

A list λ is a tuple whose entries are canonical words or ``INF``.  A
non-leaf list is split at an entry pq with p an atom: λ₁ replaces that
entry by p, and λ₂ shifts every entry by p, λ₂(j) = p\\λ(j).  In the
one-dimensional case the Z-functional is an integer polynomial in t and
satisfies Z(λ) = Z(λ₁) + t^ℓ(p) Z(λ₂).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .cliques import inclusion_exclusion, subset_joins
from .polynomials import IntPolynomial
from .reversing import DEFAULT_STEP_CAP, shift
from .words import INF, ArtinMonoid

LambdaList = tuple

DEFAULT_DEPTH_CAP = 10_000
DEFAULT_NODE_CAP = 1_000_000


class LeafInput(ValueError):
    pass


def normalize(M: ArtinMonoid, entries) -> LambdaList:
    return tuple(INF if x is INF else M.canonical(x) for x in entries)


def is_leaf(lam) -> bool:
    if any(x is not INF and len(x) == 0 for x in lam):
        return True
    return all(x is INF or len(x) == 1 for x in lam)


def split_points(M: ArtinMonoid, lam) -> list[tuple[int, int]]:
    """Every admissible (index, atom) choice for a step."""
    out = []
    for i, x in enumerate(lam):
        if x is not INF and len(x) > 1:
            out.extend((i, s) for s in M.atom_left_divisors(x))
    return out


def leftmost_chooser(M: ArtinMonoid, lam) -> tuple[int, int]:
    for i, x in enumerate(lam):
        if x is not INF and len(x) > 1:
            return i, x[0]
    raise LeafInput(f"{lam!r} is a leaf")


def random_chooser(rng: random.Random) -> Callable:
    """A chooser picking uniformly among all admissible (index, atom) pairs."""

    def choose(M: ArtinMonoid, lam):
        options = split_points(M, lam)
        if not options:
            raise LeafInput(f"{lam!r} is a leaf")
        return rng.choice(options)

    return choose


def step(M: ArtinMonoid, lam, chooser=None, step_cap: int = DEFAULT_STEP_CAP):
    """Return (λ₁, λ₂, p) for a non-leaf list."""
    lam = normalize(M, lam)
    if is_leaf(lam):
        raise LeafInput(f"{lam!r} is a leaf")
    i, s = (chooser or leftmost_chooser)(M, lam)
    p = (s,)
    lam1 = lam[:i] + (p,) + lam[i + 1:]
    lam2 = tuple(shift(M, p, x, step_cap) for x in lam)
    return lam1, lam2, p


def z_poly(M: ArtinMonoid, lam, step_cap: int = DEFAULT_STEP_CAP) -> IntPolynomial:
    """Σ over index subsets U of (-1)^|U| t^ℓ(∨λ(U)), ∞ terms dropped.

    Entries equal to e are accepted; such a list has Z = 0.
    """
    return inclusion_exclusion(subset_joins(M, normalize(M, lam), step_cap))


def remove_dominated(M: ArtinMonoid, lam) -> LambdaList:
    """Delete entries that are right multiples of another remaining entry."""
    items = list(normalize(M, lam))
    changed = True
    while changed:
        changed = False
        for j, y in enumerate(items):
            if y is INF:
                continue
            for i, x in enumerate(items):
                if i != j and x is not INF and M.left_divides(x, y):
                    del items[j]
                    changed = True
                    break
            if changed:
                break
    return tuple(items)


@dataclass
class TreeReport:
    finite: bool | None  # None: undecided within caps
    node_count: int
    max_depth: int
    leaf_count: int
    witness_branch: str | None = None

    def to_dict(self) -> dict:
        return {
            "finite": "Inconclusive" if self.finite is None else self.finite,
            "node_count": self.node_count,
            "max_depth": self.max_depth,
            "leaf_count": self.leaf_count,
            "witness_branch": self.witness_branch,
        }


def build_tree(
    M: ArtinMonoid,
    lam,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    node_cap: int = DEFAULT_NODE_CAP,
    step_cap: int = DEFAULT_STEP_CAP,
) -> TreeReport:
    """Expand the binary tree rooted at λ with the leftmost chooser.

    Subtrees are memoised by list, so repeated lists are expanded once while
    the reported counts still refer to the full tree.  Because the step is
    deterministic, a list recurring on its own branch proves an infinite
    branch; that is reported as ``finite=False`` with the branch as witness.
    """
    root = normalize(M, lam)
    memo: dict = {}  # list -> (nodes, depth, leaves)
    on_path: set = set()
    # frames: [list, branch label string, children or None]
    stack = [[root, "", None]]
    while stack:
        frame = stack[-1]
        cur, branch, kids = frame
        if cur in memo:
            stack.pop()
            continue
        if kids is None:
            if is_leaf(cur):
                memo[cur] = (1, 0, 1)
                stack.pop()
                continue
            if len(branch) >= depth_cap:
                return _undecided(memo, root, branch)
            l1, l2, _ = step(M, cur, step_cap=step_cap)
            frame[2] = (l1, l2)
            on_path.add(cur)
            for label, child in (("2", l2), ("1", l1)):
                if child in on_path:
                    return TreeReport(False, len(memo), len(branch) + 1, 0, branch + label)
                if child not in memo:
                    stack.append([child, branch + label, None])
            continue
        a, b = (memo[k] for k in kids)
        nodes = 1 + a[0] + b[0]
        memo[cur] = (nodes, 1 + max(a[1], b[1]), a[2] + b[2])
        on_path.discard(cur)
        stack.pop()
        if nodes > node_cap:
            return _undecided(memo, root, branch)
    nodes, depth, leaves = memo[root]
    return TreeReport(True, nodes, depth, leaves)


def _undecided(memo, root, branch) -> TreeReport:
    nodes = sum(v[0] for v in memo.values())
    depth = max((v[1] for v in memo.values()), default=0)
    return TreeReport(None, nodes, max(depth, len(branch)), 0, branch or None)
