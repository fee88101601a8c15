"""Finite T0 spaces stored as posets.

Convention used everywhere: open sets are DOWN-sets, so the smallest open
neighbourhood of ``x`` is ``U_x = {y : y <= x}``.  Closed sets are up-sets.

Subsets are handled internally as int bitmasks over dense point indices
(bit ``i`` stands for ``space.points[i]``); :class:`PointSet` wraps a mask
together with its parent space for the public API.
"""

from __future__ import annotations

import graphlib
import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, CycleDetected, NotMonotone, UnknownPoint


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    # canonical ordering of subsets: by size, then lexicographic on indices
    return popcount(mask), tuple(bits(mask))


class FiniteSpace:
    """Immutable finite poset with cached order closure.

    ``below[i]`` is the mask of points ``<= i`` (the minimal open set of
    ``i``) and ``above[i]`` the mask of points ``>= i``.
    """

    __slots__ = ("points", "covers", "below", "above", "index", "topo",
                 "lower_covers", "full", "_memo")

    def __init__(self, points: Sequence[str], below: Sequence[int]):
        n = len(points)
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        if len(self.index) != n:
            raise ValueError("point ids must be distinct")
        self.below = tuple(below)
        above = [0] * n
        for j in range(n):
            for i in bits(self.below[j]):
                above[i] |= 1 << j
        self.above = tuple(above)
        self.full = (1 << n) - 1
        covers = []
        lower = [[] for _ in range(n)]
        for j in range(n):
            strict = self.below[j] & ~(1 << j)
            for i in bits(strict):
                between = strict & self.above[i] & ~(1 << i)
                if not between:
                    covers.append((i, j))
                    lower[j].append(i)
        self.covers = tuple(sorted(covers))
        self.lower_covers = tuple(tuple(c) for c in lower)
        self.topo = _linear_extension(self)
        self._memo: dict = {}

    # -- identity -----------------------------------------------------
    def _key(self):
        return self.points, self.covers

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        edges = ", ".join(f"{self.points[i]}<{self.points[j]}" for i, j in self.covers)
        return f"FiniteSpace(points={list(self.points)}, covers=[{edges}])"

    # -- queries ------------------------------------------------------
    def idx(self, point: str) -> int:
        try:
            return self.index[point]
        except KeyError:
            raise UnknownPoint(f"unknown point {point!r}") from None

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def cover_ids(self) -> list[tuple[str, str]]:
        return [(self.points[i], self.points[j]) for i, j in self.covers]

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.below[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.above[i]
        return out

    def is_open(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    def is_closed(self, mask: int) -> bool:
        return self.up_closure(mask) == mask

    # -- PointSet constructors ---------------------------------------
    def subset(self, ids: Iterable[str]) -> PointSet:
        mask = 0
        for p in ids:
            mask |= 1 << self.idx(p)
        return PointSet(self, mask)

    def whole(self) -> PointSet:
        return PointSet(self, self.full)

    def empty(self) -> PointSet:
        return PointSet(self, 0)

    def subspace(self, mask: int) -> FiniteSpace:
        """Subspace on the points of ``mask`` (induced order, index order kept).

        Results are memoised on the parent, so repeated calls return the same
        object and share its caches.
        """
        cache = self._memo.setdefault("subspace", {})
        sub = cache.get(mask)
        if sub is None:
            members = list(bits(mask))
            sub = FiniteSpace([self.points[i] for i in members],
                              [compress(self.below[i] & mask, members) for i in members])
            cache[mask] = sub
        return sub

    def opposite(self) -> FiniteSpace:
        return FiniteSpace(self.points, self.above)


def compress(mask: int, members: Sequence[int]) -> int:
    """Re-index ``mask`` onto positions within the sorted index list ``members``."""
    out = 0
    for pos, i in enumerate(members):
        if mask >> i & 1:
            out |= 1 << pos
    return out


def expand(mask: int, members: Sequence[int]) -> int:
    out = 0
    for pos in bits(mask):
        out |= 1 << members[pos]
    return out


def _linear_extension(space: FiniteSpace) -> tuple[int, ...]:
    # Kahn's algorithm with ties broken by point id
    indeg = [len(c) for c in space.lower_covers]
    upper = [[] for _ in space.points]
    for i, j in space.covers:
        upper[i].append(j)
    heap = [(space.points[i], i) for i, d in enumerate(indeg) if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in upper[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (space.points[j], j))
    return tuple(order)


@dataclass(frozen=True)
class PointSet:
    """A subset of a :class:`FiniteSpace`."""

    space: FiniteSpace
    members: int

    def __post_init__(self):
        if self.members & ~self.space.full:
            raise ValueError("members outside the parent space")

    def __iter__(self) -> Iterator[str]:
        return (self.space.points[i] for i in bits(self.members))

    def __len__(self) -> int:
        return popcount(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __contains__(self, point: str) -> bool:
        i = self.space.index.get(point)
        return i is not None and bool(self.members >> i & 1)

    def _check(self, other: PointSet) -> None:
        if other.space != self.space:
            raise ValueError("point sets live in different spaces")

    def __or__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.space, self.members | other.members)

    def __and__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.space, self.members & other.members)

    def __sub__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.space, self.members & ~other.members)

    def __le__(self, other: PointSet) -> bool:
        self._check(other)
        return not self.members & ~other.members

    def ids(self) -> list[str]:
        return list(self)

    def is_open(self) -> bool:
        return self.space.is_open(self.members)

    def is_closed(self) -> bool:
        return self.space.is_closed(self.members)

    def __repr__(self) -> str:
        return "{" + ", ".join(self) + "}"


class MonotoneMap:
    """Order-preserving map between finite spaces, stored by point index."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: FiniteSpace, target: FiniteSpace,
                 assignment: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.assignment = tuple(assignment)
        if len(self.assignment) != len(source):
            raise ValueError("assignment must be total on the source")
        if check:
            bad = first_order_violation(source, target, self.assignment)
            if bad is not None:
                lo, hi = bad
                raise NotMonotone(
                    f"{source.points[lo]} <= {source.points[hi]} but "
                    f"{target.points[self.assignment[lo]]} is not <= "
                    f"{target.points[self.assignment[hi]]}")

    @classmethod
    def from_dict(cls, source: FiniteSpace, target: FiniteSpace,
                  mapping: Mapping[str, str]) -> MonotoneMap:
        missing = [p for p in source.points if p not in mapping]
        if missing:
            raise NotMonotone(f"map undefined on {missing}")
        return cls(source, target, [target.idx(mapping[p]) for p in source.points])

    @classmethod
    def identity(cls, space: FiniteSpace) -> MonotoneMap:
        return cls(space, space, range(len(space)), check=False)

    @classmethod
    def constant(cls, source: FiniteSpace, target: FiniteSpace, value: int) -> MonotoneMap:
        return cls(source, target, [value] * len(source), check=False)

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def after(self, other: MonotoneMap) -> MonotoneMap:
        """Composite ``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return MonotoneMap(other.source, self.target,
                           [self.assignment[i] for i in other.assignment], check=False)

    def image(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def apply(self, A: PointSet) -> PointSet:
        return PointSet(self.target, self.image(A.members))

    def preimage(self, mask: int) -> int:
        out = 0
        for i, j in enumerate(self.assignment):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def fixed_points(self) -> int:
        out = 0
        for i, j in enumerate(self.assignment):
            if i == j:
                out |= 1 << i
        return out

    def is_constant(self) -> bool:
        return len(set(self.assignment)) <= 1

    def as_dict(self) -> dict[str, str]:
        return {self.source.points[i]: self.target.points[j]
                for i, j in enumerate(self.assignment)}

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.assignment == other.assignment and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.assignment)

    def __repr__(self) -> str:
        return f"MonotoneMap({self.as_dict()})"


def first_order_violation(source: FiniteSpace, target: FiniteSpace,
                          assignment: Sequence[int]) -> tuple[int, int] | None:
    """First cover ``lo < hi`` of the source whose images are out of order."""
    for lo, hi in source.covers:
        if not target.leq(assignment[lo], assignment[hi]):
            return lo, hi
    return None


# -- construction ------------------------------------------------------------

def build_space(covers: Iterable[tuple[str, str]], isolated: Iterable[str] = ()) -> FiniteSpace:
    """Build a space from (lower, upper) pairs.

    Points are numbered in order of first appearance, ``isolated`` first.
    The input relation may contain redundant or duplicate edges; the stored
    cover relation is its transitive reduction.
    """
    points: list[str] = []
    index: dict[str, int] = {}

    def add(p: str) -> int:
        if p not in index:
            index[p] = len(points)
            points.append(p)
        return index[p]

    for p in isolated:
        add(p)
    preds: dict[int, set[int]] = {}
    for lo, hi in covers:
        i, j = add(lo), add(hi)
        if i == j:
            raise CycleDetected(f"self-loop at {lo!r}")
        preds.setdefault(j, set()).add(i)
    graph = {i: preds.get(i, set()) for i in range(len(points))}
    try:
        order = list(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        cycle = [points[i] for i in exc.args[1]]
        raise CycleDetected(f"cycle through {cycle}") from None
    below = [0] * len(points)
    for j in order:
        m = 1 << j
        for i in graph[j]:
            m |= below[i]
        below[j] = m
    return FiniteSpace(points, below)


def from_order(points: Sequence[str], leq) -> FiniteSpace:
    """Space from an explicit order predicate ``leq(p, q)`` on ids."""
    pts = list(points)
    below = []
    for q in pts:
        m = 0
        for i, p in enumerate(pts):
            if p == q or leq(p, q):
                m |= 1 << i
        below.append(m)
    space = FiniteSpace(pts, below)
    # the predicate must already be transitive and antisymmetric
    for i in range(len(pts)):
        for j in bits(space.below[i]):
            if i != j and space.leq(i, j):
                raise CycleDetected(f"{pts[i]} and {pts[j]} are mutually below")
            if space.below[j] & ~space.below[i]:
                raise ValueError("order predicate is not transitive")
    return space


# -- opens and closeds -------------------------------------------------------

def _ideal_masks(space: FiniteSpace, lower: Sequence[int], order: Sequence[int],
                 max_count: int | None) -> list[int]:
    # include a point only once everything strictly below it (per ``lower``) is in
    out: list[int] = []
    n = len(order)

    def rec(pos: int, mask: int) -> None:
        if pos == n:
            out.append(mask)
            if max_count is not None and len(out) > max_count:
                raise BudgetExceeded(f"more than {max_count} sets")
            return
        x = order[pos]
        rec(pos + 1, mask)
        need = lower[x] & ~(1 << x)
        if not need & ~mask:
            rec(pos + 1, mask | 1 << x)

    rec(0, 0)
    out.sort(key=mask_key)
    return out


def open_masks(space: FiniteSpace, max_count: int | None = None) -> list[int]:
    cache = space._memo.setdefault("opens", None)
    if cache is None:
        cache = _ideal_masks(space, space.below, space.topo, max_count)
        space._memo["opens"] = cache
    elif max_count is not None and len(cache) > max_count:
        raise BudgetExceeded(f"more than {max_count} open sets")
    return cache


def closed_masks(space: FiniteSpace, max_count: int | None = None) -> list[int]:
    cache = space._memo.setdefault("closeds", None)
    if cache is None:
        cache = _ideal_masks(space, space.above, space.topo[::-1], max_count)
        space._memo["closeds"] = cache
    elif max_count is not None and len(cache) > max_count:
        raise BudgetExceeded(f"more than {max_count} closed sets")
    return cache


def open_down_sets(space: FiniteSpace, max_count: int | None = None) -> list[PointSet]:
    """All open sets (down-sets), ordered by size then indices."""
    return [PointSet(space, m) for m in open_masks(space, max_count)]


def closed_up_sets(space: FiniteSpace, max_count: int | None = None) -> list[PointSet]:
    return [PointSet(space, m) for m in closed_masks(space, max_count)]


def minimal_open(space: FiniteSpace, x: str) -> PointSet:
    return PointSet(space, space.below[space.idx(x)])


def minimal_closed(space: FiniteSpace, x: str) -> PointSet:
    return PointSet(space, space.above[space.idx(x)])


def component_masks(space: FiniteSpace, mask: int) -> list[int]:
    parent = {i: i for i in bits(mask)}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in parent:
        for j in bits((space.below[i] | space.above[i]) & mask):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, int] = {}
    for i in parent:
        r = find(i)
        groups[r] = groups.get(r, 0) | 1 << i
    return [groups[r] for r in sorted(groups)]


def components(space: FiniteSpace, A: PointSet | None = None) -> list[PointSet]:
    """Connected components of ``A`` (default: the whole space)."""
    mask = space.full if A is None else A.members
    return [PointSet(space, m) for m in component_masks(space, mask)]


def is_connected(space: FiniteSpace) -> bool:
    return len(component_masks(space, space.full)) <= 1


# -- beat points and cores ---------------------------------------------------

def _maximum(space: FiniteSpace, mask: int) -> int | None:
    for m in bits(mask):
        if not mask & ~space.below[m]:
            return m
    return None


def _minimum(space: FiniteSpace, mask: int) -> int | None:
    for m in bits(mask):
        if not mask & ~space.above[m]:
            return m
    return None


def beat_points(space: FiniteSpace, mask: int | None = None) -> list[tuple[int, int]]:
    """Beat points of the subspace on ``mask`` as ``(point, retract_target)``.

    A down beat point retracts onto the maximum of its strict down-set; an up
    beat point onto the minimum of its strict up-set.  All down beat points
    are listed first (index order), then the remaining up beat points.
    """
    if mask is None:
        mask = space.full
    down, up = [], []
    for x in bits(mask):
        strict_down = space.below[x] & mask & ~(1 << x)
        m = _maximum(space, strict_down) if strict_down else None
        if m is not None:
            down.append((x, m))
            continue
        strict_up = space.above[x] & mask & ~(1 << x)
        m = _minimum(space, strict_up) if strict_up else None
        if m is not None:
            up.append((x, m))
    return down + up


@dataclass(frozen=True)
class CoreData:
    """Core mask plus the staged retractions ``id = R_0, R_1, ..., R_p``.

    Each ``R_k`` is a self-map of the parent space (as an index tuple) and
    consecutive stages are pointwise comparable, so the stages form a fence
    from the identity to the final retraction.
    """

    mask: int
    stages: tuple[tuple[int, ...], ...]

    @property
    def retraction(self) -> tuple[int, ...]:
        return self.stages[-1]


def core_data(space: FiniteSpace) -> CoreData:
    data = space._memo.get("core")
    if data is None:
        mask = space.full
        current = tuple(range(len(space)))
        stages = [current]
        while True:
            beats = beat_points(space, mask)
            if not beats:
                break
            x, y = beats[0]
            mask &= ~(1 << x)
            current = tuple(y if v == x else v for v in current)
            stages.append(current)
        data = CoreData(mask, tuple(stages))
        space._memo["core"] = data
    return data


def core(space: FiniteSpace) -> tuple[FiniteSpace, MonotoneMap]:
    """Stong core and the retraction ``X -> core ⊆ X`` (as a self-map of X)."""
    data = core_data(space)
    return space.subspace(data.mask), MonotoneMap(space, space, data.retraction, check=False)


# -- automorphisms -----------------------------------------------------------

def automorphisms(space: FiniteSpace, limit: int | None = None) -> list[tuple[int, ...]]:
    """All order automorphisms (the homeomorphism group), by backtracking."""
    n = len(space)
    sig = [(popcount(space.below[i]), popcount(space.above[i]),
            len(space.lower_covers[i])) for i in range(n)]
    order = space.topo
    perm = [-1] * n
    used = [False] * n
    out: list[tuple[int, ...]] = []

    def rec(pos: int) -> None:
        if pos == n:
            out.append(tuple(perm))
            if limit is not None and len(out) > limit:
                raise BudgetExceeded(f"more than {limit} automorphisms")
            return
        x = order[pos]
        for y in range(n):
            if used[y] or sig[y] != sig[x]:
                continue
            ok = True
            for q in order[:pos]:
                if space.leq(q, x) != space.leq(perm[q], y) or \
                        space.leq(x, q) != space.leq(y, perm[q]):
                    ok = False
                    break
            if ok:
                perm[x] = y
                used[y] = True
                rec(pos + 1)
                used[y] = False
                perm[x] = -1

    rec(0)
    return out
