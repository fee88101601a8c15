"""Homotopy of maps between finite spaces.

Two maps ``f, g: A -> X`` are homotopic iff they are joined by a *fence*: a
sequence of order-preserving maps in which consecutive maps are pointwise
comparable.  The map space is finite, so homotopy is decided exactly by a
breadth-first search of the comparability graph.

The default search first pushes both maps down to cores
(``r_X ∘ f ∘ incl_A`` on ``core(A) -> core(X)``), searches there, and lifts
the resulting fence back through the staged core retractions.  Pass
``reduce=False`` for the plain search over the full map space, which
returns minimum-length fences.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, EmptySet, InvalidFence, NotMonotone
from .space import (FiniteSpace, MonotoneMap, PointSet, bits, core_data,
                    first_order_violation)

DEFAULT_BUDGET = 1_000_000

Assignment = tuple[int, ...]


@dataclass(frozen=True)
class Fence:
    """A homotopy certificate ``f = maps[0] ~ maps[1] ~ ... ~ maps[-1] = g``."""

    maps: tuple[MonotoneMap, ...]

    def __post_init__(self):
        if not self.maps:
            raise InvalidFence("a fence needs at least one map")

    @property
    def start(self) -> MonotoneMap:
        return self.maps[0]

    @property
    def end(self) -> MonotoneMap:
        return self.maps[-1]

    def __len__(self) -> int:
        return len(self.maps)

    def validate(self) -> None:
        check_fence(self.maps)


def _pointwise_relation(target: FiniteSpace, f: Sequence[int], g: Sequence[int]) -> bool:
    return (all(target.leq(a, b) for a, b in zip(f, g))
            or all(target.leq(b, a) for a, b in zip(f, g)))


def check_fence(maps: Sequence[MonotoneMap], start: MonotoneMap | None = None,
                end: MonotoneMap | None = None) -> None:
    """Independent replay of a fence; raises on the first defect."""
    if not maps:
        raise InvalidFence("empty fence")
    source, target = maps[0].source, maps[0].target
    for k, m in enumerate(maps):
        if m.source != source or m.target != target:
            raise InvalidFence(f"map {k} has a different source or target")
        if len(m.assignment) != len(source) or \
                any(not 0 <= v < len(target) for v in m.assignment):
            raise InvalidFence(f"map {k} is not total")
        bad = first_order_violation(source, target, m.assignment)
        if bad is not None:
            raise NotMonotone(f"map {k} is not order-preserving at "
                              f"{source.points[bad[0]]} < {source.points[bad[1]]}")
    for k in range(len(maps) - 1):
        if not _pointwise_relation(target, maps[k].assignment, maps[k + 1].assignment):
            raise InvalidFence(f"maps {k} and {k + 1} are not pointwise comparable")
    if start is not None and maps[0].assignment != start.assignment:
        raise InvalidFence("fence does not start at the expected map")
    if end is not None and maps[-1].assignment != end.assignment:
        raise InvalidFence("fence does not end at the expected map")


# -- map enumeration ---------------------------------------------------------

def monotone_maps(source: FiniteSpace, target: FiniteSpace,
                  lower: Sequence[int] | None = None,
                  upper: Sequence[int] | None = None) -> Iterator[Assignment]:
    """Order-preserving assignments, optionally bounded pointwise.

    Source points are assigned in linear-extension order, so each choice is
    constrained by the images of the lower covers already placed.
    """
    n = len(source)
    order = source.topo
    out = [0] * n

    def rec(pos: int) -> Iterator[Assignment]:
        if pos == n:
            yield tuple(out)
            return
        a = order[pos]
        allowed = target.full
        if lower is not None:
            allowed &= target.above[lower[a]]
        if upper is not None:
            allowed &= target.below[upper[a]]
        for b in source.lower_covers[a]:
            allowed &= target.above[out[b]]
        for v in bits(allowed):
            out[a] = v
            yield from rec(pos + 1)

    if n == 0:
        yield ()
        return
    yield from rec(0)


def _neighbours(source: FiniteSpace, target: FiniteSpace, f: Assignment) -> Iterator[Assignment]:
    yield from monotone_maps(source, target, lower=f)
    yield from monotone_maps(source, target, upper=f)


def _bfs(source: FiniteSpace, target: FiniteSpace, start: Assignment,
         is_goal: Callable[[Assignment], bool], budget: int) -> list[Assignment] | None:
    if is_goal(start):
        return [start]
    parent: dict[Assignment, Assignment | None] = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for g in _neighbours(source, target, f):
            if g in parent:
                continue
            parent[g] = f
            if len(parent) > budget:
                raise BudgetExceeded(f"homotopy search visited more than {budget} maps")
            if is_goal(g):
                path = [g]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            queue.append(g)
    return None


# -- reduction to cores ------------------------------------------------------

class _Reduction:
    """Bookkeeping for pushing maps ``A -> X`` down to ``core(A) -> core(X)``."""

    def __init__(self, source: FiniteSpace, target: FiniteSpace):
        self.source, self.target = source, target
        cs, ct = core_data(source), core_data(target)
        self.s_stages, self.t_stages = cs.stages, ct.stages
        self.s_members = list(bits(cs.mask))
        self.t_members = list(bits(ct.mask))
        self.t_pos = {v: k for k, v in enumerate(self.t_members)}
        self.s_pos = {v: k for k, v in enumerate(self.s_members)}
        self.core_source = source.subspace(cs.mask)
        self.core_target = target.subspace(ct.mask)

    def down(self, f: Sequence[int]) -> Assignment:
        r = self.t_stages[-1]
        return tuple(self.t_pos[r[f[a]]] for a in self.s_members)

    def lift_path(self, f: Sequence[int]) -> list[Assignment]:
        """Fence from ``f`` to ``r_X ∘ f ∘ r_A`` through the retraction stages."""
        path = [tuple(R[v] for v in f) for R in self.t_stages]
        r = self.t_stages[-1]
        rf = [r[v] for v in f]
        path += [tuple(rf[S[a]] for a in range(len(f))) for S in self.s_stages[1:]]
        return path

    def lift(self, h: Sequence[int]) -> Assignment:
        # j ∘ h ∘ r_A
        s = self.s_stages[-1]
        return tuple(self.t_members[h[self.s_pos[s[a]]]] for a in range(len(self.source)))


def _dedupe(path: list[Assignment]) -> list[Assignment]:
    out: list[Assignment] = []
    for p in path:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _fence(source: FiniteSpace, target: FiniteSpace, path: list[Assignment]) -> Fence:
    fence = Fence(tuple(MonotoneMap(source, target, p, check=False) for p in _dedupe(path)))
    fence.validate()
    return fence


# -- public API --------------------------------------------------------------

def are_homotopic(f: MonotoneMap, g: MonotoneMap, budget: int = DEFAULT_BUDGET,
                  reduce: bool = True) -> Fence | None:
    """Fence from ``f`` to ``g`` if they are homotopic, else ``None``.

    Raises :class:`BudgetExceeded` when the search outgrows ``budget``
    visited maps; that is never reported as "not homotopic".
    """
    if f.source != g.source or f.target != g.target:
        raise ValueError("maps must share source and target")
    source, target = f.source, f.target
    if not reduce:
        path = _bfs(source, target, f.assignment, lambda m: m == g.assignment, budget)
        return None if path is None else _fence(source, target, path)
    red = _Reduction(source, target)
    hg = red.down(g.assignment)
    core_path = _bfs(red.core_source, red.core_target, red.down(f.assignment),
                     lambda m: m == hg, budget)
    if core_path is None:
        return None
    path = (red.lift_path(f.assignment) + [red.lift(h) for h in core_path]
            + red.lift_path(g.assignment)[::-1])
    return _fence(source, target, path)


def inclusion(X: FiniteSpace, mask: int) -> MonotoneMap:
    sub = X.subspace(mask)
    return MonotoneMap(sub, X, list(bits(mask)), check=False)


def _is_constant(m: Assignment) -> bool:
    return len(set(m)) <= 1


def contractible_mask(X: FiniteSpace, mask: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Fast cached test that the subset ``mask`` is contractible in ``X``."""
    cache = X._memo.setdefault("contractible_in", {})
    hit = cache.get(mask)
    if hit is None:
        if not mask:
            raise EmptySet("contractibility in X is undefined for the empty set")
        incl = inclusion(X, mask)
        red = _Reduction(incl.source, X)
        start = red.down(incl.assignment)
        hit = _bfs(red.core_source, red.core_target, start, _is_constant, budget) is not None
        cache[mask] = hit
    return hit


def is_contractible_in(X: FiniteSpace, A: PointSet, budget: int = DEFAULT_BUDGET,
                       reduce: bool = True, prune: bool = False) -> Fence | None:
    """Fence from the inclusion ``A -> X`` to a constant map, or ``None``.

    The goal set is every constant map (no fixed basepoint).  With
    ``prune=True`` a nonzero map on reduced GF(2) homology short-circuits
    the search.
    """
    if not A.members:
        raise EmptySet("contractibility in X is undefined for the empty set")
    if prune and homology_obstruction(X, A) is Obstruction.OBSTRUCTED:
        return None
    incl = inclusion(X, A.members)
    source = incl.source
    if not reduce:
        path = _bfs(source, X, incl.assignment, _is_constant, budget)
        return None if path is None else _fence(source, X, path)
    red = _Reduction(source, X)
    core_path = _bfs(red.core_source, red.core_target, red.down(incl.assignment),
                     _is_constant, budget)
    if core_path is None:
        return None
    path = red.lift_path(incl.assignment) + [red.lift(h) for h in core_path]
    return _fence(source, X, path)


def is_contractible(X: FiniteSpace) -> bool:
    """Contractibility via Stong: the core is a single point."""
    return bin(core_data(X).mask).count("1") == 1


def homotopic_to_identity(phi: MonotoneMap, budget: int = DEFAULT_BUDGET,
                          reduce: bool = True) -> Fence | None:
    if phi.source != phi.target:
        raise ValueError("homotopic_to_identity needs a self-map")
    return are_homotopic(phi, MonotoneMap.identity(phi.source), budget, reduce)


class Obstruction(enum.Enum):
    OBSTRUCTED = "Obstructed"
    UNKNOWN = "Unknown"


def homology_obstruction(X: FiniteSpace, A: PointSet) -> Obstruction:
    """Sound test for non-contractibility of ``A`` in ``X``.

    A null-homotopic inclusion kills positive-degree homology and sends all
    of ``H_0`` to one class, so any positive-degree rank, or a degree-0
    rank above one, rules contractibility out.
    """
    from .cohomology import inclusion_induced_rank

    if not A.members:
        raise EmptySet("obstruction undefined for the empty set")
    ranks = inclusion_induced_rank(X, A)
    if ranks[0] > 1 or any(ranks[1:]):
        return Obstruction.OBSTRUCTED
    return Obstruction.UNKNOWN
