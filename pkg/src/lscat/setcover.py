"""Exact minimum set cover on bitmasks by branch and bound."""

from __future__ import annotations

from typing import Sequence

from .errors import BudgetExceeded
from .space import bits

DEFAULT_NODE_BUDGET = 1_000_000


def greedy_cover(universe: int, sets: Sequence[int]) -> list[int] | None:
    chosen: list[int] = []
    left = universe
    while left:
        best = max(range(len(sets)), key=lambda t: (bin(sets[t] & left).count("1"), -t),
                   default=None)
        if best is None or not sets[best] & left:
            return None
        chosen.append(best)
        left &= ~sets[best]
    return chosen


def min_set_cover(universe: int, sets: Sequence[int],
                  node_budget: int = DEFAULT_NODE_BUDGET) -> list[int] | None:
    """Indices of a minimum subfamily of ``sets`` covering ``universe``.

    Returns ``None`` if no cover exists.  Branching is on the uncovered point
    with the fewest candidate sets; the lower bound counts uncovered points
    no two of which share a candidate.  The incumbent is replaced only by a
    strictly smaller cover, so the witness depends only on the input order.
    """
    if not universe:
        return []
    best = greedy_cover(universe, sets)
    if best is None:
        return None
    containing = {p: [t for t, s in enumerate(sets) if s >> p & 1] for p in bits(universe)}
    nodes = 0

    def lower_bound(left: int) -> int:
        blocked = 0
        count = 0
        for p in sorted(bits(left), key=lambda q: (len(containing[q]), q)):
            if blocked >> p & 1:
                continue
            count += 1
            for t in containing[p]:
                blocked |= sets[t]
        return count

    def search(left: int, chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"set cover search exceeded {node_budget} nodes")
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + lower_bound(left) >= len(best):
            return
        pivot = min(bits(left), key=lambda q: (len(containing[q]), q))
        for t in containing[pivot]:
            chosen.append(t)
            search(left & ~sets[t], chosen)
            chosen.pop()

    search(universe, [])
    return sorted(best)
