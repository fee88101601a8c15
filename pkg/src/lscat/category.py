"""Relative Lusternik-Schnirelmann category and index functions.

``cat_X(A)`` is the least number of open sets, each contractible in ``X``,
needed to cover ``A``; ``cat(∅) = 0`` and ``cat`` of a point is 1.  The
closed variant uses up-sets instead.  Both are solved as exact set cover
over the inclusion-maximal contractible candidates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import BudgetExceeded, LSError
from .homotopy import DEFAULT_BUDGET, Fence, contractible_mask, is_contractible_in
from .setcover import DEFAULT_NODE_BUDGET, min_set_cover
from .space import (FiniteSpace, MonotoneMap, PointSet, automorphisms, bits,
                    closed_masks, open_masks, popcount)

OPEN, CLOSED = "open", "closed"
DEFAULT_MAX_OPENS = 100_000

AXIOMS = ("monotonicity", "continuity", "subadditivity", "invariance",
          "semi-invariance", "normalization")

SEMI_INVARIANCE_NOTE = (
    "discrete dynamics: a single step map phi homotopic to the identity replaces "
    "the flow, and invariance nu(phi_t A) = nu(A) is replaced by forward "
    "semi-invariance nu(A) <= nu(phi(A))")


def _size_desc(mask: int):
    return -popcount(mask), tuple(bits(mask))


def candidate_masks(X: FiniteSpace, kind: str = OPEN, budget: int = DEFAULT_BUDGET,
                    max_opens: int = DEFAULT_MAX_OPENS) -> list[int]:
    """Inclusion-maximal open (or closed) sets that are contractible in ``X``.

    Sets are scanned largest first; a set inside an accepted candidate is
    contractible but not maximal and is skipped without a search.
    """
    key = ("candidates", kind)
    cached = X._memo.get(key)
    if cached is not None:
        return cached
    family = open_masks(X, max_opens) if kind == OPEN else closed_masks(X, max_opens)
    accepted: list[int] = []
    for m in sorted((m for m in family if m), key=_size_desc):
        if any(not m & ~c for c in accepted):
            continue
        if contractible_mask(X, m, budget):
            accepted.append(m)
    X._memo[key] = accepted
    return accepted


def _cat(X: FiniteSpace, mask: int, kind: str, budget: int, max_opens: int,
         node_budget: int) -> tuple[int, tuple[int, ...]]:
    cache = X._memo.setdefault(("cat", kind), {})
    hit = cache.get(mask)
    if hit is not None:
        return hit
    if not mask:
        cache[mask] = (0, ())
        return cache[mask]
    cands = candidate_masks(X, kind, budget, max_opens)
    reach = 0
    for c in cands:
        reach |= c
    if mask & ~reach:
        # every point lies in its minimal open (closed) set, which has a
        # maximum (minimum) and is therefore contractible
        raise LSError("a point has no contractible neighbourhood; this is a defect")
    restricted: list[int] = []
    origin: list[int] = []
    for c in cands:
        r = c & mask
        if not r or any(not r & ~s for s in restricted):
            continue
        keep = [t for t, s in enumerate(restricted) if s & ~r]
        restricted = [restricted[t] for t in keep]
        origin = [origin[t] for t in keep]
        restricted.append(r)
        origin.append(c)
    chosen = min_set_cover(mask, restricted, node_budget)
    result = (len(chosen), tuple(sorted((origin[t] for t in chosen), key=_size_desc)))
    cache[mask] = result
    return result


@dataclass(frozen=True)
class CoverSolution:
    sets: tuple[PointSet, ...]
    kind: str
    certificates: tuple[Fence, ...]

    def validate(self, A: PointSet) -> None:
        union = 0
        for U, fence in zip(self.sets, self.certificates):
            union |= U.members
            if self.kind == OPEN and not U.is_open():
                raise LSError(f"{U} is not open")
            if self.kind == CLOSED and not U.is_closed():
                raise LSError(f"{U} is not closed")
            fence.validate()
            if fence.start.assignment != tuple(bits(U.members)) or not fence.end.is_constant():
                raise LSError(f"certificate for {U} does not contract its inclusion")
        if A.members & ~union:
            raise LSError("cover does not contain the queried set")
        if len(self.certificates) != len(self.sets):
            raise LSError("one certificate per set is required")

    def to_json(self) -> dict:
        return {"kind": self.kind, "sets": [U.ids() for U in self.sets],
                "certificates": [[m.as_dict() for m in f.maps] for f in self.certificates]}


def _solve(X: FiniteSpace, A: PointSet, kind: str, budget: int, max_opens: int,
           node_budget: int) -> tuple[int, CoverSolution]:
    if A.space != X:
        raise ValueError("subset belongs to another space")
    k, masks = _cat(X, A.members, kind, budget, max_opens, node_budget)
    sets = tuple(PointSet(X, m) for m in masks)
    certs = []
    for U in sets:
        fence = is_contractible_in(X, U, budget)
        assert fence is not None, "candidate lost its contraction"
        certs.append(fence)
    return k, CoverSolution(sets, kind, tuple(certs))


def cat_rel(X: FiniteSpace, A: PointSet, budget: int = DEFAULT_BUDGET,
            max_opens: int = DEFAULT_MAX_OPENS,
            node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, CoverSolution]:
    """``cat_X(A)`` with a witness cover by open sets contractible in ``X``."""
    return _solve(X, A, OPEN, budget, max_opens, node_budget)


def cat_closed(X: FiniteSpace, A: PointSet, budget: int = DEFAULT_BUDGET,
               max_opens: int = DEFAULT_MAX_OPENS,
               node_budget: int = DEFAULT_NODE_BUDGET) -> tuple[int, CoverSolution]:
    return _solve(X, A, CLOSED, budget, max_opens, node_budget)


def cat_value(X: FiniteSpace, mask: int, kind: str = OPEN) -> int:
    return _cat(X, mask, kind, DEFAULT_BUDGET, DEFAULT_MAX_OPENS, DEFAULT_NODE_BUDGET)[0]


def cat_space(X: FiniteSpace) -> int:
    return cat_value(X, X.full)


@dataclass(frozen=True)
class ReekenComparison:
    cat_in_X: int
    intrinsic_cat: int
    closed_variant: int
    agree: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def reeken_compare(X: FiniteSpace, A: PointSet) -> ReekenComparison:
    """Compare ``cat_X(A)``, ``cat(A)`` and the closed variant.

    ``agree`` reports whether ``cat_X(A) <= cat(A)`` holds here; nothing is
    asserted.
    """
    if not A.members:
        raise ValueError("reeken_compare needs a nonempty subset")
    inside = cat_value(X, A.members)
    intrinsic = cat_space(X.subspace(A.members))
    closed = cat_value(X, A.members, CLOSED)
    return ReekenComparison(inside, intrinsic, closed, inside <= intrinsic)


# -- index functions ---------------------------------------------------------

@dataclass(frozen=True)
class IndexFunction:
    name: str
    evaluate: Callable[[FiniteSpace, PointSet], int] = field(compare=False)
    declared_axioms: frozenset[str] = frozenset()

    def __call__(self, X: FiniteSpace, A: PointSet) -> int:
        return self.evaluate(X, A)

    def of_mask(self, X: FiniteSpace, mask: int) -> int:
        return self.evaluate(X, PointSet(X, mask))


CAT_INDEX = IndexFunction("cat", lambda X, A: cat_value(X, A.members), frozenset(AXIOMS))
NONEMPTY_INDEX = IndexFunction("nonempty", lambda X, A: int(bool(A.members)),
                               frozenset(AXIOMS))
CARDINALITY_INDEX = IndexFunction(
    "cardinality", lambda X, A: popcount(A.members),
    frozenset({"monotonicity", "subadditivity", "invariance", "normalization"}))

INDEX_FUNCTIONS = {nu.name: nu for nu in (CAT_INDEX, NONEMPTY_INDEX, CARDINALITY_INDEX)}


@dataclass
class AxiomVerdict:
    axiom: str
    status: str = "pass"  # pass | fail | skipped
    checked: int = 0
    exhaustive: bool = True
    counterexample: list[list[str]] | None = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class AxiomReport:
    index: str
    points: int
    mode: str
    verdicts: dict[str, AxiomVerdict]
    note: str = SEMI_INVARIANCE_NOTE

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def to_json(self) -> dict:
        return {"index": self.index, "points": self.points, "mode": self.mode,
                "note": self.note, "passed": self.passed,
                "verdicts": {k: dict(v.__dict__) for k, v in self.verdicts.items()}}


def check_axioms(nu: IndexFunction, X: FiniteSpace, phi: MonotoneMap | None = None,
                 mode: str = "exhaustive", samples: int = 1000, seed: int = 0,
                 cap: int = 12, pair_cap: int = 1 << 16) -> AxiomReport:
    """Check the index-function axioms for ``nu`` on ``X``.

    ``mode`` is ``"exhaustive"`` (every subset; needs ``|X| <= cap``) or
    ``"sampled"`` (``samples`` random subsets or pairs from ``seed``).
    Subadditivity falls back to ``pair_cap`` sampled pairs when the full
    pair count is larger.  Invariance is checked against all automorphisms;
    semi-invariance only when ``phi`` is given.
    """
    n = len(X)
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    exhaustive = mode == "exhaustive"
    if exhaustive and n > cap:
        raise BudgetExceeded(f"exhaustive axiom check capped at {cap} points")
    rng = random.Random(seed)
    values: dict[int, int] = {}

    def val(m: int) -> int:
        v = values.get(m)
        if v is None:
            v = values[m] = nu.of_mask(X, m)
        return v

    def ids(m: int) -> list[str]:
        return [X.points[i] for i in bits(m)]

    subsets = range(1 << n) if exhaustive else [rng.getrandbits(n) if n else 0
                                                for _ in range(samples)]
    verdicts: dict[str, AxiomVerdict] = {}

    def fail(v: AxiomVerdict, *masks: int) -> None:
        if v.status != "fail":
            v.status = "fail"
            v.counterexample = [ids(m) for m in masks]

    v = verdicts["monotonicity"] = AxiomVerdict("monotonicity", exhaustive=exhaustive)
    for B in subsets:
        # one-point removals chain together to every pair A ⊆ B
        drops = list(bits(B)) if exhaustive else ([rng.choice(list(bits(B)))] if B else [])
        for x in drops:
            v.checked += 1
            if val(B & ~(1 << x)) > val(B):
                fail(v, B & ~(1 << x), B)

    v = verdicts["continuity"] = AxiomVerdict("continuity", exhaustive=exhaustive)
    opens = open_masks(X)
    for A in subsets:
        v.checked += 1
        if val(X.down_closure(A)) == val(A):
            continue
        if not any(val(U) == val(A) for U in opens if not A & ~U):
            fail(v, A)

    v = verdicts["subadditivity"] = AxiomVerdict("subadditivity")
    if exhaustive and (1 << 2 * n) <= pair_cap:
        pairs = ((A, B) for A in range(1 << n) for B in range(1 << n))
    else:
        v.exhaustive = False
        count = pair_cap if exhaustive else samples
        pairs = ((rng.getrandbits(n), rng.getrandbits(n)) for _ in range(count))
    for A, B in pairs:
        v.checked += 1
        if val(A | B) > val(A) + val(B):
            fail(v, A, B)

    v = verdicts["invariance"] = AxiomVerdict("invariance", exhaustive=exhaustive)
    for sigma in automorphisms(X):
        if sigma == tuple(range(n)):
            continue
        for A in subsets:
            v.checked += 1
            image = 0
            for i in bits(A):
                image |= 1 << sigma[i]
            if val(image) != val(A):
                fail(v, A, image)

    v = verdicts["semi-invariance"] = AxiomVerdict("semi-invariance", exhaustive=exhaustive)
    if phi is None:
        v.status = "skipped"
    else:
        if phi.source != X or phi.target != X:
            raise ValueError("phi must be a self-map of X")
        for A in subsets:
            v.checked += 1
            if val(A) > val(phi.image(A)):
                fail(v, A, phi.image(A))

    v = verdicts["normalization"] = AxiomVerdict("normalization")
    v.checked = n + 1
    if val(0) != 0:
        fail(v, 0)
    for x in range(n):
        if val(1 << x) != 1:
            fail(v, 1 << x)

    return AxiomReport(nu.name, n, mode, verdicts)
