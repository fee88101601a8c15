"""GF(2) (co)homology of order complexes and cup products.

The order complex of a poset has the nonempty chains as simplices.  Vertices
are listed in a fixed linear extension, so every simplex tuple is a chain
read bottom-up and the Alexander-Whitney front/back faces are well defined.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, EmptySet
from .gf2 import Reducer, nullspace, rank
from .space import FiniteSpace, PointSet, bits

DEFAULT_CHAIN_CAP = 100_000
DEFAULT_PRODUCT_CAP = 100_000


@dataclass
class SimplicialComplex:
    vertices: tuple[str, ...]
    simplices: list[list[tuple[int, ...]]]
    _index: list[dict[tuple[int, ...], int]] = field(default=None, repr=False, compare=False)
    _boundary: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index = [{s: k for k, s in enumerate(level)} for level in self.simplices]

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k < len(self.simplices) else 0

    def index(self, k: int, simplex: tuple[int, ...]) -> int:
        return self._index[k][simplex]

    def boundary(self, k: int) -> list[int]:
        """Boundary of each k-simplex as a mask over (k-1)-simplices."""
        cols = self._boundary.get(k)
        if cols is None:
            cols = []
            if 1 <= k <= self.dim:
                faces = self._index[k - 1]
                for s in self.simplices[k]:
                    m = 0
                    for drop in range(k + 1):
                        m |= 1 << faces[s[:drop] + s[drop + 1:]]
                    cols.append(m)
            else:
                cols = [0] * self.count(k)
            self._boundary[k] = cols
        return cols

    def coboundary_rows(self, k: int) -> list[int]:
        """Rows of δ^k: for each (k+1)-simplex, the k-faces it touches."""
        return self.boundary(k + 1) if k + 1 <= self.dim else []

    def coboundary_images(self, k: int) -> list[int]:
        """δ(e_σ) for each (k-1)-simplex σ, as masks over k-simplices."""
        if k == 0:
            return []
        out = [0] * self.count(k - 1)
        for j, col in enumerate(self.boundary(k)):
            for f in bits(col):
                out[f] |= 1 << j
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))

    def to_json(self) -> dict:
        return {"format": "lscat-complex/1", "vertices": list(self.vertices),
                "simplices": [[list(s) for s in level] for level in self.simplices]}


def order_complex(X: FiniteSpace, cap: int = DEFAULT_CHAIN_CAP) -> SimplicialComplex:
    order = X.topo
    pos = {v: k for k, v in enumerate(order)}
    chains: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...]) -> None:
        chains.append(chain)
        if len(chains) > cap:
            raise BudgetExceeded(f"order complex has more than {cap} simplices")
        last = order[chain[-1]]
        for v in sorted(pos[u] for u in bits(X.above[last] & ~(1 << last))):
            extend(chain + (v,))

    for k in range(len(order)):
        extend((k,))
    levels: list[list[tuple[int, ...]]] = []
    for c in chains:
        while len(levels) < len(c):
            levels.append([])
        levels[len(c) - 1].append(c)
    for level in levels:
        level.sort()
    return SimplicialComplex(tuple(X.points[v] for v in order), levels)


def betti_gf2(K: SimplicialComplex) -> list[int]:
    ranks = [rank(K.boundary(k)) for k in range(K.dim + 2)]
    return [K.count(k) - ranks[k] - ranks[k + 1] for k in range(K.dim + 1)]


@dataclass
class CohomologyBasis:
    """Cocycle representatives of a basis of H^k plus coboundary reducers."""

    classes: list[list[int]]
    coboundaries: list[Reducer]

    def is_zero(self, k: int, cochain: int) -> bool:
        return cochain in self.coboundaries[k]


def cohomology_basis(K: SimplicialComplex) -> CohomologyBasis:
    classes, reducers = [], []
    for k in range(K.dim + 1):
        cocycles = nullspace(K.coboundary_rows(k), K.count(k))
        red = Reducer(K.coboundary_images(k))
        reps = []
        for z in cocycles:
            if red.add(z):
                reps.append(z)
        classes.append(reps)
        reducers.append(Reducer(K.coboundary_images(k)))
    return CohomologyBasis(classes, reducers)


def cup(K: SimplicialComplex, p: int, alpha: int, q: int, beta: int) -> int:
    """Alexander-Whitney cup product of a p-cochain and a q-cochain."""
    n = p + q
    out = 0
    if n > K.dim:
        return 0
    for j, s in enumerate(K.simplices[n]):
        if alpha >> K.index(p, s[:p + 1]) & 1 and beta >> K.index(q, s[p:]) & 1:
            out |= 1 << j
    return out


def cup_length(K: SimplicialComplex, cap: int = DEFAULT_PRODUCT_CAP) -> int:
    """Longest nonzero product of positive-degree classes (0 if none).

    Products of basis classes suffice by multilinearity; mod 2 the product is
    commutative, so only non-decreasing index sequences are tried, and a
    product that is already zero in cohomology is never extended.
    """
    H = cohomology_basis(K)
    gens = [(k, c) for k in range(1, K.dim + 1) for c in H.classes[k]]
    best = 0
    visited = 0

    def rec(start: int, deg: int, cochain: int, length: int) -> None:
        nonlocal best, visited
        best = max(best, length)
        for t in range(start, len(gens)):
            k, c = gens[t]
            if deg + k > K.dim:
                continue
            visited += 1
            if visited > cap:
                raise BudgetExceeded(f"cup product search exceeded {cap} products")
            prod = cup(K, deg, cochain, k, c)
            if prod and not H.is_zero(deg + k, prod):
                rec(t, deg + k, prod, length + 1)

    for t, (k, c) in enumerate(gens):
        rec(t, k, c, 1)
    return best


def inclusion_induced_rank(X: FiniteSpace, A: PointSet) -> list[int]:
    """Rank in each degree of ``H_k(Δ(A)) -> H_k(Δ(X))`` over GF(2)."""
    if not A.members:
        raise EmptySet("inclusion rank needs a nonempty subset")
    KX = order_complex(X)
    KA = order_complex(X.subspace(A.members))
    vpos = {v: k for k, v in enumerate(KX.vertices)}
    remap = [vpos[v] for v in KA.vertices]
    out = []
    for k in range(KX.dim + 1):
        boundaries = KX.boundary(k + 1) if k + 1 <= KX.dim else []
        base = rank(boundaries)
        if k > KA.dim:
            out.append(0)
            continue
        cycles_A = nullspace(_rows_of(KA.boundary(k), KA.count(k - 1)), KA.count(k)) \
            if k > 0 else [1 << j for j in range(KA.count(0))]
        images = []
        for z in cycles_A:
            v = 0
            for j in bits(z):
                s = tuple(sorted(remap[u] for u in KA.simplices[k][j]))
                v |= 1 << KX.index(k, s)
            images.append(v)
        out.append(rank(list(boundaries) + images) - base)
    return out


def _rows_of(columns: list[int], nrows: int) -> list[int]:
    rows = [0] * nrows
    for j, col in enumerate(columns):
        for i in bits(col):
            rows[i] |= 1 << j
    return rows


def face_poset_chains(X: FiniteSpace) -> list[tuple[str, ...]]:
    """Chains of ``X`` as id tuples (bottom-up), used by the subdivision model."""
    K = order_complex(X)
    return [tuple(K.vertices[v] for v in s) for level in K.simplices for s in level]


__all__ = ["SimplicialComplex", "order_complex", "betti_gf2", "cup", "cup_length",
           "cohomology_basis", "inclusion_induced_rank"]
