import itertools

import pytest
from hypothesis import given, settings

import oracles
from lscat import generators
from lscat.cohomology import (betti_gf2, cohomology_basis, cup, cup_length,
                              inclusion_induced_rank, order_complex)
from lscat.errors import BudgetExceeded, EmptySet
from lscat.gf2 import Gf2Matrix, nullspace, rank
from lscat.space import from_order
from test_space import dags


def product(X, Y):
    pts = [f"{p}*{q}" for p in X.points for q in Y.points]
    pairs = {f"{p}*{q}": (X.idx(p), Y.idx(q)) for p in X.points for q in Y.points}
    return from_order(pts, lambda u, v: X.leq(pairs[u][0], pairs[v][0])
                      and Y.leq(pairs[u][1], pairs[v][1]))


RP2_TRIANGLES = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]


def face_poset(facets):
    faces = {frozenset(c) for f in facets for r in range(1, 4)
             for c in itertools.combinations(f, r)}
    names = {f: "".join(sorted(f)) for f in faces}
    by = {v: k for k, v in names.items()}
    return from_order(sorted(names.values()), lambda p, q: by[p] < by[q])


def test_order_complex_small(C3, P4, A2):
    K = order_complex(C3)
    assert [len(level) for level in K.simplices] == [3, 3, 1]
    K = order_complex(P4)
    assert [len(level) for level in K.simplices] == [4, 4]
    K = order_complex(A2)
    assert [len(level) for level in K.simplices] == [2]


@given(dags(max_n=6))
@settings(max_examples=40, deadline=None)
def test_order_complex_matches_chains(X):
    K = order_complex(X)
    got = {frozenset(X.idx(K.vertices[v]) for v in s) for level in K.simplices for s in level}
    assert got == set(oracles.chains(X))


@given(dags(max_n=6))
@settings(max_examples=40, deadline=None)
def test_boundary_squares_to_zero(X):
    K = order_complex(X)
    for k in range(2, K.dim + 1):
        d1 = Gf2Matrix.from_columns(K.count(k - 2), K.boundary(k - 1))
        d2 = Gf2Matrix.from_columns(K.count(k - 1), K.boundary(k))
        assert (d1 @ d2).is_zero()
        # and the same by the plain-list oracle elimination
        assert oracles.rank_gf2([[d1[i, j] for j in range(d1.ncols)]
                                 for i in range(d1.nrows)]) == d1.rank()


@given(dags(max_n=6))
@settings(max_examples=40, deadline=None)
def test_betti_matches_oracle_and_euler(X):
    K = order_complex(X)
    b = betti_gf2(K)
    assert b == oracles.betti(X)
    assert sum((-1) ** k * v for k, v in enumerate(b)) == K.euler_characteristic()


@pytest.mark.parametrize("name,expected", [
    ("point", [1]), ("chain3", [1, 0, 0]), ("antichain3", [3]),
    ("pseudocircle", [1, 1]), ("min_sphere2", [1, 0, 1]),
    ("pseudocircle_wart", [1, 1, 0]), ("subdivided_pseudocircle", [1, 1]),
])
def test_betti_examples(library, name, expected):
    assert betti_gf2(order_complex(library[name])) == expected


def test_betti_torus_and_projective_plane():
    P4 = generators.pseudocircle()
    assert betti_gf2(order_complex(product(P4, P4))) == [1, 2, 1]
    assert betti_gf2(order_complex(face_poset(RP2_TRIANGLES))) == [1, 1, 1]


@pytest.mark.parametrize("name,expected", [
    ("point", 0), ("chain3", 0), ("antichain2", 0), ("pseudocircle", 1),
    ("min_sphere2", 1), ("subdivided_pseudocircle", 1), ("pseudocircle_wart", 1),
    ("lambda", 0),
])
def test_cup_length_examples(library, name, expected):
    X = library[name]
    assert cup_length(order_complex(X)) == expected
    if len(X) <= 6:
        assert oracles.cup_length(X) == expected


def test_cup_length_two():
    P4 = generators.pseudocircle()
    assert cup_length(order_complex(product(P4, P4))) == 2
    assert cup_length(order_complex(face_poset(RP2_TRIANGLES))) == 2


@given(dags(max_n=5))
@settings(max_examples=25, deadline=None)
def test_cup_length_matches_oracle(X):
    assert cup_length(order_complex(X)) == oracles.cup_length(X)


def test_cup_of_cocycles_is_cocycle():
    K = order_complex(product(generators.pseudocircle(), generators.pseudocircle()))
    H = cohomology_basis(K)
    d2 = K.coboundary_rows(2)
    for a in H.classes[1]:
        for b in H.classes[1]:
            c = cup(K, 1, a, 1, b)
            assert all(bin(row & c).count("1") % 2 == 0 for row in d2)


def test_cup_length_budget():
    K = order_complex(face_poset(RP2_TRIANGLES))
    with pytest.raises(BudgetExceeded):
        cup_length(K, cap=0)


def test_order_complex_budget(library):
    with pytest.raises(BudgetExceeded):
        order_complex(library["min_sphere2"], cap=5)


def test_subdivision_invariance(library):
    for name in ("pseudocircle", "min_sphere2", "lambda", "antichain2"):
        X = library[name]
        S = generators.subdivision(X)
        assert betti_gf2(order_complex(S)) == betti_gf2(order_complex(X))[:] + \
            [0] * (order_complex(S).dim - order_complex(X).dim)
        assert cup_length(order_complex(S)) == cup_length(order_complex(X))


def test_inclusion_rank_examples(P4, C3):
    assert inclusion_induced_rank(P4, P4.whole()) == [1, 1]
    assert inclusion_induced_rank(P4, P4.subset("abc"))[1] == 0
    assert inclusion_induced_rank(C3, C3.subset(["x0", "x2"]))[0] == 1
    A2 = generators.antichain(2)
    assert inclusion_induced_rank(A2, A2.whole()) == [2]
    with pytest.raises(EmptySet):
        inclusion_induced_rank(P4, P4.empty())


@given(dags(max_n=5))
@settings(max_examples=25, deadline=None)
def test_inclusion_rank_of_whole_space_is_betti(X):
    assert inclusion_induced_rank(X, X.whole()) == betti_gf2(order_complex(X))


def test_gf2_rank_and_nullspace():
    rows = [0b011, 0b110, 0b101]
    assert rank(rows) == 2
    assert oracles.rank_gf2([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2
    null = nullspace(rows, 3)
    assert null == [0b111] or len(null) == 1 and all(
        bin(r & null[0]).count("1") % 2 == 0 for r in rows)
