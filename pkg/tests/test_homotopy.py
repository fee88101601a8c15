import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

import oracles
from lscat import generators
from lscat.errors import BudgetExceeded, EmptySet, InvalidFence, NotMonotone
from lscat.homotopy import (Fence, Obstruction, are_homotopic, check_fence,
                            homology_obstruction, homotopic_to_identity, inclusion,
                            is_contractible, is_contractible_in, monotone_maps)
from lscat.space import MonotoneMap, core
from test_space import dags


def small_spaces(library):
    return {k: v for k, v in library.items() if len(v) <= 6}


def test_identity_is_homotopic_to_itself(C3):
    idc = MonotoneMap.identity(C3)
    fence = are_homotopic(idc, idc, reduce=False)
    assert fence is not None and len(fence) == 1


def test_swap_on_antichain_not_homotopic(A2):
    swap = MonotoneMap(A2, A2, (1, 0))
    assert are_homotopic(MonotoneMap.identity(A2), swap) is None
    assert are_homotopic(MonotoneMap.identity(A2), swap, reduce=False) is None
    # oracle: the four maps of A2 -> A2 have no comparable distinct pairs
    le = oracles.order_matrix(A2)
    G = oracles.map_space_graph(le, le)
    assert G.number_of_nodes() == 4 and G.number_of_edges() == 0


def test_lambda_identity_to_constant():
    L = generators.lambda_poset()
    const = MonotoneMap.constant(L, L, L.idx("a"))
    fence = are_homotopic(MonotoneMap.identity(L), const, reduce=False)
    assert fence is not None and len(fence) == 2
    assert are_homotopic(MonotoneMap.identity(L), const) is not None


def test_contractible_in_examples(P4, C3):
    fence = is_contractible_in(P4, P4.subset("ab"))
    assert fence is not None and fence.end.is_constant()
    assert oracles.contractible_in(P4, {P4.idx("a"), P4.idx("b")})
    assert is_contractible_in(P4, P4.whole()) is None
    assert is_contractible_in(P4, P4.whole(), reduce=False) is None
    assert not oracles.contractible_in(P4, set(range(4)))
    for r in range(1, 4):
        for c in itertools.combinations(C3.points, r):
            assert is_contractible_in(C3, C3.subset(c)) is not None
    with pytest.raises(EmptySet):
        is_contractible_in(P4, P4.empty())


def test_is_contractible_examples(C3, P4):
    assert is_contractible(C3)
    assert not is_contractible(P4)
    assert is_contractible(generators.v_poset())


def test_is_contractible_cross_check(library):
    for X in small_spaces(library).values():
        fence = is_contractible_in(X, X.whole(), reduce=False)
        assert is_contractible(X) == (fence is not None)


def test_homotopic_to_identity_examples(P4):
    W = generators.pseudocircle_wart()
    _, r = core(W)
    assert homotopic_to_identity(r) is not None
    const = MonotoneMap.constant(P4, P4, 0)
    assert homotopic_to_identity(const) is None
    assert homotopic_to_identity(MonotoneMap.identity(P4)) is not None


def test_obstruction_examples(P4, C3):
    assert homology_obstruction(P4, P4.whole()) is Obstruction.OBSTRUCTED
    assert homology_obstruction(P4, P4.subset("a")) is Obstruction.UNKNOWN
    for r in range(1, 4):
        for c in itertools.combinations(C3.points, r):
            assert homology_obstruction(C3, C3.subset(c)) is Obstruction.UNKNOWN


def test_pruned_search_agrees(P4):
    assert is_contractible_in(P4, P4.whole(), prune=True) is None
    assert is_contractible_in(P4, P4.subset("ab"), prune=True) is not None


def test_monotone_maps_enumeration_matches_filter(library):
    for name in ("pseudocircle", "lambda", "chain3", "antichain3", "pseudocircle_wart"):
        X = library[name]
        le = oracles.order_matrix(X)
        assert set(monotone_maps(X, X)) == set(oracles.monotone_maps(le, le))


@pytest.mark.parametrize("name", ["chain3", "lambda", "v", "pseudocircle",
                                  "pseudocircle_wart", "antichain2"])
def test_homotopy_classes_match_components(library, name):
    """Exhaustive: verdicts agree with components of the full comparability graph."""
    X = library[name]
    le = oracles.order_matrix(X)
    G = oracles.map_space_graph(le, le)
    comp = {f: k for k, c in enumerate(nx.connected_components(G)) for f in c}
    maps = sorted(G.nodes)
    if len(X) <= 4:
        pairs = itertools.combinations_with_replacement(maps, 2)
    else:
        refs = [tuple(range(len(X)))] + [(v,) * len(X) for v in range(len(X))]
        pairs = ((f, g) for f in maps for g in refs)
    for f, g in pairs:
        mf, mg = MonotoneMap(X, X, f), MonotoneMap(X, X, g)
        same = comp[f] == comp[g]
        for reduce in (True, False):
            fence = are_homotopic(mf, mg, reduce=reduce)
            assert (fence is not None) == same
            if fence is not None:
                check_fence(fence.maps, mf, mg)
                # BFS without reduction gives a minimum-length fence
                if not reduce:
                    assert len(fence) - 1 == nx.shortest_path_length(G, f, g)


@given(dags(max_n=5))
@settings(max_examples=40, deadline=None)
def test_contractible_in_matches_oracle(X):
    for r in range(1, len(X) + 1):
        for c in itertools.combinations(range(len(X)), r):
            mask = sum(1 << i for i in c)
            A = X.subset(X.points[i] for i in c)
            fence = is_contractible_in(X, A)
            assert (fence is not None) == oracles.contractible_in(X, set(c))
            if fence is not None:
                check_fence(fence.maps, inclusion(X, mask))
                assert fence.end.is_constant()


def test_obstruction_sound_on_small_spaces(library):
    for X in small_spaces(library).values():
        for mask in range(1, 1 << len(X)):
            A = X.subset(X.points[i] for i in range(len(X)) if mask >> i & 1)
            if homology_obstruction(X, A) is Obstruction.OBSTRUCTED:
                assert is_contractible_in(X, A) is None


def test_fence_checker_rejects_bad_fences(C3, A2):
    idc = MonotoneMap.identity(C3)
    bad = MonotoneMap(C3, C3, (2, 0, 0), check=False)
    with pytest.raises(NotMonotone):
        check_fence([idc, bad])
    swap = MonotoneMap(A2, A2, (1, 0))
    with pytest.raises(InvalidFence):
        check_fence([MonotoneMap.identity(A2), swap])
    with pytest.raises(InvalidFence):
        Fence(())


def test_budget_is_an_error_not_a_verdict(P4):
    const = MonotoneMap.constant(P4, P4, 0)
    with pytest.raises(BudgetExceeded):
        are_homotopic(const, MonotoneMap.identity(P4), budget=2, reduce=False)
