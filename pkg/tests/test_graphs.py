import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annigraph.errors import AnnigraphError
from annigraph.graphs import (
    Flavor,
    Graph,
    annihilator_object,
    build_graph,
    check_isomorphism,
    classical_zero_divisor_graph,
    classify_shape,
    is_isomorphic,
    is_isomorphic_bruteforce,
    twin_classes,
    zero_divisor_graph,
)
from annigraph.modules import Module
from annigraph.rings import Integers, Product, ZMod

Z = Integers()


def K(n):
    return Graph.from_edges(list(range(n)), list(itertools.combinations(range(n), 2)))


def path(n):
    return Graph.from_edges(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(list(range(n)), [(i, (i + 1) % n) for i in range(n)])


def test_flavor_parse():
    assert Flavor.parse("f") is Flavor.FULL
    assert Flavor.parse("semi") is Flavor.SEMI
    assert Flavor.parse("T") is Flavor.STAR
    with pytest.raises(AnnigraphError):
        Flavor.parse("x")


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(AnnigraphError):
        Graph([0, 1], np.array([[True, False], [False, False]]))
    with pytest.raises(AnnigraphError):
        Graph([0, 1], np.array([[False, True], [False, False]]))


# ------------------------------------------------------------ objects


def test_klein_objects():
    M = Module(Z, [2, 2])
    assert annihilator_object(M, "f") == {(0, 1), (1, 0), (1, 1)}
    assert annihilator_object(M, "t") == set()


def test_simple_and_cyclic_objects():
    assert annihilator_object(Module(Z, [7]), "f") == set()
    assert annihilator_object(Module(Z, [4]), "f") == {(2,)}


def test_klein_graphs():
    M = Module(Z, [2, 2])
    assert build_graph(M, "full").edges() == [(0, 1), (0, 2), (1, 2)]
    assert build_graph(M, "semi").edges() == [(0, 1), (0, 2), (1, 2)]
    assert build_graph(M, "star").n == 0


def test_z6_path():
    G = build_graph(Module(Z, [6]), "full")
    assert G.labels == [(2,), (3,), (4,)]
    assert G.edges() == [(0, 1), (1, 2)]


def test_z4_isolated_vertex():
    G = build_graph(Module(Z, [4]), "full")
    assert G.labels == [(2,)] and G.edges() == []


def test_z2_z4_complete():
    shape = classify_shape(build_graph(Module(Z, [2, 4]), "full"))
    assert shape.vertices == 7 and shape.complete


def test_shape_k3_and_path():
    s = classify_shape(build_graph(Module(Z, [2, 2]), "full"))
    assert s.complete and s.cycle == 3
    p = classify_shape(build_graph(Module(Z, [6]), "full"))
    assert p.star and p.star_center == (3,)
    assert set(p.pendants) == {(2,), (4,)}
    assert p.degree_sequence == (2, 1, 1)


def test_shape_edge_cases():
    assert classify_shape(Graph([], np.zeros((0, 0), dtype=bool))).empty
    assert classify_shape(cycle(5)).cycle == 5
    assert classify_shape(K(1)).star
    assert not classify_shape(cycle(4)).star


# ------------------------------------------------------------ isomorphism


def test_isomorphism_examples():
    assert is_isomorphic(K(3), K(3)) is not None
    assert is_isomorphic(path(3), K(3)) is None
    a = build_graph(Module(ZMod(12), [4]), "full")
    from annigraph.localization import fraction_module
    b = build_graph(fraction_module(Module(ZMod(12), [4])), "full")
    assert a.n == b.n == 1 and is_isomorphic(a, b) is not None


def test_regular_non_isomorphic_pair():
    # two 3-regular graphs on 6 vertices: the prism and K_{3,3}
    prism = Graph.from_edges(list(range(6)), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    k33 = Graph.from_edges(list(range(6)), [(i, j) for i in range(3) for j in range(3, 6)])
    assert is_isomorphic(prism, k33) is None
    assert is_isomorphic_bruteforce(prism, k33) is None


def test_twin_classes_complete_bipartite():
    G = Graph.from_edges(list(range(5)), [(i, j) for i in range(2) for j in range(2, 5)])
    cls, blocks = twin_classes(G)
    assert blocks == [([0, 1], "false"), ([2, 3, 4], "false")]
    assert list(cls) == [0, 0, 1, 1, 1]
    _, blocks = twin_classes(K(3))
    assert blocks == [([0, 1, 2], "true")]


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = [e for e in pairs if draw(st.booleans())]
    return Graph.from_edges(list(range(n)), edges)


@settings(max_examples=150, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_permuted_copy_is_isomorphic(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    H = Graph.from_edges(list(range(G.n)), [(perm[i], perm[j]) for i, j in G.edges()])
    f = is_isomorphic(G, H)
    assert f is not None and check_isomorphism(G, H, f)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_matches_bruteforce(G, H):
    fast, slow = is_isomorphic(G, H), is_isomorphic_bruteforce(G, H)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert check_isomorphism(G, H, fast)


# ------------------------------------------------------------ zero divisors


def test_zero_divisor_examples():
    G = zero_divisor_graph(ZMod(6))
    assert G.labels == [(2,), (3,), (4,)] and G.edges() == [(0, 1), (1, 2)]
    G = zero_divisor_graph(ZMod(4))
    assert G.labels == [(2,)] and G.edges() == []
    G = zero_divisor_graph(ZMod(9))
    assert G.labels == [(3,), (6,)] and G.edges() == [(0, 1)]


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40))
def test_zero_divisor_oracle_zmod(n):
    G, H = zero_divisor_graph(ZMod(n)), classical_zero_divisor_graph(ZMod(n))
    assert G.labels == H.labels and np.array_equal(G.adj, H.adj)


@pytest.mark.parametrize("ms", [(2, 2), (2, 3), (3, 5), (2, 2, 2), (2, 4)])
def test_zero_divisor_oracle_products(ms):
    R = Product(*ms)
    G, H = zero_divisor_graph(R), classical_zero_divisor_graph(R)
    assert G.labels == H.labels and np.array_equal(G.adj, H.adj)


# ------------------------------------------------------------ properties of built graphs


module_specs = st.one_of(
    st.lists(st.integers(2, 8), min_size=1, max_size=3).map(lambda fs: Module(Z, fs)),
    st.sampled_from([4, 6, 8, 12, 18]).flatmap(
        lambda n: st.lists(st.sampled_from([d for d in range(2, n + 1) if n % d == 0]), min_size=1, max_size=2)
        .map(lambda fs: Module(ZMod(n), fs))),
)


@settings(max_examples=50, deadline=None)
@given(module_specs)
def test_built_graph_invariants(M):
    if M.size > 64:
        return
    full, semi, star = (build_graph(M, f) for f in Flavor)
    for G in (full, semi, star):
        assert np.array_equal(G.adj, G.adj.T) and not G.adj.diagonal().any()
        assert G.index == sorted(G.index) and 0 not in G.index
    assert set(star.index) <= set(semi.index) <= set(full.index)
    # adjacency is exactly the vanishing of [x:M][y:M]M, checked by brute force
    for a, x in enumerate(full.index):
        for b, y in enumerate(full.index):
            if a == b:
                continue
            kills = all(M.kills[m][M.acting.mul_table[r, s]]
                        for r in np.flatnonzero(M.colon[x]) for s in np.flatnonzero(M.colon[y])
                        for m in range(M.size))
            assert full.adj[a, b] == kills
