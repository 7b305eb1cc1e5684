import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrg import graph as pg
from qrg import projline as pl
from qrg.isomatch import (
    ColoredGraph,
    are_isomorphic,
    incidence_graph,
    neighbor_graph,
    rook_graph,
    validate_bijection,
    verify_paper_claim,
)
from qrg.pauli import FactorSpec
from qrg.rings import GaloisField, RingSpec, residue_ring, ring_from_spec


def from_nx(h, colors=None):
    n = h.number_of_nodes()
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return ColoredGraph.from_edges(n, [(idx[u], idx[v], (colors or {}).get(frozenset((u, v)), 1)) for u, v in h.edges()])


def permuted(g: ColoredGraph, perm):
    n = len(g)
    m = [[0] * n for _ in range(n)]
    for i, j, c in g.edges():
        m[perm[i]][perm[j]] = m[perm[j]][perm[i]] = c
    return ColoredGraph(tuple(map(tuple, m)))


def test_p1_z6_neighbor_graph():
    points = pl.projective_points(ring_from_spec(residue_ring(6)))
    g = neighbor_graph(points)
    assert len(g) == 12
    assert all(g.degree(i) == 5 for i in range(12))
    assert g.color_counts() == {1: 30}
    fine = neighbor_graph(points, coloring="components")
    for i in range(12):
        row = [c for c in fine.colors[i] if c]
        # same Z2 coordinate: 3 others; same Z3 coordinate: 2 others
        assert sorted(row) == [1, 1, 1, 2, 2]


def test_p1_gf4_is_edgeless():
    points = pl.projective_points(ring_from_spec(RingSpec((GaloisField(2, 2),))))
    g = neighbor_graph(points)
    assert len(g) == 5 and not g.edges()


def test_p1_z2z3f4_size():
    spec = RingSpec((residue_ring(6).components + (GaloisField(2, 2),)))
    assert len(neighbor_graph(pl.projective_points(ring_from_spec(spec)))) == 60


def test_order_mismatch():
    assert are_isomorphic(rook_graph(3, 6), rook_graph(4, 6)) is None


def test_rook_3x4_vs_2x6():
    a, b = rook_graph(3, 4), rook_graph(2, 6)
    assert {a.degree(i) for i in range(12)} == {5}
    assert {b.degree(i) for i in range(12)} == {6}
    assert are_isomorphic(a, b) is None
    assert not nx.is_isomorphic(nx.cartesian_product(nx.complete_graph(3), nx.complete_graph(4)),
                                nx.cartesian_product(nx.complete_graph(2), nx.complete_graph(6)))


def test_lex_least_automorphism_is_identity():
    g = rook_graph(3, 4)
    assert are_isomorphic(g, g) == list(range(12))


def test_regular_non_isomorphic_pair():
    # same degree sequence, different structure: 6-cycle vs two triangles
    c6 = from_nx(nx.cycle_graph(6))
    tt = from_nx(nx.disjoint_union(nx.complete_graph(3), nx.complete_graph(3)))
    assert are_isomorphic(c6, tt) is None


def test_strongly_regular_pair():
    # Shrikhande vs 4x4 rook graph: both srg(16, 6, 2, 2), colour refinement alone cannot split them
    rook = rook_graph(4, 4)
    shrikhande = ColoredGraph.from_edges(
        16,
        {
            tuple(sorted((4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4)))
            for a in range(4)
            for b in range(4)
            for da, db in [(0, 1), (1, 0), (1, 1), (0, 3), (3, 0), (3, 3)]
        },
    )
    assert are_isomorphic(rook, shrikhande) is None
    assert are_isomorphic(shrikhande, shrikhande) == list(range(16))


def test_colored_with_different_alphabets():
    a = ColoredGraph.from_edges(3, [(0, 1, 5), (1, 2, 7)])
    b = ColoredGraph.from_edges(3, [(0, 1, 1), (1, 2, 2)])
    f = are_isomorphic(a, b, respect_colors=True)
    assert f is not None
    c = ColoredGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert are_isomorphic(a, c, respect_colors=True) is None
    assert are_isomorphic(a, c) is not None


def test_colors_must_be_preserved_jointly():
    # path 0-1-2-3 coloured a,b,a vs b,a,a: same counts, different arrangement
    a = ColoredGraph.from_edges(4, [(0, 1, 1), (1, 2, 2), (2, 3, 1)])
    b = ColoredGraph.from_edges(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1)])
    f = are_isomorphic(a, b, respect_colors=True)
    # renaming 1<->2 is not count preserving (2 vs 1 edges) so only identity renaming applies
    assert f is None


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 11), st.floats(0.1, 0.9), st.integers(0, 10**6), st.booleans())
def test_agrees_with_networkx(n, p, seed, same):
    h1 = nx.gnp_random_graph(n, p, seed=seed)
    if same:
        perm = list(range(n))
        random.Random(seed).shuffle(perm)
        h2 = nx.relabel_nodes(h1, dict(enumerate(perm)))
    else:
        h2 = nx.gnp_random_graph(n, p, seed=seed + 1)
    g1, g2 = from_nx(h1), from_nx(h2)
    f = are_isomorphic(g1, g2)
    assert (f is not None) == nx.is_isomorphic(h1, h2)
    if f is not None:
        assert validate_bijection(g1, g2, f)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_colored_permutation_recovered(seed):
    rnd = random.Random(seed)
    n = 9
    edges = [(i, j, rnd.randint(1, 3)) for i, j in itertools.combinations(range(n), 2) if rnd.random() < 0.5]
    g = ColoredGraph.from_edges(n, edges)
    perm = list(range(n))
    rnd.shuffle(perm)
    h = permuted(g, perm)
    f = are_isomorphic(g, h, respect_colors=True)
    assert f is not None and validate_bijection(g, h, f, respect_colors=True)


def test_incidence_graph_colors():
    g = pg.build_graph(FactorSpec((2, 3)))
    inc = pg.incidence_structure(pg.maximal_cliques(g))
    ig = incidence_graph(inc)
    assert ig.color_counts() == {1: 18, 2: 12}


def test_verify_sextit():
    rep = verify_paper_claim(FactorSpec((2, 3)), residue_ring(6), colors=True)
    assert rep.isomorphic
    assert rep.clique_count == rep.point_count == 12
    assert len(rep.bijection) == 12
    assert validate_bijection(rep.incidence, rep.ring_graph, [
        rep.ring_graph.labels.index(b) for _, b in rep.bijection
    ])
    # intersection sizes {1, 2} cannot be renamed onto the single count colour
    assert rep.colored_isomorphic is False
    assert rep.colored_components_isomorphic is True
    assert any("colored mismatch" in f for f in rep.findings)


def test_verify_negative_control():
    rep = verify_paper_claim(FactorSpec((2, 3)), residue_ring(10))
    assert not rep.isomorphic
    assert rep.point_count == 18
    assert any("12 maximal commuting sets vs 18 points" in f for f in rep.findings)


@pytest.mark.parametrize("d", [10, 15])
def test_verify_square_free(d):
    rep = verify_paper_claim(FactorSpec.from_dimension(d), residue_ring(d), colors=True)
    assert rep.isomorphic
    assert rep.colored_components_isomorphic
