import math

import numpy as np
import pytest

from commgraph.graph import (GraphBudgetError, NotAVertex, UndefinedDiameter, build_graph, certify_distance_ge4,
                             component_indices, connected_components, diameter, distance, eccentricities,
                             export_graph, is_complete, nilpotent_graph)
from commgraph.matrix import BOOLEAN, Matrix, identity, jordan, transpose, unit
from commgraph.semiring import chain, modular
from commgraph.space import space
from commgraph.witnesses import boolean_witness_pair

import oracles


@pytest.fixture(scope="module")
def z4_graph():
    return build_graph(modular(4), 2)


@pytest.mark.parametrize("S", [BOOLEAN, modular(3), modular(4), chain(3)], ids=lambda S: S.name)
def test_graph_matches_naive_oracle(S):
    verts, adj = oracles.commuting_graph(S.add_table, S.mul_table, 2)
    g = build_graph(S, 2)
    assert [m.entries for m in g.matrices()] == sorted(verts, key=lambda A: Matrix(S, A).code)
    got = {(g.matrix(i).entries, g.matrix(j).entries) for i, j in g.edges()}
    want = {(a, b) for a in verts for b in adj[a] if Matrix(S, a).code < Matrix(S, b).code}
    assert got == want
    d = diameter(g).value
    assert d == oracles.diameter(verts, adj)


def test_eccentricities_match_bfs(z4_graph):
    g = z4_graph
    verts, adj = oracles.commuting_graph(modular(4).add_table, modular(4).mul_table, 2)
    ecc = eccentricities(g)
    for i in range(0, len(g), 17):
        dist = oracles.bfs(adj, g.matrix(i).entries)
        assert ecc[i] == max(dist.values())


def test_implicit_mode_agrees_with_materialized(z4_graph):
    imp = build_graph(modular(4), 2, mode="implicit")
    assert len(imp) == len(z4_graph)
    for i in range(0, len(imp), 11):
        assert np.array_equal(imp.neighbors(i), z4_graph.neighbors(i))
    J = jordan(modular(4), 2)
    assert distance(imp, J, J.T).value == distance(z4_graph, J, J.T).value == 3
    with pytest.raises(GraphBudgetError, match="materialized"):
        diameter(imp)


def test_known_diameters():
    assert diameter(build_graph(BOOLEAN, 2)).value == math.inf
    assert diameter(build_graph(BOOLEAN, 3)).value == 4
    assert diameter(build_graph(modular(6), 2)).value == 3


def test_diameter_witness_is_a_shortest_path(z4_graph):
    d = diameter(z4_graph)
    path = d.witness_path
    assert len(path) == d.value + 1
    assert path[0] == d.endpoints[0] and path[-1] == d.endpoints[1]
    assert distance(z4_graph, *d.endpoints).value == d.value


def test_distance_results():
    g = build_graph(BOOLEAN, 2)
    E11, E22 = unit(BOOLEAN, 2, 1, 1), unit(BOOLEAN, 2, 2, 2)
    J = jordan(BOOLEAN, 2)
    assert distance(g, E11, E22).value == 1
    far = distance(g, E11, J)
    assert far.value == math.inf and far.witness_path is None and not far.finite
    # J_2 and its transpose meet through I + E12 and I + E21
    d = distance(g, J, transpose(J))
    assert d.value == 3
    assert d.witness_path[1] == identity(BOOLEAN, 2) + J


def test_central_matrix_is_not_a_vertex(z4_graph):
    with pytest.raises(NotAVertex):
        z4_graph.index_of(identity(modular(4), 2))


def test_components():
    g = build_graph(BOOLEAN, 2)
    comps = component_indices(g)
    assert sorted(len(c) for c in comps) == [2, 12]
    small = min(connected_components(g), key=len)
    assert set(small) == {unit(BOOLEAN, 2, 1, 1), unit(BOOLEAN, 2, 2, 2)}


def test_nilpotent_subgraphs():
    for S, sizes in ((BOOLEAN, [1, 1]), (chain(3), [2, 2]), (modular(4), None)):
        g = nilpotent_graph(S, 2)
        comps = component_indices(g)
        if sizes is not None:
            assert sorted(len(c) for c in comps) == sizes
            assert all(is_complete(g, c) for c in comps)


def test_undefined_diameter():
    # a commuting subset has no vertices at all
    codes = [unit(BOOLEAN, 2, 1, 1).code, unit(BOOLEAN, 2, 2, 2).code, identity(BOOLEAN, 2).code]
    g = build_graph(BOOLEAN, 2, members=codes)
    assert len(g) == 0
    with pytest.raises(UndefinedDiameter):
        diameter(g)


def test_subset_graph_removes_members_central_in_the_subset():
    sp = space(BOOLEAN, 2)
    E11, E12, I = unit(BOOLEAN, 2, 1, 1), unit(BOOLEAN, 2, 1, 2), identity(BOOLEAN, 2)
    g = build_graph(BOOLEAN, 2, members=[E11.code, E12.code, I.code])
    # I commutes with the whole subset and is dropped; E11 and E12 do not commute
    assert g.matrices() == sorted([E11, E12], key=sp.code)
    assert list(g.edges()) == []
    assert diameter(g).value == math.inf


def test_memory_cap():
    with pytest.raises(GraphBudgetError):
        build_graph(chain(3), 3, memory_cap=1 << 20)
    with pytest.raises(GraphBudgetError, match="allow"):
        build_graph(BOOLEAN, 4)


def test_workers_give_identical_results(z4_graph):
    g2 = build_graph(modular(4), 2, workers=2)
    assert np.array_equal(g2.adjacency, z4_graph.adjacency)
    assert np.array_equal(eccentricities(g2, workers=2), eccentricities(z4_graph))


def test_export_formats():
    g = build_graph(BOOLEAN, 2)
    csv = export_graph(g, "csv").decode().splitlines()
    assert csv[0] == "u,v"
    pairs = [tuple(map(int, line.split(","))) for line in csv[1:]]
    assert all(u < v for u, v in pairs)
    assert len(pairs) == len(list(g.edges()))
    dot = export_graph(g, "dot").decode()
    assert dot.startswith("graph ")
    assert dot.count(" -- ") == len(pairs)
    assert export_graph(g, "dot") == export_graph(build_graph(BOOLEAN, 2), "dot")
    with pytest.raises(ValueError):
        export_graph(g, "png")


def test_certificate_n3():
    A, B = boolean_witness_pair(3)
    cert = certify_distance_ge4(BOOLEAN, 3, A, B)
    assert cert.holds and bool(cert)
    assert cert.evidence["neighbors_a"] == 5 and cert.evidence["cross_pairs_checked"] == 25


def test_certificate_rejects_bad_inputs():
    A, B = boolean_witness_pair(3)
    with pytest.raises(ValueError, match="central"):
        certify_distance_ge4(BOOLEAN, 3, identity(BOOLEAN, 3), B)
    with pytest.raises(ValueError, match="coincide"):
        certify_distance_ge4(BOOLEAN, 3, A, A)
    with pytest.raises(ValueError, match="commute"):
        certify_distance_ge4(BOOLEAN, 3, A, A @ A)


def test_certificate_fails_for_close_pair():
    S = modular(4)
    J = jordan(S, 2)
    cert = certify_distance_ge4(S, 2, J, J.T)
    assert not cert.holds
    assert "counterexample" in cert.evidence
