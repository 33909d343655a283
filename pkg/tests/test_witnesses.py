import pytest

from commgraph.graph import build_graph, distance
from commgraph.matrix import BOOLEAN, Matrix, commutes, identity, jordan, scalar, scalar_mul, unit
from commgraph.semiring import chain, modular
from commgraph.space import is_central
from commgraph.witnesses import (boolean_witness_pair, expected_neighbor_sets_n3, jn_common_centralizer, jn_pair,
                                 nonentire_connect)


def test_n4_witnesses():
    A, B = boolean_witness_pair(4)
    assert A.entries == ((0, 0, 0, 1), (0, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0))
    assert B.entries == ((1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        boolean_witness_pair(2)


def test_block_witnesses_do_not_commute():
    for n in range(3, 8):
        A, B = boolean_witness_pair(n)
        assert not commutes(A, B)
        assert not is_central(A) and not is_central(B)


def test_expected_neighbor_sets():
    na, nb = expected_neighbor_sets_n3()
    assert len(set(na)) == len(set(nb)) == 5
    assert Matrix(BOOLEAN, [[1, 1, 0], [0, 0, 0], [0, 0, 1]]) in na
    assert Matrix(BOOLEAN, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]) in nb
    assert not set(na) & set(nb)
    A, B = boolean_witness_pair(3)
    assert all(commutes(A, C) for C in na)
    assert all(commutes(B, D) for D in nb)
    assert not any(commutes(C, D) for C in na for D in nb)


@pytest.mark.parametrize("S,n", [(BOOLEAN, 2), (BOOLEAN, 3), (modular(4), 2), (modular(6), 2), (chain(3), 2)],
                         ids=lambda x: str(getattr(x, "name", x)))
def test_common_centralizer_is_scalar(S, n):
    assert set(jn_common_centralizer(S, n)) == {scalar(S, n, a) for a in range(S.order)}


def test_jn_pair():
    J, Jt = jn_pair(modular(4), 3)
    assert J == jordan(modular(4), 3) and Jt == J.T
    with pytest.raises(ValueError):
        jn_pair(BOOLEAN, 1)


def test_jordan_distance_over_boolean_two_by_two():
    # both lie in the large component; the other component is {E11, E22}
    g = build_graph(BOOLEAN, 2)
    d = distance(g, *jn_pair(BOOLEAN, 2))
    assert d.value == 3


def test_case_1_path():
    S = modular(4)
    A = identity(S, 2) + unit(S, 2, 1, 2)
    B = identity(S, 2) + unit(S, 2, 2, 1)
    w = nonentire_connect(A, B)
    assert w.branches == ["case-1"]
    assert w.vertices == [A, scalar_mul(2, A), scalar_mul(2, B), B]


def test_case_2_path():
    S = modular(4)
    A = Matrix(S, [[1, 0], [0, 3]])
    B = identity(S, 2) + unit(S, 2, 2, 1)
    assert is_central(scalar_mul(2, A))
    w = nonentire_connect(A, B)
    assert w.branches == ["case-2"]
    assert w.vertices == [A, scalar_mul(2, unit(S, 2, 1, 2)), scalar_mul(2, B), B]
    mirror = nonentire_connect(B, A)
    assert mirror.branches == ["case-2-mirror"]


def test_case_3_collapses_when_x_equals_y():
    S = modular(4)
    A = Matrix(S, [[1, 0], [0, 3]])
    B = Matrix(S, [[3, 0], [0, 1]])
    w = nonentire_connect(A, B)
    assert w.branches == ["case-3"]
    assert w.length == 2
    assert w.vertices == [A, scalar_mul(2, unit(S, 2, 1, 2)), B]


def test_nonentire_errors():
    with pytest.raises(ValueError, match="entire"):
        nonentire_connect(unit(BOOLEAN, 2, 1, 2), unit(BOOLEAN, 2, 2, 1))
    S = modular(4)
    with pytest.raises(ValueError, match="central"):
        nonentire_connect(identity(S, 2), unit(S, 2, 1, 2))
    with pytest.raises(ValueError):
        nonentire_connect(unit(S, 2, 1, 2), unit(modular(6), 2, 1, 2))


def test_nonentire_modular6_sample():
    S = modular(6)
    mats = [Matrix(S, [[a, b], [c, d]]) for a, b, c, d in [(1, 2, 3, 4), (0, 1, 0, 0), (5, 0, 0, 1),
                                                          (2, 3, 3, 2), (1, 0, 0, 4)]]
    for A in mats:
        for B in mats:
            if A != B:
                assert nonentire_connect(A, B).length <= 3
