import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from commgraph.semiring import (SemiringTable, StructureError, boolean, builtin_semiring, canonicalize, chain,
                                classify, find_zero_divisor_pair, modular, validate_axioms)
from commgraph.tropical import TROPICAL

import oracles

BUILTINS = [boolean(), modular(2), modular(4), modular(5), modular(6), chain(2), chain(3), chain(5)]


@pytest.mark.parametrize("S", BUILTINS, ids=lambda S: S.name)
def test_builtins_satisfy_axioms(S):
    report = validate_axioms(S)
    assert report.valid
    assert not report
    assert oracles.table_axiom_violations(S.add_table, S.mul_table) == set()


@pytest.mark.parametrize("S,expected", [
    (boolean(), (True, True, True, True)),
    (modular(4), (True, False, False, False)),
    (modular(5), (True, True, False, True)),
    (modular(6), (True, False, False, False)),
    (chain(3), (True, True, True, False)),
    (chain(2), (True, True, True, True)),
], ids=lambda x: getattr(x, "name", ""))
def test_classify(S, expected):
    p = classify(S)
    assert (p.commutative, p.entire, p.antinegative, p.division) == expected


def test_zero_divisor_pairs():
    assert find_zero_divisor_pair(modular(4)) == (2, 2)
    assert find_zero_divisor_pair(modular(6)) == (2, 3)
    assert find_zero_divisor_pair(boolean()) is None
    assert find_zero_divisor_pair(chain(4)) is None


def test_chain_names_and_order():
    S = chain(4)
    assert S.elements == ("0", "1", "m1", "m2")
    # m1 < m2 < 1 under max
    assert S.add(S.index("m1"), S.index("m2")) == S.index("m2")
    assert S.mul(S.index("m2"), S.one) == S.index("m2")


def test_builtin_lookup():
    assert builtin_semiring("boolean") is boolean()
    assert builtin_semiring("modular:4") is modular(4)
    assert builtin_semiring("chain:3") is chain(3)
    assert builtin_semiring("tropical") is TROPICAL
    with pytest.raises(ValueError, match="unknown semiring"):
        builtin_semiring("field:7")
    with pytest.raises(ValueError):
        builtin_semiring("modular:x")
    with pytest.raises(ValueError):
        modular(1)


def test_malformed_tables_rejected():
    with pytest.raises(StructureError):
        SemiringTable("x", ("0", "1"), ((0, 1),), ((0, 0), (0, 1)))
    with pytest.raises(StructureError):
        SemiringTable("x", ("0", "1"), ((0, 1), (1, 2)), ((0, 0), (0, 1)))
    with pytest.raises(StructureError):
        SemiringTable("x", ("0",), ((0,),), ((0,),))


def test_canonicalize_moves_identities():
    # boolean semiring listed as (1, 0)
    S = canonicalize("flip", ["T", "F"], [[0, 0], [0, 1]], [[0, 1], [1, 1]])
    assert S.elements == ("F", "T")
    assert S.add_table == boolean().add_table
    assert S.mul_table == boolean().mul_table


def test_canonicalize_rejects_trivial():
    with pytest.raises(StructureError, match="coincide"):
        canonicalize("triv", ["a", "b"], [[0, 1], [1, 0]], [[0, 1], [1, 0]])


def test_distributivity_hole_reports_triple():
    S = modular(4).with_cell("mul", 2, 3, 1)
    report = validate_axioms(S)
    assert not report.valid
    assert "left-distrib" in report.axioms() or "right-distrib" in report.axioms()
    v = next(v for v in report if v.axiom.endswith("distrib"))
    assert len(v.witness) == 3
    a, b, c = (S.index(x) for x in v.witness)
    if v.axiom == "left-distrib":
        assert S.mul(a, S.add(b, c)) != S.add(S.mul(a, b), S.mul(a, c))
    else:
        assert S.mul(S.add(a, b), c) != S.add(S.mul(a, c), S.mul(b, c))


def _witness_violates(S, v):
    ids = [S.index(x) for x in v.witness]
    add, mul = S.add, S.mul
    if v.axiom == "add-assoc":
        a, b, c = ids
        return add(add(a, b), c) != add(a, add(b, c))
    if v.axiom == "mul-assoc":
        a, b, c = ids
        return mul(mul(a, b), c) != mul(a, mul(b, c))
    if v.axiom == "left-distrib":
        a, b, c = ids
        return mul(a, add(b, c)) != add(mul(a, b), mul(a, c))
    if v.axiom == "right-distrib":
        a, b, c = ids
        return mul(add(a, b), c) != add(mul(a, c), mul(b, c))
    if v.axiom == "add-comm":
        a, b = ids
        return add(a, b) != add(b, a)
    (a,) = ids
    if v.axiom == "add-identity":
        return add(0, a) != a or add(a, 0) != a
    if v.axiom == "mul-identity":
        return mul(1, a) != a or mul(a, 1) != a
    if v.axiom == "zero-annihilates":
        return mul(0, a) != 0 or mul(a, 0) != 0
    raise AssertionError(v.axiom)


@settings(max_examples=300, deadline=None)
@given(base=st.sampled_from(BUILTINS), data=st.data())
def test_mutations_agree_with_oracle(base, data):
    k = base.order
    table = data.draw(st.sampled_from(["add", "mul"]))
    a = data.draw(st.integers(0, k - 1))
    b = data.draw(st.integers(0, k - 1))
    value = data.draw(st.integers(0, k - 1))
    S = base.with_cell(table, a, b, value)
    report = validate_axioms(S)
    expected = oracles.table_axiom_violations(S.add_table, S.mul_table)
    assert set(report.axioms()) == expected
    for v in report:
        assert _witness_violates(S, v)


def test_division_needs_two_sided_inverses():
    # 2 * 3 = 1 but 3 * 2 = 0: only one-sided inverses, so not a division table
    add = [[0, 1, 2, 3], [1, 1, 1, 1], [2, 1, 2, 1], [3, 1, 1, 3]]
    mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 2, 1], [0, 3, 0, 3]]
    S = SemiringTable("one-sided", ("0", "1", "a", "b"), add, mul)
    assert not classify(S).division
    assert not classify(S).commutative
    assert classify(modular(5)).division


def test_arrays_match_tables():
    S = modular(6)
    assert np.array_equal(S.add_array, np.array(S.add_table))
    for a, b in itertools.product(range(6), repeat=2):
        assert S.mul_array[a, b] == (a * b) % 6
