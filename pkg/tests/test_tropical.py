from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from commgraph.tropical import NEG_INF, T_ZERO, TROPICAL, TropicalScalar, parse_tropical_value

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.one_of(st.just(NEG_INF), rationals.map(TropicalScalar))


def test_operations():
    a, b = TropicalScalar(2), TropicalScalar("1/3")
    assert a + b == a
    assert a * b == TropicalScalar(Fraction(7, 3))
    assert NEG_INF + a == a
    assert NEG_INF * a == NEG_INF
    assert T_ZERO * a == a
    assert TROPICAL.zero == NEG_INF and TROPICAL.one == T_ZERO


def test_parse_and_format():
    assert parse_tropical_value("-inf") is None
    assert parse_tropical_value("3/6") == Fraction(1, 2)
    assert str(TropicalScalar("-2/4")) == "-1/2"
    assert str(NEG_INF) == "-inf"
    assert TROPICAL.index("2.5") == TropicalScalar(Fraction(5, 2))
    with pytest.raises(KeyError):
        TROPICAL.index("abc")


def test_ordering_puts_bottom_first():
    xs = [TropicalScalar(3), NEG_INF, TropicalScalar(-7)]
    assert sorted(xs) == [NEG_INF, TropicalScalar(-7), TropicalScalar(3)]
    assert max(xs) == TropicalScalar(3)


def test_immutable():
    with pytest.raises(AttributeError):
        TropicalScalar(1).value = 2


@given(scalars, scalars, scalars)
def test_semiring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + NEG_INF == a
    assert a * T_ZERO == a
    assert a * NEG_INF == NEG_INF
    # idempotent addition
    assert a + a == a


@given(scalars)
def test_hash_consistent(a):
    assert hash(a) == hash(TropicalScalar(a.value))
