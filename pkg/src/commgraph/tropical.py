"""The max-plus semiring over exact rationals with a bottom element."""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Union

Number = Union[int, Fraction, str]


@total_ordering
class TropicalScalar:
    """An element of R u {-inf}; ``+`` is max and ``*`` is ordinary addition.

    ``value`` is a :class:`~fractions.Fraction`, or ``None`` for -inf.
    """

    __slots__ = ("value",)

    def __init__(self, value=None):
        if isinstance(value, TropicalScalar):
            value = value.value
        elif isinstance(value, str):
            value = parse_tropical_value(value)
        elif isinstance(value, float):
            if value == float("-inf"):
                value = None
            else:
                # floats are accepted only if they are exact binary rationals
                value = Fraction(value)
        elif value is not None:
            value = Fraction(value)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("TropicalScalar is immutable")

    def __reduce__(self):
        return (TropicalScalar, (self.value,))

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __add__(self, other):
        other = _coerce(other)
        if self.value is None:
            return other
        if other.value is None or self.value >= other.value:
            return self
        return other

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        if self.value is None or other.value is None:
            return NEG_INF
        return TropicalScalar(self.value + other.value)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TropicalScalar):
            try:
                other = _coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.value == other.value

    def __lt__(self, other):
        other = _coerce(other)
        if self.value is None:
            return other.value is not None
        return other.value is not None and self.value < other.value

    def __hash__(self):
        return hash(("trop", self.value))

    def __repr__(self):
        return f"TropicalScalar({format_tropical_value(self.value)})"

    def __str__(self):
        return format_tropical_value(self.value)


def _coerce(x) -> TropicalScalar:
    return x if isinstance(x, TropicalScalar) else TropicalScalar(x)


def parse_tropical_value(token: str):
    token = token.strip()
    if token in ("-inf", "-oo", "−∞"):
        return None
    return Fraction(token)


def format_tropical_value(v) -> str:
    if v is None:
        return "-inf"
    return str(v)


NEG_INF = TropicalScalar(None)
T_ZERO = TropicalScalar(0)


class TropicalSemiring:
    """Marker/semiring object for matrices over the tropical semiring."""

    name = "tropical"
    finite = False

    @property
    def zero(self) -> TropicalScalar:
        return NEG_INF

    @property
    def one(self) -> TropicalScalar:
        return T_ZERO

    def add(self, a, b):
        return _coerce(a) + _coerce(b)

    def mul(self, a, b):
        return _coerce(a) * _coerce(b)

    def index(self, name: str) -> TropicalScalar:
        try:
            return TropicalScalar(parse_tropical_value(name))
        except (ValueError, ZeroDivisionError):
            raise KeyError(f"bad tropical entry {name!r}") from None

    def element_name(self, a) -> str:
        return str(a)

    def __repr__(self):
        return "TROPICAL"

    def __str__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, TropicalSemiring)

    def __hash__(self):
        return hash("tropical")

    def __reduce__(self):
        return (TropicalSemiring, ())


TROPICAL = TropicalSemiring()
