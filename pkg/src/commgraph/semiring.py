"""Finite semirings given by Cayley tables.

Elements are referred to by integer ids. Every table built through
:func:`canonicalize` or :func:`builtin_semiring` has the additive identity
at id 0 and the multiplicative identity at id 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

MAX_ORDER = 64


class StructureError(ValueError):
    """The tables are not even well-formed k x k tables over k elements."""


@dataclass(frozen=True)
class Violation:
    axiom: str
    message: str
    witness: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.message} (witness: {', '.join(self.witness)})"


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        # truthy iff something is wrong, like a non-empty list
        return bool(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def axioms(self) -> list[str]:
        return [v.axiom for v in self.violations]


@dataclass(frozen=True)
class SemiringProperties:
    commutative: bool
    entire: bool
    antinegative: bool
    division: bool


@dataclass(frozen=True)
class SemiringTable:
    name: str
    elements: tuple[str, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    finite: bool = field(default=True, init=False, repr=False, compare=False)

    def __post_init__(self):
        k = len(self.elements)
        if k < 2:
            raise StructureError(f"semiring order must be at least 2, got {k}")
        if k > MAX_ORDER:
            raise StructureError(f"semiring order {k} exceeds the supported maximum {MAX_ORDER}")
        if len(set(self.elements)) != k:
            raise StructureError("element names must be distinct")
        object.__setattr__(self, "add_table", _freeze(self.add_table, k, "add"))
        object.__setattr__(self, "mul_table", _freeze(self.mul_table, k, "mul"))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r} in semiring {self.name}") from None

    def element_name(self, a: int) -> str:
        return self.elements[a]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def add_array(self) -> np.ndarray:
        return np.array(self.add_table, dtype=np.int64)

    @cached_property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul_table, dtype=np.int64)

    @cached_property
    def properties(self) -> SemiringProperties:
        return classify(self)

    def with_cell(self, table: str, a: int, b: int, value: int) -> "SemiringTable":
        """Copy of this table with one cell of ``add`` or ``mul`` replaced."""
        rows = [list(r) for r in (self.add_table if table == "add" else self.mul_table)]
        rows[a][b] = value
        if table == "add":
            return SemiringTable(self.name, self.elements, rows, self.mul_table)
        return SemiringTable(self.name, self.elements, self.add_table, rows)

    def __str__(self) -> str:
        return self.name


def _freeze(rows, k: int, label: str) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    if len(rows) != k or any(len(r) != k for r in rows):
        raise StructureError(f"{label} table must be {k}x{k}")
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if not 0 <= x < k:
                raise StructureError(f"{label}[{i}][{j}] = {x} is not an element id in range 0..{k - 1}")
    return rows


def validate_axioms(table: SemiringTable) -> AxiomReport:
    """Check every semiring axiom by a full scan of the tables.

    Each violated axiom is reported once, with the lexicographically
    smallest counterexample.
    """
    k = table.order
    add, mul = table.add_array, table.mul_array
    names = table.elements
    r = np.arange(k)
    a, b, c = np.meshgrid(r, r, r, indexing="ij")
    out: list[Violation] = []

    def report(axiom, message, bad, *arrays):
        hits = np.argwhere(bad)
        if len(hits):
            idx = tuple(hits[0])
            out.append(Violation(axiom, message, tuple(names[int(x[idx])] for x in arrays)))

    report("add-assoc", "addition is not associative",
           add[add[a, b], c] != add[a, add[b, c]], a, b, c)
    a2, b2 = np.meshgrid(r, r, indexing="ij")
    report("add-comm", "addition is not commutative", add != add.T, a2, b2)
    report("add-identity", "0 is not an additive identity",
           (add[0] != r) | (add[:, 0] != r), r)
    report("mul-assoc", "multiplication is not associative",
           mul[mul[a, b], c] != mul[a, mul[b, c]], a, b, c)
    report("mul-identity", "1 is not a multiplicative identity",
           (mul[1] != r) | (mul[:, 1] != r), r)
    report("left-distrib", "left distributivity a(b+c) = ab+ac fails",
           mul[a, add[b, c]] != add[mul[a, b], mul[a, c]], a, b, c)
    report("right-distrib", "right distributivity (a+b)c = ac+bc fails",
           mul[add[a, b], c] != add[mul[a, c], mul[b, c]], a, b, c)
    report("zero-annihilates", "0 does not annihilate",
           (mul[0] != 0) | (mul[:, 0] != 0), r)
    return AxiomReport(tuple(out))


def classify(table: SemiringTable) -> SemiringProperties:
    add, mul = table.add_array, table.mul_array
    nz = np.arange(1, table.order)
    sub_mul = mul[np.ix_(nz, nz)]
    sub_add = add[np.ix_(nz, nz)]
    # two-sided inverse: x*y == y*x == 1
    inv = (sub_mul == 1) & (sub_mul.T == 1)
    return SemiringProperties(
        commutative=bool((mul == mul.T).all()),
        entire=bool((sub_mul != 0).all()),
        antinegative=bool((sub_add != 0).all()),
        division=bool(inv.any(axis=1).all()),
    )


def find_zero_divisor_pair(table: SemiringTable) -> Optional[tuple[int, int]]:
    """Lexicographically least pair of nonzero ids with product 0, or None.

    The pair may have ``x == y``.
    """
    for x in range(1, table.order):
        row = table.mul_table[x]
        for y in range(1, table.order):
            if row[y] == 0:
                return x, y
    return None


def canonicalize(name: str, elements: Sequence[str], add, mul) -> SemiringTable:
    """Build a table, moving the additive identity to id 0 and the
    multiplicative identity to id 1.

    When either identity does not exist the given order is kept, so that
    :func:`validate_axioms` can report the problem.
    """
    raw = SemiringTable(name, tuple(elements), add, mul)
    k = raw.order
    A, M = raw.add_array, raw.mul_array
    r = np.arange(k)
    zeros = [e for e in range(k) if (A[e] == r).all() and (A[:, e] == r).all()]
    ones = [e for e in range(k) if (M[e] == r).all() and (M[:, e] == r).all()]
    if not zeros or not ones:
        return raw
    z, o = zeros[0], ones[0]
    if z == o:
        raise StructureError("additive and multiplicative identities coincide (0 = 1)")
    perm = [z, o] + [e for e in range(k) if e not in (z, o)]
    if perm == list(range(k)):
        return raw
    inv = np.empty(k, dtype=np.int64)
    inv[perm] = r
    p = np.array(perm)
    return SemiringTable(
        name,
        tuple(raw.elements[e] for e in perm),
        inv[A[np.ix_(p, p)]].tolist(),
        inv[M[np.ix_(p, p)]].tolist(),
    )


@lru_cache(maxsize=None)
def boolean() -> SemiringTable:
    return SemiringTable("boolean", ("0", "1"), ((0, 1), (1, 1)), ((0, 0), (0, 1)))


@lru_cache(maxsize=None)
def modular(m: int) -> SemiringTable:
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    if m > MAX_ORDER:
        raise ValueError(f"modulus {m} exceeds the supported maximum order {MAX_ORDER}")
    r = range(m)
    return SemiringTable(
        f"modular:{m}",
        tuple(str(i) for i in r),
        tuple(tuple((a + b) % m for b in r) for a in r),
        tuple(tuple((a * b) % m for b in r) for a in r),
    )


@lru_cache(maxsize=None)
def chain(k: int) -> SemiringTable:
    """Totally ordered ``0 < m1 < ... < m{k-2} < 1`` with max and min."""
    if k < 2:
        raise ValueError(f"chain length must be at least 2, got {k}")
    if k > MAX_ORDER:
        raise ValueError(f"chain length {k} exceeds the supported maximum order {MAX_ORDER}")
    # rank of each id in the order; id 1 is the top
    rank = [0, k - 1] + list(range(1, k - 1))
    by_rank = {v: i for i, v in enumerate(rank)}
    names = ("0", "1") + tuple(f"m{i}" for i in range(1, k - 1))
    r = range(k)
    return SemiringTable(
        f"chain:{k}",
        names,
        tuple(tuple(by_rank[max(rank[a], rank[b])] for b in r) for a in r),
        tuple(tuple(by_rank[min(rank[a], rank[b])] for b in r) for a in r),
    )


def builtin_semiring(name: str):
    """Look up ``boolean``, ``modular:<m>``, ``chain:<k>`` or ``tropical``."""
    from .tropical import TROPICAL

    key = name.strip().lower()
    if key in ("boolean", "bool", "b"):
        return boolean()
    if key == "tropical":
        return TROPICAL
    head, _, arg = key.partition(":")
    if head in ("modular", "chain") and arg:
        try:
            value = int(arg)
        except ValueError:
            raise ValueError(f"bad parameter in semiring name {key!r}") from None
        return modular(value) if head == "modular" else chain(value)
    raise ValueError(f"unknown semiring {key!r} (expected boolean, modular:<m>, chain:<k> or tropical)")
