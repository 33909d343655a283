"""Square matrices over a finite table semiring or over the tropical semiring."""
from __future__ import annotations

from typing import Iterable, Sequence

from .semiring import SemiringTable, boolean
from .tropical import NEG_INF, TROPICAL, TropicalScalar, TropicalSemiring

BOOLEAN = boolean()


class MatrixMismatch(ValueError):
    """Operands live in different semirings or have different sizes."""


class Matrix:
    """An immutable n x n matrix tagged with its semiring.

    Finite-semiring entries are element ids; tropical entries are
    :class:`TropicalScalar` values.
    """

    __slots__ = ("semiring", "entries", "_hash")

    def __init__(self, semiring, entries: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in entries)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("a matrix must be square with at least one row")
        if semiring.finite:
            k = semiring.order
            rows = tuple(tuple(int(x) for x in r) for r in rows)
            for r in rows:
                for x in r:
                    if not 0 <= x < k:
                        raise ValueError(f"entry {x} is not an element of {semiring.name}")
        else:
            rows = tuple(tuple(x if isinstance(x, TropicalScalar) else TropicalScalar(x) for x in r)
                         for r in rows)
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, semiring, rows: tuple) -> "Matrix":
        # trusted constructor: rows is already a tuple of tuples of valid entries
        self = object.__new__(cls)
        object.__setattr__(self, "semiring", semiring)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix, (self.semiring, self.entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.entries == other.entries and (
            self.semiring is other.semiring or self.semiring == other.semiring)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.entries)
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    @property
    def T(self) -> "Matrix":
        return transpose(self)

    @property
    def code(self) -> int:
        """Row-major base-k integer; (0, 0) is the most significant digit."""
        if not self.semiring.finite:
            raise TypeError("only matrices over finite semirings have a code")
        k = self.semiring.order
        c = 0
        for row in self.entries:
            for x in row:
                c = c * k + x
        return c

    def names(self) -> list[list[str]]:
        S = self.semiring
        return [[S.element_name(x) for x in row] for row in self.entries]

    def is_diagonal(self) -> bool:
        z = self.semiring.zero
        return all(self.entries[i][j] == z
                   for i in range(self.n) for j in range(self.n) if i != j)

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.names())
        return f"Matrix[{self.semiring.name}]({body})"

    def __str__(self):
        rows = self.names()
        w = max(len(x) for r in rows for x in r)
        return "\n".join(" ".join(x.rjust(w) for x in r) for r in rows)


def from_code(S: SemiringTable, n: int, code: int) -> Matrix:
    k = S.order
    digits = []
    for _ in range(n * n):
        code, d = divmod(code, k)
        digits.append(d)
    if code:
        raise ValueError("code out of range for this matrix space")
    digits.reverse()
    return Matrix(S, [digits[i * n:(i + 1) * n] for i in range(n)])


def from_names(S, rows: Sequence[Sequence[str]]) -> Matrix:
    return Matrix(S, [[S.index(str(x)) for x in r] for r in rows])


def _check(A: Matrix, B: Matrix):
    if A.n != B.n:
        raise MatrixMismatch(f"dimension mismatch: {A.n} vs {B.n}")
    if not (A.semiring is B.semiring or A.semiring == B.semiring):
        raise MatrixMismatch(f"semiring mismatch: {A.semiring} vs {B.semiring}")


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    _check(A, B)
    S = A.semiring
    if S.finite:
        t = S.add_table
        rows = tuple(tuple(t[a][b] for a, b in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries))
    else:
        rows = tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries))
    return Matrix._make(S, rows)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _check(A, B)
    S = A.semiring
    cols = list(zip(*B.entries))
    if S.finite:
        add, mul = S.add_table, S.mul_table
        rows = []
        for ra in A.entries:
            out = []
            for cb in cols:
                acc = 0
                for a, b in zip(ra, cb):
                    acc = add[acc][mul[a][b]]
                out.append(acc)
            rows.append(tuple(out))
        return Matrix._make(S, tuple(rows))
    rows = []
    for ra in A.entries:
        va = [x.value for x in ra]
        out = []
        for cb in cols:
            best = None
            for a, b in zip(va, cb):
                b = b.value
                if a is None or b is None:
                    continue
                s = a + b
                if best is None or s > best:
                    best = s
            out.append(NEG_INF if best is None else TropicalScalar(best))
        rows.append(tuple(out))
    return Matrix._make(S, tuple(rows))


def transpose(A: Matrix) -> Matrix:
    return Matrix._make(A.semiring, tuple(zip(*A.entries)))


def commutes(A: Matrix, B: Matrix) -> bool:
    return mat_mul(A, B) == mat_mul(B, A)


def scalar_mul(a, A: Matrix) -> Matrix:
    """The matrix ``aA`` with entries ``a * A[i, j]``."""
    S = A.semiring
    if S.finite:
        m = S.mul_table[a]
        return Matrix._make(S, tuple(tuple(m[x] for x in r) for r in A.entries))
    a = a if isinstance(a, TropicalScalar) else TropicalScalar(a)
    return Matrix._make(S, tuple(tuple(a * x for x in r) for r in A.entries))


def matrix_power(A: Matrix, e: int) -> Matrix:
    result = identity(A.semiring, A.n)
    base = A
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def scalar(S, n: int, a) -> Matrix:
    z = S.zero
    return Matrix(S, [[a if i == j else z for j in range(n)] for i in range(n)])


def identity(S, n: int) -> Matrix:
    return scalar(S, n, S.one)


def zero_matrix(S, n: int) -> Matrix:
    return scalar(S, n, S.zero)


def unit(S, n: int, i: int, j: int) -> Matrix:
    """E_{i,j}: the only non-zero entry is 1 at row i, column j (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"unit matrix index ({i}, {j}) out of range for n={n}")
    z, o = S.zero, S.one
    return Matrix(S, [[o if (r, c) == (i - 1, j - 1) else z for c in range(n)] for r in range(n)])


def jordan(S, n: int) -> Matrix:
    """J_n = E_{1,2} + E_{2,3} + ... + E_{n-1,n}."""
    if n < 1:
        raise ValueError("n must be positive")
    z, o = S.zero, S.one
    return Matrix(S, [[o if c == r + 1 else z for c in range(n)] for r in range(n)])


def all_units(S, n: int) -> Matrix:
    return Matrix(S, [[S.one] * n for _ in range(n)])


def special(kind: str, S, n: int, i: int | None = None, j: int | None = None) -> Matrix:
    if kind == "identity":
        return identity(S, n)
    if kind == "zero":
        return zero_matrix(S, n)
    if kind == "unit":
        if i is None or j is None:
            raise ValueError("unit matrices need both indices")
        return unit(S, n, i, j)
    if kind == "jordan":
        return jordan(S, n)
    if kind == "all_units":
        return all_units(S, n)
    raise ValueError(f"unknown special matrix {kind!r}")


def supp(A: Matrix) -> Matrix:
    """The Boolean pattern of non-zero entries of a finite-semiring matrix."""
    if not A.semiring.finite:
        raise TypeError("supp is only defined for matrices over finite table semirings")
    return Matrix(BOOLEAN, [[0 if x == 0 else 1 for x in r] for r in A.entries])


def is_tropical(A: Matrix) -> bool:
    return isinstance(A.semiring, TropicalSemiring)


def tropical_matrix(rows) -> Matrix:
    return Matrix(TROPICAL, rows)
