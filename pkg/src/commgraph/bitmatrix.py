"""Boolean matrices with n <= 8 packed into a single 64-bit word.

Entry (i, j) lives at bit ``i*n + j``. The product kernel is written with
plain shifts, masks and multiplications so the same code runs on Python
ints and on numpy ``uint64`` arrays (one matrix per array element).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .matrix import BOOLEAN, Matrix

MAX_N = 8


@lru_cache(maxsize=None)
def _masks(n: int):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"BitMatrix supports 1 <= n <= {MAX_N}, got {n}")
    row = (1 << n) - 1
    # a 1 at the start of every row, used to replicate a row into all rows
    row_starts = sum(1 << (i * n) for i in range(n))
    cols = tuple(row_starts << k for k in range(n))
    return row, row_starts, cols


def bool_matmul(a, b, n: int):
    """Boolean product of packed matrices ``a`` and ``b``.

    For each k, column k of ``a`` is smeared across its rows and row k of
    ``b`` is copied into every row; AND them and OR over k.
    """
    row, row_starts, cols = _masks(n)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        row, row_starts = np.uint64(row), np.uint64(row_starts)
        cols = tuple(np.uint64(c) for c in cols)
        shift = np.uint64
    else:
        shift = int
    out = None
    for k in range(n):
        col_k = ((a & cols[k]) >> shift(k)) * row
        row_k = ((b >> shift(k * n)) & row) * row_starts
        term = col_k & row_k
        out = term if out is None else out | term
    return out


def bool_transpose(a, n: int):
    out = 0 if not isinstance(a, np.ndarray) else np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            if isinstance(a, np.ndarray):
                bit = (a >> np.uint64(i * n + j)) & np.uint64(1)
                out |= bit << np.uint64(j * n + i)
            elif (a >> (i * n + j)) & 1:
                out |= 1 << (j * n + i)
    return out


@lru_cache(maxsize=None)
def _code_bit_order(n: int) -> np.ndarray:
    # word bit i*n+j holds entry (i, j); in a base-2 code that entry is
    # digit n*n-1-(i*n+j)
    return np.arange(n * n)[::-1]


def words_to_codes(words: np.ndarray, n: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint64)
    out = np.zeros(words.shape, dtype=np.int64)
    for pos, digit in enumerate(_code_bit_order(n)):
        out |= ((words >> np.uint64(pos)) & np.uint64(1)).astype(np.int64) << np.int64(digit)
    return out


def codes_to_words(codes: np.ndarray, n: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros(codes.shape, dtype=np.uint64)
    for pos, digit in enumerate(_code_bit_order(n)):
        out |= ((codes >> np.int64(digit)) & np.int64(1)).astype(np.uint64) << np.uint64(pos)
    return out


@dataclass(frozen=True)
class BitMatrix:
    n: int
    word: int

    def __post_init__(self):
        _masks(self.n)
        if not 0 <= self.word < (1 << (self.n * self.n)):
            raise ValueError("word has bits outside the n x n block")

    @classmethod
    def from_matrix(cls, A: Matrix) -> "BitMatrix":
        if not (A.semiring is BOOLEAN or A.semiring == BOOLEAN):
            raise TypeError("BitMatrix only represents Boolean matrices")
        n = A.n
        w = 0
        for i, r in enumerate(A.entries):
            for j, x in enumerate(r):
                if x:
                    w |= 1 << (i * n + j)
        return cls(n, w)

    def to_matrix(self) -> Matrix:
        n = self.n
        return Matrix(BOOLEAN, [[(self.word >> (i * n + j)) & 1 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return BitMatrix(self.n, bool_matmul(self.word, other.word, self.n))

    def __or__(self, other: "BitMatrix") -> "BitMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return BitMatrix(self.n, self.word | other.word)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix(self.n, bool_transpose(self.word, self.n))

    def commutes(self, other: "BitMatrix") -> bool:
        return bool_matmul(self.word, other.word, self.n) == bool_matmul(other.word, self.word, self.n)
