"""Vectorized enumeration of M_n(S) for a finite semiring S.

Every matrix is identified with its canonical code (row-major base-k
integer). :class:`MatrixSpace` answers "which of these codes commute with
A" in bulk, which is the primitive behind centralizers, centres and graph
adjacency. Boolean spaces with n <= 8 use the packed-word kernel.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from . import bitmatrix
from .matrix import (Matrix, commutes, from_code, identity, jordan, mat_add, mat_mul, scalar,
                     scalar_mul, transpose, unit)
from .semiring import SemiringTable

ENUMERATION_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    pass


def _is_boolean(S: SemiringTable) -> bool:
    return S.order == 2 and S.add_table == ((0, 1), (1, 1)) and S.mul_table == ((0, 0), (0, 1))


def chain_ranks(S: SemiringTable):
    """Rank of each element if S is a chain (+ = max, * = min), else None."""
    k = S.order
    add, mul = S.add_table, S.mul_table
    # a <= b iff a + b = b
    for a in range(k):
        for b in range(k):
            if add[a][b] not in (a, b) or add[a][b] != add[b][a]:
                return None
            lo = a if add[a][b] == b else b
            if mul[a][b] != lo:
                return None
    ranks = [sum(1 for b in range(k) if add[a][b] == a) - 1 for a in range(k)]
    if sorted(ranks) != list(range(k)):
        return None
    return ranks


@lru_cache(maxsize=8)
def _boolean_commute_table(n: int) -> np.ndarray:
    """[a, b] -> do Boolean matrices with codes a, b commute (small n only)."""
    size = 1 << (n * n)
    w = bitmatrix.codes_to_words(np.arange(size, dtype=np.int64), n)
    out = np.empty((size, size), dtype=bool)
    for s in range(0, size, 256):
        a = w[s:s + 256, None]
        out[s:s + 256] = bitmatrix.bool_matmul(a, w[None, :], n) == bitmatrix.bool_matmul(w[None, :], a, n)
    return out


class MatrixSpace:
    """All n x n matrices over a finite table semiring."""

    def __init__(self, S: SemiringTable, n: int, budget: int = ENUMERATION_BUDGET,
                 backend: str = "auto"):
        if not getattr(S, "finite", False):
            raise TypeError(f"{S} is not a finite table semiring; enumeration is impossible")
        if n < 1:
            raise ValueError("n must be positive")
        self.S = S
        self.n = n
        self.k = S.order
        self.size = self.k ** (n * n)
        self.budget = budget
        self.boolean = False
        self.ranks = None
        if backend == "auto":
            if _is_boolean(S) and n <= bitmatrix.MAX_N:
                backend = "boolean"
            elif n <= 3 and chain_ranks(S) is not None:
                backend = "chain"
            else:
                backend = "table"
        if backend == "boolean":
            if not _is_boolean(S) or n > bitmatrix.MAX_N:
                raise ValueError("the boolean backend needs the Boolean semiring and n <= 8")
            self.boolean = True
        elif backend == "chain":
            self.ranks = chain_ranks(S)
            if self.ranks is None or n > 3:
                raise ValueError("the chain backend needs a chain semiring and n <= 3")
        elif backend != "table":
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self._add = S.add_array.ravel()
        self._mul = S.mul_array.ravel()
        self._powers = self.k ** np.arange(n * n - 1, -1, -1, dtype=np.int64)

    def check_budget(self, what: str = "enumeration"):
        if self.size > self.budget:
            raise BudgetExceeded(
                f"{what} of M_{self.n}({self.S.name}) needs {self.size} matrices, "
                f"over the budget of {self.budget}")

    # -- encodings -----------------------------------------------------------

    def all_codes(self) -> np.ndarray:
        self.check_budget()
        return np.arange(self.size, dtype=np.int64)

    def decode(self, codes: np.ndarray) -> np.ndarray:
        """Codes -> entry arrays of shape (len(codes), n, n)."""
        codes = np.asarray(codes, dtype=np.int64)
        digits = (codes[:, None] // self._powers[None, :]) % self.k
        return digits.reshape(-1, self.n, self.n)

    def encode(self, arrays: np.ndarray) -> np.ndarray:
        arrays = np.asarray(arrays, dtype=np.int64).reshape(-1, self.n * self.n)
        return arrays @ self._powers

    def matrix(self, code: int) -> Matrix:
        return from_code(self.S, self.n, int(code))

    def code(self, A: Matrix) -> int:
        self._own(A)
        return A.code

    def _own(self, A: Matrix):
        if A.n != self.n or not (A.semiring is self.S or A.semiring == self.S):
            raise ValueError(f"matrix is not an element of M_{self.n}({self.S.name})")

    # -- products ------------------------------------------------------------

    def matmul(self, L: np.ndarray, R: np.ndarray) -> np.ndarray:
        """Broadcast product of entry arrays with shapes (..., n, n)."""
        k = self.k
        out = None
        for l in range(self.n):
            t = self._mul[L[..., :, l, None] * k + R[..., None, l, :]]
            out = t if out is None else self._add[out * k + t]
        return out

    def prepare(self, codes) -> np.ndarray:
        """Backend representation of a batch of codes: packed words for
        Boolean spaces, (len, n, n) entry arrays otherwise."""
        codes = np.asarray(codes, dtype=np.int64)
        if self.boolean:
            return bitmatrix.codes_to_words(codes, self.n)
        if self.ranks is not None:
            # threshold layers [x >= t] as base-2 codes, one column per t
            rank = np.asarray(self.ranks)[self.decode(codes)].reshape(len(codes), -1)
            pw = 1 << np.arange(self.n * self.n - 1, -1, -1, dtype=np.int64)
            return np.stack([(rank >= t) @ pw for t in range(1, self.k)], axis=1)
        return self.decode(codes).astype(np.int32)

    def commute_prepared(self, a: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Boolean array [i, j]: does a[i] commute with x[j]."""
        if self.boolean:
            a, x = a[:, None], x[None, :]
            return bitmatrix.bool_matmul(a, x, self.n) == bitmatrix.bool_matmul(x, a, self.n)
        if self.ranks is not None:
            # x -> [x >= t] is a semiring map onto the Boolean semiring, and a
            # chain matrix is determined by its layers
            table = _boolean_commute_table(self.n)
            out = np.ones((len(a), len(x)), dtype=bool)
            for t in range(a.shape[1]):
                out &= table[a[:, t][:, None], x[:, t][None, :]]
            return out
        A, X = a[:, None], x[None, :]
        same = self.matmul(A, X) == self.matmul(X, A)
        return same.reshape(len(a), len(x), -1).all(axis=2)

    def commuting_block(self, A_codes, X_codes) -> np.ndarray:
        """Boolean array [i, j]: does matrix A_codes[i] commute with X_codes[j]."""
        return self.commute_prepared(self.prepare(A_codes), self.prepare(X_codes))

    def commuting_mask(self, A: Matrix, X_codes=None, chunk: int = 1 << 17) -> np.ndarray:
        """Which of ``X_codes`` (default: the whole space) commute with ``A``."""
        self._own(A)
        if X_codes is None:
            X_codes = self.all_codes()
        X_codes = np.asarray(X_codes, dtype=np.int64)
        out = np.empty(len(X_codes), dtype=bool)
        a = self.prepare([A.code])
        for s in range(0, len(X_codes), chunk):
            out[s:s + chunk] = self.commute_prepared(a, self.prepare(X_codes[s:s + chunk]))[0]
        return out

    # -- centralizers and centre ----------------------------------------------

    def centralizer_codes(self, A: Matrix) -> np.ndarray:
        codes = self.all_codes()
        return codes[self.commuting_mask(A, codes)]

    def center_codes(self, certify: bool = True) -> np.ndarray:
        """Codes of the centre of M_n(S).

        Candidates are filtered against the unit matrices E_ij and I + E_ij
        first; survivors are then checked against every matrix.
        """
        codes = self.all_codes()
        S, n = self.S, self.n
        gens = [unit(S, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        gens += [mat_add(identity(S, n), g) for g in gens]
        cand = codes
        for g in gens:
            cand = cand[self.commuting_mask(g, cand)]
        if certify:
            keep = [c for c in cand if self.commuting_mask(self.matrix(c), codes).all()]
            cand = np.array(keep, dtype=np.int64)
        return cand

    def nilpotent_codes(self) -> np.ndarray:
        """Codes of matrices A with A^m = 0 for some m >= 1."""
        codes = self.all_codes()
        P = self.decode(codes).astype(np.int32)
        # the power sequence of A has at most `size` distinct terms, so
        # A^(2^r) = 0 for 2^r >= size iff A is nilpotent
        steps = max(1, int(np.ceil(np.log2(max(self.size, 2)))))
        for _ in range(steps):
            P = self.matmul(P, P)
        return codes[(P.reshape(len(codes), -1) == 0).all(axis=1)]


@lru_cache(maxsize=64)
def _space(S: SemiringTable, n: int) -> MatrixSpace:
    return MatrixSpace(S, n)


@lru_cache(maxsize=64)
def _center(S: SemiringTable, n: int) -> frozenset:
    return frozenset(int(c) for c in _space(S, n).center_codes())


def space(S: SemiringTable, n: int, budget: int = ENUMERATION_BUDGET,
          backend: str = "auto") -> MatrixSpace:
    if budget == ENUMERATION_BUDGET and backend == "auto":
        return _space(S, n)
    return MatrixSpace(S, n, budget, backend)


def _sorted_matrices(sp: MatrixSpace, codes) -> list[Matrix]:
    return [sp.matrix(c) for c in sorted(set(int(c) for c in codes))]


def centralizer_enumerate(A: Matrix, budget: int = ENUMERATION_BUDGET) -> list[Matrix]:
    """All X in M_n(S) with XA = AX, in canonical order."""
    sp = space(A.semiring, A.n, budget)
    return _sorted_matrices(sp, sp.centralizer_codes(A))


def center(S: SemiringTable, n: int, budget: int = ENUMERATION_BUDGET) -> list[Matrix]:
    sp = space(S, n, budget)
    sp.check_budget("centre computation")
    return _sorted_matrices(sp, _center(S, n))


def is_central(A: Matrix) -> bool:
    """Membership in the centre of M_n(S).

    Over the tropical semiring this is the scalar-matrix test ``A = a I_n``.
    """
    if not A.semiring.finite:
        from .tropical_paths import is_scalar

        return is_scalar(A)
    S, n = A.semiring, A.n
    if S.order ** (n * n) <= ENUMERATION_BUDGET:
        return A.code in _center(S, n)
    # M_n(S) is generated by the E_ij and the scalar matrices aI, so
    # commuting with those is enough
    gens = [unit(S, n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    gens += [scalar(S, n, a) for a in range(S.order)]
    return all(commutes(A, g) for g in gens)


def polynomial_centralizer_J(S: SemiringTable, n: int, transposed: bool = False) -> list[Matrix]:
    """{a_0 I + a_1 J + ... + a_{n-1} J^{n-1}} (or with J^T), deduplicated."""
    J = jordan(S, n)
    if transposed:
        J = transpose(J)
    powers = [identity(S, n)]
    for _ in range(n - 1):
        powers.append(mat_mul(powers[-1], J))
    found = set()
    for coeffs in itertools.product(range(S.order), repeat=n):
        acc = scalar_mul(coeffs[0], powers[0])
        for a, P in zip(coeffs[1:], powers[1:]):
            acc = mat_add(acc, scalar_mul(a, P))
        found.add(acc)
    return sorted(found, key=lambda M: M.code)
