"""Explicit matrices and short paths behind the diameter results."""
from __future__ import annotations

from .matrix import BOOLEAN, Matrix, jordan, scalar_mul, transpose, unit
from .paths import PathWitness, simplify_path
from .semiring import SemiringTable, find_zero_divisor_pair
from .space import centralizer_enumerate, is_central
from .tropical_paths import tropical_connect  # noqa: F401  (re-exported)


def _b(rows) -> Matrix:
    return Matrix(BOOLEAN, rows)


def boolean_witness_pair(n: int) -> tuple[Matrix, Matrix]:
    """Two matrices of M_n(B) at distance 4 (n >= 3)."""
    if n < 3:
        raise ValueError("the distance-4 witnesses exist only for n >= 3")
    if n == 3:
        return (_b([[0, 0, 1], [0, 0, 0], [1, 1, 0]]),
                _b([[1, 0, 0], [0, 0, 1], [0, 0, 0]]))
    A = [[0] * n for _ in range(n)]
    A[0][n - 1] = 1
    for i in range(2, n):
        A[i][0] = 1
    # lower-right block is J_{n-1}^T
    for i in range(2, n):
        A[i][i - 1] = 1
    B = [[0] * n for _ in range(n)]
    B[0][0] = 1
    for i in range(1, n - 1):
        B[i][i + 1] = 1
    return _b(A), _b(B)


def expected_neighbor_sets_n3() -> tuple[list[Matrix], list[Matrix]]:
    """The neighbourhoods of the n = 3 witnesses, listed by hand."""
    na = [
        [[1, 0, 1], [0, 1, 0], [1, 1, 1]],
        [[1, 1, 0], [0, 0, 0], [0, 0, 1]],
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 1, 1], [0, 0, 0], [1, 1, 1]],
        [[1, 1, 1], [0, 1, 0], [1, 1, 1]],
    ]
    nb = [
        [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
        [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 0, 0], [0, 1, 1], [0, 0, 1]],
    ]
    return [_b(m) for m in na], [_b(m) for m in nb]


def jn_pair(S, n: int) -> tuple[Matrix, Matrix]:
    if n < 2:
        raise ValueError("n must be at least 2")
    J = jordan(S, n)
    return J, transpose(J)


def jn_common_centralizer(S: SemiringTable, n: int) -> list[Matrix]:
    """C(J_n) intersected with C(J_n^T), by enumeration."""
    J, Jt = jn_pair(S, n)
    other = set(centralizer_enumerate(Jt))
    return [X for X in centralizer_enumerate(J) if X in other]


def nonentire_connect(A: Matrix, B: Matrix, S: SemiringTable | None = None) -> PathWitness:
    """Path of length <= 3 between non-central A, B over a nonentire
    commutative S, through xA / yB or xE_12 / yE_12 for a zero-divisor pair.
    """
    S = S or A.semiring
    if A.semiring != S or B.semiring != S or A.n != B.n:
        raise ValueError("A and B must be matrices of the same size over S")
    pair = find_zero_divisor_pair(S)
    if pair is None:
        raise ValueError(f"{S.name} is entire; there is no zero-divisor pair")
    for X, name in ((A, "A"), (B, "B")):
        if is_central(X):
            raise ValueError(f"{name} is central, hence not a vertex")
    x, y = pair
    n = A.n
    xA, yB = scalar_mul(x, A), scalar_mul(y, B)
    xE, yE = scalar_mul(x, unit(S, n, 1, 2)), scalar_mul(y, unit(S, n, 1, 2))
    xa_c, yb_c = is_central(xA), is_central(yB)
    if not xa_c and not yb_c:
        case, path = "case-1", [A, xA, yB, B]
    elif xa_c and not yb_c:
        case, path = "case-2", [A, xE, yB, B]
    elif yb_c and not xa_c:
        case, path = "case-2-mirror", [A, xA, yE, B]
    else:
        case, path = "case-3", [A, xE, yE, B]
    return PathWitness("nonentire", simplify_path(path), 3, [case]).validate()
