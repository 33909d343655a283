"""Short paths in the commuting graph of M_n(T) for the max-plus semiring T.

Every matrix other than a diagonal one with pairwise distinct diagonal
entries is joined to the all-zeros matrix E by a path of length <= 2. A
diagonal matrix D with distinct entries reaches any non-diagonal matrix in
at most 4 steps through block matrices.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .matrix import Matrix, all_units, commutes, mat_add, mat_mul, scalar
from .paths import PathWitness, simplify_path
from .tropical import NEG_INF, TROPICAL, TropicalScalar

BRANCHES = ("nondiagonal", "diagonal-repeated", "diagonal-distinct")


def _check_tropical(A: Matrix):
    if A.semiring != TROPICAL:
        raise TypeError("expected a matrix over the tropical semiring")


def is_scalar(A: Matrix) -> bool:
    """A = a I_n for some a (a = -inf gives the zero matrix)."""
    d = A[0, 0]
    return A.is_diagonal() and all(A[i, i] == d for i in range(A.n))


def max_entry(A: Matrix) -> TropicalScalar:
    return max(x for row in A.entries for x in row)


def min_finite_entry(A: Matrix) -> Optional[TropicalScalar]:
    finite = [x for row in A.entries for x in row if not x.is_bottom]
    return min(finite) if finite else None


def all_units_predicate(A: Matrix) -> bool:
    """Every row maximum and every column maximum equal one common value."""
    rows = {max(r) for r in A.entries}
    cols = {max(c) for c in zip(*A.entries)}
    return len(rows) == 1 and rows == cols


def commutes_with_all_units(A: Matrix) -> bool:
    return commutes(A, all_units(TROPICAL, A.n))


def has_distinct_diagonal(A: Matrix) -> bool:
    diag = [A[i, i] for i in range(A.n)]
    return A.is_diagonal() and len(set(diag)) == len(diag)


def _tm(rows) -> Matrix:
    return Matrix(TROPICAL, rows)


def _f_matrix(n: int, i: int, j: int) -> Matrix:
    """0 on the diagonal and at (i, j), (j, i); -inf elsewhere (0-based)."""
    return _tm([[0 if r == c or {r, c} == {i, j} else NEG_INF for c in range(n)] for r in range(n)])


def route_to_all_units(Z: Matrix) -> tuple[list[Matrix], str]:
    """Path from Z to E of length <= 2, and the branch taken.

    Raises ValueError for a diagonal Z with distinct diagonal entries.
    """
    n = Z.n
    E = all_units(TROPICAL, n)
    if Z == E:
        return [E], "all-units"
    if not Z.is_diagonal():
        a = max_entry(Z)
        return [Z, mat_add(Z, scalar(TROPICAL, n, a)), E], "nondiagonal"
    diag = [Z[k, k] for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if diag[i] == diag[j]:
                return [Z, _f_matrix(n, i, j), E], "diagonal-repeated"
    raise ValueError("diagonal matrix with distinct diagonal entries")


def mu_eps_route_from_distinct_diagonal(D: Matrix, A: Matrix) -> list[Matrix]:
    """D - D' - C - B - A with D' two-block scalar, C block, B = mu/eps."""
    n = D.n
    mu, eps = max_entry(A), min_finite_entry(A)
    d1, d2 = D[0, 0], D[1, 1]
    Dt = _tm([[(d1 if r < 2 else d2) if r == c else NEG_INF for c in range(n)] for r in range(n)])
    C = _tm([[mu if r == c else (eps if r < 2 and c < 2 else NEG_INF) for c in range(n)] for r in range(n)])
    B = _tm([[mu if r == c else eps for c in range(n)] for r in range(n)])
    return [D, Dt, C, B, A]


def closure_route_from_distinct_diagonal(D: Matrix, A: Matrix) -> list[Matrix]:
    """D - X1 - (I + c E_pq) - P - A where P = tI + A + ... + A^(n-1).

    (p, q) is the first off-diagonal finite entry of A. P commutes with A
    and its finite pattern is the reflexive-transitive closure of A's, so
    I + c E_pq commutes with P once c is small enough. X1 is diagonal with
    equal entries at p and q, hence commutes with both D and I + c E_pq.
    Unlike the mu/eps route this also works when A has -inf entries.
    """
    n = A.n
    p, q = next((r, c) for r in range(n) for c in range(n) if r != c and not A[r, c].is_bottom)
    acc, power = A, A
    for _ in range(n - 2):
        power = mat_mul(power, A)
        acc = mat_add(acc, power)
    t = max_entry(acc)
    P = mat_add(acc, scalar(TROPICAL, n, t))
    bounds = [Fraction(0)]
    for k in range(n):
        if k != p and not P[k, p].is_bottom:
            bounds.append(P[k, q].value - P[k, p].value)
    for l in range(n):
        if l != q and not P[q, l].is_bottom:
            bounds.append(P[p, l].value - P[q, l].value)
    c = min(bounds)
    X2 = _tm([[0 if r == s else (c if (r, s) == (p, q) else NEG_INF) for s in range(n)] for r in range(n)])
    X1 = _tm([[(0 if r in (p, q) else 1) if r == s else NEG_INF for s in range(n)] for r in range(n)])
    return [D, X1, X2, P, A]


def _valid(path: Sequence[Matrix]) -> bool:
    path = simplify_path(path)
    return all(not is_scalar(v) for v in path) and all(commutes(u, v) for u, v in zip(path, path[1:]))


def tropical_connect(X: Matrix, Y: Matrix) -> PathWitness:
    """A verified path of length <= 4 between non-scalar X, Y in M_n(T), n >= 3."""
    _check_tropical(X)
    _check_tropical(Y)
    if X.n != Y.n:
        raise ValueError("matrices of different sizes")
    n = X.n
    if n < 3:
        raise ValueError("tropical_connect needs n >= 3")
    for Z, name in ((X, "X"), (Y, "Y")):
        if is_scalar(Z):
            raise ValueError(f"{name} is a scalar matrix, hence central")

    branches: list[str] = []
    if X == Y:
        path = [X]
    elif X.is_diagonal() and Y.is_diagonal():
        path, branches = [X, Y], ["diagonal-diagonal"]
    elif has_distinct_diagonal(X) or has_distinct_diagonal(Y):
        flip = not has_distinct_diagonal(X)
        D, A = (Y, X) if flip else (X, Y)
        path = mu_eps_route_from_distinct_diagonal(D, A)
        route = "mu-eps"
        if not _valid(path):
            # the mu/eps matrix B need not commute with A once A has -inf entries
            path = closure_route_from_distinct_diagonal(D, A)
            route = "closure"
        if flip:
            path = path[::-1]
        branches = ["diagonal-distinct", f"route:{route}"]
    else:
        px, bx = route_to_all_units(X)
        py, by = route_to_all_units(Y)
        path = px + py[::-1][1:]
        branches = [b for b in (bx, by) if b != "all-units"]
    w = PathWitness("tropical", simplify_path(path), 4, branches)
    return w.validate()


# -- random instances -----------------------------------------------------------

DEFAULT_GRID = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/3", "1", "3/2", "2"))


def random_entry(rng: random.Random, grid=DEFAULT_GRID, p_bottom: float = 0.25) -> TropicalScalar:
    if rng.random() < p_bottom:
        return NEG_INF
    return TropicalScalar(rng.choice(grid))


def random_matrix(rng: random.Random, n: int, grid=DEFAULT_GRID, p_bottom: float = 0.25) -> Matrix:
    return _tm([[random_entry(rng, grid, p_bottom) for _ in range(n)] for _ in range(n)])


def random_all_units_commuting(rng: random.Random, n: int, grid=DEFAULT_GRID) -> Matrix:
    """A random matrix whose row and column maxima all equal one value."""
    a = rng.choice(grid)
    below = [g for g in grid if g < a] or [a]
    rows = [[NEG_INF if rng.random() < 0.4 else TropicalScalar(rng.choice(below)) for _ in range(n)]
            for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    for i, j in enumerate(perm):
        rows[i][j] = TropicalScalar(a)
    return _tm(rows)


def random_diagonal(rng: random.Random, n: int, distinct: bool, grid=DEFAULT_GRID) -> Matrix:
    pool = list(grid) + [None]
    if distinct:
        diag = rng.sample(pool, n)
    else:
        diag = [rng.choice(pool) for _ in range(n)]
        i, j = rng.sample(range(n), 2)
        diag[j] = diag[i]
        if len(set(diag)) == 1:
            k = next(x for x in range(n) if x not in (i, j))
            diag[k] = Fraction(7) if diag[k] != Fraction(7) else Fraction(-7)
    return _tm([[(diag[r] if r == c else None) for c in range(n)] for r in range(n)])


def random_nonscalar(rng: random.Random, n: int, kind: str) -> Matrix:
    """``kind`` is one of BRANCHES; the result is never scalar."""
    while True:
        if kind == "nondiagonal":
            A = random_matrix(rng, n, p_bottom=rng.choice([0.0, 0.3, 0.6]))
            if A.is_diagonal():
                continue
        elif kind == "diagonal-repeated":
            A = random_diagonal(rng, n, distinct=False)
        elif kind == "diagonal-distinct":
            A = random_diagonal(rng, n, distinct=True)
        else:
            raise ValueError(kind)
        if not is_scalar(A):
            return A
