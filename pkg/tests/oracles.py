"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package's arithmetic: matrices are nested tuples of
plain ints (finite tables) or of ``Fraction | None`` (max-plus, None = -inf).
"""
from __future__ import annotations

import itertools
from collections import deque


def table_axiom_violations(add, mul):
    """Names of the semiring axioms violated by the tables (ids 0, 1 as identities)."""
    k = len(add)
    r = range(k)
    bad = set()
    for a, b, c in itertools.product(r, r, r):
        if add[add[a][b]][c] != add[a][add[b][c]]:
            bad.add("add-assoc")
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            bad.add("mul-assoc")
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            bad.add("left-distrib")
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            bad.add("right-distrib")
    for a, b in itertools.product(r, r):
        if add[a][b] != add[b][a]:
            bad.add("add-comm")
    for a in r:
        if add[0][a] != a or add[a][0] != a:
            bad.add("add-identity")
        if mul[1][a] != a or mul[a][1] != a:
            bad.add("mul-identity")
        if mul[0][a] != 0 or mul[a][0] != 0:
            bad.add("zero-annihilates")
    return bad


def mat_mul(A, B, add, mul):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = add[acc][mul[A[i][k]][B[k][j]]]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def all_matrices(k, n):
    for digits in itertools.product(range(k), repeat=n * n):
        yield tuple(tuple(digits[i * n:(i + 1) * n]) for i in range(n))


def commuting_graph(add, mul, n):
    """(vertices, adjacency dict) of the commuting graph of all n x n matrices."""
    k = len(add)
    mats = list(all_matrices(k, n))
    prods = {}

    def prod(A, B):
        key = (A, B)
        if key not in prods:
            prods[key] = mat_mul(A, B, add, mul)
        return prods[key]

    central = [A for A in mats if all(prod(A, B) == prod(B, A) for B in mats)]
    cset = set(central)
    verts = [A for A in mats if A not in cset]
    adj = {A: [B for B in verts if B != A and prod(A, B) == prod(B, A)] for A in verts}
    return verts, adj


def bfs(adj, s):
    dist = {s: 0}
    q = deque([s])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def diameter(verts, adj):
    best = 0
    for s in verts:
        d = bfs(adj, s)
        if len(d) < len(verts):
            return float("inf")
        best = max(best, max(d.values()))
    return best


def trop_mul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = [A[i][k] + B[k][j] for k in range(n) if A[i][k] is not None and B[k][j] is not None]
            row.append(max(terms) if terms else None)
        out.append(tuple(row))
    return tuple(out)
