"""Commuting graphs of M_n(S) (or of a subset T of it) for finite S.

Vertices are the non-central matrices, indexed in canonical-code order.
A materialized graph keeps one packed bit row per vertex; an implicit one
recomputes neighbourhoods by scanning the vertex set.
"""
from __future__ import annotations

import math
import multiprocessing as mp
import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .matrix import Matrix
from .space import MatrixSpace, is_central, space

DEFAULT_MEMORY_CAP = 1 << 30
# materialized adjacency above this size needs allow_large=True
LARGE_ADJACENCY_BYTES = 256 << 20
MAX_MATERIALIZED_VERTICES = 1 << 20
DOT_MAX_VERTICES = 10_000
INF = math.inf


class GraphBudgetError(RuntimeError):
    pass


class UndefinedDiameter(ValueError):
    pass


class NotAVertex(ValueError):
    pass


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("COMMGRAPH_WORKERS", "1")))
    except ValueError:
        return 1


@dataclass
class DistanceResult:
    value: float  # an int, or math.inf
    witness_path: Optional[list] = None
    endpoints: Optional[tuple] = None

    @property
    def finite(self) -> bool:
        return self.value != INF

    def __int__(self):
        return int(self.value)


@dataclass
class CommutingGraph:
    space: MatrixSpace
    codes: np.ndarray
    mode: str = "materialized"
    adjacency: Optional[np.ndarray] = field(default=None, repr=False)
    _csr: Optional[tuple] = field(default=None, repr=False)
    _prepared: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def semiring(self):
        return self.space.S

    @property
    def n(self) -> int:
        return self.space.n

    def __len__(self) -> int:
        return len(self.codes)

    def matrix(self, i: int) -> Matrix:
        return self.space.matrix(self.codes[i])

    def matrices(self) -> list[Matrix]:
        return [self.matrix(i) for i in range(len(self))]

    def index_of(self, A: Matrix) -> int:
        try:
            c = self.space.code(A)
        except ValueError as exc:
            raise NotAVertex(str(exc)) from None
        i = int(np.searchsorted(self.codes, c))
        if i >= len(self.codes) or self.codes[i] != c:
            raise NotAVertex(f"matrix is central or outside the vertex set:\n{A}")
        return i

    @property
    def prepared(self) -> np.ndarray:
        if self._prepared is None:
            self._prepared = self.space.prepare(self.codes)
        return self._prepared

    def neighbors(self, i: int) -> np.ndarray:
        if self.adjacency is not None:
            row = np.unpackbits(self.adjacency[i], count=len(self))
            return np.flatnonzero(row)
        row = self.space.commute_prepared(self.prepared[i:i + 1], self.prepared)[0]
        row[i] = False
        return np.flatnonzero(row)

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if self.adjacency is not None:
            return bool((self.adjacency[i, j >> 3] >> (7 - (j & 7))) & 1)
        return bool(self.space.commute_prepared(self.prepared[i:i + 1], self.prepared[j:j + 1])[0, 0])

    def edges(self) -> Iterable[tuple[int, int]]:
        for i in range(len(self)):
            for j in self.neighbors(i):
                if j > i:
                    yield i, int(j)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of the adjacency, built once."""
        if self._csr is None:
            self._require_materialized("CSR conversion")
            V = len(self)
            parts, degs = [], np.zeros(V, dtype=np.int64)
            step = max(1, (1 << 24) // max(V, 1))
            for s in range(0, V, step):
                block = np.unpackbits(self.adjacency[s:s + step], axis=1, count=V)
                r, c = np.nonzero(block)
                degs[s:s + step] = np.bincount(r, minlength=block.shape[0])
                parts.append(c.astype(np.int32))
            indptr = np.zeros(V + 1, dtype=np.int64)
            np.cumsum(degs, out=indptr[1:])
            indices = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int32)
            self._csr = (indptr, indices)
        return self._csr

    def degrees(self) -> np.ndarray:
        indptr, _ = self.csr()
        return np.diff(indptr)

    def _require_materialized(self, what: str):
        if self.adjacency is None:
            raise GraphBudgetError(f"{what} needs a materialized graph")


# -- construction ---------------------------------------------------------------


def vertex_codes(sp: MatrixSpace, members: Optional[Sequence[int]] = None) -> np.ndarray:
    """T minus its centralizer in M_n(S); T defaults to the whole space."""
    if members is None:
        codes = sp.all_codes()
        from .space import _center

        central = np.array(sorted(_center(sp.S, sp.n)), dtype=np.int64)
        return np.setdiff1d(codes, central, assume_unique=True)
    T = np.unique(np.asarray(members, dtype=np.int64))
    prep = sp.prepare(T)
    central = np.zeros(len(T), dtype=bool)
    for s in range(0, len(T), 256):
        central[s:s + 256] = sp.commute_prepared(prep[s:s + 256], prep).all(axis=1)
    return T[~central]


def _rows_job(args):
    sp, prepared, start, stop = args
    V = len(prepared)
    out = np.empty((stop - start, (V + 7) // 8), dtype=np.uint8)
    step = _row_block(sp, V)
    for s in range(start, stop, step):
        e = min(stop, s + step)
        block = sp.commute_prepared(prepared[s:e], prepared)
        block[np.arange(e - s), np.arange(s, e)] = False
        out[s - start:e - start] = np.packbits(block, axis=1)
    return out


def _row_block(sp: MatrixSpace, V: int) -> int:
    # keep the (block, V, n, n) temporaries around a few tens of MB
    per_row = V * (sp.n * sp.n * 4 if sp.backend == "table" else 8)
    return max(1, min(1024, (8 << 20) // max(per_row, 1)))


def _pool_map(func, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    ctx = mp.get_context("fork")
    with ctx.Pool(min(workers, len(jobs))) as pool:
        return pool.map(func, jobs)


def build_graph(S, n: int, mode: str = "materialized", *, members=None,
                memory_cap: int = DEFAULT_MEMORY_CAP, allow_large: bool = False,
                workers: Optional[int] = None) -> CommutingGraph:
    """Commuting graph of M_n(S), or of the subset with codes ``members``."""
    if mode not in ("materialized", "implicit"):
        raise ValueError(f"unknown graph mode {mode!r}")
    if not getattr(S, "finite", False):
        raise TypeError(f"{S} is infinite; commuting graphs are only built over finite semirings")
    sp = space(S, n)
    codes = vertex_codes(sp, members)
    g = CommutingGraph(sp, codes, mode)
    if mode == "implicit":
        return g
    V = len(codes)
    nbytes = V * ((V + 7) // 8)
    if V > MAX_MATERIALIZED_VERTICES or nbytes > memory_cap:
        raise GraphBudgetError(
            f"materialized adjacency for {V} vertices needs {nbytes} bytes "
            f"(cap {memory_cap}); use implicit mode or certify_distance_ge4")
    if nbytes > LARGE_ADJACENCY_BYTES and not allow_large:
        raise GraphBudgetError(
            f"materialized adjacency for {V} vertices needs {nbytes >> 20} MiB; "
            "pass allow_large=True (--allow-large) or use implicit mode")
    workers = default_workers() if workers is None else workers
    prepared = g.prepared
    bounds = np.linspace(0, V, max(1, min(workers * 4, V)) + 1).astype(int) if workers > 1 else [0, V]
    jobs = [(sp, prepared, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    rows = _pool_map(_rows_job, jobs, workers)
    g.adjacency = np.concatenate(rows) if rows else np.zeros((0, 0), dtype=np.uint8)
    return g


def nilpotent_graph(S, n: int, **kw) -> CommutingGraph:
    """Commuting graph of the set of nilpotent matrices in M_n(S)."""
    return build_graph(S, n, members=space(S, n).nilpotent_codes(), **kw)


# -- distances ------------------------------------------------------------------


def _bfs(g: CommutingGraph, src: int, target: Optional[int] = None):
    """Distances and parents from ``src``; neighbours visited in index order."""
    V = len(g)
    dist = np.full(V, -1, dtype=np.int64)
    parent = np.full(V, -1, dtype=np.int64)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        if u == target:
            break
        nb = g.neighbors(u)
        new = nb[dist[nb] < 0]
        dist[new] = dist[u] + 1
        parent[new] = u
        q.extend(new.tolist())
    return dist, parent


def _path(parent: np.ndarray, src: int, dst: int) -> list[int]:
    out = [dst]
    while out[-1] != src:
        out.append(int(parent[out[-1]]))
    return out[::-1]


def distance(g: CommutingGraph, u: Matrix, v: Matrix) -> DistanceResult:
    i, j = g.index_of(u), g.index_of(v)
    dist, parent = _bfs(g, i, target=j)
    if dist[j] < 0:
        return DistanceResult(INF, None, (u, v))
    return DistanceResult(int(dist[j]), [g.matrix(x) for x in _path(parent, i, j)], (u, v))


def _msbfs_job(args):
    """Eccentricities for a batch of at most 64 sources (bit-parallel BFS)."""
    indptr, indices, sources = args
    V = len(indptr) - 1
    nonempty = np.flatnonzero(np.diff(indptr) > 0)
    starts = indptr[nonempty]
    b = len(sources)
    bits = np.left_shift(np.uint64(1), np.arange(b, dtype=np.uint64))
    frontier = np.zeros(V, dtype=np.uint64)
    frontier[sources] = bits
    seen = frontier.copy()
    ecc = np.zeros(b, dtype=np.int64)
    level = 0
    while True:
        nxt = np.zeros(V, dtype=np.uint64)
        if len(indices):
            gathered = frontier[indices]
            nxt[nonempty] = np.bitwise_or.reduceat(gathered, starts)
        nxt &= ~seen
        active = np.bitwise_or.reduce(nxt) if V else np.uint64(0)
        if not active:
            break
        level += 1
        ecc[(active & bits) != 0] = level
        seen |= nxt
        frontier = nxt
    full = np.bitwise_and.reduce(seen) if V else np.uint64(0)
    reached_all = (full & bits) != 0
    return ecc, reached_all


def eccentricities(g: CommutingGraph, workers: Optional[int] = None) -> np.ndarray:
    """Eccentricity of every vertex (float array, inf where disconnected)."""
    indptr, indices = g.csr()
    V = len(g)
    workers = default_workers() if workers is None else workers
    jobs = [(indptr, indices, np.arange(s, min(V, s + 64))) for s in range(0, V, 64)]
    results = _pool_map(_msbfs_job, jobs, workers)
    ecc = np.zeros(V, dtype=float)
    for (s_ecc, reached), (_, _, src) in zip(results, jobs):
        ecc[src] = np.where(reached, s_ecc, INF)
    return ecc


def diameter(g: CommutingGraph, workers: Optional[int] = None) -> DistanceResult:
    """Exact diameter with its lexicographically least realizing pair."""
    g._require_materialized("diameter")
    if len(g) < 2:
        raise UndefinedDiameter(f"the graph has {len(g)} vertices; its diameter is undefined")
    ecc = eccentricities(g, workers)
    d = ecc.max()
    u = int(np.flatnonzero(ecc == d)[0])
    dist, parent = _bfs(g, u)
    if d == INF:
        v = int(np.flatnonzero(dist < 0)[0])
        return DistanceResult(INF, None, (g.matrix(u), g.matrix(v)))
    v = int(np.flatnonzero(dist == d)[0])
    return DistanceResult(int(d), [g.matrix(x) for x in _path(parent, u, v)], (g.matrix(u), g.matrix(v)))


def connected_components(g: CommutingGraph) -> list[list[Matrix]]:
    return [[g.matrix(i) for i in comp] for comp in component_indices(g)]


def component_indices(g: CommutingGraph) -> list[list[int]]:
    V = len(g)
    label = np.full(V, -1, dtype=np.int64)
    comps = []
    for s in range(V):
        if label[s] >= 0:
            continue
        dist, _ = _bfs(g, s)
        members = np.flatnonzero(dist >= 0)
        label[members] = len(comps)
        comps.append(members.tolist())
    return comps


def is_complete(g: CommutingGraph, idx: Sequence[int]) -> bool:
    idx = list(idx)
    return all(g.has_edge(a, b) for k, a in enumerate(idx) for b in idx[k + 1:])


# -- distance >= 4 certificate --------------------------------------------------


@dataclass
class Certificate:
    holds: bool
    neighbors_a: list
    neighbors_b: list
    evidence: dict

    def __bool__(self):
        return self.holds


def _neighbor_codes(sp: MatrixSpace, A: Matrix, workers: int) -> np.ndarray:
    from .space import _center

    codes = sp.all_codes()
    chunks = np.array_split(codes, max(1, workers * 4)) if workers > 1 else [codes]
    masks = _pool_map(_mask_job, [(sp, A, c) for c in chunks], workers)
    hit = codes[np.concatenate(masks)]
    drop = set(_center(sp.S, sp.n)) | {A.code}
    return np.array([c for c in hit if int(c) not in drop], dtype=np.int64)


def _mask_job(args):
    sp, A, codes = args
    return sp.commuting_mask(A, codes)


def certify_distance_ge4(S, n: int, A: Matrix, B: Matrix, workers: Optional[int] = None) -> Certificate:
    """Decide d(A, B) >= 4 without materializing the graph.

    N(A) and N(B) are found by scanning all of M_n(S). The distance is at
    least 4 iff the neighbourhoods are disjoint and no C in N(A) commutes
    with any D in N(B).
    """
    sp = space(S, n)
    workers = default_workers() if workers is None else workers
    for X, label in ((A, "A"), (B, "B")):
        sp._own(X)
        if is_central(X):
            raise ValueError(f"{label} is central, hence not a vertex")
    if A == B:
        raise ValueError("A and B coincide")
    if sp.commuting_mask(A, [B.code])[0]:
        raise ValueError("A and B commute (distance 1); the certificate is vacuous")
    na = _neighbor_codes(sp, A, workers)
    nb = _neighbor_codes(sp, B, workers)
    common = np.intersect1d(na, nb)
    pa, pb = sp.prepare(na), sp.prepare(nb)
    cross = np.zeros((len(na), len(nb)), dtype=bool)
    for s in range(0, len(na), 256):
        cross[s:s + 256] = sp.commute_prepared(pa[s:s + 256], pb)
    # C = D pairs are already counted as common neighbours
    cross &= na[:, None] != nb[None, :]
    hits = np.argwhere(cross)
    evidence = {
        "scanned": int(sp.size),
        "neighbors_a": int(len(na)),
        "neighbors_b": int(len(nb)),
        "common_neighbors": int(len(common)),
        "cross_pairs_checked": int(cross.size),
        "commuting_cross_pairs": int(len(hits)),
    }
    if len(common):
        evidence["counterexample"] = {"common_neighbor": sp.matrix(common[0]).names()}
    elif len(hits):
        c, d = hits[0]
        evidence["counterexample"] = {"C": sp.matrix(na[c]).names(), "D": sp.matrix(nb[d]).names()}
    return Certificate(
        holds=not len(common) and not len(hits),
        neighbors_a=[sp.matrix(c) for c in na],
        neighbors_b=[sp.matrix(c) for c in nb],
        evidence=evidence,
    )


# -- export ---------------------------------------------------------------------


def matrix_label(A: Matrix) -> str:
    return "[" + ";".join(" ".join(r) for r in A.names()) + "]"


def export_graph(g: CommutingGraph, fmt: str) -> bytes:
    g._require_materialized("export")
    if fmt == "dot":
        if len(g) > DOT_MAX_VERTICES:
            raise GraphBudgetError(f"DOT export is capped at {DOT_MAX_VERTICES} vertices, graph has {len(g)}")
        lines = [f"graph commuting_M{g.n}_{_dot_id(g.semiring.name)} {{"]
        for i in range(len(g)):
            lines.append(f'  {int(g.codes[i])} [label="{matrix_label(g.matrix(i))}"];')
        for i, j in g.edges():
            lines.append(f"  {int(g.codes[i])} -- {int(g.codes[j])};")
        lines.append("}")
    elif fmt in ("csv", "csv-edges"):
        lines = ["u,v"]
        lines += [f"{int(g.codes[i])},{int(g.codes[j])}" for i, j in g.edges()]
    else:
        raise ValueError(f"unknown export format {fmt!r}")
    return ("\n".join(lines) + "\n").encode()


def _dot_id(name: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in name)
