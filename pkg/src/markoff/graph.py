"""The mod-p Markoff graph: vertices X*(p), edges from the three rotations.

Enumeration solves the surface equation as a quadratic in x3 for every
(x1, x2) pair, so building the vertex set costs O(p^2) with vectorized
chunks.  Vertices are identified with their sorted lexicographic keys
(x1*p + x2)*p + x3; adjacency is a dense N x 6 id array whose columns are, in
this fixed order, rot1, rot1^-1, rot2, rot2^-1, rot3, rot3^-1.  That column
order is also the BFS tie-break, which makes extracted shortest paths
deterministic.

Vertex counts obey |X*(p)| = p^2 + 3p for p = 1 (mod 4) and p^2 - 3p for
p = 3 (mod 4); construction checks this and that every rotation image lands
back inside the vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from . import field
from .core import Classifier, Triple, is_maximal, point_order
from .errors import CapExceeded, ConstructionError, DomainError
from .words import PathWord

DEFAULT_ENUM_CAP = 3000
DEFAULT_SPECTRAL_CAP = 200

DEGREE = 6  # half-edges per vertex: three rotations, both directions

# column -> (axis, sign); fixed exploration/tie-break order
COLUMN_MOVES = ((1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1))


def vertex_count_formula(p: int) -> int:
    return p * p + 3 * p if p % 4 == 1 else p * p - 3 * p


def _sqrt_table(p: int) -> np.ndarray:
    """table[v*v % p] = canonical (smaller) root, -1 for non-residues."""
    t = np.full(p, -1, dtype=np.int64)
    v = np.arange(p // 2 + 1, dtype=np.int64)
    t[(v * v) % p] = v
    return t


def surface_arrays(p: int) -> np.ndarray:
    """Sorted int64 key array of all points of X*(p)."""
    roots = _sqrt_table(p)
    inv2 = pow(2, p - 2, p)
    chunks: List[np.ndarray] = []
    block = max(1, (1 << 20) // p)
    x2 = np.arange(p, dtype=np.int64)
    for lo in range(0, p, block):
        x1 = np.arange(lo, min(lo + block, p), dtype=np.int64)[:, None]
        b = (3 * x1 * x2) % p
        disc = (b * b - 4 * (x1 * x1 + x2 * x2)) % p
        r = roots[disc]
        has = r >= 0
        double = has & (disc != 0)
        base = (x1 * p + x2) * p  # broadcasts to the block shape
        hi = ((b + r) * inv2) % p
        chunks.append((base + hi)[has])
        lo_root = ((b - r) * inv2) % p
        chunks.append((base + lo_root)[double])
    keys = np.concatenate(chunks)
    keys = keys[keys != 0]  # drop the zero triple
    keys.sort()
    return keys


@dataclass
class SurfaceGraph:
    """Vertex set plus rotation adjacency for one prime."""

    p: int
    keys: np.ndarray               # sorted int64, length N
    coords: np.ndarray             # N x 3 int32
    adj: np.ndarray                # N x 6 int32, columns per COLUMN_MOVES

    @classmethod
    def build(cls, p: int, cap: int = DEFAULT_ENUM_CAP) -> "SurfaceGraph":
        field.require_odd_prime(p)
        if p > cap:
            raise CapExceeded(f"enumeration cap {cap} refuses p = {p}")
        keys = surface_arrays(p)
        n = len(keys)
        if n != vertex_count_formula(p):
            raise ConstructionError(
                f"vertex count {n} != formula {vertex_count_formula(p)} at p = {p}"
            )
        x3 = keys % p
        x2 = (keys // p) % p
        x1 = keys // (p * p)
        coords = np.stack([x1, x2, x3], axis=1).astype(np.int32)
        adj = np.empty((n, DEGREE), dtype=np.int32)
        for col, (axis, sign) in enumerate(COLUMN_MOVES):
            nk = _neighbor_keys(x1, x2, x3, axis, sign, p)
            ids = np.searchsorted(keys, nk)
            if not bool(np.all(keys[ids] == nk)):
                raise ConstructionError("rotation image left the vertex set")
            adj[:, col] = ids
        return cls(p=p, keys=keys, coords=coords, adj=adj)

    def __len__(self) -> int:
        return len(self.keys)

    def id_of(self, x: Triple) -> int:
        key = (x[0] * self.p + x[1]) * self.p + x[2]
        i = int(np.searchsorted(self.keys, key))
        if i >= len(self.keys) or self.keys[i] != key:
            raise DomainError(f"{x} is not a vertex mod {self.p}")
        return i

    def point_of(self, vid: int) -> Triple:
        c = self.coords[vid]
        return (int(c[0]), int(c[1]), int(c[2]))

    def conic_ids(self, axis: int, value: int) -> np.ndarray:
        """All vertex ids whose coordinate on `axis` equals `value`."""
        return np.nonzero(self.coords[:, axis - 1] == value)[0]

    def orbit_ids(self, vid: int, axis: int) -> List[int]:
        """Forward rotation orbit of a vertex, in orbit order."""
        col = 2 * (axis - 1)
        out = [vid]
        cur = int(self.adj[vid, col])
        while cur != vid:
            out.append(cur)
            cur = int(self.adj[cur, col])
        return out


def _neighbor_keys(x1, x2, x3, axis: int, sign: int, p: int) -> np.ndarray:
    if axis == 1:
        if sign > 0:
            a, b, c = x1, x3, (3 * x1 * x3 - x2) % p
        else:
            a, b, c = x1, (3 * x1 * x2 - x3) % p, x2
    elif axis == 2:
        if sign > 0:
            a, b, c = x3, x2, (3 * x2 * x3 - x1) % p
        else:
            a, b, c = (3 * x1 * x2 - x3) % p, x2, x1
    else:
        if sign > 0:
            a, b, c = x2, (3 * x2 * x3 - x1) % p, x3
        else:
            a, b, c = (3 * x1 * x3 - x2) % p, x1, x3
    return (a * p + b) * p + c


@dataclass
class BfsTree:
    root: int
    depth: np.ndarray    # int32, -1 where unreached
    parent: np.ndarray   # int32, -1 at root/unreached
    via: np.ndarray      # int8 column index of the move parent -> child, -1 unset

    @property
    def reached(self) -> int:
        return int((self.depth >= 0).sum())

    @property
    def eccentricity(self) -> int:
        return int(self.depth.max())


def bfs(g: SurfaceGraph, root: int, with_parents: bool = True) -> BfsTree:
    """Level-synchronous BFS.

    Ties are broken exactly as a sequential queue would with neighbor order
    COLUMN_MOVES: among all discoveries of a vertex in one level, the earliest
    frontier parent wins, and for one parent the lowest column wins.
    """
    n = len(g)
    depth = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    via = np.full(n, -1, dtype=np.int8)
    depth[root] = 0
    frontier = np.array([root], dtype=np.int32)
    level = 0
    cols = np.arange(DEGREE, dtype=np.int8)
    while len(frontier):
        level += 1
        cand = g.adj[frontier].ravel()
        fresh = depth[cand] < 0
        cand = cand[fresh]
        if with_parents:
            par = np.repeat(frontier, DEGREE)[fresh]
            mv = np.tile(cols, len(frontier))[fresh]
        uniq, first = np.unique(cand, return_index=True)
        order = np.argsort(first, kind="stable")  # preserve discovery order
        uniq = uniq[order]
        depth[uniq] = level
        if with_parents:
            first = first[order]
            parent[uniq] = par[first]
            via[uniq] = mv[first]
        frontier = uniq
    return BfsTree(root=root, depth=depth, parent=parent, via=via)


def word_to(tree: BfsTree, vid: int) -> PathWord:
    """Rotation word from the BFS root to a vertex, reduced."""
    if tree.depth[vid] < 0:
        raise ConstructionError("vertex not reached by this BFS tree")
    steps = []
    cur = vid
    while cur != tree.root:
        col = int(tree.via[cur])
        axis, sign = COLUMN_MOVES[col]
        steps.append((axis, sign))
        cur = int(tree.parent[cur])
    steps.reverse()
    return PathWord.from_steps(steps)


def shortest_path(g: SurfaceGraph, src: Triple, dst: Triple) -> PathWord:
    tree = bfs(g, g.id_of(src))
    return word_to(tree, g.id_of(dst))


@dataclass
class ComponentReport:
    p: int
    sizes: List[int]  # descending

    @property
    def connected(self) -> bool:
        return len(self.sizes) == 1

    @property
    def vertices(self) -> int:
        return sum(self.sizes)


def components(g: SurfaceGraph) -> ComponentReport:
    n = len(g)
    visited = np.zeros(n, dtype=bool)
    sizes = []
    seed = 0
    while True:
        while seed < n and visited[seed]:
            seed += 1
        if seed >= n:
            break
        count = 1
        visited[seed] = True
        frontier = np.array([seed], dtype=np.int32)
        while len(frontier):
            cand = g.adj[frontier].ravel()
            cand = cand[~visited[cand]]
            cand = np.unique(cand)
            visited[cand] = True
            count += len(cand)
            frontier = cand
        sizes.append(count)
    sizes.sort(reverse=True)
    return ComponentReport(p=g.p, sizes=sizes)


def connectivity_check(p: int, cap: int = DEFAULT_ENUM_CAP) -> ComponentReport:
    return components(SurfaceGraph.build(p, cap=cap))


@dataclass
class SpectralReport:
    lam2: float        # second-largest adjacency eigenvalue (estimate)
    residual: float    # ||A v - theta v|| at the accepted iterate
    iterations: int
    converged: bool

    @property
    def h_lower(self) -> float:
        """Cheeger-type edge-expansion lower bound, residual-padded."""
        return (DEGREE - (self.lam2 + self.residual)) / 2


def second_eigenvalue(
    adj: np.ndarray,
    tol: float = 1e-8,
    max_iter: int = 100_000,
    seed: int = 0,
) -> SpectralReport:
    """Deflated power iteration for lambda_2 of a d-regular multigraph.

    Works on the shifted operator A + dI (nonnegative spectrum) restricted to
    the complement of the all-ones eigenvector, so the dominant eigenvalue
    there is lambda_2 + d regardless of how negative the bottom of the
    spectrum is.  Deterministic for a fixed seed.
    """
    n, d = adj.shape
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    v -= v.mean()
    v /= np.linalg.norm(v)
    theta = 0.0
    for it in range(1, max_iter + 1):
        w = v[adj].sum(axis=1) + float(d) * v
        w -= w.mean()
        theta = float(v @ w)
        resid = float(np.linalg.norm(w - theta * v))
        if resid <= tol * max(1.0, abs(theta)):
            return SpectralReport(lam2=theta - d, residual=resid, iterations=it, converged=True)
        nw = np.linalg.norm(w)
        if nw == 0:
            break
        v = w / nw
    return SpectralReport(lam2=theta - d, residual=float("inf"), iterations=max_iter, converged=False)


def _lanczos_second(adj: np.ndarray, tol: float, seed: int) -> SpectralReport:
    """lambda_2 via ARPACK on the gather-based matvec; deterministic start."""
    from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

    n, d = adj.shape
    calls = [0]

    def matvec(x):
        calls[0] += 1
        return x.ravel()[adj].sum(axis=1)

    op = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    v0 = np.random.default_rng(seed).standard_normal(n)
    try:
        vals, vecs = eigsh(op, k=2, which="LA", tol=tol, v0=v0)
    except ArpackNoConvergence:
        return SpectralReport(lam2=float("nan"), residual=float("inf"),
                              iterations=calls[0], converged=False)
    lam2 = float(vals[0])
    v = vecs[:, 0]
    resid = float(np.linalg.norm(matvec(v) - lam2 * v))
    return SpectralReport(lam2=lam2, residual=resid,
                          iterations=calls[0], converged=True)


def spectral_gap(g: SurfaceGraph, tol: float = 1e-8, max_iter: int = 100_000, seed: int = 0,
                 cap: int = DEFAULT_SPECTRAL_CAP) -> SpectralReport:
    if g.p > cap:
        raise CapExceeded(f"spectral cap {cap} refuses p = {g.p}")
    try:
        rep = _lanczos_second(g.adj, tol=tol, seed=seed)
    except ImportError:
        rep = second_eigenvalue(g.adj, tol=tol, max_iter=max_iter, seed=seed)
    if not rep.converged:
        raise ConstructionError(f"eigenvalue iteration did not converge for p = {g.p}")
    return rep


def to_dot(g: SurfaceGraph) -> Iterator[str]:
    """DOT lines; one line per undirected labeled edge, emitted from its + end."""
    yield f"graph markoff_{g.p} {{"
    for vid in range(len(g)):
        x = g.point_of(vid)
        yield f'  {vid} [label="{x[0]},{x[1]},{x[2]}"];'
    for vid in range(len(g)):
        for axis in (1, 2, 3):
            w = int(g.adj[vid, 2 * (axis - 1)])
            yield f"  {vid} -- {w} [label=rot{axis}];"
    yield "}"


VERTEX_CSV_HEADER = "id,x1,x2,x3,class1,class2,class3,ord,in_cage"


def vertex_csv(g: SurfaceGraph, cls: Optional[Classifier] = None) -> Iterator[str]:
    """One row per vertex: coordinates, per-coordinate class, point order, cage flag."""
    cls = cls or Classifier(g.p)
    yield VERTEX_CSV_HEADER
    for vid in range(len(g)):
        x = g.point_of(vid)
        kinds = [cls.classify(c).kind for c in x]
        yield (
            f"{vid},{x[0]},{x[1]},{x[2]},{kinds[0]},{kinds[1]},{kinds[2]},"
            f"{point_order(x, cls)},{int(is_maximal(x, cls))}"
        )
