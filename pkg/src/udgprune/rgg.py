"""Random point sets in a square and the induced unit disk graph.

Vertices carry 1-based integer IDs; ID order is the total order the
pruning rule uses.  Adjacency joins vertices at Euclidean distance <= 1
and is built from unit-side grid buckets so each radius-1 query touches
at most a 3x3 block of cells.  A constructed graph is immutable and safe
to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .geometry import SquareRegion

__all__ = [
    "UnitDiskGraph",
    "sample_points",
    "build_udg",
    "brute_force_edges",
    "components",
    "save_graph",
    "load_graph",
    "ell_sqrt",
    "ell_power",
]


def ell_sqrt(n: int, c: float = 1.0) -> float:
    """Habitat side c * sqrt(n / ln n)."""
    return c * math.sqrt(n / math.log(n))


def ell_power(n: int, t: float) -> float:
    """Habitat side (n / ln n)^t for a fixed exponent t < 1/2."""
    return (n / math.log(n)) ** t


def sample_points(n: int, square: SquareRegion, seed: int) -> np.ndarray:
    """Draw ``n`` i.i.d. uniform points in the square; row j is vertex j+1.

    Deterministic given the seed.
    """
    if n < 1:
        raise ValueError(f"need at least one point, got n={n}")
    rng = np.random.default_rng(seed)
    return rng.random((n, 2)) * square.side


@dataclass(frozen=True)
class UnitDiskGraph:
    """Immutable unit disk graph over ID-labeled points.

    ``points[j]`` holds the position of vertex ID j+1.  ``edges`` is an
    (m, 2) array of 0-based index pairs with i < j; the CSR-style arrays
    ``nbr_flat``/``nbr_offsets`` give each vertex's sorted neighbor IDs.
    """

    points: np.ndarray
    square: SquareRegion
    seed: int | None
    edges: np.ndarray
    nbr_flat: np.ndarray = field(repr=False)
    nbr_offsets: np.ndarray = field(repr=False)
    grid: dict = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def neighbors(self, vid: int) -> np.ndarray:
        """Sorted array of 1-based neighbor IDs of vertex ``vid``."""
        if not 1 <= vid <= self.n:
            raise ValueError(f"vertex id {vid} out of range 1..{self.n}")
        return self.nbr_flat[self.nbr_offsets[vid - 1] : self.nbr_offsets[vid]]

    def degree(self, vid: int) -> int:
        return int(self.nbr_offsets[vid] - self.nbr_offsets[vid - 1])

    def closed_neighborhood(self, vid: int) -> np.ndarray:
        """Sorted IDs of ``vid`` and everything adjacent to it."""
        return np.sort(np.append(self.neighbors(vid), vid))


def _cell_coords(points: np.ndarray, side: float) -> tuple[np.ndarray, np.ndarray, int]:
    ncell = int(math.floor(side)) + 1
    cx = np.clip(np.floor(points[:, 0]).astype(np.int64), 0, ncell - 1)
    cy = np.clip(np.floor(points[:, 1]).astype(np.int64), 0, ncell - 1)
    return cx, cy, ncell


def build_udg(points: np.ndarray, square: SquareRegion, seed: int | None = None) -> UnitDiskGraph:
    """Build the unit disk graph on ``points`` (edge iff distance <= 1).

    Candidate pairs come from each grid cell joined with itself and with
    four of its eight neighbors (E, NE, N, NW), which covers every 3x3
    neighborhood exactly once; candidates are then filtered on squared
    distance so no square root is taken.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError(f"points must be an (n, 2) array, got shape {points.shape}")
    if not np.isfinite(points).all():
        raise ValueError("points contain non-finite coordinates")
    if (points < 0).any() or (points > square.side).any():
        raise ValueError("some points lie outside the square")

    n = len(points)
    cx, cy, _ = _cell_coords(points, square.side)
    grid: dict[tuple[int, int], np.ndarray] = {}
    order = np.lexsort((cy, cx))
    scx, scy = cx[order], cy[order]
    boundaries = np.flatnonzero((np.diff(scx) != 0) | (np.diff(scy) != 0)) + 1
    for chunk in np.split(order, boundaries):
        grid[(int(cx[chunk[0]]), int(cy[chunk[0]]))] = chunk

    src_parts, dst_parts = [], []
    for (gx, gy), idx in grid.items():
        k = len(idx)
        if k > 1:
            iu, ju = np.triu_indices(k, 1)
            src_parts.append(idx[iu])
            dst_parts.append(idx[ju])
        for ox, oy in ((1, 0), (1, 1), (0, 1), (-1, 1)):
            nb = grid.get((gx + ox, gy + oy))
            if nb is not None:
                src_parts.append(np.repeat(idx, len(nb)))
                dst_parts.append(np.tile(nb, k))

    if src_parts:
        si = np.concatenate(src_parts)
        sj = np.concatenate(dst_parts)
        kept_lo, kept_hi = [], []
        block = 4_000_000  # bound transient memory in dense habitats
        for start in range(0, len(si), block):
            bi = si[start : start + block]
            bj = sj[start : start + block]
            d2 = np.sum((points[bi] - points[bj]) ** 2, axis=1)
            keep = d2 <= 1.0
            kept_lo.append(np.minimum(bi[keep], bj[keep]))
            kept_hi.append(np.maximum(bi[keep], bj[keep]))
        edges = np.column_stack([np.concatenate(kept_lo), np.concatenate(kept_hi)])
    else:
        edges = np.empty((0, 2), dtype=np.int64)

    # CSR adjacency with per-vertex sorted 1-based neighbor IDs
    both_src = np.concatenate([edges[:, 0], edges[:, 1]])
    both_dst = np.concatenate([edges[:, 1], edges[:, 0]])
    deg = np.bincount(both_src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=offsets[1:])
    sort_key = np.lexsort((both_dst, both_src))
    nbr_flat = (both_dst[sort_key] + 1).astype(np.int64)

    return UnitDiskGraph(
        points=points,
        square=square,
        seed=seed,
        edges=edges,
        nbr_flat=nbr_flat,
        nbr_offsets=offsets,
        grid=grid,
    )


def brute_force_edges(points: np.ndarray) -> np.ndarray:
    """All-pairs adjacency oracle: (m, 2) sorted index pairs with d <= 1."""
    points = np.asarray(points, dtype=float)
    n = len(points)
    # same float expression as the grid path so the comparison is exact
    pi, pj = np.triu_indices(n, 1)
    d2 = np.sum((points[pi] - points[pj]) ** 2, axis=1)
    keep = d2 <= 1.0
    return np.column_stack([pi[keep], pj[keep]])


def components(g: UnitDiskGraph) -> tuple[int, np.ndarray]:
    """Connected-component count and per-vertex labels (0-based)."""
    return _component_labels(g.n, g.edges)


def _component_labels(n: int, edges: np.ndarray) -> tuple[int, np.ndarray]:
    if n == 0:
        return 0, np.empty(0, dtype=np.int64)
    if len(edges) == 0:
        return n, np.arange(n, dtype=np.int64)
    data = np.ones(len(edges), dtype=np.int8)
    mat = coo_matrix((data, (edges[:, 0], edges[:, 1])), shape=(n, n))
    count, labels = connected_components(mat, directed=False)
    return int(count), labels


def save_graph(g: UnitDiskGraph, path) -> None:
    """Write the line-oriented text format: header ``n side seed`` then one
    ``id x y`` line per vertex.  Adjacency is recomputed on load."""
    with open(path, "w") as fh:
        seed = g.seed if g.seed is not None else 0
        fh.write(f"{g.n} {float(g.square.side)!r} {seed}\n")
        for j in range(g.n):
            fh.write(f"{j + 1} {float(g.points[j, 0])!r} {float(g.points[j, 1])!r}\n")


def load_graph(path) -> UnitDiskGraph:
    """Read the format written by `save_graph` and rebuild adjacency."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError(f"bad graph header in {path}: expected 'n side seed'")
        n, side, seed = int(header[0]), float(header[1]), int(header[2])
        points = np.empty((n, 2), dtype=float)
        seen = np.zeros(n, dtype=bool)
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise ValueError(f"bad vertex line in {path}: {line.rstrip()!r}")
            vid = int(parts[0])
            if not 1 <= vid <= n:
                raise ValueError(f"vertex id {vid} out of range 1..{n} in {path}")
            points[vid - 1] = (float(parts[1]), float(parts[2]))
            seen[vid - 1] = True
        if not seen.all():
            raise ValueError(f"graph file {path} is missing {int((~seen).sum())} vertices")
    return build_udg(points, SquareRegion(side), seed=seed)
