"""Max-cut machinery: exact and heuristic cuts, fractional cuts, rounding.

The fractional relaxation assigns each vertex an extent x_i in [0, 1] of
membership in side 1; an edge (u, v) is cut to extent |x_u - x_v|.  The
l1 objective is convex in each single coordinate, so pushing one fractional
coordinate to its better endpoint never decreases the total cut extent.
``round_fractional`` applies that step vertex by vertex, which is why the
maximum of the relaxation equals the integer max-cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ._validation import as_sides

__all__ = [
    "Graph",
    "cut_value",
    "fractional_cut_value",
    "maxcut_exact",
    "maxcut_local",
    "round_fractional",
]

DEFAULT_MAX_EXACT_N = 22


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: n vertices, edges as unordered 0-indexed pairs."""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        canon = []
        seen = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            canon.append((u, v))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def _edge_arrays(g: Graph) -> Tuple[np.ndarray, np.ndarray]:
    if g.m == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    e = np.asarray(g.edges, dtype=np.int64)
    return e[:, 0], e[:, 1]


def cut_value(g: Graph, assignment) -> int:
    """Number of edges whose endpoints lie on different sides."""
    a = as_sides(assignment, g.n, "assignment")
    us, vs = _edge_arrays(g)
    return int((a[us] != a[vs]).sum())


def fractional_cut_value(g: Graph, extents) -> float:
    """Sum over edges of |x_u - x_v| for per-vertex extents x in [0, 1]."""
    x = np.asarray(extents, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"extents have shape {x.shape}, expected ({g.n},)")
    if (x < 0).any() or (x > 1).any():
        raise ValueError("extents must lie in [0, 1]")
    us, vs = _edge_arrays(g)
    return float(np.abs(x[us] - x[vs]).sum())


def maxcut_exact(g: Graph, max_n: int = DEFAULT_MAX_EXACT_N) -> Tuple[np.ndarray, int]:
    """Maximum cut by enumeration over all 2^(n-1) assignments.

    Vertex 0 is pinned to side 1; among optimal assignments the
    lexicographically smallest is returned.  For m >= 1 the value always
    exceeds m/2.
    """
    if g.n > max_n:
        raise ValueError(f"exact max-cut limited to n <= {max_n}, graph has n = {g.n}")
    us, vs = _edge_arrays(g)
    width = g.n - 1
    total = 1 << width
    chunk = 1 << 16
    best_val = -1
    best_mask = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        if width:
            shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
            bits = (idx[:, None] >> shifts[None, :]) & np.uint64(1)
        else:
            bits = np.zeros((idx.shape[0], 0), dtype=np.uint64)
        sides = np.concatenate([np.zeros((bits.shape[0], 1), dtype=np.uint64), bits], axis=1)
        vals = (sides[:, us] != sides[:, vs]).sum(axis=1)
        i = int(np.argmax(vals)) if vals.size else 0
        v = int(vals[i]) if vals.size else 0
        if v > best_val:
            best_val = v
            best_mask = start + i
    assignment = np.ones(g.n, dtype=np.int64)
    for j in range(1, g.n):
        assignment[j] += (best_mask >> (g.n - 1 - j)) & 1
    return assignment, best_val


def maxcut_local(g: Graph, seed: int = 0, restarts: int = 1) -> Tuple[np.ndarray, int]:
    """Best-improvement single-vertex swaps from seeded random assignments.

    Each run ends in a 1-swap local optimum, which cuts at least m/2 edges.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    rng = np.random.default_rng(seed)
    us, vs = _edge_arrays(g)
    deg = np.zeros(g.n, dtype=np.int64)
    np.add.at(deg, us, 1)
    np.add.at(deg, vs, 1)
    best_assign = None
    best_val = -1
    for _ in range(restarts):
        sides = rng.integers(1, 3, size=g.n)
        while True:
            cut = sides[us] != sides[vs]
            cut_deg = np.zeros(g.n, dtype=np.int64)
            np.add.at(cut_deg, us[cut], 1)
            np.add.at(cut_deg, vs[cut], 1)
            gain = deg - 2 * cut_deg  # change in cut value when the vertex swaps sides
            i = int(np.argmax(gain))
            if gain[i] <= 0:
                break
            sides[i] = 3 - sides[i]
        val = cut_value(g, sides)
        if val > best_val:
            best_val = val
            best_assign = sides.astype(np.int64)
    return best_assign, best_val


def round_fractional(g: Graph, extents) -> np.ndarray:
    """Round a fractional cut to an integer assignment of no smaller value.

    Vertices are visited in index order; a fractional coordinate is set to
    whichever endpoint of [0, 1] gives the larger cut extent over its
    incident edges, ties to 1 (side 1).  Extents already 0 or 1 are kept,
    so an integer input round-trips to the same cut.
    """
    x = np.asarray(extents, dtype=np.float64).copy()
    if x.shape != (g.n,):
        raise ValueError(f"extents have shape {x.shape}, expected ({g.n},)")
    if (x < 0).any() or (x > 1).any():
        raise ValueError("extents must lie in [0, 1]")
    adj = g.adjacency()
    for i in range(g.n):
        if x[i] == 0.0 or x[i] == 1.0:
            continue
        neigh = x[adj[i]] if adj[i] else np.zeros(0)
        at_one = np.abs(1.0 - neigh).sum()
        at_zero = np.abs(neigh).sum()
        x[i] = 1.0 if at_one >= at_zero else 0.0
    return np.where(x == 1.0, 1, 2).astype(np.int64)
