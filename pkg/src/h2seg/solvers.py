"""Exact and approximate solvers for H2S instances.

Three methods are provided:

* ``solve_exact`` enumerates all 2^(k-1) bipartitions (vector 0 pinned to
  side 1 by symmetry) and is the ground truth for everything else;
* ``solve_local`` is seeded best-improvement hill climbing on single
  vector flips;
* ``solve_center_pairs`` tries every pair of input vectors as centers,
  assigns each vector to its better center and re-centers.  Its agreement
  value is guaranteed to be at least a 2*sqrt(2) - 2 (about 0.828)
  fraction of the optimum.

Every solver reports the partition it found together with that
partition's majority centers; ``agreement_value`` is therefore always
(k*d + l1_value) / 2.  Results are deterministic: enumeration breaks value
ties toward the lexicographically smallest partition, local search breaks
flip ties toward the lowest vector index, and the pair search breaks ties
toward the earliest pair.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ._validation import as_sides
from .core import CenterPair, H2SInstance, majority_center, score_l1

__all__ = [
    "SolveStats",
    "SolveResult",
    "solve_exact",
    "solve_local",
    "solve_center_pairs",
    "local_improve",
]

DEFAULT_MAX_EXACT_K = 24

_CHUNK_BITS = 16  # enumerate at most 2^16 partitions per vectorized block


@dataclass
class SolveStats:
    examined: int = 0
    restarts: int = 0
    wall_time: float = 0.0


@dataclass
class SolveResult:
    sides: np.ndarray
    centers: CenterPair
    l1_value: int
    agreement_value: int
    method: str
    stats: SolveStats = field(default_factory=SolveStats)


def _finish(inst: H2SInstance, sides: np.ndarray, method: str, stats: SolveStats) -> SolveResult:
    l1 = score_l1(inst, sides)
    total = inst.k * inst.d + l1
    assert total % 2 == 0  # parity of coordinate sums matches k
    centers = CenterPair(
        majority_center(inst.vectors[sides == 1], inst.d),
        majority_center(inst.vectors[sides == 2], inst.d),
    )
    return SolveResult(sides, centers, l1, total // 2, method, stats)


def _mask_bits(start: int, stop: int, width: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographic 0/1 enumeration of given width."""
    idx = np.arange(start, stop, dtype=np.uint64)
    if width == 0:
        return np.zeros((idx.shape[0], 0), dtype=np.uint64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
    return (idx[:, None] >> shifts[None, :]) & np.uint64(1)


def _sides_from_mask(mask: int, k: int) -> np.ndarray:
    sides = np.ones(k, dtype=np.int64)
    for j in range(1, k):
        sides[j] += (mask >> (k - 1 - j)) & 1
    return sides


def solve_exact(inst: H2SInstance, max_k: int = DEFAULT_MAX_EXACT_K) -> SolveResult:
    """Globally optimal partition by enumeration of all 2^(k-1) bipartitions.

    Enumeration runs in vectorized chunks with the first vector pinned to
    side 1.  Refuses instances with k above ``max_k`` rather than falling
    back to a heuristic.
    """
    t0 = time.perf_counter()
    k, d = inst.k, inst.d
    if k > max_k:
        raise ValueError(f"exact solver limited to k <= {max_k}, instance has k = {k}")
    Xf = inst.vectors.astype(np.float64)
    first = Xf[0]
    rest = Xf[1:]
    total_masks = 1 << (k - 1)
    # cap chunk * d so the intermediate sum matrices stay modest
    chunk = max(256, min(1 << _CHUNK_BITS, (1 << 22) // d))
    best_score = -1.0
    best_mask = 0
    for start in range(0, total_masks, chunk):
        stop = min(start + chunk, total_masks)
        bits = _mask_bits(start, stop, k - 1).astype(np.float64)  # 1 means side 2
        s2 = bits @ rest
        s1 = (1.0 - bits) @ rest + first
        scores = np.abs(s1).sum(axis=1) + np.abs(s2).sum(axis=1)
        i = int(np.argmax(scores))
        if scores[i] > best_score:
            best_score = float(scores[i])
            best_mask = start + i
    sides = _sides_from_mask(best_mask, k)
    stats = SolveStats(examined=total_masks, wall_time=time.perf_counter() - t0)
    return _finish(inst, sides, "exact", stats)


def local_improve(inst: H2SInstance, sides) -> Tuple[np.ndarray, int, int]:
    """Hill-climb from a given partition with best-improvement single flips.

    Returns (locally optimal sides, l1 value, number of flips applied).
    Flip ties break toward the lowest vector index, so the climb is
    deterministic.
    """
    p = as_sides(sides, inst.k).copy()
    Xf = inst.vectors.astype(np.float64)
    s1 = Xf[p == 1].sum(axis=0)
    s2 = Xf[p == 2].sum(axis=0)
    cur = np.abs(s1).sum() + np.abs(s2).sum()
    flips = 0
    while True:
        move = np.where(p == 1, 1.0, -1.0)[:, None] * Xf
        cand = np.abs(s1[None, :] - move).sum(axis=1) + np.abs(s2[None, :] + move).sum(axis=1)
        i = int(np.argmax(cand))
        if cand[i] <= cur:
            break
        cur = float(cand[i])
        if p[i] == 1:
            s1 -= Xf[i]
            s2 += Xf[i]
            p[i] = 2
        else:
            s2 -= Xf[i]
            s1 += Xf[i]
            p[i] = 1
        flips += 1
    return p, int(cur), flips


def solve_local(inst: H2SInstance, seed: int = 0, restarts: int = 1) -> SolveResult:
    """Best of ``restarts`` seeded hill climbs from uniform random partitions."""
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    best_sides: Optional[np.ndarray] = None
    best_val = -1
    flips_total = 0
    for _ in range(restarts):
        start = rng.integers(1, 3, size=inst.k)
        p, val, flips = local_improve(inst, start)
        flips_total += flips
        if val > best_val:
            best_val = val
            best_sides = p
    stats = SolveStats(examined=flips_total, restarts=restarts,
                       wall_time=time.perf_counter() - t0)
    return _finish(inst, best_sides, "local", stats)


def solve_center_pairs(inst: H2SInstance) -> SolveResult:
    """Try all unordered pairs of input vectors as centers.

    Each pair induces a partition via nearest-center assignment; the
    partition is then re-centered at its majority centers, which never
    decreases the score.  The best partition over all k*(k+1)/2 pairs is
    returned.
    """
    t0 = time.perf_counter()
    X = inst.vectors
    k, d = inst.k, inst.d
    # agreement[i, j] = agree(x_i, x_j)
    agreement = (d + X @ X.T) // 2
    Xf = X.astype(np.float64)
    best_val = -1
    best_sides: Optional[np.ndarray] = None
    pairs = 0
    for i in range(k):
        for j in range(i, k):
            pairs += 1
            on1 = agreement[i] >= agreement[j]
            s1 = Xf[on1].sum(axis=0)
            s2 = Xf[~on1].sum(axis=0)
            val = int(np.abs(s1).sum() + np.abs(s2).sum())
            if val > best_val:
                best_val = val
                best_sides = np.where(on1, 1, 2).astype(np.int64)
    stats = SolveStats(examined=pairs, wall_time=time.perf_counter() - t0)
    return _finish(inst, best_sides, "center_pairs", stats)
