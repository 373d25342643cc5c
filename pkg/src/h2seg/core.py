"""Domain types and scoring for hypercube 2-segmentation (H2S).

An H2S instance is a set of k sign vectors in {+1, -1}^d.  Two equivalent
objectives are supported:

* agreement form: pick two centers and score every vector against its
  better center, where agree(x, y) counts matching coordinates;
* l1 form: split the vectors into two clusters and add up the l1 norms of
  the two cluster sums.

For a fixed cluster the best center is the coordinatewise majority sign,
and with majority centers the two scores are linked by

    2 * agreement = k * d + l1_score

which the test suite checks extensively.  All functions here are pure and
operate on immutable values; they are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from ._validation import as_sides, as_sign_matrix, as_sign_vector

__all__ = [
    "BlockMeta",
    "H2SInstance",
    "CenterPair",
    "agree",
    "cluster_sum",
    "l1_norm",
    "majority_center",
    "score_l1",
    "score_agreement",
    "partition_agreement",
    "voronoi_assign",
]


class CenterPair(NamedTuple):
    """Two candidate centers of common dimension."""

    c1: np.ndarray
    c2: np.ndarray


@dataclass(frozen=True)
class BlockMeta:
    """Provenance of an instance built by the graph reduction.

    The reduced layout is canonical: vector index v belongs to vertex
    ``v // M`` as copy ``v % M``, and block b occupies coordinates
    ``[b*M, (b+1)*M)`` and corresponds to ``edges[b]`` (an oriented
    (tail, head) pair of the source graph).
    """

    M: int
    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.M < 2 or self.M & (self.M - 1):
            raise ValueError(f"block size must be a power of 2 >= 2, got {self.M}")
        if self.n < 2:
            raise ValueError(f"source graph needs at least 2 vertices, got {self.n}")
        object.__setattr__(self, "edges", tuple((int(t), int(h)) for t, h in self.edges))
        for t, h in self.edges:
            if not (0 <= t < self.n and 0 <= h < self.n) or t == h:
                raise ValueError(f"invalid oriented edge ({t}, {h}) for n={self.n}")

    @property
    def edge_blocks(self) -> Tuple[int, ...]:
        """Block index -> edge id (identity in the canonical layout)."""
        return tuple(range(len(self.edges)))

    @property
    def vector_groups(self) -> Tuple[Tuple[int, int], ...]:
        """Vector index -> (vertex id, copy index)."""
        return tuple((v // self.M, v % self.M) for v in range(self.M * self.n))

    def vertex_of(self, vector_index: int) -> int:
        return vector_index // self.M


@dataclass(eq=False)
class H2SInstance:
    """k sign vectors of common dimension d, stored as a (k, d) matrix."""

    vectors: np.ndarray
    block_meta: Optional[BlockMeta] = None

    def __post_init__(self):
        self.vectors = as_sign_matrix(self.vectors)
        if self.block_meta is not None:
            meta = self.block_meta
            if self.d != meta.M * len(meta.edges):
                raise ValueError(
                    f"dimension {self.d} does not match M*m = {meta.M * len(meta.edges)}"
                )
            if self.k != meta.M * meta.n:
                raise ValueError(f"size {self.k} does not match M*n = {meta.M * meta.n}")

    @property
    def k(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, H2SInstance):
            return NotImplemented
        return np.array_equal(self.vectors, other.vectors) and self.block_meta == other.block_meta


def agree(x, y) -> int:
    """Number of coordinates on which two sign vectors agree.

    Equals d minus the Hamming distance, and also (d + <x, y>) / 2.
    """
    xa = as_sign_vector(x, "x")
    ya = as_sign_vector(y, "y")
    if xa.shape != ya.shape:
        raise ValueError(f"dimension mismatch: {xa.shape[0]} vs {ya.shape[0]}")
    return int((xa == ya).sum())


def cluster_sum(vectors, d: Optional[int] = None) -> np.ndarray:
    """Coordinatewise integer sum of a collection of sign vectors.

    An empty collection is allowed if ``d`` is given and yields the zero
    vector.
    """
    vs = list(vectors)
    if not vs:
        if d is None:
            raise ValueError("empty cluster needs an explicit dimension")
        return np.zeros(int(d), dtype=np.int64)
    mat = np.stack([as_sign_vector(v) for v in vs])
    if d is not None and mat.shape[1] != d:
        raise ValueError(f"vectors have dimension {mat.shape[1]}, expected {d}")
    return mat.sum(axis=0, dtype=np.int64)


def l1_norm(v) -> int:
    """Sum of absolute values of an integer vector."""
    return int(np.abs(np.asarray(v, dtype=np.int64)).sum())


def majority_center(vectors, d: Optional[int] = None) -> np.ndarray:
    """Coordinatewise majority sign of a cluster; ties break to +1.

    The majority center maximises total agreement with the cluster, so an
    empty cluster maps to the all +1 vector (any center would do).
    """
    s = cluster_sum(vectors, d)
    return np.where(s >= 0, 1, -1).astype(np.int64)


def score_l1(inst: H2SInstance, sides) -> int:
    """l1 norm of the side-1 sum plus l1 norm of the side-2 sum."""
    p = as_sides(sides, inst.k)
    s1 = inst.vectors[p == 1].sum(axis=0, dtype=np.int64)
    s2 = inst.vectors[p == 2].sum(axis=0, dtype=np.int64)
    return int(np.abs(s1).sum() + np.abs(s2).sum())


def _agreements(inst: H2SInstance, centers: CenterPair) -> Tuple[np.ndarray, np.ndarray]:
    c1 = as_sign_vector(centers[0], "c1")
    c2 = as_sign_vector(centers[1], "c2")
    if c1.shape[0] != inst.d or c2.shape[0] != inst.d:
        raise ValueError(
            f"centers have dimensions {c1.shape[0]}, {c2.shape[0]}; instance has d={inst.d}"
        )
    a1 = (inst.d + inst.vectors @ c1) // 2
    a2 = (inst.d + inst.vectors @ c2) // 2
    return a1, a2


def score_agreement(inst: H2SInstance, centers) -> int:
    """Total agreement when every vector is scored against its better center."""
    a1, a2 = _agreements(inst, centers)
    return int(np.maximum(a1, a2).sum())


def partition_agreement(inst: H2SInstance, sides, centers=None) -> int:
    """Total agreement when every vector is scored against its own cluster's center.

    With ``centers=None`` the majority centers of the two clusters are used,
    in which case the result equals (k*d + score_l1) / 2.
    """
    p = as_sides(sides, inst.k)
    if centers is None:
        centers = CenterPair(
            majority_center(inst.vectors[p == 1], inst.d),
            majority_center(inst.vectors[p == 2], inst.d),
        )
    a1, a2 = _agreements(inst, centers)
    return int(np.where(p == 1, a1, a2).sum())


def voronoi_assign(inst: H2SInstance, centers) -> np.ndarray:
    """Assign every vector to its better center; ties go to side 1.

    Replacing any partition with this one never decreases the agreement
    score for the same centers.
    """
    a1, a2 = _agreements(inst, centers)
    return np.where(a1 >= a2, 1, 2).astype(np.int64)
