"""Sylvester Hadamard codes and l1 bounds on sums of their rows.

A Hadamard code of order M is a set of M mutually orthogonal vectors in
{+1, -1}^M.  The doubling construction used here exists exactly for powers
of two; other orders are out of scope.

The bounds delivered by :func:`subset_sum_l1` drive the offset accounting
of the graph reduction: the l1 norm of any sum of q distinct rows is at
most M * sqrt(q) <= M^(3/2), because the rows are orthogonal (the l2 norm
of the sum is exactly sqrt(q*M)) and l1 <= sqrt(M) * l2 in dimension M.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import check_power_of_two

__all__ = ["HadamardCode", "sylvester", "verify_orthogonality", "subset_sum_l1"]


@dataclass(frozen=True)
class HadamardCode:
    """M orthogonal sign vectors of dimension M, as a read-only (M, M) matrix."""

    order: int
    rows: np.ndarray

    def __post_init__(self):
        if self.rows.shape != (self.order, self.order):
            raise ValueError(
                f"rows have shape {self.rows.shape}, expected ({self.order}, {self.order})"
            )


@lru_cache(maxsize=None)
def _sylvester_rows(order: int) -> np.ndarray:
    h = np.array([[1]], dtype=np.int8)
    step = np.array([[1, 1], [1, -1]], dtype=np.int8)
    while h.shape[0] < order:
        h = np.kron(step, h).astype(np.int8)
    h.setflags(write=False)  # cached array is shared between callers
    return h


def sylvester(order: int) -> HadamardCode:
    """Build the Sylvester Hadamard code of the given power-of-two order.

    Order 1 is the single row (+); order 2M stacks [[H, H], [H, -H]] on the
    order-M code.  Row j of the doubled code restricted to its first M
    coordinates is row j mod M of the smaller code.
    """
    order = check_power_of_two(order, "order")
    return HadamardCode(order, _sylvester_rows(order))


def verify_orthogonality(code: HadamardCode) -> bool:
    """True iff all entries are +-1 and all distinct row pairs are orthogonal."""
    rows = np.asarray(code.rows, dtype=np.int64)
    if rows.shape != (code.order, code.order):
        return False
    if not np.isin(rows, (-1, 1)).all():
        return False
    gram = rows @ rows.T
    return bool(np.array_equal(gram, code.order * np.eye(code.order, dtype=np.int64)))


def subset_sum_l1(code: HadamardCode, idxs) -> int:
    """l1 norm of the sum of the selected rows (0-based, distinct indices).

    Guaranteed to be at most M^(3/2), and at most M * sqrt(q) for q
    selected rows.
    """
    idx = sorted(int(i) for i in idxs)
    for i in idx:
        if not 0 <= i < code.order:
            raise ValueError(f"row index {i} out of range [0, {code.order})")
    if len(set(idx)) != len(idx):
        raise ValueError("row indices must be distinct")
    if not idx:
        return 0
    s = np.asarray(code.rows, dtype=np.int64)[idx].sum(axis=0)
    return int(np.abs(s).sum())
