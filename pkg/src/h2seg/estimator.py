"""Scikit-learn compatible front end for the H2S solvers.

``HypercubeSegmentation`` behaves like a two-cluster KMeans over binary
data: ``fit`` picks the partition and centers, ``labels_`` and
``cluster_centers_`` follow sklearn conventions, and ``predict`` assigns
new rows to the nearest fitted center by agreement.  Inputs may use either
the {0, 1} or the {-1, +1} alphabet; centers are reported in the same
alphabet the fit saw.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils import check_array

from .core import H2SInstance
from .solvers import solve_center_pairs, solve_exact, solve_local

__all__ = ["HypercubeSegmentation"]


def _to_signs(X, name="X"):
    """Return (sign matrix, used_binary_alphabet)."""
    arr = check_array(X, dtype="numeric", ensure_2d=True)
    values = np.unique(arr)
    if np.isin(values, (0, 1)).all():
        return arr.astype(np.int64) * 2 - 1, True
    if np.isin(values, (-1, 1)).all():
        return arr.astype(np.int64), False
    raise ValueError(f"{name} must be over {{0, 1}} or {{-1, +1}}, got values {values}")


class HypercubeSegmentation(ClusterMixin, BaseEstimator):
    """Split binary vectors into two clusters maximizing center agreement.

    Parameters
    ----------
    method : {"auto", "exact", "local", "pairs"}
        "exact" enumerates all bipartitions (refused above ``max_exact_k``
        rows); "local" is seeded hill climbing; "pairs" tries every pair
        of input rows as centers and carries a 2*sqrt(2)-2 approximation
        guarantee.  "auto" uses "exact" when it is affordable and
        otherwise the better of "pairs" and "local".
    max_exact_k : int
        Largest number of rows the exact method will enumerate.
    seed : int
        Seed for the local search restarts.
    restarts : int
        Number of local search restarts.

    Attributes
    ----------
    labels_ : (k,) array of 0/1 cluster indices.
    cluster_centers_ : (2, d) array in the input alphabet.
    l1_value_ : the l1-form objective of the fitted partition.
    agreement_value_ : the agreement-form objective, (k*d + l1_value_) / 2.
    """

    def __init__(self, method: str = "auto", max_exact_k: int = 20,
                 seed: int = 0, restarts: int = 8):
        self.method = method
        self.max_exact_k = max_exact_k
        self.seed = seed
        self.restarts = restarts

    def fit(self, X, y=None):
        signs, binary = _to_signs(X)
        inst = H2SInstance(signs)
        method = self.method
        if method == "auto":
            method = "exact" if inst.k <= self.max_exact_k else "best_heuristic"
        if method == "exact":
            result = solve_exact(inst, max_k=self.max_exact_k)
        elif method == "local":
            result = solve_local(inst, seed=self.seed, restarts=self.restarts)
        elif method == "pairs":
            result = solve_center_pairs(inst)
        elif method == "best_heuristic":
            a = solve_center_pairs(inst)
            b = solve_local(inst, seed=self.seed, restarts=self.restarts)
            result = a if a.l1_value >= b.l1_value else b
        else:
            raise ValueError(f"unknown method {self.method!r}")
        centers = np.stack([result.centers.c1, result.centers.c2])
        self._binary_input = binary
        self.labels_ = (result.sides - 1).astype(np.int64)
        self.cluster_centers_ = (centers + 1) // 2 if binary else centers
        self.l1_value_ = result.l1_value
        self.agreement_value_ = result.agreement_value
        self.n_features_in_ = inst.d
        self.solve_method_ = result.method
        return self

    def _check_fitted(self):
        if not hasattr(self, "cluster_centers_"):
            raise NotFittedError("fit must be called before predict or score")

    def predict(self, X):
        """Assign rows to the fitted center with higher agreement (ties to 0)."""
        self._check_fitted()
        signs, _ = _to_signs(X)
        if signs.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {signs.shape[1]} features, fit saw {self.n_features_in_}"
            )
        centers = self.cluster_centers_
        if self._binary_input:
            centers = centers * 2 - 1
        a0 = signs @ centers[0]
        a1 = signs @ centers[1]
        return np.where(a0 >= a1, 0, 1).astype(np.int64)

    def score(self, X, y=None):
        """Total agreement of rows with their better fitted center."""
        self._check_fitted()
        signs, _ = _to_signs(X)
        centers = self.cluster_centers_
        if self._binary_input:
            centers = centers * 2 - 1
        d = signs.shape[1]
        a0 = (d + signs @ centers[0]) // 2
        a1 = (d + signs @ centers[1]) // 2
        return float(np.maximum(a0, a1).sum())
