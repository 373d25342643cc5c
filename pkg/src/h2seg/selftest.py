"""Full invariant suite over every module, runnable from the CLI.

Each check returns (ok, detail).  They are deliberately written against
independent routes: agreement totals are recomputed by counting equal
coordinates rather than through the dot-product shortcut, solver outputs
are compared against enumeration, and the reduction bounds are evaluated
from their closed forms while scores come from actual partitions.

All randomness is seeded with fixed constants so the suite is reproducible
run to run.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, List, Tuple

import numpy as np

from .core import (
    CenterPair,
    H2SInstance,
    majority_center,
    partition_agreement,
    score_agreement,
    score_l1,
    voronoi_assign,
)
from .hadamard import sylvester
from .maxcut import Graph, cut_value, fractional_cut_value, maxcut_exact, round_fractional
from .reduction import (
    fractional_cut_from_partition,
    min_valid_M,
    orient_edges,
    reduce_graph,
    sufficient_M,
    upper_bound,
    yes_bound,
)
from .solvers import _mask_bits, local_improve, solve_center_pairs, solve_exact, solve_local

__all__ = ["CHECKS", "run_all"]

CheckResult = Tuple[bool, str]


def _random_instance(rng, max_k: int, max_d: int) -> H2SInstance:
    k = int(rng.integers(1, max_k + 1))
    d = int(rng.integers(1, max_d + 1))
    return H2SInstance(rng.integers(0, 2, size=(k, d)) * 2 - 1)


def _counted_agreement(batch_sides: np.ndarray, X: np.ndarray,
                       c1: np.ndarray, c2: np.ndarray) -> np.ndarray:
    """Per-partition agreement totals via coordinate counting, not dot products."""
    eq1 = (c1[:, None, :] == X[None, :, :]).sum(axis=2)
    eq2 = (c2[:, None, :] == X[None, :, :]).sum(axis=2)
    return np.where(batch_sides == 1, eq1, eq2).sum(axis=1)


def _batch_scores(batch_sides: np.ndarray, X: np.ndarray):
    member = (batch_sides == 1).astype(np.float64)
    s1 = member @ X
    s2 = (1.0 - member) @ X
    l1 = np.abs(s1).sum(axis=1) + np.abs(s2).sum(axis=1)
    c1 = np.where(s1 >= 0, 1, -1)
    c2 = np.where(s2 >= 0, 1, -1)
    return l1.astype(np.int64), c1, c2


def check_equivalence_identity() -> CheckResult:
    """2 * (agreement with majority centers) == k*d + l1 score, exactly."""
    rng = np.random.default_rng(11001)
    checked = 0
    for t in range(1000):
        inst = _random_instance(rng, 10, 12)
        X = inst.vectors.astype(np.float64)
        k, d = inst.k, inst.d
        if t < 50:
            bits = _mask_bits(0, 1 << (k - 1), k - 1)
            batch = np.concatenate(
                [np.zeros((bits.shape[0], 1), dtype=np.int64), bits.astype(np.int64)], axis=1
            ) + 1
        else:
            batch = rng.integers(1, 3, size=(100, k))
        l1, c1, c2 = _batch_scores(batch, X)
        agr = _counted_agreement(batch, inst.vectors, c1, c2)
        if not np.array_equal(2 * agr, k * d + l1):
            return False, f"identity violated on instance {t} (k={k}, d={d})"
        checked += batch.shape[0]
    return True, f"1000 instances, {checked} partitions"


def check_majority_optimality() -> CheckResult:
    """No center beats the coordinatewise majority on any sampled cluster."""
    rng = np.random.default_rng(11002)
    for t in range(200):
        d = int(rng.integers(1, 5))
        q = int(rng.integers(1, 11))
        X = rng.integers(0, 2, size=(q, d)) * 2 - 1
        centers = _mask_bits(0, 1 << d, d).astype(np.int64) * 2 - 1
        scores = (centers[:, None, :] == X[None, :, :]).sum(axis=(1, 2))
        maj = majority_center(X)
        maj_score = int((maj[None, :] == X).sum())
        if maj_score < int(scores.max()):
            return False, f"majority beaten on cluster {t} (d={d}, q={q})"
    return True, "200 clusters, all centers enumerated"


def check_subset_sum_bound() -> CheckResult:
    """(l1 of any subset sum of Hadamard rows)^2 <= M^3, in exact integers."""
    total = 0
    for M in (1, 2, 4, 8, 16):
        rows = sylvester(M).rows.astype(np.int64)
        bits = _mask_bits(0, 1 << M, M).astype(np.int64)
        l1 = np.abs(bits @ rows).sum(axis=1)
        if not (l1 * l1 <= M ** 3).all():
            worst = int(l1.max())
            return False, f"subset of order {M} reaches l1={worst}"
        total += bits.shape[0]
    return True, f"{total} subsets across orders 1..16"


def check_split_bound() -> CheckResult:
    """l1(A-sum) + l1(complement-sum) <= sqrt(2) * M^(3/2) for row 2-colorings."""
    rng = np.random.default_rng(11004)
    for M in (2, 4, 8, 16, 32, 64):
        rows = sylvester(M).rows.astype(np.int64)
        if M <= 16:
            bits = _mask_bits(0, 1 << M, M).astype(np.int64)
        else:
            bits = rng.integers(0, 2, size=(10_000, M))
        sum_a = bits @ rows
        sum_b = rows.sum(axis=0)[None, :] - sum_a
        vals = np.abs(sum_a).sum(axis=1) + np.abs(sum_b).sum(axis=1)
        limit = np.sqrt(2.0) * M ** 1.5 + 1e-6
        if not (vals <= limit).all():
            return False, f"split of order {M} reaches {int(vals.max())} > {limit:.3f}"
    return True, "orders 2..16 exhaustive, 32 and 64 sampled"


def check_approximation_floor() -> CheckResult:
    """Center-pair search stays above the 2*sqrt(2)-2 fraction of optimal."""
    rng = np.random.default_rng(11005)
    worst = 1.0
    for t in range(300):
        inst = _random_instance(rng, 12, 10)
        exact = solve_exact(inst)
        pairs = solve_center_pairs(inst)
        p_rand = rng.integers(1, 3, size=inst.k)
        rand_val = score_l1(inst, p_rand)
        _, climbed, _ = local_improve(inst, p_rand)
        local_val = max(solve_local(inst, seed=t, restarts=2).l1_value, climbed)
        if pairs.agreement_value < 0.8284 * exact.agreement_value - 1e-9:
            return False, f"floor broken on instance {t}: {pairs.agreement_value}/{exact.agreement_value}"
        if not exact.l1_value >= local_val >= rand_val:
            return False, f"dominance chain broken on instance {t}"
        if exact.l1_value < pairs.l1_value:
            return False, f"pairs above exact on instance {t}"
        worst = min(worst, pairs.agreement_value / exact.agreement_value)
    return True, f"300 instances, worst ratio {worst:.4f}"


def check_per_edge_accounting() -> CheckResult:
    """Endpoint blocks contribute exactly M^2 * y_e to each cluster's l1 norm."""
    rng = np.random.default_rng(11006)
    graphs = [
        Graph(3, ((0, 1), (0, 2), (1, 2))),
        Graph(3, ((0, 1), (1, 2))),
        Graph(4, ((0, 1), (1, 2), (2, 3))),
    ]
    for g in graphs:
        for M in (2, 4):
            inst = reduce_graph(orient_edges(g), M)
            for _ in range(100):
                sides = rng.integers(1, 3, size=inst.k)
                extents = fractional_cut_from_partition(inst, sides)
                for b, (tail, head) in enumerate(inst.block_meta.edges):
                    cols = slice(b * M, (b + 1) * M)
                    end_rows = np.concatenate(
                        [np.arange(tail * M, (tail + 1) * M), np.arange(head * M, (head + 1) * M)]
                    )
                    y_e = abs(extents[tail] - extents[head])
                    for side in (1, 2):
                        rows = end_rows[sides[end_rows] == side]
                        contrib = int(np.abs(inst.vectors[rows, cols].sum(axis=0)).sum())
                        if contrib != round(M * M * y_e):
                            return False, (
                                f"edge ({tail},{head}) M={M}: endpoint l1 {contrib}, "
                                f"expected {M * M * y_e}"
                            )
    return True, "600 random partitions, every edge and cluster"


def _connected_graphs(n: int):
    all_edges = list(combinations(range(n), 2))
    for r in range(1, len(all_edges) + 1):
        for chosen in combinations(all_edges, r):
            g = Graph(n, chosen)
            adj = g.adjacency()
            seen = {0}
            stack = [0]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == n:
                yield g


def check_sandwich_bounds() -> CheckResult:
    """Exact optimum of every small reduced instance sits between the bounds."""
    count = 0
    for n in (2, 3, 4):
        for g in _connected_graphs(n):
            _, c = maxcut_exact(g)
            for M in (2, 4):
                inst = reduce_graph(orient_edges(g), M)
                opt = solve_exact(inst).l1_value
                lo = yes_bound(g.n, g.m, c, M)
                hi = upper_bound(g.n, g.m, c, M)
                if not (lo - 1e-6 <= opt <= hi + 1e-6):
                    return False, (
                        f"optimum {opt} outside [{lo:.3f}, {hi:.3f}] "
                        f"(n={g.n}, m={g.m}, c={c}, M={M})"
                    )
                count += 1
    return True, f"{count} (graph, M) cases solved exactly"


def check_gap_positivity() -> CheckResult:
    """At M = min_valid_M the yes bound beats the strongest no-instance value."""
    count = 0
    for n in range(2, 9):
        for m in range(1, n * (n - 1) // 2 + 1):
            for c in range(1, m + 1):
                M = min_valid_M(n, m, c)
                if not yes_bound(n, m, c, M) > upper_bound(n, m, c - 1, M):
                    return False, f"gap not positive at n={n}, m={m}, c={c}, M={M}"
                if M > sufficient_M(n, m):
                    return False, f"min_valid_M exceeds loose bound at n={n}, m={m}, c={c}"
                count += 1
    return True, f"{count} (n, m, c) combinations"


def check_rounding_soundness() -> CheckResult:
    """Rounded cuts never lose value; exact max-cut always beats m/2."""
    rng = np.random.default_rng(11009)
    pairs = 0
    for _ in range(1000):
        n = int(rng.integers(2, 13))
        p = float(rng.uniform(0.15, 0.9))
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        if not edges:
            edges = [(0, 1)]
        g = Graph(n, tuple(edges))
        _, best = maxcut_exact(g)
        if not 2 * best > g.m:
            return False, f"max-cut {best} <= m/2 on n={n}, m={g.m}"
        for _ in range(10):
            x = rng.uniform(0.0, 1.0, size=n)
            snap = rng.random(n) < 0.25
            x[snap] = np.round(x[snap])
            frac = fractional_cut_value(g, x)
            rounded = cut_value(g, round_fractional(g, x))
            if rounded < frac - 1e-9:
                return False, f"rounding lost value: {rounded} < {frac}"
            pairs += 1
    return True, f"{pairs} (graph, fractional cut) pairs"


def check_voronoi_monotonicity() -> CheckResult:
    """Reassigning every vector to its better center never drops the score."""
    rng = np.random.default_rng(11010)
    for t in range(300):
        inst = _random_instance(rng, 10, 10)
        centers = CenterPair(
            rng.integers(0, 2, inst.d) * 2 - 1, rng.integers(0, 2, inst.d) * 2 - 1
        )
        sides = rng.integers(1, 3, size=inst.k)
        before = partition_agreement(inst, sides, centers)
        after = partition_agreement(inst, voronoi_assign(inst, centers), centers)
        if not (before <= after == score_agreement(inst, centers)):
            return False, f"monotonicity broken on instance {t}"
    return True, "300 (instance, centers, partition) triples"


def check_l2_additivity() -> CheckResult:
    """Squared l2 norm of a sum of q distinct Hadamard rows equals q * M."""
    rng = np.random.default_rng(11011)
    for M in (1, 2, 4, 8, 16, 32, 64):
        rows = sylvester(M).rows.astype(np.int64)
        for _ in range(50):
            q = int(rng.integers(0, M + 1))
            idx = rng.choice(M, size=q, replace=False)
            s = rows[idx].sum(axis=0)
            if int(s @ s) != q * M:
                return False, f"order {M}, q={q}: squared l2 is {int(s @ s)}"
    return True, "orders 1..64, 50 subsets each"


def check_reduction_structure() -> CheckResult:
    """Reduced instances have k = M*n, d = M*m and every cell re-derives."""
    rng = np.random.default_rng(11012)
    for t in range(20):
        n = int(rng.integers(2, 6))
        edges = [e for e in combinations(range(n), 2) if rng.random() < 0.6]
        if not edges:
            edges = [(0, 1)]
        g = Graph(n, tuple(edges))
        M = int(2 ** rng.integers(1, 4))
        og = orient_edges(g)
        inst = reduce_graph(og, M)
        if inst.k != M * g.n or inst.d != M * g.m:
            return False, f"size mismatch on graph {t}"
        h = sylvester(M).rows
        for i in range(g.n):
            for j in range(M):
                vec = inst.vectors[i * M + j]
                for b, (tail, head) in enumerate(og.arcs):
                    block = vec[b * M:(b + 1) * M]
                    if i == head:
                        ok = (block == 1).all()
                    elif i == tail:
                        ok = (block == -1).all()
                    else:
                        ok = (block == h[j]).all()
                    if not ok:
                        return False, f"cell rule broken: vertex {i}, copy {j}, block {b}"
    return True, "20 random reductions re-derived cell by cell"


CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("equivalence identity", check_equivalence_identity),
    ("majority optimality", check_majority_optimality),
    ("hadamard subset-sum bound", check_subset_sum_bound),
    ("hadamard split bound", check_split_bound),
    ("approximation floor", check_approximation_floor),
    ("per-edge accounting", check_per_edge_accounting),
    ("sandwich bounds", check_sandwich_bounds),
    ("gap positivity", check_gap_positivity),
    ("rounding soundness", check_rounding_soundness),
    ("voronoi monotonicity", check_voronoi_monotonicity),
    ("hadamard l2 additivity", check_l2_additivity),
    ("reduction structure", check_reduction_structure),
]


def run_all(write=print) -> bool:
    """Run every check, emit one line each, return overall success."""
    all_ok = True
    for idx, (name, fn) in enumerate(CHECKS, start=1):
        ok, detail = fn()
        all_ok &= ok
        status = "pass" if ok else "FAIL"
        write(f"check {idx}/{len(CHECKS)} {name}: {status} ({detail})")
    write(f"selftest: {'pass' if all_ok else 'FAIL'}")
    return all_ok
