from itertools import product

import numpy as np
import pytest

from h2seg.core import H2SInstance, score_l1
from h2seg.solvers import (
    local_improve,
    solve_center_pairs,
    solve_exact,
    solve_local,
)

P, N = 1, -1


def inst(*rows):
    return H2SInstance(np.array(rows))


def brute_force_optimum(instance):
    """Independent oracle: try every side assignment via itertools."""
    best = -1
    for sides in product((1, 2), repeat=instance.k):
        best = max(best, score_l1(instance, list(sides)))
    return best


def random_instance(rng, max_k, max_d):
    k = int(rng.integers(1, max_k + 1))
    d = int(rng.integers(1, max_d + 1))
    return H2SInstance(rng.integers(0, 2, size=(k, d)) * 2 - 1)


class TestSolveExact:
    def test_perfect_clustering(self):
        i = inst([P, P], [P, P], [N, N], [N, N])
        assert solve_exact(i).l1_value == 8

    def test_single_vector(self):
        r = solve_exact(inst([P, N, P]))
        assert r.l1_value == 3
        assert r.centers.c1.tolist() == [P, N, P]

    def test_three_vector_example(self):
        r = solve_exact(inst([P, P], [P, N], [N, N]))
        assert r.l1_value == 4

    def test_matches_brute_force(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            i = random_instance(rng, max_k=8, max_d=7)
            assert solve_exact(i).l1_value == brute_force_optimum(i)

    def test_refuses_large_k(self):
        i = H2SInstance(np.ones((30, 2), dtype=np.int64))
        with pytest.raises(ValueError, match="k"):
            solve_exact(i)

    def test_agreement_consistent_with_l1(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            i = random_instance(rng, max_k=8, max_d=8)
            r = solve_exact(i)
            assert 2 * r.agreement_value == i.k * i.d + r.l1_value
            assert r.l1_value == score_l1(i, r.sides)

    def test_deterministic_tie_break(self):
        i = inst([P, P], [N, N], [P, N], [N, P])
        a = solve_exact(i)
        b = solve_exact(i)
        assert a.sides.tolist() == b.sides.tolist()
        assert a.sides[0] == 1

    def test_returns_lexicographically_smallest_optimum(self):
        rng = np.random.default_rng(53)
        for _ in range(25):
            i = random_instance(rng, max_k=7, max_d=5)
            best = brute_force_optimum(i)
            # first optimum in lex order over label sequences, side of vector 0 fixed
            expected = next(
                list(s) for s in product((1, 2), repeat=i.k)
                if s[0] == 1 and score_l1(i, list(s)) == best
            )
            assert solve_exact(i).sides.tolist() == expected


class TestSolveLocal:
    def test_never_beats_exact(self):
        rng = np.random.default_rng(31)
        for t in range(40):
            i = random_instance(rng, max_k=9, max_d=8)
            assert solve_local(i, seed=t, restarts=3).l1_value <= solve_exact(i).l1_value

    def test_identical_vectors_reach_full_score(self):
        i = H2SInstance(np.tile([P, N, P], (5, 1)))
        assert solve_local(i, seed=0, restarts=1).l1_value == 15

    def test_three_vector_example_matches_exact(self):
        i = inst([P, P], [P, N], [N, N])
        for seed in range(5):
            assert solve_local(i, seed=seed, restarts=2).l1_value == 4

    def test_one_flip_local_optimality(self):
        rng = np.random.default_rng(37)
        for t in range(30):
            i = random_instance(rng, max_k=9, max_d=8)
            r = solve_local(i, seed=t, restarts=2)
            base = r.l1_value
            for j in range(i.k):
                flipped = r.sides.copy()
                flipped[j] = 3 - flipped[j]
                assert score_l1(i, flipped) <= base

    def test_deterministic_given_seed(self):
        i = H2SInstance(np.random.default_rng(1).integers(0, 2, (10, 6)) * 2 - 1)
        a = solve_local(i, seed=99, restarts=4)
        b = solve_local(i, seed=99, restarts=4)
        assert a.l1_value == b.l1_value
        assert a.sides.tolist() == b.sides.tolist()

    def test_rejects_zero_restarts(self):
        with pytest.raises(ValueError):
            solve_local(inst([P, P]), seed=0, restarts=0)


class TestLocalImprove:
    def test_result_dominates_start(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            i = random_instance(rng, max_k=10, max_d=8)
            start = rng.integers(1, 3, size=i.k)
            _, val, _ = local_improve(i, start)
            assert val >= score_l1(i, start)


class TestSolveCenterPairs:
    def test_identical_vectors(self):
        i = H2SInstance(np.tile([P, P, N], (4, 1)))
        assert solve_center_pairs(i).l1_value == 12

    def test_optimal_centers_among_inputs(self):
        i = inst([P, P], [P, P], [N, N], [N, N])
        assert solve_center_pairs(i).l1_value == solve_exact(i).l1_value

    def test_approximation_floor_on_random_instances(self):
        rng = np.random.default_rng(43)
        floor = 2 * np.sqrt(2) - 2
        for _ in range(60):
            i = random_instance(rng, max_k=10, max_d=8)
            approx = solve_center_pairs(i).agreement_value
            opt = solve_exact(i).agreement_value
            assert approx >= floor * opt - 1e-9
            assert approx <= opt

    def test_single_vector(self):
        assert solve_center_pairs(inst([P, N])).l1_value == 2


class TestSymmetry:
    def test_label_swap_preserves_score(self):
        rng = np.random.default_rng(47)
        for _ in range(30):
            i = random_instance(rng, max_k=9, max_d=7)
            sides = rng.integers(1, 3, size=i.k)
            assert score_l1(i, sides) == score_l1(i, 3 - sides)
