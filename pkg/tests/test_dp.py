import math

import numpy as np
import pytest

from helpers import generation_preserving, generation_preserving_distance, step_costs
from pedcmp.bnb import branch_and_bound
from pedcmp.distance import match_distance
from pedcmp.dp import dp_bounded, dp_gamma_heuristic, recurrence_T, two_generation_exact
from pedcmp.errors import NoMatchingWithinBound, PreconditionViolated
from pedcmp.pedigree import Gender, validate
from pedcmp.simulate import PerturbConfig, WrightFisherConfig, perturb, wright_fisher

M, F = Gender.MALE, Gender.FEMALE


def sim(g, size, seed, x=0.0, lam=2.5):
    p = wright_fisher(WrightFisherConfig(g, size, lam, seed))
    return p, perturb(p, PerturbConfig(x, seed=seed + 1))


class TestRecurrence:
    def test_initial_values(self):
        assert recurrence_T(5, 0) == 1
        assert recurrence_T(5, 1) == 1
        assert recurrence_T(1, 7) == 1

    def test_small_values(self):
        assert recurrence_T(2, 2) == 2
        assert recurrence_T(3, 2) == 4

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            recurrence_T(0, 1)

    def test_polynomial_growth(self):
        # T(n,c) <= C n^c with one constant over the whole table
        ratios = [recurrence_T(n, c) / n ** c for n in range(1, 13) for c in range(0, 7)]
        assert max(ratios) <= 1.0

    def test_unbounded_budget_counts_all_permutations(self):
        # once c is at least 2(n-1) no branch is cut off
        for n in range(1, 8):
            assert recurrence_T(n, 2 * n) == math.factorial(n)


class TestTwoGeneration:
    def test_identical(self):
        p, _ = sim(2, 8, 1)
        assert two_generation_exact(p, p).distance == 0

    def test_swapped_mothers(self):
        inds = [("m1", M, None), ("m2", M, None), ("f1", F, None), ("f2", F, None),
                ("a", M, 1), ("b", F, 2), ("c", M, 3)]
        p = validate(inds, [("m1", "a"), ("f1", "a"), ("m1", "b"), ("f1", "b"),
                            ("m2", "c"), ("f2", "c")])
        q = validate(inds, [("m1", "a"), ("f2", "a"), ("m1", "b"), ("f2", "b"),
                            ("m2", "c"), ("f1", "c")])
        assert two_generation_exact(p, q).distance == branch_and_bound(p, q).distance

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_branch_and_bound(self, seed):
        size = 4 + 2 * (seed % 6)
        p, q = sim(2, size, seed, x=(seed % 5) / 4)
        assert two_generation_exact(p, q).distance == branch_and_bound(p, q).distance

    def test_uneven_gender_counts_are_padded(self):
        p = validate([("m1", M, None), ("f1", F, None), ("a", M, 1)], [("m1", "a"), ("f1", "a")])
        q = validate([("m1", M, None), ("m2", M, None), ("f1", F, None), ("a", M, 1), ("b", F, 2)],
                     [("m1", "a"), ("f1", "a"), ("m2", "b"), ("f1", "b")])
        q2 = validate([("m1", M, None), ("f1", F, None), ("a", M, 1), ("b", F, 2)],
                      [("m1", "a"), ("f1", "a"), ("m1", "b"), ("f1", "b")])
        with pytest.raises(PreconditionViolated):
            two_generation_exact(p, q)  # label sets differ
        p2 = validate([("m1", M, None), ("f1", F, None), ("a", M, 1), ("b", F, 2)],
                      [("m1", "a"), ("f1", "a"), ("m1", "b"), ("f1", "b")])
        assert two_generation_exact(p2, q).distance == branch_and_bound(p2, q).distance
        assert two_generation_exact(p2, q2).distance == 0

    def test_needs_two_generations(self):
        p, _ = sim(3, 4, 0)
        with pytest.raises(PreconditionViolated):
            two_generation_exact(p, p)

    def test_needs_leaf_labels(self):
        p = validate([("m", M, None), ("f", F, None), ("a", M, None)], [("m", "a"), ("f", "a")])
        with pytest.raises(PreconditionViolated):
            two_generation_exact(p, p)


class TestBoundedDP:
    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_identical(self, k):
        p, _ = sim(3, 8, 2)
        assert dp_bounded(p, p, k).distance == 0

    @pytest.mark.parametrize("seed", range(30))
    def test_small_perturbations(self, seed):
        p, q = sim(3, 8 + 2 * (seed % 3), seed, x=0.1)
        exact = branch_and_bound(p, q)
        try:
            got = dp_bounded(p, q, 8)
        except NoMatchingWithinBound:
            return
        assert got.distance >= exact.distance
        assert got.distance == match_distance(got.matching)
        if generation_preserving(p, q, exact.matching.image) and \
                max(step_costs(p, q, exact.matching.image).values(), default=0) < 8:
            assert got.distance == exact.distance

    def test_no_matching_within_bound(self):
        # rewire every child of one generation: no cheap step remains
        p, q = sim(2, 8, 3, x=1.0)
        with pytest.raises(NoMatchingWithinBound) as err:
            dp_bounded(p, q, 1)
        assert err.value.generation == 1 and err.value.k == 1

    def test_irregular(self):
        p, _ = sim(2, 4, 0)
        inds = [(i.id, i.gender, i.label) for i in p.individuals()]
        # an extra founder makes generation 1 irregular
        q = validate(inds + [("extra", M, None)], sorted(p.edges()))
        with pytest.raises(PreconditionViolated):
            dp_bounded(p, q, 4)

    def test_labels_in_different_generations(self):
        p = validate([("m", M, None), ("f", F, None), ("a", M, 1), ("b", F, 2)],
                     [("m", "a"), ("f", "a")])
        q = validate([("m", M, None), ("f", F, None), ("a", M, 1), ("b", F, 2)],
                     [("m", "b"), ("f", "b")])
        with pytest.raises(PreconditionViolated):
            dp_bounded(p, q, 3)

    def test_enumeration_within_recurrence_bound(self):
        for seed in range(12):
            p, q = sim(3, 8, seed, x=0.2)
            stats = []
            try:
                dp_bounded(p, q, 6, stats=stats)
            except NoMatchingWithinBound:
                pass
            assert stats
            for rec in stats:
                assert rec["count"] <= rec["bound"]
                assert rec["bound"] == recurrence_T(rec["m"], 6) ** 2

    def test_stats_do_not_change_answer(self):
        p, q = sim(3, 8, 7, x=0.1)
        assert dp_bounded(p, q, 8, stats=[]).distance == dp_bounded(p, q, 8).distance


class TestGammaHeuristic:
    def test_identical(self):
        p, _ = sim(3, 10, 4)
        assert dp_gamma_heuristic(p, p, 1).distance == 0

    @pytest.mark.parametrize("seed", range(12))
    def test_exhaustive_gamma_is_exact_on_generation_preserving(self, seed):
        size = 4 + 2 * (seed % 2)
        p, q = sim(3, size, seed, x=0.5)
        m = size // 2
        gamma = math.factorial(m) ** 2
        assert dp_gamma_heuristic(p, q, gamma).distance == generation_preserving_distance(p, q)

    @pytest.mark.parametrize("seed", range(15))
    def test_upper_bound(self, seed):
        p, q = sim(3, 8, seed, x=0.4)
        assert dp_gamma_heuristic(p, q, 2).distance >= branch_and_bound(p, q).distance

    def test_more_gamma_never_hurts(self):
        for seed in range(8):
            p, q = sim(3, 8, seed, x=0.5)
            ds = [dp_gamma_heuristic(p, q, g).distance for g in (1, 2, 4, 8)]
            assert ds == sorted(ds, reverse=True)

    def test_bad_gamma(self):
        p, _ = sim(2, 4, 0)
        with pytest.raises(ValueError):
            dp_gamma_heuristic(p, p, 0)
