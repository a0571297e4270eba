import numpy as np
import pytest

from pedcmp.bnb import branch_and_bound
from pedcmp.distance import match_distance
from pedcmp.errors import PreconditionViolated
from pedcmp.heuristic import label_masks, overlap_matrices, random_matching
from pedcmp.pedigree import Gender, validate
from pedcmp.simulate import PerturbConfig, WrightFisherConfig, perturb, wright_fisher

M, F = Gender.MALE, Gender.FEMALE


def sim(g, size, seed, x):
    p = wright_fisher(WrightFisherConfig(g, size, 3.0, seed))
    return p, perturb(p, PerturbConfig(x, seed=seed))


def test_identical_pedigrees():
    p, _ = sim(3, 10, 1, 0.0)
    r = random_matching(p, p, trials=50, seed=0)
    assert r.distance >= 0
    assert r.distance == 0  # every split is unique here, so the identity is drawn


def test_masks_follow_labels(trio):
    rank = {1: 0}
    assert label_masks(trio, rank) == [1, 1, 0]


def test_overlap_counts(trio):
    ov = overlap_matrices(trio, trio)
    assert ov[(1, Gender.MALE)].tolist() == [[1]]


@pytest.mark.parametrize("seed", range(20))
def test_upper_bound_and_self_consistency(seed):
    p, q = sim(3, 6 + 2 * (seed % 4), seed, (seed % 5) / 4)
    r = random_matching(p, q, trials=20, seed=seed)
    assert r.distance >= branch_and_bound(p, q).distance
    assert r.distance == match_distance(r.matching)
    total = p.num_edges + q.num_edges
    assert r.distance >= abs(p.num_edges - q.num_edges) and r.distance % 2 == total % 2


def test_deterministic():
    p, q = sim(3, 14, 3, 0.5)
    a = random_matching(p, q, trials=30, seed=9)
    b = random_matching(p, q, trials=30, seed=9)
    assert a.matching.image == b.matching.image


def test_monotone_in_trials():
    for seed in range(6):
        p, q = sim(3, 14, seed, 0.6)
        few = random_matching(p, q, trials=10, seed=seed).distance
        more = random_matching(p, q, trials=20, seed=seed).distance
        assert more <= few


def test_padding_for_uneven_generations():
    p = validate([("m1", M, None), ("f1", F, None), ("a", M, 1), ("b", F, 2)],
                 [("m1", "a"), ("f1", "a"), ("m1", "b"), ("f1", "b")])
    q = validate([("m1", M, None), ("m2", M, None), ("f1", F, None), ("a", M, 1), ("b", F, 2)],
                 [("m1", "a"), ("f1", "a"), ("m2", "b"), ("f1", "b")])
    r = random_matching(p, q, trials=10, seed=0)
    assert r.distance == branch_and_bound(p, q).distance


def test_precondition():
    p = validate([("a", M, 1)], [])
    q = validate([("a", M, 2)], [])
    with pytest.raises(PreconditionViolated):
        random_matching(p, q)
    with pytest.raises(ValueError):
        random_matching(p, p, trials=0)
