"""Randomised matching from overlapping descendant splits.

Two unlabeled individuals look alike when many of the labels below one of
them also sit below the other.  Each trial matches leaves by label and then,
per generation and gender, draws partners without replacement with
probability proportional to the number of shared labels; a row whose
remaining candidates share nothing falls back to a uniform draw (add-one
smoothing of that row).  The best of ``trials`` trials is returned.
"""

from __future__ import annotations

import time

import numpy as np

from .distance import PedigreeMatching, count_well_matched, make_report
from .dp import layers
from .pedigree import Pedigree, topological_order


def label_masks(p: Pedigree, rank: dict) -> list[int]:
    """Bitset of the labels carried by strict descendants of each individual."""
    masks = [0] * len(p)
    for u in reversed(topological_order(p)):
        acc = 0
        for c in p.children[u]:
            acc |= masks[c]
            if p.labels[c] is not None:
                acc |= 1 << rank[p.labels[c]]
        masks[u] = acc
    return masks


def overlap_matrices(p: Pedigree, q: Pedigree, lay=None) -> dict:
    """Per (generation, gender) the shared-label counts between free individuals."""
    lay = lay or layers(p, q, regular=False)
    rank = {label: r for r, label in enumerate(sorted(p.label_map()))}
    mp, mq = label_masks(p, rank), label_masks(q, rank)
    out = {}
    for key in sorted(set(lay.free_p) | set(lay.free_q)):
        rows, cols = lay.free_p.get(key, []), lay.free_q.get(key, [])
        out[key] = np.array([[(mp[u] & mq[v]).bit_count() for v in cols] for u in rows],
                            dtype=np.int64).reshape(len(rows), len(cols))
    return out


def _one_trial(rng, lay, overlaps, image):
    for key, ov in overlaps.items():
        rows, cols = lay.free_p.get(key, []), lay.free_q.get(key, [])
        n = max(len(rows), len(cols))
        # dummies on either side have an empty split
        weights = np.zeros((n, n), dtype=np.float64)
        weights[:len(rows), :len(cols)] = ov
        free = np.ones(n, dtype=bool)
        for r in rng.permutation(n):
            w = np.where(free, weights[r], 0.0)
            if not w.any():
                w = np.where(free, 1.0, 0.0)
            c = int(rng.choice(n, p=w / w.sum()))
            free[c] = False
            if r < len(rows):
                image[rows[r]] = cols[c] if c < len(cols) else -1


def random_matching(p: Pedigree, q: Pedigree, trials: int = 100, seed: int = 0):
    """Best of ``trials`` sampled matchings; deterministic given ``seed``.

    Trial ``t`` draws from the ``t``-th child of ``SeedSequence(seed)``, so the
    first ``t`` trials are the same whatever the total.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    start = time.perf_counter()
    lay = layers(p, q, regular=False)
    overlaps = overlap_matrices(p, q, lay)
    base = [-1] * len(p)
    for i, j in lay.forced.items():
        base[i] = j
    best, best_w = None, -1
    for child in np.random.SeedSequence(seed).spawn(trials):
        rng = np.random.Generator(np.random.PCG64(child))
        image = list(base)
        _one_trial(rng, lay, overlaps, image)
        w = count_well_matched(p, q, image)
        if w > best_w:
            best, best_w = image, w
    m = PedigreeMatching(p, q, best)
    return make_report(m, "random", {"trials": trials, "seed": seed}, time.perf_counter() - start)
