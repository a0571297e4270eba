"""Small random pedigrees and exhaustive oracles shared by the tests."""

from __future__ import annotations

import itertools

import numpy as np

from pedcmp.distance import count_well_matched
from pedcmp.pedigree import Gender, Pedigree, validate


def random_pedigree(rng: np.random.Generator, n: int, label_prob: float = 0.0,
                    label_pool: int | None = None, founder_prob: float = 0.4) -> Pedigree:
    """Individuals are added one at a time; each is a founder or the child of
    an earlier male and an earlier female."""
    inds, arcs = [], []
    males, females = [], []
    pool = list(range(1, (label_pool or n) + 1))
    rng.shuffle(pool)
    for k in range(n):
        gender = Gender.MALE if rng.random() < 0.5 else Gender.FEMALE
        label = pool.pop() if pool and rng.random() < label_prob else None
        ident = f"i{k}"
        inds.append((ident, gender, label))
        if males and females and rng.random() >= founder_prob:
            arcs.append((males[int(rng.integers(len(males)))], ident))
            arcs.append((females[int(rng.integers(len(females)))], ident))
        (males if gender is Gender.MALE else females).append(ident)
    return validate(inds, arcs)


def relabel(p: Pedigree, rng: np.random.Generator, prefix: str = "x") -> Pedigree:
    """Same pedigree with shuffled record order and fresh ids."""
    order = rng.permutation(len(p))
    names = {p.ids[i]: f"{prefix}{r}" for r, i in enumerate(order)}
    inds = [(names[p.ids[i]], p.genders[i], p.labels[i]) for i in order]
    arcs = [(names[a], names[b]) for a, b in p.edges()]
    rng.shuffle(arcs)
    return validate(inds, arcs)


def exhaustive_distance(p: Pedigree, q: Pedigree) -> int:
    """Minimum match distance over every gender- and label-respecting
    injective partial map.  Exponential; keep inputs tiny."""
    n = len(p)
    shared = {}
    for label, i in p.label_map().items():
        j = q.by_label(label)
        if j is not None:
            shared[i] = j
    taken = set(shared.values())
    options = []
    for i in range(n):
        if i in shared:
            options.append([shared[i]])
        else:
            options.append([-1] + [j for j in range(len(q))
                                   if q.genders[j] == p.genders[i] and j not in taken])
    best = -1
    for image in itertools.product(*options):
        used = [j for j in image if j >= 0]
        if len(used) != len(set(used)):
            continue
        best = max(best, count_well_matched(p, q, image))
    return p.num_edges + q.num_edges - 2 * best


def generation_preserving_distance(p: Pedigree, q: Pedigree) -> int:
    """Minimum over complete matchings that keep generations, by brute force.

    Both pedigrees must be regular and compatibly leaf-labeled."""
    from pedcmp.dp import layers

    lay = layers(p, q, regular=True)
    keys = sorted(lay.free_p)
    base = [-1] * len(p)
    for i, j in lay.forced.items():
        base[i] = j
    best = -1
    for choice in itertools.product(*(itertools.permutations(lay.free_q[k]) for k in keys)):
        image = list(base)
        for k, targets in zip(keys, choice):
            for u, v in zip(lay.free_p[k], targets):
                image[u] = v
        best = max(best, count_well_matched(p, q, image))
    return p.num_edges + q.num_edges - 2 * best


def step_costs(p: Pedigree, q: Pedigree, image) -> dict:
    """Unmatched edges between generations i and i+1, per i, for a matching."""
    from pedcmp.pedigree import generations

    gp, gq = generations(p), generations(q)
    inv = {j: i for i, j in enumerate(image) if j >= 0}
    cost = {}
    for a, b in p.edge_index_pairs():
        ia, ib = image[a], image[b]
        if not (ia >= 0 and ib >= 0 and q.has_edge(ia, ib)):
            cost[gp[a]] = cost.get(gp[a], 0) + 1
    for a, b in q.edge_index_pairs():
        pa, pb = inv.get(a, -1), inv.get(b, -1)
        if not (pa >= 0 and pb >= 0 and p.has_edge(pa, pb)):
            cost[gq[a]] = cost.get(gq[a], 0) + 1
    return cost


def generation_preserving(p: Pedigree, q: Pedigree, image) -> bool:
    from pedcmp.pedigree import generations

    gp, gq = generations(p), generations(q)
    return all(j >= 0 and gp[i] == gq[j] for i, j in enumerate(image))
