"""Wright-Fisher pedigree simulation and parent-reassignment perturbations.

All randomness comes from numpy's PCG64 bit generator seeded with the integer
seed in the config, so a seed fully determines the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleConfig, PreconditionViolated
from .pedigree import Gender, Pedigree, generations, is_monogamous


@dataclass(frozen=True)
class WrightFisherConfig:
    generations: int
    size: int  # individuals per generation (2m)
    mean_offspring: float = 3.0
    seed: int = 0

    def check(self):
        if self.generations < 2:
            raise InfeasibleConfig("need at least two generations")
        if self.size < 2 or self.size % 2:
            raise InfeasibleConfig("generation size must be a positive even number")
        if not self.mean_offspring > 0:
            raise InfeasibleConfig("mean offspring count must be positive")


@dataclass(frozen=True)
class PerturbConfig:
    fraction: float
    preserve_monogamy: bool = False
    seed: int = 0


@dataclass
class PerturbLog:
    changes: list = field(default_factory=list)  # (child, gender, old parent, new parent)
    skipped: list = field(default_factory=list)  # children with no valid reassignment


def rng_for(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _fill_counts(rng, couples: int, size: int, lam: float) -> np.ndarray:
    counts = rng.poisson(lam, couples)
    total = int(counts.sum())
    while total < size:
        counts[rng.integers(couples)] += 1
        total += 1
    while total > size:
        nonzero = np.flatnonzero(counts)
        counts[nonzero[rng.integers(len(nonzero))]] -= 1
        total -= 1
    return counts


def wright_fisher(config: WrightFisherConfig) -> Pedigree:
    """Simulate ``generations`` generations of ``size`` individuals each.

    Each generation is split into ``size/2`` random monogamous couples whose
    offspring counts are Poisson draws, topped up or trimmed one child at a
    time until they fill the next generation exactly; children get a random
    half/half gender assignment.  Leaves are labelled 1, 2, ... in record
    order.
    """
    config.check()
    rng = rng_for(config.seed)
    m = config.size // 2
    ids, genders, father, mother = [], [], [], []
    width = len(str(config.size))

    def add(gen, k, gender, fa, mo):
        ids.append(f"g{gen}_{k:0{width}d}")
        genders.append(gender)
        father.append(fa)
        mother.append(mo)

    current = []
    sexes = rng.permutation([Gender.MALE] * m + [Gender.FEMALE] * m)
    for k, g in enumerate(sexes, 1):
        current.append(len(ids))
        add(1, k, Gender(int(g)), -1, -1)

    for gen in range(2, config.generations + 1):
        males = [i for i in current if genders[i] is Gender.MALE]
        females = [i for i in current if genders[i] is Gender.FEMALE]
        males = [males[i] for i in rng.permutation(m)]
        females = [females[i] for i in rng.permutation(m)]
        counts = _fill_counts(rng, m, config.size, config.mean_offspring)
        sexes = rng.permutation([Gender.MALE] * m + [Gender.FEMALE] * m)
        nxt, k = [], 0
        for c in range(m):
            for _ in range(int(counts[c])):
                nxt.append(len(ids))
                add(gen, k + 1, Gender(int(sexes[k])), males[c], females[c])
                k += 1
        current = nxt

    has_child = [False] * len(ids)
    for fa in father:
        if fa >= 0:
            has_child[fa] = True
    for mo in mother:
        if mo >= 0:
            has_child[mo] = True
    labels, nxt_label = [], 1
    for i in range(len(ids)):
        if has_child[i]:
            labels.append(None)
        else:
            labels.append(nxt_label)
            nxt_label += 1
    return Pedigree(ids, genders, labels, father, mother)


def perturb(p: Pedigree, config: PerturbConfig) -> Pedigree:
    return perturb_with_log(p, config)[0]


def perturb_with_log(p: Pedigree, config: PerturbConfig) -> tuple[Pedigree, PerturbLog]:
    """Reassign one parent for ``ceil(fraction * #non-founders)`` non-founders.

    The replacement parent has the replaced parent's gender and generation,
    differs from it and already has children; a parent is never left
    childless.  This keeps the leaf set, and therefore the labelling, intact.

    With ``preserve_monogamy`` the replaced parent instead swaps couples with
    the chosen replacement: every child of the two couples moves with the
    swap, so all individuals stay monogamous.
    """
    if not 0.0 <= config.fraction <= 1.0:
        raise PreconditionViolated("perturbation fraction must lie in [0, 1]")
    gen = generations(p)
    if config.preserve_monogamy and not is_monogamous(p):
        raise PreconditionViolated("monogamy-preserving perturbation needs a monogamous pedigree")
    rng = rng_for(config.seed)
    father, mother = list(p.father), list(p.mother)
    kids = [set(c) for c in p.children]
    log = PerturbLog()

    nonfounders = [i for i in range(len(p)) if p.father[i] >= 0]
    count = min(len(nonfounders), math.ceil(config.fraction * len(nonfounders) - 1e-9))
    if count <= 0:
        return p, log
    chosen = [nonfounders[i] for i in rng.choice(len(nonfounders), size=count, replace=False)]

    pool = {}
    for i in range(len(p)):
        pool.setdefault((gen[i], p.genders[i]), []).append(i)

    def parent_array(g):
        return father if g is Gender.MALE else mother

    for child in chosen:
        first = Gender.MALE if rng.integers(2) == 0 else Gender.FEMALE
        done = False
        for g in (first, first.opposite):
            arr = parent_array(g)
            old = arr[child]
            options = [x for x in pool[(gen[old], g)] if x != old and kids[x]]
            if config.preserve_monogamy:
                other = mother if g is Gender.MALE else father
                options = [x for x in options
                           if other[next(iter(kids[x]))] != other[child]]
            elif len(kids[old]) < 2:
                options = []
            if not options:
                continue
            new = options[int(rng.integers(len(options)))]
            if config.preserve_monogamy:
                mine = sorted(kids[old])
                theirs = sorted(kids[new])
                for c in mine:
                    arr[c] = new
                for c in theirs:
                    arr[c] = old
                kids[old], kids[new] = set(theirs), set(mine)
            else:
                arr[child] = new
                kids[old].discard(child)
                kids[new].add(child)
            log.changes.append((p.ids[child], g, p.ids[old], p.ids[new]))
            done = True
            break
        if not done:
            log.skipped.append(p.ids[child])
    return Pedigree(p.ids, p.genders, p.labels, father, mother), log
