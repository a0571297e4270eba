"""Generation-by-generation solvers for compatibly leaf-labeled pedigrees.

For generational pedigrees every edge joins consecutive generations, so the
match distance of a generation-preserving matching is a sum of per-step
costs ``d_{i,i+1}``.  With the matching of generation ``i+1`` fixed, that
cost splits further into one term per generation-``i`` pair ``u -> v``::

    children(u) + children(v) - 2 * #{c in children(u): image(c) is a child of v}

which is what the assignment solvers below optimise or enumerate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .assignment import k_best_assignments, max_weight_assignment
from .distance import PedigreeMatching, count_well_matched, make_report
from .errors import NoMatchingWithinBound, NotGenerational, PreconditionViolated
from .pedigree import Gender, Pedigree, compatibly_leaf_labeled, generations

GENDERS = (Gender.FEMALE, Gender.MALE)


@lru_cache(maxsize=None)
def recurrence_T(n: int, c: int) -> int:
    """Budget recurrence ``T(n,c) = T(n-1,c) + (n-1) T(n-1,c-2)``."""
    if n < 1 or c < 0:
        raise ValueError("need n >= 1 and c >= 0")
    if n == 1 or c <= 1:
        return 1
    return recurrence_T(n - 1, c) + (n - 1) * recurrence_T(n - 1, c - 2)


@dataclass
class Layers:
    p: Pedigree
    q: Pedigree
    gen_p: list
    gen_q: list
    depth: int
    forced: dict  # source index -> target index
    free_p: dict  # (generation, gender) -> sorted source indices
    free_q: dict

    def rows(self, gen, gender):
        return self.free_p.get((gen, gender), [])

    def cols(self, gen, gender):
        return self.free_q.get((gen, gender), [])

    def size(self, gen, gender):
        return sum(1 for g, s in zip(self.gen_p, self.p.genders) if g == gen and s == gender)


def layers(p: Pedigree, q: Pedigree, regular: bool = True) -> Layers:
    if not compatibly_leaf_labeled(p, q):
        raise PreconditionViolated("compatibly leaf-labeled")
    try:
        gp, gq = generations(p), generations(q)
    except NotGenerational:
        raise PreconditionViolated("generational") from None
    depth_p, depth_q = max(gp, default=0), max(gq, default=0)
    if depth_p != depth_q:
        raise PreconditionViolated("equal number of generations")
    forced = {}
    for label, i in p.label_map().items():
        j = q.by_label(label)
        forced[i] = j
        if regular and gp[i] != gq[j]:
            raise PreconditionViolated(f"label {label} lies in different generations")
    free_p, free_q = {}, {}
    for i in range(len(p)):
        if i not in forced:
            free_p.setdefault((gp[i], p.genders[i]), []).append(i)
    targets = set(forced.values())
    for j in range(len(q)):
        if j not in targets:
            free_q.setdefault((gq[j], q.genders[j]), []).append(j)
    if regular:
        for key in set(free_p) | set(free_q):
            if len(free_p.get(key, ())) != len(free_q.get(key, ())):
                raise PreconditionViolated(f"regular generations (generation {key[0]} differs)")
    return Layers(p, q, gp, gq, depth_p, forced, free_p, free_q)


def _agreement(lay: Layers, gen: int, gender: Gender, image) -> list[list[int]]:
    """Children of row u mapped under ``image`` onto children of column v."""
    p, q = lay.p, lay.q
    rows, cols = lay.rows(gen, gender), lay.cols(gen, gender)
    col_pos = {v: j for j, v in enumerate(cols)}
    n = max(len(rows), len(cols))
    w = [[0] * n for _ in range(n)]
    for r, u in enumerate(rows):
        for ch in p.children[u]:
            v = q.parent_of_gender(image(ch), gender)
            j = col_pos.get(v)
            if j is not None:
                w[r][j] += 1
    return w


def _costs(lay: Layers, gen: int, gender: Gender, agree) -> list[list[int]]:
    p, q = lay.p, lay.q
    rows, cols = lay.rows(gen, gender), lay.cols(gen, gender)
    kp = [len(p.children[u]) for u in rows]
    kq = [len(q.children[v]) for v in cols]
    return [[kp[r] + kq[c] - 2 * agree[r][c] for c in range(len(cols))] for r in range(len(rows))]


def _finish(lay: Layers, tables, root_key, algorithm, params, start):
    """Walk the back-pointers from the oldest generation to a full image."""
    image = [-1] * len(lay.p)
    for i, j in lay.forced.items():
        image[i] = j
    key = root_key
    for gen in range(1, lay.depth + 1):
        for gender, targets in zip(GENDERS, key):
            rows = lay.rows(gen, gender)
            for u, v in zip(rows, targets):
                if v >= 0:
                    image[u] = v
        key = tables[gen][key][1]
    m = PedigreeMatching(lay.p, lay.q, image)
    return make_report(m, algorithm, params, time.perf_counter() - start)


def two_generation_exact(p: Pedigree, q: Pedigree):
    """Exact distance for two-generation pedigrees via two assignment problems.

    Generation-2 individuals are leaves and matched by label; each gender of
    generation 1 is then a maximum-weight assignment whose weights count
    children matched onto children.
    """
    start = time.perf_counter()
    lay = layers(p, q, regular=False)
    if lay.depth != 2:
        raise PreconditionViolated("exactly two generations")
    image = [-1] * len(p)
    for i, j in lay.forced.items():
        image[i] = j
    total = 0
    for gender in GENDERS:
        rows, cols = lay.rows(1, gender), lay.cols(1, gender)
        if lay.rows(2, gender) or lay.cols(2, gender):
            raise PreconditionViolated("generation 2 must consist of labeled leaves")
        w = _agreement(lay, 1, gender, image.__getitem__)
        best = max_weight_assignment(w)
        total += best.total_weight
        for r, c in enumerate(best.permutation):
            if r < len(rows) and c < len(cols):
                image[rows[r]] = cols[c]
    m = PedigreeMatching(p, q, image)
    forced_w = count_well_matched(p, q, [image[i] if i in lay.forced else -1 for i in range(len(p))])
    assert count_well_matched(p, q, image) == forced_w + total
    return make_report(m, "two-gen", {}, time.perf_counter() - start)


def _enumerate(cost: list[list[int]], limit: int):
    """All permutations with total cost <= limit, in depth-first order.

    Rows are assigned in index order; at each row the free columns are tried
    by increasing cost, then index.  A partial assignment is abandoned as
    soon as its cost plus the cheapest conceivable completion exceeds the
    limit.
    """
    n = len(cost)
    if n == 0:
        return [(0, ())] if limit >= 0 else []
    order = [sorted(range(n), key=lambda c, r=r: (cost[r][c], c)) for r in range(n)]
    rowmin = [min(row) for row in cost]
    tail = [0] * (n + 1)
    for r in range(n - 1, -1, -1):
        tail[r] = tail[r + 1] + rowmin[r]
    out = []
    perm = [0] * n
    used = [False] * n

    def rec(r, acc):
        if r == n:
            out.append((acc, tuple(perm)))
            return
        for c in order[r]:
            if used[c]:
                continue
            nxt = acc + cost[r][c]
            if nxt + tail[r + 1] > limit:
                break
            used[c] = True
            perm[r] = c
            rec(r + 1, nxt)
            used[c] = False

    rec(0, 0)
    return out


def _min_cost(cost) -> tuple[int, tuple]:
    if not cost:
        return 0, ()
    big = max(max(row) for row in cost)
    best = max_weight_assignment([[big - x for x in row] for row in cost])
    perm = best.permutation
    return sum(cost[r][perm[r]] for r in range(len(cost))), perm


def _image_for(lay: Layers, gen: int, key):
    mapping = dict(lay.forced)
    for gender, targets in zip(GENDERS, key):
        for u, v in zip(lay.rows(gen, gender), targets):
            mapping[u] = v
    return mapping.__getitem__


def dp_bounded(p: Pedigree, q: Pedigree, k: int, stats: list | None = None):
    """Bounded dynamic programme over generation-preserving matchings.

    Tables are filled from the youngest generation up.  For every fixed
    matching of generation ``i+1`` only the generation-``i`` matchings whose
    step cost is below ``k`` are enumerated.  If ``stats`` is a list, one
    record per (generation, fixed matching) step is appended with the number
    of matchings enumerated and the ``T(m,k)^2`` budget.
    """
    if k < 1:
        raise ValueError("k must be positive")
    start = time.perf_counter()
    lay = layers(p, q, regular=True)
    g = lay.depth
    tables = {g: {((), ()): (0, None)}}
    for gender in GENDERS:
        if lay.rows(g, gender):
            raise PreconditionViolated("the youngest generation must consist of labeled leaves")
    for gen in range(g - 1, 0, -1):
        table = {}
        sizes = [len(lay.rows(gen, s)) for s in GENDERS]
        m = max(lay.size(gen, s) for s in GENDERS)
        root = gen == 1 and stats is None
        for key, (below, _) in tables[gen + 1].items():
            image = _image_for(lay, gen + 1, key)
            costs = [_costs(lay, gen, s, _agreement(lay, gen, s, image)) for s in GENDERS]
            mins = [_min_cost(c) for c in costs]
            if mins[0][0] + mins[1][0] >= k:
                if stats is not None:
                    stats.append({"generation": gen, "count": 0, "bound": recurrence_T(max(m, 1), k) ** 2, "m": m})
                continue
            if root:
                total = below + mins[0][0] + mins[1][0]
                new = tuple(tuple(lay.cols(gen, s)[c] for c in mn[1]) for s, mn in zip(GENDERS, mins))
                if new not in table or total < table[new][0]:
                    table[new] = (total, key)
                continue
            lists = []
            for idx, s in enumerate(GENDERS):
                limit = k - 1 - mins[1 - idx][0]
                lists.append(_enumerate(costs[idx], limit))
            count = 0
            cols_f, cols_m = lay.cols(gen, GENDERS[0]), lay.cols(gen, GENDERS[1])
            for cf, pf in lists[0]:
                tf = tuple(cols_f[c] for c in pf[:sizes[0]])
                for cm, pm in lists[1]:
                    if cf + cm >= k:
                        continue
                    count += 1
                    new = (tf, tuple(cols_m[c] for c in pm[:sizes[1]]))
                    total = below + cf + cm
                    if new not in table or total < table[new][0]:
                        table[new] = (total, key)
            if stats is not None:
                stats.append({"generation": gen, "count": count,
                              "bound": recurrence_T(max(m, 1), k) ** 2, "m": m,
                              "per_gender": [len(x) for x in lists]})
        if not table:
            raise NoMatchingWithinBound(gen, k)
        tables[gen] = table
    best = min(tables[1].items(), key=lambda kv: kv[1][0]) if g > 1 else (((), ()), (0, None))
    if g <= 1:
        tables[1] = {((), ()): (0, None)}
    rep = _finish(lay, tables, best[0], "dp", {"k": k}, start)
    assert rep.distance == best[1][0] + _forced_only_distance(lay, rep)
    return rep


def _forced_only_distance(lay: Layers, rep) -> int:
    # edges never joining consecutive generations do not exist; nothing to add
    return 0


def _gamma_best(costs, gamma, base_costs):
    """The gamma cheapest (female, male) assignment pairs."""
    ranked = []
    for cost in costs:
        if not cost:
            ranked.append([(0, ())])
            continue
        top = max(max(row) for row in cost)
        ranked.append([(sum(cost[r][a.permutation[r]] for r in range(len(cost))), a.permutation)
                       for a in k_best_assignments([[top - x for x in row] for row in cost], gamma)])
    pairs = sorted(((cf + cm, i, j) for i, (cf, _) in enumerate(ranked[0])
                    for j, (cm, _) in enumerate(ranked[1])))
    return [(c, ranked[0][i][1], ranked[1][j][1]) for c, i, j in pairs[:gamma]]


def dp_gamma_heuristic(p: Pedigree, q: Pedigree, gamma: int):
    """Upper bound from the gamma best assignments at each step."""
    if gamma < 1:
        raise ValueError("gamma must be positive")
    start = time.perf_counter()
    lay = layers(p, q, regular=True)
    g = lay.depth
    for gender in GENDERS:
        if lay.rows(g, gender):
            raise PreconditionViolated("the youngest generation must consist of labeled leaves")
    tables = {g: {((), ()): (0, None)}}
    for gen in range(g - 1, 0, -1):
        table = {}
        cols = [lay.cols(gen, s) for s in GENDERS]
        for key, (below, _) in tables[gen + 1].items():
            image = _image_for(lay, gen + 1, key)
            costs = [_costs(lay, gen, s, _agreement(lay, gen, s, image)) for s in GENDERS]
            for c, pf, pm in _gamma_best(costs, gamma, None):
                new = (tuple(cols[0][x] for x in pf), tuple(cols[1][x] for x in pm))
                total = below + c
                if new not in table or total < table[new][0]:
                    table[new] = (total, key)
        tables[gen] = table
    if g <= 1:
        tables[1] = {((), ()): (0, None)}
    root_key = min(tables[1].items(), key=lambda kv: kv[1][0])[0]
    return _finish(lay, tables, root_key, "dp-gamma", {"gamma": gamma}, start)
