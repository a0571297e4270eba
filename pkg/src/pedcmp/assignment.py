"""Maximum-weight perfect assignment and ranking of the k best assignments.

Weights are non-negative integers.  Ties are broken towards the
lexicographically smallest permutation.  This is done exactly by folding a
mixed-radix tie-break term into every entry, so that each permutation gets a
distinct integer score and the optimum is unique.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class Assignment:
    permutation: tuple  # row index -> column index
    total_weight: int


def _as_matrix(w) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in w]
    m = len(rows)
    for row in rows:
        if len(row) != m:
            raise ValueError("weight matrix must be square")
        if any(x < 0 for x in row):
            raise ValueError("weights must be non-negative")
    return rows


def _scores(w: list[list[int]]) -> list[list[int]]:
    # score(P) = weight(P) * base**m + sum_i (m-1-P[i]) * base**(m-1-i)
    m = len(w)
    base = max(m, 2)
    scale = base ** m
    digit = [base ** (m - 1 - i) for i in range(m)]
    return [[w[i][j] * scale + (m - 1 - j) * digit[i] for j in range(m)] for i in range(m)]


def _hungarian(cost: list[list[int]]) -> list[int]:
    """Minimum-cost perfect assignment of a square integer matrix (O(n^3))."""
    n = len(cost)
    inf = float("inf")
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = cost[i0 - 1]
            ui0 = u[i0]
            delta = inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    perm = [0] * n
    for j in range(1, n + 1):
        if p[j]:
            perm[p[j] - 1] = j - 1
    return perm


def _best_with(score, forced: dict, excluded: frozenset):
    """Best permutation honouring forced cells and avoiding excluded ones."""
    m = len(score)
    rows = [r for r in range(m) if r not in forced]
    taken = set(forced.values())
    cols = [c for c in range(m) if c not in taken]
    perm = [None] * m
    for r, c in forced.items():
        perm[r] = c
    if rows:
        top = max(abs(x) for row in score for x in row) + 1
        forbid = 2 * (m + 1) * top
        sub = [[forbid if (r, c) in excluded else -score[r][c] for c in cols] for r in rows]
        sol = _hungarian(sub)
        for a, b in enumerate(sol):
            if sub[a][b] == forbid:
                return None
            perm[rows[a]] = cols[b]
    return tuple(perm)


def max_weight_assignment(w) -> Assignment:
    """Maximum-weight perfect assignment; lexicographically smallest on ties."""
    w = _as_matrix(w)
    if not w:
        return Assignment((), 0)
    perm = _best_with(_scores(w), {}, frozenset())
    return Assignment(perm, sum(w[i][perm[i]] for i in range(len(w))))


def k_best_assignments(w, gamma: int) -> list[Assignment]:
    """The ``gamma`` best distinct permutations, by weight then lexicographic order.

    Murty's partitioning: each popped solution splits its subproblem into
    disjoint children that fix a prefix of its free rows and forbid the next
    row's current column.
    """
    if gamma < 1:
        raise ValueError("gamma must be positive")
    w = _as_matrix(w)
    m = len(w)
    if m == 0:
        return [Assignment((), 0)]
    score = _scores(w)

    def total(perm):
        return sum(score[i][perm[i]] for i in range(m))

    first = _best_with(score, {}, frozenset())
    counter = itertools.count()
    heap = [(-total(first), next(counter), first, {}, frozenset())]
    out = []
    while heap and len(out) < gamma:
        _, _, perm, forced, excluded = heapq.heappop(heap)
        out.append(Assignment(perm, sum(w[i][perm[i]] for i in range(m))))
        fixed = dict(forced)
        for r in range(m):
            if r in forced:
                continue
            ex = excluded | {(r, perm[r])}
            sol = _best_with(score, fixed, ex)
            if sol is not None:
                heapq.heappush(heap, (-total(sol), next(counter), sol, dict(fixed), ex))
            fixed[r] = perm[r]
    return out
