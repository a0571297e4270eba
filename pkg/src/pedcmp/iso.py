"""Pedigree isomorphism.

``leaf_labeled_isomorphic`` is the linear-time test for compatibly
leaf-labeled pedigrees: both pedigrees are put in gender topological order
and the only candidate bijection pairs the orders position by position.
``brute_force_isomorphic`` is an exhaustive backtracking search used as an
oracle.
"""

from __future__ import annotations

from collections import Counter

from .distance import PedigreeMatching
from .errors import NotCompatiblyLeafLabeled, NotLeafLabeled, TooLarge
from .pedigree import Pedigree, compatibly_leaf_labeled


def _gender_topo(p: Pedigree) -> list[int]:
    if not p.is_leaf_labeled():
        raise NotLeafLabeled("every leaf, and only the leaves, must carry a label")
    leaves = sorted(p.leaf_indices(), key=lambda i: p.labels[i])
    father, mother = p.father, p.mother
    done = [False] * len(p)
    order = []
    for leaf in leaves:
        # ~u on the stack means "emit u": both parents are finished by then
        stack = [leaf]
        while stack:
            u = stack.pop()
            if u < 0:
                order.append(~u)
            elif not done[u]:
                done[u] = True
                if father[u] < 0:
                    order.append(u)
                else:
                    stack += (~u, father[u], mother[u])
    return order


def gender_topological_order(p: Pedigree) -> list[str]:
    """Post-order DFS towards the ancestors of each leaf, mother before father.

    Leaves are processed by increasing label; individuals already emitted are
    skipped.
    """
    return [p.ids[i] for i in _gender_topo(p)]


def leaf_labeled_isomorphic(p: Pedigree, q: Pedigree) -> PedigreeMatching | None:
    if not compatibly_leaf_labeled(p, q):
        raise NotCompatiblyLeafLabeled("inputs must be compatibly leaf-labeled")
    if len(p) != len(q) or p.num_edges != q.num_edges:
        return None
    op, oq = _gender_topo(p), _gender_topo(q)
    phi = [0] * len(p)
    for a, b in zip(op, oq):
        phi[a] = b
    for v in range(len(p)):
        w = phi[v]
        if p.genders[v] != q.genders[w] or p.labels[v] != q.labels[w]:
            return None
        fa = p.father[v]
        if fa < 0:
            if q.father[w] >= 0:
                return None
        elif q.father[w] != phi[fa] or q.mother[w] != phi[p.mother[v]]:
            return None
    return PedigreeMatching(p, q, phi, check=False)


def _refine(p: Pedigree, q: Pedigree, shared) -> tuple[list, list]:
    """Colour refinement run jointly on both pedigrees."""

    def base(ped):
        return [(int(ped.genders[i]), ped.labels[i] if ped.labels[i] in shared else 0)
                for i in range(len(ped))]

    cp, cq = base(p), base(q)
    for _ in range(len(p) + len(q) + 1):
        def sig(ped, col):
            out = []
            for i in range(len(ped)):
                fa = ped.father[i]
                par = (col[fa], col[ped.mother[i]]) if fa >= 0 else ()
                kids = tuple(sorted(col[c] for c in ped.children[i]))
                out.append((col[i], par, kids))
            return out

        sp, sq = sig(p, cp), sig(q, cq)
        palette = {s: n for n, s in enumerate(sorted(set(sp) | set(sq)))}
        np_, nq_ = [palette[s] for s in sp], [palette[s] for s in sq]
        stable = len(set(np_) | set(nq_)) == len(set(cp) | set(cq))
        cp, cq = np_, nq_
        if stable:
            break
    return cp, cq


def brute_force_isomorphic(p: Pedigree, q: Pedigree, cap: int | None = 14) -> PedigreeMatching | None:
    """Exhaustive search for a pedigree isomorphism.

    Candidates are pruned by gender, shared labels, colour refinement and
    consistency with the already-mapped neighbours.  ``cap`` bounds the
    number of individuals (``None`` disables the check).
    """
    if cap is not None and max(len(p), len(q)) > cap:
        raise TooLarge(f"brute-force isomorphism is capped at {cap} individuals")
    if len(p) != len(q) or p.num_edges != q.num_edges:
        return None
    shared = set(p.label_map()) & set(q.label_map())
    cp, cq = _refine(p, q, shared)
    if Counter(cp) != Counter(cq):
        return None
    n = len(p)
    by_colour = {}
    for j in range(n):
        by_colour.setdefault(cq[j], []).append(j)

    order, placed = [], [False] * n
    links = [0] * n
    for _ in range(n):
        best = max((i for i in range(n) if not placed[i]),
                   key=lambda i: (links[i], -len(by_colour[cp[i]]), -i))
        placed[best] = True
        order.append(best)
        for v in (*p.parents(best), *p.children[best]):
            links[v] += 1

    img = [-1] * n
    used = [False] * n

    def candidates(v):
        g = p.genders[v]
        for c in p.children[v]:
            if img[c] >= 0:
                par = q.parent_of_gender(img[c], g)
                return [par] if par >= 0 else []
        fa = p.father[v]
        if fa >= 0:
            if img[fa] >= 0:
                return [c for c in q.children[img[fa]] if q.father[c] == img[fa]]
            if img[p.mother[v]] >= 0:
                return [c for c in q.children[img[p.mother[v]]] if q.mother[c] == img[p.mother[v]]]
        return by_colour[cp[v]]

    def consistent(v, w):
        if used[w] or cq[w] != cp[v]:
            return False
        fa, mo = p.father[v], p.mother[v]
        if fa >= 0:
            if img[fa] >= 0 and q.father[w] != img[fa]:
                return False
            if img[mo] >= 0 and q.mother[w] != img[mo]:
                return False
        g = p.genders[v]
        for c in p.children[v]:
            if img[c] >= 0 and q.parent_of_gender(img[c], g) != w:
                return False
        return True

    def search(pos):
        if pos == n:
            return True
        v = order[pos]
        for w in candidates(v):
            if consistent(v, w):
                img[v] = w
                used[w] = True
                if search(pos + 1):
                    return True
                img[v] = -1
                used[w] = False
        return False

    if search(0):
        return PedigreeMatching(p, q, img, check=False)
    return None
