"""Pedigree data model, validation and structural queries.

A pedigree is a DAG of gendered individuals in which every individual has
either no parents or exactly two parents of opposite genders.  Individuals are
addressed by string ids externally and by dense integer indices internally.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    BadInDegree,
    CycleDetected,
    DanglingEdge,
    DuplicateEdge,
    DuplicateIndividual,
    DuplicateLabel,
    InvalidSubset,
    NotGenerational,
    PedigreeError,
    SameGenderParents,
)


class Gender(enum.IntEnum):
    MALE = 1
    FEMALE = 2

    @property
    def opposite(self) -> "Gender":
        return Gender.FEMALE if self is Gender.MALE else Gender.MALE

    @classmethod
    def coerce(cls, value) -> "Gender":
        if isinstance(value, Gender):
            return value
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("m", "male", "1"):
                return cls.MALE
            if key in ("f", "female", "2"):
                return cls.FEMALE
            raise PedigreeError(f"unknown gender {value!r}")
        return cls(int(value))


@dataclass(frozen=True)
class Individual:
    id: str
    gender: Gender
    label: int | None = None


@dataclass(frozen=True)
class DescendantSplit:
    root: str
    descendants: frozenset


class Pedigree:
    """An immutable, validated pedigree.

    Build one with :func:`validate` (or :meth:`Pedigree.from_records`); the
    constructor itself trusts its arguments.
    """

    __slots__ = ("ids", "genders", "labels", "father", "mother", "children",
                 "_index", "_by_label", "_num_edges")

    def __init__(self, ids, genders, labels, father, mother):
        self.ids = tuple(ids)
        self.genders = tuple(genders)
        self.labels = tuple(labels)
        self.father = tuple(father)
        self.mother = tuple(mother)
        kids = [[] for _ in self.ids]
        for c in range(len(self.ids)):
            if self.father[c] >= 0:
                kids[self.father[c]].append(c)
                kids[self.mother[c]].append(c)
        self.children = tuple(tuple(k) for k in kids)
        self._index = {x: i for i, x in enumerate(self.ids)}
        self._by_label = {lab: i for i, lab in enumerate(self.labels) if lab is not None}
        self._num_edges = 2 * sum(1 for f in self.father if f >= 0)

    # construction helpers

    @classmethod
    def from_records(cls, records) -> "Pedigree":
        """Build from ``(id, father, mother, gender, label)`` tuples.

        ``None`` (or ``"0"``/``0``) means no parent / no label.
        """
        individuals, edges = [], []
        for ident, fa, mo, gender, label in records:
            ident = str(ident)
            label = None if label in (None, 0, "0") else int(label)
            individuals.append((ident, gender, label))
            for par in (fa, mo):
                if par not in (None, 0, "0"):
                    edges.append((str(par), ident))
        return validate(individuals, edges)

    def to_records(self):
        out = []
        for i, ident in enumerate(self.ids):
            fa = self.ids[self.father[i]] if self.father[i] >= 0 else None
            mo = self.ids[self.mother[i]] if self.mother[i] >= 0 else None
            out.append((ident, fa, mo, self.genders[i], self.labels[i]))
        return out

    # basic queries

    def __len__(self):
        return len(self.ids)

    def __repr__(self):
        return f"Pedigree(n={len(self)}, edges={self._num_edges})"

    def index(self, ident: str) -> int:
        return self._index[ident]

    def __contains__(self, ident) -> bool:
        return ident in self._index

    def individual(self, i: int) -> Individual:
        return Individual(self.ids[i], self.genders[i], self.labels[i])

    def individuals(self) -> list[Individual]:
        return [self.individual(i) for i in range(len(self))]

    @property
    def num_edges(self) -> int:
        return self._num_edges

    def edge_index_pairs(self):
        """Yield ``(parent, child)`` index pairs, father edge first."""
        for c in range(len(self.ids)):
            if self.father[c] >= 0:
                yield self.father[c], c
                yield self.mother[c], c

    def edges(self) -> frozenset:
        return frozenset((self.ids[a], self.ids[b]) for a, b in self.edge_index_pairs())

    def has_edge(self, parent: int, child: int) -> bool:
        return self.father[child] == parent or self.mother[child] == parent

    def parents(self, i: int) -> tuple:
        if self.father[i] < 0:
            return ()
        return (self.father[i], self.mother[i])

    def parent_of_gender(self, i: int, gender: Gender) -> int:
        return self.father[i] if gender is Gender.MALE else self.mother[i]

    def is_founder(self, i: int) -> bool:
        return self.father[i] < 0

    def by_label(self, label: int) -> int | None:
        return self._by_label.get(label)

    def label_map(self) -> dict:
        """label -> index for every labeled individual."""
        return dict(self._by_label)

    def leaf_indices(self) -> list[int]:
        return [i for i in range(len(self)) if not self.children[i]]

    def is_leaf_labeled(self) -> bool:
        return all((self.labels[i] is not None) == (not self.children[i]) for i in range(len(self)))

    # structural equality, independent of record order

    def _key(self):
        return (frozenset(self.individuals()), self.edges())

    def __eq__(self, other):
        if not isinstance(other, Pedigree):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


def validate(individuals: Iterable, edges: Iterable) -> Pedigree:
    """Check a raw description and return a :class:`Pedigree`.

    ``individuals`` holds :class:`Individual` objects or ``(id, gender,
    label)`` tuples; ``edges`` holds ``(parent_id, child_id)`` pairs.  The
    first violated condition is raised as a :class:`PedigreeError` subclass.
    """
    ids, genders, labels = [], [], []
    index = {}
    for rec in individuals:
        if isinstance(rec, Individual):
            ident, gender, label = rec.id, rec.gender, rec.label
        else:
            ident, gender, label = rec
        ident = str(ident)
        if ident in index:
            raise DuplicateIndividual(ident)
        index[ident] = len(ids)
        ids.append(ident)
        genders.append(Gender.coerce(gender))
        if label is not None:
            label = int(label)
            if label <= 0:
                raise PedigreeError(f"label of {ident!r} must be a positive integer")
        labels.append(label)

    seen_labels = set()
    for label in labels:
        if label is None:
            continue
        if label in seen_labels:
            raise DuplicateLabel(label)
        seen_labels.add(label)

    n = len(ids)
    parents = [[] for _ in range(n)]
    seen_edges = set()
    for edge in edges:
        a, b = (str(x) for x in edge)
        if a not in index or b not in index:
            raise DanglingEdge((a, b))
        if a == b:
            raise CycleDetected(f"self-loop on {a!r}")
        if (a, b) in seen_edges:
            raise DuplicateEdge((a, b))
        seen_edges.add((a, b))
        parents[index[b]].append(index[a])

    father = [-1] * n
    mother = [-1] * n
    for c in range(n):
        ps = parents[c]
        if len(ps) not in (0, 2):
            raise BadInDegree(ids[c], len(ps))
        if ps:
            x, y = ps
            if genders[x] == genders[y]:
                raise SameGenderParents(ids[c])
            if genders[x] is Gender.MALE:
                father[c], mother[c] = x, y
            else:
                father[c], mother[c] = y, x

    ped = Pedigree(ids, genders, labels, father, mother)
    topological_order(ped)
    return ped


def topological_order(p: Pedigree) -> list[int]:
    """Parents-before-children order of indices; raises CycleDetected."""
    indeg = [2 if p.father[i] >= 0 else 0 for i in range(len(p))]
    queue = deque(i for i in range(len(p)) if indeg[i] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for c in p.children[u]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if len(order) != len(p):
        raise CycleDetected("the parent-child relation contains a cycle")
    return order


def components(p: Pedigree) -> list[list[int]]:
    """Weakly connected components, each sorted, in order of smallest index."""
    comp = [-1] * len(p)
    out = []
    for s in range(len(p)):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        members, stack = [], [s]
        while stack:
            u = stack.pop()
            members.append(u)
            for v in (*p.parents(u), *p.children[u]):
                if comp[v] < 0:
                    comp[v] = comp[s]
                    stack.append(v)
        out.append(sorted(members))
    return out


def generations(p: Pedigree) -> list[int]:
    """Generation number per index; each component starts at generation 1."""
    gen = [0] * len(p)
    placed = [False] * len(p)
    for members in components(p):
        s = members[0]
        placed[s] = True
        rel = {s: 0}
        stack = [s]
        while stack:
            u = stack.pop()
            for v, delta in [(x, -1) for x in p.parents(u)] + [(x, 1) for x in p.children[u]]:
                want = rel[u] + delta
                if v in rel:
                    if rel[v] != want:
                        raise NotGenerational(
                            f"{p.ids[v]!r} would need generations {rel[v]} and {want}")
                else:
                    rel[v] = want
                    stack.append(v)
        low = min(rel.values())
        for v, r in rel.items():
            gen[v] = r - low + 1
    return gen


def generation_map(p: Pedigree) -> dict[str, int]:
    """The generation map ``id -> generation``; raises NotGenerational."""
    return dict(zip(p.ids, generations(p)))


def is_generational(p: Pedigree) -> bool:
    try:
        generations(p)
    except NotGenerational:
        return False
    return True


def mates(p: Pedigree) -> list[set]:
    out = [set() for _ in range(len(p))]
    for c in range(len(p)):
        if p.father[c] >= 0:
            out[p.father[c]].add(p.mother[c])
            out[p.mother[c]].add(p.father[c])
    return out


def is_monogamous(p: Pedigree) -> bool:
    return all(len(m) <= 1 for m in mates(p))


def leaf_individuals(p: Pedigree) -> set[str]:
    return {p.ids[i] for i in p.leaf_indices()}


def compatibly_leaf_labeled(p: Pedigree, q: Pedigree) -> bool:
    """Both leaf-labeled, same leaf label set, same gender for each label."""
    if not (p.is_leaf_labeled() and q.is_leaf_labeled()):
        return False
    lp, lq = p.label_map(), q.label_map()
    if lp.keys() != lq.keys():
        return False
    return all(p.genders[lp[x]] == q.genders[lq[x]] for x in lp)


def induced(p: Pedigree, keep: Iterable[int]) -> Pedigree:
    """Sub-pedigree induced by a set of indices (caller guarantees validity)."""
    keep = sorted(set(keep))
    new = {old: i for i, old in enumerate(keep)}
    father, mother = [], []
    for old in keep:
        fa, mo = p.father[old], p.mother[old]
        if fa in new and mo in new:
            father.append(new[fa])
            mother.append(new[mo])
        else:
            father.append(-1)
            mother.append(-1)
    return Pedigree([p.ids[i] for i in keep], [p.genders[i] for i in keep],
                    [p.labels[i] for i in keep], father, mother)


def prune_to_labeled_ancestry(p: Pedigree) -> Pedigree:
    """Keep the labeled individuals and all of their ancestors."""
    seen = [False] * len(p)
    stack = [i for i in range(len(p)) if p.labels[i] is not None]
    for i in stack:
        seen[i] = True
    while stack:
        u = stack.pop()
        for v in p.parents(u):
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return induced(p, (i for i in range(len(p)) if seen[i]))


def sub_pedigree(p: Pedigree, subset) -> Pedigree:
    """``P|_A`` for a set of ids or a set of ``(parent, child)`` edges.

    For an edge set the vertex set is the set of edge endpoints.  The result
    is the induced sub-pedigree; InvalidSubset is raised when some kept
    individual would be left with exactly one parent.
    """
    subset = list(subset)
    ids = set()
    for item in subset:
        if isinstance(item, tuple):
            a, b = item
            if a not in p or b not in p or not p.has_edge(p.index(a), p.index(b)):
                raise InvalidSubset(item, "not an edge of the pedigree")
            ids.update((a, b))
        else:
            if item not in p:
                raise InvalidSubset(item, "not an individual of the pedigree")
            ids.add(item)
    keep = {p.index(x) for x in ids}
    for i in sorted(keep):
        inside = sum(1 for x in p.parents(i) if x in keep)
        if inside == 1:
            raise InvalidSubset(p.ids[i])
    return induced(p, keep)


def descendant_bits(p: Pedigree) -> list[int]:
    """Strict descendants of each individual as an int bitset over indices."""
    bits = [0] * len(p)
    for u in reversed(topological_order(p)):
        acc = 0
        for c in p.children[u]:
            acc |= bits[c] | (1 << c)
        bits[u] = acc
    return bits


def descendant_splits(p: Pedigree) -> dict[str, DescendantSplit]:
    out = {}
    for u, b in enumerate(descendant_bits(p)):
        members = frozenset(p.ids[i] for i in range(len(p)) if b >> i & 1)
        out[p.ids[u]] = DescendantSplit(p.ids[u], members)
    return out


def from_mapping(raw: Mapping) -> Pedigree:
    """Validate a JSON-style ``{"individuals": [...], "edges": [...]}`` mapping."""
    inds = []
    for rec in raw.get("individuals", []):
        if isinstance(rec, Mapping):
            inds.append((rec["id"], rec["gender"], rec.get("label")))
        else:
            inds.append(tuple(rec))
    return validate(inds, [tuple(e) for e in raw.get("edges", [])])
