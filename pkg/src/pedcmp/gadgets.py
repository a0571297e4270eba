"""Reduction gadgets: bipartite graphs, integer partitions and trees as pedigrees.

These constructions turn other problems into pedigree problems.  Here they
serve as structured test instances.  Individual ids spell out each
individual's role in the construction, e.g. ``(u,v).m`` or ``(u,u',v).f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .bnb import ColouredDigraph, max_common_edges
from .errors import IsolatedVertex, PedFormatError
from .pedigree import Gender, Pedigree, validate
from .simulate import rng_for


@dataclass(frozen=True)
class BipartiteGraph:
    left: tuple
    right: tuple
    edges: frozenset  # (left vertex, right vertex)

    @classmethod
    def from_edges(cls, edges, left=(), right=()):
        edges = [tuple(map(str, e)) for e in edges]
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edge in bipartite graph")
        lv = list(dict.fromkeys([*map(str, left), *(u for u, _ in edges)]))
        rv = list(dict.fromkeys([*map(str, right), *(v for _, v in edges)]))
        return cls(tuple(lv), tuple(rv), frozenset(edges))


def bipartite_to_pedigree(g: BipartiteGraph) -> Pedigree:
    """Unlabeled pedigree whose isomorphism class tracks that of ``g``.

    Every left vertex ``u`` becomes a couple ``u.m``/``u.f``.  Each edge
    ``(u,v)`` gives that couple a son ``(u,v).m`` and a daughter
    ``(u,v).f``.  All sons and daughters attached to the same right vertex
    ``v`` then mate pairwise, each pair producing one daughter
    ``(u,u',v).f`` (father from ``u``, mother from ``u'``).
    """
    touched = {u for u, _ in g.edges} | {v for _, v in g.edges}
    for x in (*g.left, *g.right):
        if x not in touched:
            raise IsolatedVertex(x)
    edges = sorted(g.edges)
    inds, arcs = [], []
    for u in g.left:
        inds += [(f"{u}.m", Gender.MALE, None), (f"{u}.f", Gender.FEMALE, None)]
    for u, v in edges:
        for s, gender in (("m", Gender.MALE), ("f", Gender.FEMALE)):
            child = f"({u},{v}).{s}"
            inds.append((child, gender, None))
            arcs += [(f"{u}.m", child), (f"{u}.f", child)]
    by_right = {}
    for u, v in edges:
        by_right.setdefault(v, []).append(u)
    for v in g.right:
        for u in by_right[v]:
            for u2 in by_right[v]:
                child = f"({u},{u2},{v}).f"
                inds.append((child, Gender.FEMALE, None))
                arcs += [(f"({u},{v}).m", child), (f"({u2},{v}).f", child)]
    return validate(inds, arcs)


@dataclass(frozen=True)
class Tree:
    """Rooted tree; node 0 is the root and ``parent[0] == -1``."""

    names: tuple
    parent: tuple

    @property
    def edges(self):
        return [(self.parent[i], i) for i in range(1, len(self.parent))]

    def __len__(self):
        return len(self.parent)

    def as_digraph(self) -> ColouredDigraph:
        return ColouredDigraph.from_edges([0] * len(self), self.edges)


def mcip_to_trees(s1, s2) -> tuple[Tree, Tree]:
    """A root with one hanging path of length ``n`` per element ``n``."""

    def build(values, root):
        values = [int(x) for x in values]
        if not values:
            raise ValueError("multiset must be non-empty")
        if min(values) < 1:
            raise ValueError("multiset elements must be positive")
        names, parent = [root], [-1]
        for i, n in enumerate(values, 1):
            prev = 0
            for j in range(1, n + 1):
                names.append(f"{root}.{i}.{j}")
                parent.append(prev)
                prev = len(parent) - 1
        return Tree(tuple(names), tuple(parent))

    return build(s1, "r1"), build(s2, "r2")


def tree_to_monogamous_pedigree(t: Tree) -> Pedigree:
    """Tree nodes become females; every internal node gets a founder male mate."""
    has_child = set(t.parent[1:])
    inds = [(name, Gender.FEMALE, None) for name in t.names]
    arcs = []
    for i in range(len(t)):
        if i in has_child:
            inds.append((f"{t.names[i]}.mate", Gender.MALE, None))
    for a, b in t.edges:
        arcs += [(t.names[a], t.names[b]), (f"{t.names[a]}.mate", t.names[b])]
    return validate(inds, arcs)


def tree_edit_distance(t1: Tree, t2: Tree) -> int:
    """Edge insertions plus deletions turning ``t1`` into ``t2`` (unlabeled)."""
    g1, g2 = t1.as_digraph(), t2.as_digraph()
    best = max_common_edges(g1, g2)
    return g1.num_edges + g2.num_edges - 2 * best.well_matched


def cut_paste_distance(t1: Tree, t2: Tree) -> int:
    """Number of cut/paste moves: each one deletes one edge and adds one."""
    if len(t1) != len(t2):
        raise ValueError("cut/paste distance needs trees with equal node counts")
    return tree_edit_distance(t1, t2) // 2


def leaf_label_gadget(p: Pedigree, q: Pedigree, label_seed: int = 0) -> tuple[Pedigree, Pedigree]:
    """Compatibly leaf-labeled pair whose distance determines that of ``(p, q)``.

    Each ``u`` in ``p`` gets an opposite-gender founder mate ``u.mate`` and,
    for every ``v`` in ``q``, a daughter ``i(u,v)``; ``q`` is treated the same
    way with daughters ``j(v,u)``.  Labels on the ``i`` leaves are a seeded
    shuffle of ``1..|p||q|`` and ``j(v,u)`` copies the label of ``i(u,v)``.
    New ids get primes appended when they would clash with existing ones.
    """
    rng = rng_for(label_seed)
    pairs = [(u, v) for u in p.ids for v in q.ids]
    labels = dict(zip(pairs, (int(x) + 1 for x in rng.permutation(len(pairs)))))

    def build(ped, others, name, key):
        taken = set(ped.ids)

        def fresh(base):
            while base in taken:
                base += "'"
            taken.add(base)
            return base

        inds = [(i, g, None) for i, g in zip(ped.ids, ped.genders)]
        arcs = list(ped.edges())
        for u, g in zip(ped.ids, ped.genders):
            mate = fresh(f"{u}.mate")
            inds.append((mate, g.opposite, None))
            for v in others:
                child = fresh(f"{name}({u},{v})")
                inds.append((child, Gender.FEMALE, labels[key(u, v)]))
                arcs += [(u, child), (mate, child)]
        return validate(inds, arcs)

    big_q = build(p, q.ids, "i", lambda u, v: (u, v))
    big_q2 = build(q, p.ids, "j", lambda v, u: (u, v))
    return big_q, big_q2


def read_edge_list(path) -> BipartiteGraph:
    """Bipartite graph file: one ``left right`` pair per line, ``#`` comments."""
    edges = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PedFormatError(lineno, "expected two vertex names")
        edges.append(tuple(parts))
    return BipartiteGraph.from_edges(edges)


def read_int_list(path) -> list[int]:
    """Positive integers separated by whitespace or commas."""
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        for tok in raw.split("#", 1)[0].replace(",", " ").split():
            try:
                value = int(tok)
            except ValueError:
                raise PedFormatError(lineno, f"not an integer: {tok!r}") from None
            if value < 1:
                raise PedFormatError(lineno, "integers must be positive")
            out.append(value)
    return out
