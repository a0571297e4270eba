"""Pedigree matchings, well-matched edges, match distance and edit paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import InvalidMatching
from .pedigree import Pedigree, validate


class PedigreeMatching:
    """Injective, gender- and label-respecting partial map between two pedigrees.

    ``image[i]`` is the target index of source index ``i`` or ``-1``.
    """

    __slots__ = ("source", "target", "image")

    def __init__(self, source: Pedigree, target: Pedigree, image, check: bool = True):
        self.source = source
        self.target = target
        self.image = tuple(image)
        if check:
            self._check()

    @classmethod
    def from_ids(cls, source: Pedigree, target: Pedigree, mapping: Mapping[str, str]):
        image = [-1] * len(source)
        for a, b in mapping.items():
            if a not in source or b not in target:
                raise InvalidMatching(f"unknown individual in pair {a!r} -> {b!r}")
            image[source.index(a)] = target.index(b)
        return cls(source, target, image)

    @classmethod
    def identity(cls, p: Pedigree):
        return cls(p, p, range(len(p)))

    def _check(self):
        p, q, img = self.source, self.target, self.image
        if len(img) != len(p):
            raise InvalidMatching("image has the wrong length")
        used = set()
        for i, j in enumerate(img):
            if j < 0:
                continue
            if j >= len(q):
                raise InvalidMatching(f"target index {j} out of range")
            if j in used:
                raise InvalidMatching(f"{q.ids[j]!r} is the image of two individuals")
            used.add(j)
            if p.genders[i] != q.genders[j]:
                raise InvalidMatching(f"{p.ids[i]!r} -> {q.ids[j]!r} changes gender")
        for label, i in p.label_map().items():
            j = q.by_label(label)
            if j is not None and img[i] != j:
                raise InvalidMatching(f"shared label {label} is not matched to itself")

    def as_ids(self) -> dict[str, str]:
        return {self.source.ids[i]: self.target.ids[j] for i, j in enumerate(self.image) if j >= 0}

    def inverse_image(self) -> list[int]:
        inv = [-1] * len(self.target)
        for i, j in enumerate(self.image):
            if j >= 0:
                inv[j] = i
        return inv

    def __eq__(self, other):
        if not isinstance(other, PedigreeMatching):
            return NotImplemented
        return (self.source is other.source and self.target is other.target
                and self.image == other.image)

    def __hash__(self):
        return hash(self.image)


def count_well_matched(p: Pedigree, q: Pedigree, image) -> int:
    """|W_M| for an index image list, without validation."""
    w = 0
    for c in range(len(p)):
        fa = p.father[c]
        if fa < 0:
            continue
        mc = image[c]
        if mc < 0:
            continue
        mf, mm = image[fa], image[p.mother[c]]
        if mf >= 0 and q.father[mc] == mf:
            w += 1
        if mm >= 0 and q.mother[mc] == mm:
            w += 1
    return w


def _well_matched_pairs(m: PedigreeMatching):
    p, q, img = m.source, m.target, m.image
    for a, b in p.edge_index_pairs():
        if img[a] >= 0 and img[b] >= 0 and q.has_edge(img[a], img[b]):
            yield a, b


def well_matched_edges(m: PedigreeMatching) -> frozenset:
    """Edges of the source whose endpoints map onto an edge of the target."""
    ids = m.source.ids
    return frozenset((ids[a], ids[b]) for a, b in _well_matched_pairs(m))


def match_distance(m: PedigreeMatching) -> int:
    w = count_well_matched(m.source, m.target, m.image)
    return m.source.num_edges + m.target.num_edges - 2 * w


@dataclass(frozen=True)
class EditPath:
    delete: frozenset  # source edges, source ids
    add: frozenset  # target edges, source ids where mapped, fresh ids otherwise

    def __len__(self):
        return len(self.delete) + len(self.add)


def fresh_ids(m: PedigreeMatching) -> list[str]:
    """Id under which every target individual appears after the edit path."""
    p, q = m.source, m.target
    inv = m.inverse_image()
    taken = set(p.ids)
    out = []
    for j, ident in enumerate(q.ids):
        if inv[j] >= 0:
            out.append(p.ids[inv[j]])
            continue
        name = f"{ident}'"
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(name)
    return out


def edit_path(m: PedigreeMatching) -> EditPath:
    p, q = m.source, m.target
    kept = set(_well_matched_pairs(m))
    delete = frozenset((p.ids[a], p.ids[b]) for a, b in p.edge_index_pairs() if (a, b) not in kept)
    images = {(m.image[a], m.image[b]) for a, b in kept}
    names = fresh_ids(m)
    add = frozenset((names[a], names[b]) for a, b in q.edge_index_pairs() if (a, b) not in images)
    return EditPath(delete, add)


def apply_edit_path(m: PedigreeMatching) -> Pedigree:
    """Apply the edit path of ``m`` to its source.

    Unmatched source individuals end up edgeless and are dropped; unmatched
    target individuals enter under fresh ids.  Genders and labels follow the
    target, so the result is a relabelled copy of the target.
    """
    p, q = m.source, m.target
    path = edit_path(m)
    names = fresh_ids(m)
    edges = (p.edges() - path.delete) | path.add
    inds = [(names[j], q.genders[j], q.labels[j]) for j in range(len(q))]
    return validate(inds, sorted(edges))


@dataclass
class DistanceReport:
    distance: int
    matching: PedigreeMatching
    algorithm: str
    params: dict = field(default_factory=dict)
    elapsed: float = 0.0  # seconds

    @property
    def well_matched(self) -> frozenset:
        return well_matched_edges(self.matching)

    @property
    def edit_path(self) -> EditPath:
        return edit_path(self.matching)

    @property
    def normalized(self) -> float:
        total = self.matching.source.num_edges + self.matching.target.num_edges
        return self.distance / total if total else 0.0

    def to_dict(self, timing: bool = True) -> dict:
        path = self.edit_path
        return {
            "distance": self.distance,
            "algorithm": self.algorithm,
            "params": dict(self.params),
            "elapsed_ms": round(self.elapsed * 1000.0, 3) if timing else 0.0,
            "matching": dict(sorted(self.matching.as_ids().items())),
            "edit_path": {"delete": sorted(map(list, path.delete)),
                          "add": sorted(map(list, path.add))},
        }


def make_report(m: PedigreeMatching, algorithm: str, params=None, elapsed: float = 0.0) -> DistanceReport:
    return DistanceReport(match_distance(m), m, algorithm, dict(params or {}), elapsed)
