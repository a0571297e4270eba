import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_pedigree
from pedcmp.distance import (PedigreeMatching, apply_edit_path, edit_path, match_distance,
                             well_matched_edges)
from pedcmp.errors import InvalidMatching
from pedcmp.iso import brute_force_isomorphic
from pedcmp.pedigree import Gender, validate

M, F = Gender.MALE, Gender.FEMALE


def random_matching_between(p, q, rng):
    """A random gender- and label-respecting partial injection."""
    image = [-1] * len(p)
    used = set()
    for label, i in p.label_map().items():
        j = q.by_label(label)
        if j is not None:
            image[i] = j
            used.add(j)
    for i in rng.permutation(len(p)):
        if image[i] >= 0 or p.labels[i] is not None and q.by_label(p.labels[i]) is not None:
            continue
        options = [j for j in range(len(q)) if j not in used and q.genders[j] == p.genders[i]
                   and (q.labels[j] is None or p.by_label(q.labels[j]) is None)]
        if options and rng.random() < 0.8:
            j = options[int(rng.integers(len(options)))]
            image[i] = j
            used.add(j)
    return PedigreeMatching(p, q, image)


def test_identity_matches_everything(figure1):
    m = PedigreeMatching.identity(figure1)
    assert well_matched_edges(m) == figure1.edges()
    assert match_distance(m) == 0
    path = edit_path(m)
    assert not path.delete and not path.add


def test_empty_matching(figure1):
    m = PedigreeMatching(figure1, figure1, [-1] * len(figure1), check=False)
    assert well_matched_edges(m) == frozenset()
    assert match_distance(m) == 2 * figure1.num_edges


def test_deleted_parent_edges(figure1):
    inds = [(i.id, i.gender, i.label) for i in figure1.individuals()]
    edges = [e for e in figure1.edges() if e[1] != "c3"]
    q = validate(inds, edges)
    m = PedigreeMatching.from_ids(figure1, q, {x: x for x in figure1.ids})
    assert match_distance(m) == 2
    path = edit_path(m)
    assert path.delete == {("gf", "c3"), ("gm", "c3")} and not path.add


def test_gender_violation():
    p = validate([("a", M, None)], [])
    q = validate([("b", F, None)], [])
    with pytest.raises(InvalidMatching):
        PedigreeMatching(p, q, [0])


def test_injectivity_violation():
    p = validate([("a", M, None), ("b", M, None)], [])
    with pytest.raises(InvalidMatching):
        PedigreeMatching(p, p, [0, 0])


def test_shared_label_must_be_respected():
    p = validate([("a", M, 1), ("b", M, None)], [])
    with pytest.raises(InvalidMatching):
        PedigreeMatching(p, p, [1, 0])


def test_fresh_ids_avoid_collisions():
    p = validate([("x", M, None), ("x'", M, None)], [])
    q = validate([("x", M, None), ("y", F, None), ("z", M, None)], [("x", "y")][:0])
    m = PedigreeMatching(p, q, [-1, 2])
    from pedcmp.distance import fresh_ids
    names = fresh_ids(m)
    assert names[2] == "x'" and len(set(names)) == 3 and names[0] not in p.ids


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_well_matched_double_loop(seed):
    rng = np.random.default_rng(seed)
    p = random_pedigree(rng, int(rng.integers(1, 10)), 0.3, 12)
    q = random_pedigree(rng, int(rng.integers(1, 10)), 0.3, 12)
    try:
        m = random_matching_between(p, q, rng)
    except InvalidMatching:
        return  # a shared label with different genders admits no matching
    inv = {j: i for i, j in enumerate(m.image) if j >= 0}
    expect = set()
    for a, b in p.edges():
        ia, ib = m.image[p.index(a)], m.image[p.index(b)]
        if ia >= 0 and ib >= 0 and (q.ids[ia], q.ids[ib]) in q.edges():
            expect.add((a, b))
    assert well_matched_edges(m) == expect
    d = match_distance(m)
    assert d == p.num_edges + q.num_edges - 2 * len(expect)
    assert d == len(edit_path(m))
    assert len(inv) == sum(1 for j in m.image if j >= 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_applied_edit_path_is_isomorphic_to_target(seed):
    rng = np.random.default_rng(seed)
    p = random_pedigree(rng, int(rng.integers(1, 8)), 0.3, 8)
    q = random_pedigree(rng, int(rng.integers(1, 8)), 0.3, 8)
    try:
        m = random_matching_between(p, q, rng)
    except InvalidMatching:
        return
    result = apply_edit_path(m)
    assert brute_force_isomorphic(result, q) is not None
