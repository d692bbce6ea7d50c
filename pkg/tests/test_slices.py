import functools

import pytest

from clustertilt.homology import global_dimension
from clustertilt.modules import projective, simple
from clustertilt.relext import certify_relation_extension, relation_extension
from clustertilt.slices import (InsufficientFragment, annihilator, enumerate_slices, ideal_span,
                                is_local_slice, leftmost_slice, rightmost_slice, slice_equivalent,
                                slice_fragment)

from conftest import cached


@functools.lru_cache(maxsize=None)
def window(name, seeds, steps=6):
    _, A = cached(name)
    return slice_fragment(A, list(seeds), steps)


def test_annihilator_of_simples_is_radical(fixture):
    _, A = fixture("sec5_B")
    ann = annihilator(A, [simple(A, v) for v in range(A.n)])
    assert ideal_span(A, ann).rank == A.dim - A.n


def test_annihilator_of_regular_module_is_zero(fixture):
    _, A = fixture("sec3_B")
    assert annihilator(A, [projective(A, v) for v in range(A.n)]) == []


def test_enumerated_slices_are_local_slices():
    frag = window("sec3_B", ("1", "4"))
    found = enumerate_slices(frag)
    assert len(found) == 19
    for s in found:
        again = is_local_slice(frag, s.members)
        assert again.ok, again.failures
        assert len(s.members) == frag.algebra.n


def test_slice_quotients_are_tilted_with_relext_B(fixture):
    bq, B = fixture("sec3_B")
    frag = window("sec3_B", ("1", "4"))
    seen = []
    for s in enumerate_slices(frag):
        if any(slice_equivalent(s, t) for t in seen):
            continue
        seen.append(s)
        C = s.quotient()
        assert C.is_triangular()
        assert global_dimension(C) <= 2
        assert certify_relation_extension(bq, relation_extension(C)) is not None
    assert len(seen) >= 2


def test_non_slice_rejected():
    frag = window("sec3_B", ("1", "4"))
    s = enumerate_slices(frag)[0]
    m = min(s.members)
    res = is_local_slice(frag, s.members - {m})
    assert not res.ok and not res.cardinality
    # a module together with its tau cannot both lie in a slice
    t = frag.tau.get(m)
    if t is not None and t in frag.expanded_left and t in frag.expanded_right:
        assert not is_local_slice(frag, s.members | {t}).ok


def test_rightmost_and_leftmost():
    frag = window("sec3_B", ("1", "4"))
    r = rightmost_slice(frag)
    assert r.is_rightmost() and r.strong_sinks()
    assert all(frag.is_injective(i) for i in r.sources())
    l = leftmost_slice(frag)
    assert l.is_leftmost()
    assert all(frag.is_projective(i) for i in l.sinks())


def test_sec4_rightmost_slice():
    frag = window("sec4_B", ("3", "6"))
    r = rightmost_slice(frag)
    V = frag.algebra.vertices
    assert r.names() == ["(0,0,0,2,3,0)", "(0,0,0,3,4,0)", "I(1)", "I(3)", "I(6)", "S(1)"]
    assert [V[v] for v in r.strong_sinks()] == ["3", "6"]


def test_boundary_module_raises():
    frag = window("sec3_B", ("1", "4"), 2)
    edge = sorted(frag.boundary)
    assert edge
    members = set(list(edge)[:1]) | set(list(range(len(frag)))[:3])
    with pytest.raises(InsufficientFragment):
        is_local_slice(frag, members)


def test_slice_json():
    frag = window("sec3_B", ("1", "4"))
    data = rightmost_slice(frag).to_json()
    assert data["rightmost"] is True
    assert len(data["members"]) == 4
