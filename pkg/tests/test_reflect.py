import functools

import pytest

from clustertilt.reflect import (NotStrongSink, UndefinedOrbitStep, cluster_tau, cluster_tau_inverse,
                                 cocompletion, completion, coreflect_slice, lemma_s_split, reflect_slice,
                                 reflection_sequence)
from clustertilt.slices import is_local_slice, leftmost_slice, rightmost_slice, slice_equivalent, slice_fragment

from conftest import cached


@functools.lru_cache(maxsize=None)
def window(name, seeds, steps=6):
    return slice_fragment(cached(name)[1], list(seeds), steps)


@functools.lru_cache(maxsize=None)
def sec4():
    frag = window("sec4_B", ("3", "6"))
    B = frag.algebra
    return frag, rightmost_slice(frag), B.vertex("3"), B.vertex("6")


def test_sec4_completions():
    frag, sl, x3, x6 = sec4()
    H3, H6 = completion(sl, x3), completion(sl, x6)
    assert H3.names() == ["(0,0,0,3,4,0)", "I(1)", "I(3)", "S(1)"]
    assert H6.members == sl.members
    assert H3.names(H3.J) == ["I(1)", "I(3)"]
    assert H3.names(H3.Jminus) == ["S(1)"] == H6.names(H6.Jminus)
    assert H3.names(H3.E) == ["(0,0,0,3,4,0)"]
    assert not H3.G_exists


def test_sec4_reflections():
    frag, sl, x3, x6 = sec4()
    s6, s3 = reflect_slice(sl, x6), reflect_slice(sl, x3)
    assert s6.names() == ["(0,0,0,1,2,0)", "(0,0,1,1,2,0)", "P(1)", "P(3)", "P(6)", "S(5)"]
    assert s3.names() == ["(0,0,0,1,2,0)", "(0,0,0,2,3,0)", "(0,0,1,1,2,0)", "I(6)", "P(1)", "P(3)"]
    assert completion(s3, x6).names() == ["(0,0,0,2,3,0)", "I(6)"]
    assert reflect_slice(s3, x6).members == s6.members


def test_reflections_are_local_slices():
    frag, sl, x3, x6 = sec4()
    for x in (x3, x6):
        out = reflect_slice(sl, x)
        assert is_local_slice(frag, out.members).ok


def test_cluster_tau_rules():
    frag, sl, _, _ = sec4()
    B = frag.algebra
    for v in range(B.n):
        i = frag.injectives[v]
        if i in frag.expanded_right:
            assert cluster_tau_inverse(frag, i, 2) == frag.projectives[v]
        with pytest.raises(UndefinedOrbitStep):
            cluster_tau_inverse(frag, i, 1)
    with pytest.raises(ValueError):
        cluster_tau_inverse(frag, 0, 3)


def test_cluster_tau_of_projective():
    frag = window("sec3_B", ("1", "4"))
    for v, p in frag.projectives.items():
        assert cluster_tau(frag, p, 2) == frag.injectives[v]
        with pytest.raises(UndefinedOrbitStep):
            cluster_tau(frag, p, 1)


def test_reflect_then_coreflect_sec3():
    frag = window("sec3_B", ("1", "4"))
    r = rightmost_slice(frag)
    for x in r.strong_sinks():
        back = coreflect_slice(reflect_slice(r, x), x)
        assert slice_equivalent(back, r)


def test_reflect_requires_strong_sink():
    frag = window("sec3_B", ("1", "4"))
    r = rightmost_slice(frag)
    other = [v for v in range(frag.algebra.n) if v not in r.strong_sinks()]
    with pytest.raises(NotStrongSink):
        completion(r, other[0])


def test_cocompletion_dual():
    frag = window("sec3_B", ("1", "4"))
    l = leftmost_slice(frag)
    for y in l.strong_sources():
        H = cocompletion(l, y)
        assert H.dual
        assert frag.projectives[y] in H.J


def test_reflection_sequence_links_extremes():
    frag = window("sec3_B", ("1", "4"))
    l, r = leftmost_slice(frag), rightmost_slice(frag)
    seq = reflection_sequence(l, r)
    assert len(seq) == 1
    out = l
    for sign, v in seq:
        base = out
        out = reflect_slice(base, v) if sign == "+" else coreflect_slice(base, v)
    assert slice_equivalent(out, r)


def test_split_of_tilted_quotient():
    frag = window("sec5_B", ("1", "5"))
    r = rightmost_slice(frag)
    (x,) = r.strong_sinks()
    sp = lemma_s_split(r.quotient(), completion(r, x))
    assert sp.successor_closed
    assert sp.vertices == [0, 4]
