import functools

import pytest

from clustertilt.partition import (TUBULAR_TYPES, enumerate_partitions, euclidean_flag, intersect_ideals,
                                   locate_summands, partition_ideal, section_slices_of_quasitilted,
                                   transjective_slice_classes)
from clustertilt.relext import certify_relation_extension, relation_extension

from conftest import cached


@functools.lru_cache(maxsize=None)
def sec3():
    bq, B = cached("sec3_B")
    part = locate_summands(B)
    classes = transjective_slice_classes(B, part)
    return bq, B, part, classes


@pytest.mark.parametrize("ranks, expected", [
    ((2, 2), True), ((1, 1), True), ((3, 5), True), ((2, 2, 7), True), ((2, 3, 3), True),
    ((2, 3, 4), True), ((2, 3, 5), True), ((2, 3, 6), False), ((3, 3, 3), False),
    ((2, 2, 2, 2), False), ((1, 2, 3, 4), True), ((1, 1, 2, 2, 2), True),
])
def test_tubular_table(ranks, expected):
    assert TUBULAR_TYPES.contains(ranks) is expected
    assert euclidean_flag(ranks) is expected


def test_tubular_table_rejects_nonpositive():
    with pytest.raises(ValueError):
        TUBULAR_TYPES.contains([0, 2])


def test_sec3_summands():
    _, B, part, _ = sec3()
    V = B.vertices
    assert [V[v] for v in part.transjective] == ["1", "4"]
    assert [[V[v] for v in t] for t in part.tubes] == [["2"], ["3"]]
    assert part.ranks == [2, 2]
    assert part.tube_of(B.vertex("3")) == 1 and part.tube_of(B.vertex("1")) is None


def test_sec3_slice_classes():
    _, B, part, classes = sec3()
    assert len(classes) >= 2
    for c in classes:
        for s in c.slices:
            assert s.ok
    common = intersect_ideals(B, classes[0].ideal, classes[-1].ideal)
    for v in common:
        assert classes[0].ideal.contains(dict(v)) and classes[-1].ideal.contains(dict(v))
        assert all(B.length(i) >= 2 for i in v)


@pytest.mark.parametrize("subset, names, tilted", [
    ((), ["alpha", "gamma"], True),
    ((0,), ["beta", "gamma"], False),
    ((1,), ["alpha", "delta"], False),
    ((0, 1), ["beta", "delta"], True),
])
def test_sec3_partition_ideals(subset, names, tilted):
    bq, B, part, classes = sec3()
    rows = {r.subset: r for r in enumerate_partitions(B, part, classes)}
    r = rows[subset]
    assert sorted(r.ideal.generator_names()) == sorted(names)
    assert r.classification.tilted is tilted
    assert r.classification.acyclic
    assert r.classification.gldim <= 2
    assert certify_relation_extension(bq, relation_extension(r.quotient)) is not None


def test_tilted_rows_have_witness():
    _, B, part, classes = sec3()
    for r in enumerate_partitions(B, part, classes):
        if r.classification.tilted:
            assert r.classification.witness in ("S_L", "S_R")
        else:
            assert r.classification.witness is None


def test_partition_ideal_sides():
    _, B, part, classes = sec3()
    K = partition_ideal(B, part, (0,), classes)
    assert K.L == ["beta"] and K.R == ["gamma"]
    assert not K.L_zero and not K.R_zero
    K0 = partition_ideal(B, part, (), classes)
    assert K0.L_zero


def test_row_json():
    _, B, part, classes = sec3()
    row = enumerate_partitions(B, part, classes)[0].row(part)
    assert row["subset"] == [] and row["tilted"] is True
    assert row["quotient"].startswith("algebra")


def test_section_slices_recover_quotient():
    _, B, part, classes = sec3()
    K = partition_ideal(B, part, (0,), classes)
    out = section_slices_of_quasitilted(K.quotient(), B, K, classes)
    assert out["supported"] and out["recovers"]


@pytest.mark.slow
def test_e7_rows(fixture):
    bq, B = fixture("e7tilde")
    rows = enumerate_partitions(B)
    assert len(rows) == 8
    assert sum(r.classification.tilted for r in rows) == 2
    first, last = rows[0], rows[-1]
    assert sorted(first.ideal.generator_names()) == ["alpha1", "alpha2", "alpha3", "epsilon"]
    assert sorted(last.ideal.generator_names()) == ["beta1", "beta2", "beta3", "epsilon"]
