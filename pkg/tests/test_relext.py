import pytest

from clustertilt.algebra import compute_basis
from clustertilt.homology import ext_dim
from clustertilt.modules import injective, projective
from clustertilt.quiver import parse_bound_quiver
from clustertilt.relext import (GlobalDimensionTooHigh, NonTriangular, certify_relation_extension,
                                ext2_bimodule, relation_extension)

from oracles import graded_cartan

BASES = ["sec3_C", "sec3_Cprime", "sec5_C1", "sec5_C2", "remark3_C", "remark3_Calt"]


@pytest.mark.parametrize("name", BASES)
def test_bimodule_blocks_are_ext2(fixture, name):
    _, C = fixture(name)
    E = ext2_bimodule(C)
    assert E.check()
    for x in range(C.n):
        for y in range(C.n):
            block = sum(1 for b in E.blocks if b == (x, y))
            assert block == ext_dim(injective(C, y), projective(C, x), 2)


@pytest.mark.parametrize("name", BASES)
def test_trivial_extension_structure(fixture, name):
    _, C = fixture(name)
    ext = relation_extension(C)
    A = ext.algebra
    assert A.dim == C.dim + ext.bimodule.dim
    assert A.check_associative()
    assert ext.check_square_zero()
    # the presentation is a finite-dimensional bound quiver with the same Cartan matrix
    assert graded_cartan(ext.presentation) == A.dimension_matrix()


def test_sec3_new_arrows_and_relations(fixture):
    _, C = fixture("sec3_C")
    ext = relation_extension(C)
    pres = ext.presentation
    new = sorted((a.source, a.target) for a in pres.arrows if a.label in ext.new_arrows)
    assert new == [("1", "4"), ("1", "4")]
    assert len(pres.relations) == 6
    assert ext.bimodule.dim == 8


@pytest.mark.parametrize("base, target", [
    ("sec3_C", "sec3_B"), ("sec3_Cprime", "sec3_B"),
    ("remark3_C", "remark3_Btilde"), ("remark3_Calt", "remark3_Btilde"),
    ("sec5_C1", "sec5_B"), ("sec5_C2", "sec5_B"),
])
def test_certified_isomorphism(fixture, base, target):
    bq, _ = fixture(target)
    _, C = fixture(base)
    assert certify_relation_extension(bq, relation_extension(C)) is not None


def test_non_isomorphic_target_rejected(fixture):
    bq, _ = fixture("sec5_B")
    _, C = fixture("sec3_C")
    assert certify_relation_extension(bq, relation_extension(C)) is None


def test_cyclic_input_rejected(fixture):
    with pytest.raises(NonTriangular):
        relation_extension(fixture("sec3_B")[1])


def test_high_global_dimension_rejected():
    text = ("algebra A4\nvertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\n"
            "relations\na*b = 0\nb*c = 0\n")
    with pytest.raises(GlobalDimensionTooHigh):
        relation_extension(compute_basis(parse_bound_quiver(text)))


def test_hereditary_has_zero_bimodule():
    A = compute_basis(parse_bound_quiver("algebra K\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n"))
    ext = relation_extension(A)
    assert ext.bimodule.dim == 0
    assert ext.algebra.dim == A.dim


def test_characteristic_p(fixture):
    bq, _ = fixture("sec3_B", 7)
    _, C = fixture("sec3_C", 7)
    ext = relation_extension(C)
    assert len(ext.presentation.relations) == 6
    assert certify_relation_extension(bq, ext) is not None
