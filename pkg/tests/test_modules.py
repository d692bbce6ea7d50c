import pytest

from clustertilt import modules as md
from clustertilt.modules import (decompose, direct_sum, dual, hom_dim, injective, is_indecomposable,
                                 projective, radical_quotient_dims, simple, socle_dims)

from conftest import ALL_FIXTURES
import oracles


def _standard(A):
    mods = []
    for v in range(A.n):
        mods += [projective(A, v), injective(A, v), simple(A, v)]
    return mods


@pytest.mark.parametrize("name", ["sec3_C", "sec3_B", "sec5_C1", "remark3_C"])
def test_hom_dims_match_oracle(fixture, name):
    _, A = fixture(name)
    mods = _standard(A)
    for M in mods:
        for N in mods:
            assert hom_dim(M, N) == oracles.hom_dim(M, N)


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_projective_and_injective_dims(fixture, name):
    _, A = fixture(name)
    d = A.dimension_matrix()
    for v in range(A.n):
        assert list(projective(A, v).dims) == d[v]
        assert list(injective(A, v).dims) == [row[v] for row in d]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_standard_modules_satisfy_relations(fixture, name):
    _, A = fixture(name)
    for v in range(A.n):
        assert projective(A, v).satisfies_relations()
        assert injective(A, v).satisfies_relations()


@pytest.mark.parametrize("name", ["sec3_B", "sec5_B", "remark3_Btilde"])
def test_top_and_socle_of_indecomposable_projectives(fixture, name):
    _, A = fixture(name)
    for v in range(A.n):
        top = radical_quotient_dims(projective(A, v))
        soc = socle_dims(injective(A, v))
        e = [1 if u == v else 0 for u in range(A.n)]
        assert list(top) == e
        assert list(soc) == e


@pytest.mark.parametrize("name", ["sec3_C", "sec5_C1", "sec3_B"])
def test_indecomposables_have_local_endomorphisms(fixture, name):
    _, A = fixture(name)
    for M in _standard(A):
        assert is_indecomposable(M)


def test_decompose_direct_sum(fixture):
    _, A = fixture("sec5_B")
    P, S, I = projective(A, 2), simple(A, 0), injective(A, 4)
    M = direct_sum([P, S, P, I])
    parts = decompose(M)
    got = sorted((tuple(N.dims), m) for N, m in parts)
    assert got == sorted([(P.dims, 2), (S.dims, 1), (I.dims, 1)])
    assert sum(N.dim * m for N, m in parts) == M.dim


def test_double_dual(fixture):
    _, A = fixture("sec3_C")
    for M in _standard(A):
        DD = dual(dual(M))
        assert DD.dims == M.dims
        assert all(a == b for a, b in zip(DD.mats, M.mats))


def test_kernel_and_cokernel_dimensions(fixture):
    _, A = fixture("sec5_C1")
    for v in range(A.n):
        P = projective(A, v)
        for u in range(A.n):
            for f in md.hom_space(P, projective(A, u)):
                K, C, Im = md.kernel(f), md.cokernel(f), md.image(f)
                K, C, Im = (x[0] if isinstance(x, tuple) else x for x in (K, C, Im))
                assert K.dim + Im.dim == P.dim
                assert C.dim + Im.dim == projective(A, u).dim
