import functools

import pytest

from clustertilt.algebra import compute_basis
from clustertilt.modules import injective, is_isomorphic, projective, radical_quotient_dims, socle_dims
from clustertilt.quiver import parse_bound_quiver
from clustertilt.tubes import (HypothesisViolated, NotAQuotientSetup, coinduce, complete_tube, induce,
                               locate_projectives, quotient_setup, restrict, tau_omega_injective)

from conftest import cached

A4 = ("algebra A4\nvertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\n"
      "relations\na*b = 0\nb*c = 0\n")


@functools.lru_cache(maxsize=None)
def setups():
    B, C1, C2 = (cached(n)[1] for n in ("sec5_B", "sec5_C1", "sec5_C2"))
    return B, quotient_setup(B, C1), quotient_setup(B, C2)


@functools.lru_cache(maxsize=None)
def sec5_tube():
    B, st1, st2 = setups()
    return complete_tube(B, "3", 4, st1, st2)


def test_restricted_modules_are_B_modules():
    B, st1, _ = setups()
    C = st1.C
    for v in range(C.n):
        for M in (projective(C, v), injective(C, v)):
            R = restrict(M, st1)
            assert R.satisfies_relations()
            assert R.dims == M.dims


def test_induction_of_projectives():
    # e_x C (x)_C B = e_x B
    B, st1, _ = setups()
    C = st1.C
    for v in range(C.n):
        ind = induce(projective(C, v), st1)
        assert is_isomorphic(ind.module, projective(B, B.vertex(C.vertices[v])))
        assert ind.natural.is_epi()


def test_coinduction_of_injectives():
    B, _, st2 = setups()
    C = st2.C
    for v in range(C.n):
        co = coinduce(injective(C, v), st2)
        assert is_isomorphic(co.module, injective(B, B.vertex(C.vertices[v])))
        assert co.natural.is_mono()


def test_quotient_setup_requires_same_vertices(fixture):
    _, B = fixture("sec5_B")
    _, C = fixture("sec3_C")
    with pytest.raises(NotAQuotientSetup):
        quotient_setup(B, C)


def test_sec5_coray_window():
    T = sec5_tube()
    mods = T.coray.target_line.modules[-4:]
    assert [list(M.dims) for M in mods] == [[1, 0, 1, 1, 1], [1, 0, 2, 2, 1], [1, 0, 2, 1, 1], [1, 1, 2, 1, 1]]
    assert T.coray.kernels_isomorphic()
    assert list(T.coray.kernels()[0].dims) == [0, 0, 1, 1, 0]
    assert T.coray.matches_line and T.coray.irreducible


def test_sec5_ray_window():
    T = sec5_tube()
    mods = T.ray.target_line.modules[:4]
    assert [list(M.dims) for M in mods] == [[1, 1, 2, 1, 1], [1, 1, 2, 0, 1], [1, 2, 2, 0, 1], [1, 1, 1, 0, 1]]
    assert [list(radical_quotient_dims(M)) for M in mods] == [[0, 1, 0, 0, 0], [0, 1, 0, 0, 0],
                                                              [0, 2, 0, 0, 0], [0, 1, 0, 0, 0]]
    assert T.ray.kernels_isomorphic()
    assert list(T.ray.kernels()[0].dims) == [0, 1, 1, 0, 0]


def test_sec5_mesh_and_rank():
    T = sec5_tube()
    J, N, R = (list(T.fragment.modules[i].dims) for i in T.mesh)
    assert (J, N, R) == ([1, 1, 1, 0, 1], [2, 1, 2, 1, 2], [1, 0, 1, 1, 1])
    assert T.mesh_certificate["ok"]
    assert T.rank == 4


def test_mouth_prediction():
    _, st1, _ = setups()
    mc = tau_omega_injective(st1.C, "3")
    assert mc.applicable and mc.on_mouth and mc.agrees
    assert [list(M.dims) for M in mc.direct] == [[1, 1, 1, 0, 1]]


def test_mouth_hypotheses():
    A = compute_basis(parse_bound_quiver(A4))
    with pytest.raises(HypothesisViolated):
        tau_omega_injective(A, "1")
    assert not tau_omega_injective(A, "2").applicable


@pytest.mark.parametrize("name, trans, tubes", [
    ("sec3_B", ["1", "4"], [(["2"], 2), (["3"], 2)]),
    ("e7tilde", ["1", "2"], [(["3", "4"], 3), (["5"], 2), (["6", "7", "8"], 4)]),
])
def test_census(fixture, name, trans, tubes):
    _, B = fixture(name)
    census = locate_projectives(B)
    V = B.vertices
    assert [V[v] for v in census.transjective_vertices()] == trans
    got = []
    for g in census.tubes():
        c = census.component[g[0]]
        got.append(([V[v] for v in g], census.rank[c]))
    assert got == tubes


def test_tops_and_socles_along_sec5_coray():
    mods = sec5_tube().coray.target_line.modules[-4:]
    assert [list(radical_quotient_dims(M)) for M in mods] == [[1, 0, 0, 0, 0], [0, 0, 1, 0, 0],
                                                              [0, 0, 1, 0, 0], [0, 1, 0, 0, 0]]
    assert [list(socle_dims(M)) for M in mods] == [[0, 0, 0, 1, 0], [0, 0, 0, 2, 0],
                                                   [0, 0, 0, 1, 0], [0, 0, 0, 1, 0]]
