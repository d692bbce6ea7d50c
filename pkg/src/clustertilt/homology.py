"""Projective presentations, syzygies, the AR translate and Ext groups."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .algebra import Algebra, vadd
from .modules import (ModuleMap, Representation, _op, cokernel, direct_sum, dual, hom_space,
                      kernel, map_signature, projective, radical, submodule, zero_module)


class GlobalDimensionTooHigh(ValueError):
    pass


@dataclass(frozen=True)
class AtLeast:
    """Lower bound returned when a dimension search hits its bound."""
    bound: int

    def __repr__(self):
        return f">={self.bound}"


def projective_sum(alg: Algebra, verts: list) -> Representation:
    cache = _proj_cache(alg)
    return direct_sum([cache[v] for v in verts], alg)


def _proj_cache(alg: Algebra):
    if getattr(alg, "_projs", None) is None:
        alg._projs = [projective(alg, v) for v in range(alg.n)]
    return alg._projs


def map_from_projective(alg: Algebra, v: int, M: Representation, vec) -> ModuleMap:
    """The map P(v) -> M sending e_v to the row vector ``vec`` of M_v."""
    P = _proj_cache(alg)[v]
    F = alg.field
    mats = []
    for u in range(alg.n):
        els = P.basis_elements[u]
        m = F.zeros(len(els), M.dims[u])
        for r, i in enumerate(els):
            row = vec * M.basis_action(i)
            for c in range(M.dims[u]):
                m[r, c] = row[0, c]
        mats.append(m)
    return ModuleMap(P, M, mats, check=False)


def projective_map(alg: Algebra, src: list, tgt: list, elems) -> ModuleMap:
    """Map (+)P(src[j]) -> (+)P(tgt[i]) with e_{src[j]} -> sum_i elems[j][i]."""
    F = alg.field
    projs = _proj_cache(alg)
    S = direct_sum([projs[v] for v in src], alg)
    T = direct_sum([projs[v] for v in tgt], alg)
    mats = [F.zeros(S.dims[u], T.dims[u]) for u in range(alg.n)]
    soff = [0] * alg.n
    for j, y in enumerate(src):
        Py = projs[y]
        toff = [0] * alg.n
        for i, x in enumerate(tgt):
            Px = projs[x]
            c = elems[j][i]
            if c:
                for u in range(alg.n):
                    pos = {b: k for k, b in enumerate(Px.basis_elements[u])}
                    for r, b in enumerate(Py.basis_elements[u]):
                        for k, val in alg.mul(c, {b: F(1)}).items():
                            mats[u][soff[u] + r, toff[u] + pos[k]] += val
            for u in range(alg.n):
                toff[u] += Px.dims[u]
        for u in range(alg.n):
            soff[u] += Py.dims[u]
    return ModuleMap(S, T, mats, check=False)


def _split_vector(alg: Algebra, verts: list, u: int, vec) -> list:
    """Split an element of ((+)P(verts))_u into algebra elements in e_x A e_u."""
    projs = _proj_cache(alg)
    out, off = [], 0
    for x in verts:
        els = projs[x].basis_elements[u]
        out.append({b: vec[0, off + k] for k, b in enumerate(els) if vec[0, off + k] != 0})
        off += len(els)
    return out


@dataclass
class ProjectiveCover:
    module: Representation
    verts: list
    projective: Representation
    map: ModuleMap
    generators: list  # (vertex, row vector) per summand


def projective_cover(M: Representation) -> ProjectiveCover:
    alg, F = M.alg, M.field
    R, rin = radical(M)
    verts, gens, maps = [], [], []
    for v in range(alg.n):
        comp, _ = la.complement_rows(rin.mats[v] if R.dims[v] else F.zeros(0, M.dims[v]), M.dims[v], F)
        for r in range(comp.nrows()):
            vec = la.rows(comp, [r])
            verts.append(v)
            gens.append((v, vec))
            maps.append(map_from_projective(alg, v, M, vec))
    P = projective_sum(alg, verts)
    mats = []
    for u in range(alg.n):
        mats.append(la.vstack([f.mats[u] for f in maps], ncols=M.dims[u], field=F) if maps
                    else F.zeros(0, M.dims[u]))
    return ProjectiveCover(M, verts, P, ModuleMap(P, M, mats, check=False), gens)


def syzygy(M: Representation):
    """Omega M with its inclusion into the projective cover; also returns the cover."""
    cov = projective_cover(M)
    K, inc = kernel(cov.map)
    return K, inc, cov


@dataclass
class ProjectivePresentation:
    """P1 --d--> P0 --eps--> M --> 0 with P_i = (+) P(verts_i)."""
    module: Representation
    p0: list
    p1: list
    elems: list  # elems[j][i] in e_{p0[i]} A e_{p1[j]}
    cover: ModuleMap
    d: ModuleMap
    minimal: bool = True

    def is_exact(self) -> bool:
        if not (self.d * self.cover).is_zero():
            return False
        if not self.cover.is_epi():
            return False
        K, _ = kernel(self.cover)
        return sum(la.rank(m) for m in self.d.mats) == K.dim

    def in_radical(self) -> bool:
        _, rin = radical(self.d.target)
        for u, m in enumerate(self.d.mats):
            if m.nrows() and not la.is_zero(m):
                base = rin.mats[u]
                if base.nrows() == 0 or la.rank(la.vstack([base, m], field=self.module.field)) != la.rank(base):
                    return False
        return True


def minimal_presentation(M: Representation) -> ProjectivePresentation:
    alg = M.alg
    cov = projective_cover(M)
    K, inc = kernel(cov.map)
    kc = projective_cover(K)
    elems = []
    for (v, vec) in kc.generators:
        img = vec * inc.mats[v]
        elems.append(_split_vector(alg, cov.verts, v, img))
    d = kc.map * inc
    return ProjectivePresentation(M, cov.verts, kc.verts, elems, cov.map, d)


def transpose(M: Representation) -> Representation:
    """Tr M as a right module over the opposite algebra."""
    alg = M.alg
    op = _op(alg)
    pres = minimal_presentation(M)
    conv = alg.to_op
    # Hom(-, A) turns d into (+)P_op(p0) -> (+)P_op(p1)
    elems = [[conv(pres.elems[j][i]) if pres.elems[j][i] else {} for j in range(len(pres.p1))]
             for i in range(len(pres.p0))]
    f = projective_map(op, pres.p0, pres.p1, elems)
    Q, _ = cokernel(f)
    return Q


def tau(M: Representation) -> Representation:
    """tau M = D Tr M."""
    if M.is_zero():
        return M
    return dual(transpose(M))


def tau_inverse(M: Representation) -> Representation:
    """tau^-1 M = Tr D M."""
    if M.is_zero():
        return M
    return transpose(dual(M)) if False else dual(tau(dual(M)))


def syzygies(M: Representation, n: int) -> list:
    out = [M]
    for _ in range(n):
        K, _, _ = syzygy(out[-1])
        out.append(K)
    return out


def projective_dimension(M: Representation, bound: int = 6):
    cur = M
    if cur.is_zero():
        return -1
    for n in range(bound + 1):
        K, _, _ = syzygy(cur)
        if K.is_zero():
            return n
        cur = K
    return AtLeast(bound + 1)


def injective_dimension(M: Representation, bound: int = 6):
    return projective_dimension(dual(M), bound)


def global_dimension(alg: Algebra, bound: int = 6):
    from .modules import simple
    best = 0
    for v in range(alg.n):
        pd = projective_dimension(simple(alg, v), bound)
        if isinstance(pd, AtLeast):
            return pd
        best = max(best, pd)
    return best


@dataclass
class ExtGroup:
    """Ext^i(M, N) realised as maps Omega^i M -> N modulo restrictions from P_{i-1}."""
    source: Representation
    target: Representation
    degree: int
    omega: Representation
    inclusion: ModuleMap
    space: "ClassSpace"

    @property
    def dimension(self) -> int:
        return self.space.dimension

    @property
    def cocycles(self) -> list:
        return self.space.cocycles

    def coordinates(self, f: ModuleMap) -> list:
        return self.space.coordinates(f)


def ext(M: Representation, N: Representation, i: int = 1) -> ExtGroup:
    if i < 1:
        raise ValueError("degree must be positive")
    cur = M
    for _ in range(i - 1):
        cur, _, _ = syzygy(cur)
    K, inc, cov = syzygy(cur)
    return ExtGroup(M, N, i, K, inc, ClassSpace(K, inc, cov.projective, N))


def ext_dim(M: Representation, N: Representation, i: int = 1) -> int:
    """dim Ext^i via dimension counting (no cocycles)."""
    cur = M
    for _ in range(i - 1):
        cur, _, _ = syzygy(cur)
        if cur.is_zero():
            return 0
    K, inc, cov = syzygy(cur)
    from .modules import hom_dim
    return hom_dim(K, N) - hom_dim(cov.projective, N) + hom_dim(cur, N)


def idempotent_position(P: Representation, verts: list, j: int):
    """(vertex, index) of the generator e_v of the j-th summand of (+)P(verts)."""
    alg = P.alg
    v = verts[j]
    projs = _proj_cache(alg)
    off = sum(projs[w].dims[v] for w in verts[:j])
    return v, off + projs[v].basis_elements[v].index(alg.idem[v])


def lift_through_epi(P: Representation, verts: list, g: ModuleMap, epi: ModuleMap) -> ModuleMap:
    """Lift g: (+)P(verts) -> N along an epimorphism epi: Q -> N."""
    alg, F = P.alg, P.field
    Q = epi.source
    parts = []
    for j in range(len(verts)):
        v, pos = idempotent_position(P, verts, j)
        w = la.rows(g.mats[v], [pos])
        x = la.solve_left(epi.mats[v], w) if epi.mats[v].nrows() else (
            F.zeros(1, 0) if la.is_zero(w) else None)
        if x is None:
            raise ValueError("map does not lift: target map is not surjective")
        parts.append(map_from_projective(alg, v, Q, x))
    mats = []
    for u in range(alg.n):
        mats.append(la.vstack([f.mats[u] for f in parts], ncols=Q.dims[u], field=F) if parts
                    else F.zeros(0, Q.dims[u]))
    return ModuleMap(P, Q, mats, check=False)


@dataclass
class Resolution:
    """First two steps of a minimal projective resolution.

    P1 -> P0 -> M with Omega1 = ker(P0 -> M) and Omega2 = ker(P1 -> Omega1).
    """
    module: Representation
    cover0: ProjectiveCover
    omega1: Representation
    inc1: ModuleMap
    cover1: ProjectiveCover
    omega2: Representation
    inc2: ModuleMap


def resolution(M: Representation) -> Resolution:
    K1, inc1, cov0 = syzygy(M)
    K2, inc2, cov1 = syzygy(K1)
    return Resolution(M, cov0, K1, inc1, cov1, K2, inc2)


def lift_to_omega2(f: ModuleMap, rs: Resolution, rt: Resolution) -> ModuleMap:
    """The map Omega^2(source) -> Omega^2(target) induced by f: rs.module -> rt.module."""
    g0 = lift_through_epi(rs.cover0.projective, rs.cover0.verts, rs.cover0.map * f, rt.cover0.map)
    # restrict to Omega1
    r1 = _restrict(rs.inc1 * g0, rt.inc1)
    g1 = lift_through_epi(rs.cover1.projective, rs.cover1.verts, rs.cover1.map * r1, rt.cover1.map)
    return _restrict(rs.inc2 * g1, rt.inc2)


def _restrict(f: ModuleMap, mono: ModuleMap) -> ModuleMap:
    from .modules import factor_through_mono
    g = factor_through_mono(f, mono)
    if g is None:
        raise ValueError("map does not factor through the submodule")
    return g


class ClassSpace:
    """Hom(K, N) modulo the maps that extend along K -> P (an Ext group).

    Maps out of K are compared through the images of the generators of K.
    """

    def __init__(self, K: Representation, inc: ModuleMap, P: Representation, N: Representation):
        F = N.field
        self.K, self.N, self.field = K, N, F
        hom = hom_space(K, N)
        cob = [inc * g for g in hom_space(P, N)] if hom else []
        self.n = n = len(map_signature(hom[0])) if hom else 0
        self.cocycles = []
        if not hom:
            self._basis = F.zeros(0, 0)
            return
        Bm = la.row_space(F.matrix([map_signature(g) for g in cob], len(cob), n)) if cob else F.zeros(0, n)
        if la.rank(Bm) == 0:
            Bm = F.zeros(0, n)
        rows = Bm
        for h in hom:
            cand = la.vstack([rows, F.matrix([map_signature(h)], 1, n)], ncols=n, field=F)
            if la.rank(cand) > rows.nrows():
                rows = la.row_space(cand)
                self.cocycles.append(h)
        k = len(self.cocycles)
        self._basis = la.vstack(
            [F.matrix([map_signature(h) for h in self.cocycles], k, n), Bm], ncols=n, field=F)

    @property
    def dimension(self) -> int:
        return len(self.cocycles)

    def coordinates(self, f: ModuleMap) -> list:
        if self.dimension == 0:
            return []
        v = self.field.matrix([map_signature(f)], 1, self.n)
        x = la.solve_left(self._basis, v)
        if x is None:
            raise ValueError("map is not in Hom(K, N)")
        return [x[0, k] for k in range(self.dimension)]
