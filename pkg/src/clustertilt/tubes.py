"""Induction and coinduction along B -> C, rays and corays, and tube completion."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .algebra import Algebra, relations_hold, vadd
from .arknit import ARFragment, knit_around, ar_sequence_ending_at, verify_sequence
from .homology import (minimal_presentation, projective_cover, map_from_projective, projective_dimension, projective_map,
                       syzygy, tau, tau_inverse)
from .modules import (ModuleMap, Representation, _op, cokernel, decompose, dual, dual_map, injective,
                      is_isomorphic, kernel, projective, quotient_module, radical, socle)


class NotAQuotientSetup(ValueError):
    pass


class CensusIncomplete(RuntimeError):
    pass


class RaysDoNotIntersect(RuntimeError):
    pass


class HypothesisViolated(ValueError):
    pass


# algebra maps ------------------------------------------------------------------------
class AlgebraMap:
    """A unital algebra map given on arrows; vertices are matched by label."""

    def __init__(self, source: Algebra, target: Algebra, images: dict):
        self.source = source
        self.target = target
        self.images = images
        self._cache: dict = {}

    def basis_image(self, i: int) -> dict:
        if i not in self._cache:
            S, T = self.source, self.target
            v, arrows = S.paths[i]
            lab = S.vertices[v]
            if lab not in T.vertices:
                x = {}
            else:
                x = {T.idem[T.vertex(lab)]: T.field(1)}
            for a in arrows:
                if not x:
                    break
                x = T.mul(x, self.images[S.arrows[a].label])
            self._cache[i] = x
        return self._cache[i]

    def __call__(self, x: dict) -> dict:
        out: dict = {}
        for i, c in x.items():
            vadd(out, self.basis_image(i), c)
        return out

    def is_homomorphism(self) -> bool:
        S = self.source
        if S.presentation is None:
            return False
        return relations_hold(S.presentation, self.target, self.images)


def label_map(source: Algebra, target: Algebra, missing_zero: bool = False) -> AlgebraMap:
    """Arrows go to the equally labelled arrows; absent labels go to zero if allowed."""
    images = {}
    for a in source.arrows:
        try:
            images[a.label] = target.arrow(a.label)
        except (KeyError, ValueError):
            if not missing_zero:
                raise NotAQuotientSetup(f"arrow {a.label} has no counterpart")
            images[a.label] = {}
    return AlgebraMap(source, target, images)


@dataclass
class QuotientSetup:
    """B with a quotient C and a section C -> B (so B is a C-bimodule)."""
    B: Algebra
    C: Algebra
    embed: AlgebraMap
    project: AlgebraMap


def quotient_setup(B: Algebra, C: Algebra) -> QuotientSetup:
    """Match C to B by arrow labels; checks both directions are algebra maps."""
    if sorted(C.vertices) != sorted(B.vertices):
        raise NotAQuotientSetup("C and B must have the same vertices")
    emb = label_map(C, B)
    proj = label_map(B, C, missing_zero=True)
    if not emb.is_homomorphism():
        raise NotAQuotientSetup("C does not embed into B by arrow labels")
    if not proj.is_homomorphism():
        raise NotAQuotientSetup("B does not project onto C by arrow labels")
    return QuotientSetup(B, C, emb, proj)


def _op_setup(st: QuotientSetup) -> QuotientSetup:
    if getattr(st, "_opst", None) is None:
        Bo, Co = _op(st.B), _op(st.C)
        st._opst = QuotientSetup(Bo, Co, label_map(Co, Bo), label_map(Bo, Co, missing_zero=True))
    return st._opst


def restrict(X: Representation, st: QuotientSetup) -> Representation:
    """A C-module viewed as a B-module through the projection B -> C."""
    B, F = st.B, X.field
    mats = []
    for k, a in enumerate(B.arrows):
        s, t = B.quiver.src(k), B.quiver.tgt(k)
        img = st.project(B.arrow(a.label))
        m = F.zeros(X.dims[X.alg.vertex(B.vertices[s])], X.dims[X.alg.vertex(B.vertices[t])])
        for i, c in img.items():
            m += X.basis_action(i) * c
        mats.append(m)
    dims = [X.dims[X.alg.vertex(lab)] for lab in B.vertices]
    return Representation(B, dims, mats, check=False)


@dataclass
class Induced:
    module: Representation     # X (x) B, or Hom(B, X)
    natural: ModuleMap         # X (x) B -> X, or X -> Hom(B, X)
    kernel: Representation     # kernel of the projection, or cokernel of the inclusion
    source: Representation


def induce(X: Representation, st: QuotientSetup) -> Induced:
    """X (x)_C B from a projective presentation of X, with the projection onto X."""
    B, C, F = st.B, st.C, X.field
    pres = minimal_presentation(X)
    vb = [B.vertex(C.vertices[v]) for v in pres.p0]
    wb = [B.vertex(C.vertices[v]) for v in pres.p1]
    elems = [[st.embed(c) if c else {} for c in row] for row in pres.elems]
    d = projective_map(B, wb, vb, elems)
    XB, q = cokernel(d)
    Xr = restrict(X, st)
    # generators of X (x) B go to the generators of X
    gens = [vec for (_, vec) in projective_cover(X).generators]
    P0 = d.target
    mats = [F.zeros(P0.dims[u], Xr.dims[u]) for u in range(B.n)]
    off = [0] * B.n
    for v, vec in zip(vb, gens):
        f = map_from_projective(B, v, Xr, vec)
        for u in range(B.n):
            r = f.mats[u].nrows()
            for a in range(r):
                for b in range(Xr.dims[u]):
                    mats[u][off[u] + a, b] = f.mats[u][a, b]
            off[u] += r
    nat = []
    for u in range(B.n):
        m = q.mats[u]
        if m.ncols() == 0:
            nat.append(F.zeros(0, Xr.dims[u]))
            continue
        pre = la.solve_left(m, F.eye(m.ncols()))
        nat.append(pre * mats[u])
    natural = ModuleMap(XB, Xr, nat)
    K, _ = kernel(natural)
    return Induced(XB, natural, K, X)


def coinduce(X: Representation, st: QuotientSetup) -> Induced:
    """Hom_C(B, X) = D(DX (x)_C B) with the inclusion of X."""
    ind = induce(dual(X), _op_setup(st))
    M = dual(ind.module)
    inc = dual_map(ind.natural)
    Xr = restrict(X, st)
    inc = ModuleMap(Xr, M, inc.mats)
    Q, _ = cokernel(inc)
    return Induced(M, inc, Q, X)


# rays and corays ---------------------------------------------------------------------
@dataclass
class RayCoray:
    """A sectional line in a tube; corays end at the mouth, rays start there."""
    fragment: ARFragment
    ids: list
    direction: str          # "ray" or "coray"
    anchor: int
    closed: bool            # the mouth end was reached inside the fragment

    @property
    def modules(self) -> list:
        return [self.fragment.modules[i] for i in self.ids]

    def names(self) -> list:
        return [self.fragment.names[i] for i in self.ids]

    def dimension_vectors(self) -> list:
        return [tuple(self.fragment.modules[i].dims) for i in self.ids]


def _step_forward(frag: ARFragment, prev, cur):
    """Successors of cur continuing a sectional path from prev, or None if unknown."""
    if cur not in frag.expanded_right:
        return None
    excl = frag.tau_inv.get(prev) if prev is not None else None
    return [s for s in frag.successors(cur) if s != excl or excl is None]


def _step_backward(frag: ARFragment, nxt, cur):
    if cur not in frag.expanded_left:
        return None
    excl = frag.tau.get(nxt) if nxt is not None else None
    return [p for p in frag.predecessors(cur) if p != excl or excl is None]


def _walk(frag: ARFragment, a, b, step, limit: int):
    """Continue the sectional path a -> b (or b <- a backwards) while it is unique."""
    path = [b]
    prev, cur = a, b
    for _ in range(limit):
        opts = step(frag, prev, cur)
        if opts is None:
            return path, False
        if not opts:
            return path, True
        if len(opts) > 1:
            raise ValueError(f"sectional continuation at {frag.names[cur]} is not unique")
        prev, cur = cur, opts[0]
        path.append(cur)
    return path, False


def coray_through(frag: ARFragment, x: int, depth: int = 1, limit: int = 40) -> RayCoray:
    """The coray through module x, with ``depth`` modules before x."""
    end = None
    for s in frag.successors(x):
        fwd, done = _walk(frag, x, s, _step_forward, limit)
        if done:
            end = [x] + fwd
            break
    if end is None:
        if len(frag.successors(x)) > 1:
            raise ValueError(f"no successor of {frag.names[x]} reaches the mouth")
        end = [x]
    nxt = end[1] if len(end) > 1 else None
    back = []
    opts = _step_backward(frag, nxt, x)
    if opts and depth > 0:
        if len(opts) > 1:
            raise ValueError(f"coray through {frag.names[x]} is not determined")
        back, _ = _walk(frag, x, opts[0], _step_backward, depth - 1)
        back = back[:depth]
    return RayCoray(frag, list(reversed(back)) + end, "coray", x, True)


def ray_through(frag: ARFragment, x: int, depth: int = 1, limit: int = 40) -> RayCoray:
    """The ray through module x, with ``depth`` modules after x."""
    start = None
    for p in frag.predecessors(x):
        bwd, done = _walk(frag, x, p, _step_backward, limit)
        if done:
            start = list(reversed(bwd)) + [x]
            break
    if start is None:
        if len(frag.predecessors(x)) > 1:
            raise ValueError(f"no predecessor of {frag.names[x]} reaches the mouth")
        start = [x]
    prv = start[-2] if len(start) > 1 else None
    fwd = []
    opts = _step_forward(frag, prv, x)
    if opts and depth > 0:
        if len(opts) > 1:
            raise ValueError(f"ray through {frag.names[x]} is not determined")
        fwd, _ = _walk(frag, x, opts[0], _step_forward, depth - 1)
        fwd = fwd[:depth]
    return RayCoray(frag, start + fwd, "ray", x, True)


def is_on_mouth(frag: ARFragment, i: int) -> bool:
    """One arrow in and one arrow out (counted with multiplicity)."""
    if i not in frag.expanded_left or i not in frag.expanded_right:
        raise CensusIncomplete(f"{frag.names[i]} is not fully knitted")
    ins = sum(m for (a, b), m in frag.arrows.items() if b == i)
    outs = sum(m for (a, b), m in frag.arrows.items() if a == i)
    return ins <= 1 and outs <= 1


def tube_rank(frag: ARFragment, ids=None, bound: int = 24):
    """tau-period of the periodic modules among ``ids`` (None if none is periodic)."""
    for i in (range(len(frag)) if ids is None else ids):
        cur = i
        for k in range(1, bound + 1):
            if frag.is_projective(cur):
                break
            cur = frag.ensure_tau(cur)
            if cur == i:
                return k
            if frag.modules[cur].dim > 4 * frag.modules[i].dim + 8:
                break
    return None


# locating projectives ------------------------------------------------------------------
@dataclass
class Census:
    """Component of every indecomposable projective: transjective or one of the tubes."""
    fragment: ARFragment
    component: dict          # vertex index -> component key (smallest module id in it)
    kind: dict               # component key -> "transjective" or "tube"
    rank: dict               # tube key -> rank

    def tube_vertices(self) -> list:
        return sorted(v for v, c in self.component.items() if self.kind[c] == "tube")

    def transjective_vertices(self) -> list:
        return sorted(v for v, c in self.component.items() if self.kind[c] == "transjective")

    def tubes(self) -> list:
        """Vertex groups per tube, ordered by smallest vertex."""
        groups: dict = {}
        for v, c in self.component.items():
            if self.kind[c] == "tube":
                groups.setdefault(c, []).append(v)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _components(frag: ARFragment) -> dict:
    parent = list(range(len(frag)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    links = list(frag.arrows) + [(a, b) for a, b in frag.tau.items() if b is not None]
    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return {i: find(i) for i in range(len(frag))}


def locate_projectives(alg: Algebra, radius: int = 4, max_dim: int = 40,
                       fragment: ARFragment | None = None) -> Census:
    """Knit around every projective and sort them into transjective part and tubes.

    A component is a tube when it contains a tau-periodic module; transjective
    modules are never tau-periodic.
    """
    frag = fragment or ARFragment(alg)
    if not frag.projectives:
        frag.register_census()
    frag = knit_around(alg, [frag.projectives[v] for v in range(alg.n)], radius, frag, max_dim=max_dim)
    comp = _components(frag)
    members: dict = {}
    for i, c in comp.items():
        members.setdefault(c, []).append(i)
    kind, rank = {}, {}
    for v in range(alg.n):
        c = comp[frag.projectives[v]]
        if c in kind:
            continue
        ids = [i for i in members[c] if not frag.is_projective(i) and not frag.is_injective(i)]
        r = tube_rank(frag, ids)
        kind[c] = "tube" if r is not None else "transjective"
        if r is not None:
            rank[c] = r
    component = {v: comp[frag.projectives[v]] for v in range(alg.n)}
    return Census(frag, component, kind, rank)


def root_projectives(census: Census) -> list:
    """Tube vertices x joined by an arrow to a vertex y with P(y) transjective."""
    alg = census.fragment.algebra
    trans = set(census.transjective_vertices())
    if not trans and census.tube_vertices():
        raise CensusIncomplete("no transjective projective located")
    out = []
    for x in census.tube_vertices():
        for k in range(len(alg.arrows)):
            s, t = alg.quiver.src(k), alg.quiver.tgt(k)
            if (s == x and t in trans) or (t == x and s in trans):
                out.append(x)
                break
    return out


# induced corays and coinduced rays ----------------------------------------------------------
@dataclass
class InducedLine:
    """A coray (ray) of mod C carried to mod B by induction (coinduction)."""
    source_line: RayCoray
    target_line: RayCoray
    induced: list                       # Induced records, one per module
    irreducible: bool                   # consecutive modules joined by arrows in the B fragment
    matches_line: bool                  # equals the coray (ray) of B through the root

    def kernels(self) -> list:
        return [ind.kernel for ind in self.induced]

    def kernels_isomorphic(self) -> bool:
        ks = self.kernels()
        return all(k.dims == ks[0].dims and is_isomorphic(k, ks[0]) for k in ks[1:])


def _carry(line: RayCoray, fB: ARFragment, functor, st, direction: str, anchor: int) -> InducedLine:
    induced = [functor(M, st) for M in line.modules]
    ids = []
    for ind in induced:
        j = fB.find(ind.module)
        if j is None:
            raise CensusIncomplete("an induced module lies outside the knitted B fragment")
        ids.append(j)
    irr = all(fB.multiplicity(a, b) >= 1 for a, b in zip(ids, ids[1:]))
    out = RayCoray(fB, ids, direction, anchor, line.closed)
    return InducedLine(line, out, induced, irr, False)


def coray_through_root(st: QuotientSetup, i, depth: int = 1, radius: int = 4,
                       fragment: ARFragment | None = None) -> InducedLine:
    """S_1 (x)_C B for the coray S_1 of mod C through P_C(i)."""
    B, C = st.B, st.C
    lab = i if not isinstance(i, int) else B.vertices[i]
    fC = knit_around(C, [projective(C, lab)], radius)
    pc = fC.find(projective(C, lab))
    line = coray_through(fC, pc, depth)
    fB = fragment or ARFragment(B)
    if not fB.projectives:
        fB.register_census()
    pb = fB.projectives[B.vertex(lab)]
    fB = knit_around(B, [pb], radius, fB)
    res = _carry(line, fB, induce, st, "coray", pb)
    direct = coray_through(fB, pb, depth)
    res.matches_line = direct.ids == res.target_line.ids
    return res


def ray_through_root(st: QuotientSetup, i, depth: int = 1, radius: int = 4,
                     fragment: ARFragment | None = None) -> InducedLine:
    """Hom_C(B, S_2) for the ray S_2 of mod C through I_C(i)."""
    B, C = st.B, st.C
    lab = i if not isinstance(i, int) else B.vertices[i]
    fC = knit_around(C, [injective(C, lab)], radius)
    ic = fC.find(injective(C, lab))
    line = ray_through(fC, ic, depth)
    fB = fragment or ARFragment(B)
    if not fB.projectives:
        fB.register_census()
    ib = fB.injectives[B.vertex(lab)]
    fB = knit_around(B, [ib], radius, fB)
    res = _carry(line, fB, coinduce, st, "ray", ib)
    direct = ray_through(fB, ib, depth)
    res.matches_line = direct.ids == res.target_line.ids
    return res


# tube completion -------------------------------------------------------------------------
@dataclass
class TubeData:
    fragment: ARFragment
    rank: int | None
    root: int
    mesh: tuple | None          # (J, N, R) fragment ids
    mesh_certificate: dict
    coray: InducedLine | None = None
    ray: InducedLine | None = None


def complete_tube(B: Algebra, i, rows: int, st1: QuotientSetup | None = None,
                  st2: QuotientSetup | None = None, depth: int = 2) -> TubeData:
    """Knit the tube through P_B(i) and certify the mesh 0 -> J -> N -> R -> 0."""
    lab = i if not isinstance(i, int) else B.vertices[i]
    v = B.vertex(lab)
    frag = ARFragment(B)
    frag.register_census()
    p, q = frag.projectives[v], frag.injectives[v]
    cor = ray = None
    if st1 is not None:
        cor = coray_through_root(st1, lab, depth, max(rows, depth + 2), frag)
    if st2 is not None:
        ray = ray_through_root(st2, lab, depth, max(rows, depth + 2), frag)
    frag = knit_around(B, [p, q], rows, frag)
    frag.tags.update({k: "tube" for k in range(len(frag))})
    rs = set(frag.predecessors(p))
    js = set(frag.successors(q))
    if cor is not None and ray is not None:
        cands = [n for n in cor.target_line.ids if n in set(ray.target_line.ids)]
    else:
        cands = list(range(len(frag)))
    mesh = None
    for n in cands:
        for r in sorted(rs & set(frag.successors(n))):
            j = frag.tau.get(r)
            if j is not None and j in js and n in frag.successors(j):
                mesh = (j, n, r)
                break
        if mesh:
            break
    if cor is not None and ray is not None and mesh is None:
        raise RaysDoNotIntersect("the induced coray and the coinduced ray do not meet in a mesh")
    cert = frag.verify_mesh(mesh[2]) if mesh else {"ok": False, "reason": "no mesh found"}
    comp = _components(frag)
    ids = [k for k in range(len(frag)) if comp[k] == comp[p]
           and not frag.is_projective(k) and not frag.is_injective(k)]
    return TubeData(frag, tube_rank(frag, ids), p, mesh, cert, cor, ray)


# the mouth formula -------------------------------------------------------------------------
@dataclass
class MouthCheck:
    applicable: bool
    reason: str = ""
    direct: list = dc_field(default_factory=list)       # summands of tau Omega I_C(i)
    predicted: Representation | None = None
    on_mouth: bool = False
    agrees: bool = False


def tau_omega_injective(C: Algebra, i, radius: int = 4) -> MouthCheck:
    """tau Omega I_C(i) computed in mod C, against the mouth end of the coray through P_C(i)."""
    lab = i if not isinstance(i, int) else C.vertices[i]
    I = injective(C, lab)
    pd = projective_dimension(I)
    if not isinstance(pd, int) or pd > 2:
        raise HypothesisViolated(f"pd I({lab}) = {pd}, expected at most 2")
    if pd <= 1:
        return MouthCheck(False, f"pd I({lab}) = {pd}")
    K, _, _ = syzygy(I)
    X = tau(K)
    direct = [M for M, m in decompose(X) for _ in range(m)] if not X.is_zero() else []
    frag = ARFragment(C)
    frag.register_census()
    pc = frag.projectives[C.vertex(lab)]
    ids = [frag.add(M) for M in direct]
    frag = knit_around(C, [pc] + ids, radius, frag)
    line = coray_through(frag, pc, 0)
    pred = frag.modules[line.ids[-1]]
    on_mouth = bool(ids) and all(is_on_mouth(frag, k) for k in ids)
    agrees = any(frag.modules[k].dims == pred.dims and is_isomorphic(frag.modules[k], pred) for k in ids)
    return MouthCheck(True, "", direct, pred, on_mouth, agrees)
