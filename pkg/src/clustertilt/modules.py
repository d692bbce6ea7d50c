"""Representations of bound quivers, morphisms and Krull-Schmidt decomposition.

A module is a right module: vectors are rows and an arrow a: x -> y acts by
``v -> v * M[a]`` with ``M[a]`` of shape dim M_x by dim M_y.
"""
from __future__ import annotations

from functools import cached_property
import random

from . import linalg as la
from .algebra import Algebra, vadd


class FieldTooSmall(ArithmeticError):
    """Idempotent splitting would need a field extension."""


def _op(alg: Algebra) -> Algebra:
    """The opposite algebra, cached; sets ``to_op`` coordinate converters both ways."""
    if getattr(alg, "_op", None) is None:
        op = alg.opposite()
        conv = op.from_opposite
        if conv is dict:
            back = dict
        else:
            F = alg.field
            m = F.matrix([[conv({i: F(1)}).get(j, F(0)) for j in range(alg.dim)] for i in range(alg.dim)],
                         alg.dim, alg.dim).inv()
            rows = [{j: m[i, j] for j in range(alg.dim) if m[i, j] != 0} for i in range(alg.dim)]

            def back(x, rows=rows):
                out: dict = {}
                for k, c in x.items():
                    vadd(out, rows[k], c)
                return out
        alg.to_op, op.to_op = conv, back
        alg._op, op._op = op, alg
    return alg._op


def opposite_algebra(alg: Algebra) -> Algebra:
    return _op(alg)


def relations_of(alg: Algebra) -> list:
    if getattr(alg, "_defrels", None) is None:
        alg._defrels = (alg._presentation.relations if alg._presentation is not None
                        else alg.raw_relations())
    return alg._defrels


class Representation:
    """A finite-dimensional right module over ``alg``."""

    def __init__(self, alg: Algebra, dims, mats, check: bool = True, name: str | None = None):
        self.alg = alg
        self.field = alg.field
        self.dims = tuple(int(d) for d in dims)
        self.mats = list(mats)
        self.name = name
        if len(self.dims) != alg.n or len(self.mats) != len(alg.arrows):
            raise ValueError("dimension vector or arrow list has the wrong length")
        q = alg.quiver
        for k, m in enumerate(self.mats):
            if la.shape(m) != (self.dims[q.src(k)], self.dims[q.tgt(k)]):
                raise ValueError(f"matrix of arrow {q.arrows[k].label} has the wrong shape")
        if check and not self.satisfies_relations():
            raise ValueError("matrices violate a relation")

    # basic data ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return sum(self.dims)

    def __len__(self):
        return self.dim

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def offsets(self):
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def dimvec_str(self) -> str:
        return "(" + ",".join(str(d) for d in self.dims) + ")"

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Representation{tag} dims={self.dimvec_str()}>"

    def path_matrix(self, path):
        v, arrows = path
        m = self.field.eye(self.dims[v])
        for a in arrows:
            m = m * self.mats[a]
        return m

    @cached_property
    def _basis_mats(self):
        return [self.path_matrix(p) for p in self.alg.paths]

    def basis_action(self, i: int):
        """Action of basis element i, as a block dims[src] x dims[tgt]."""
        return self._basis_mats[i]

    def element_matrix(self, x: dict):
        """Action of an algebra element on the total space."""
        F = self.field
        out = F.zeros(self.dim, self.dim)
        for i, c in x.items():
            s, t = self.alg.src[i], self.alg.tgt[i]
            blk = self._basis_mats[i]
            r0, c0 = self.offsets[s], self.offsets[t]
            for a in range(blk.nrows()):
                for b in range(blk.ncols()):
                    e = blk[a, b]
                    if e != 0:
                        out[r0 + a, c0 + b] += c * e
        return out

    def satisfies_relations(self) -> bool:
        for r in relations_of(self.alg):
            s = t = None
            tot = None
            for p, c in r.items():
                m = self.path_matrix(p) * self.field(c)
                tot = m if tot is None else tot + m
            if tot is not None and not la.is_zero(tot):
                return False
        return True

    def annihilates(self, x: dict) -> bool:
        for i, c in x.items():
            pass
        # group by (src, tgt) block
        blocks: dict = {}
        for i, c in x.items():
            key = (self.alg.src[i], self.alg.tgt[i])
            m = self._basis_mats[i] * c
            blocks[key] = m if key not in blocks else blocks[key] + m
        return all(la.is_zero(m) for m in blocks.values())

    def to_json(self) -> dict:
        F = self.field
        return {
            "dimension_vector": dict(zip(self.alg.vertices, self.dims)),
            "arrows": {a.label: [[F.fmt(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]
                       for a, m in zip(self.alg.arrows, self.mats)},
        }

    @classmethod
    def from_json(cls, alg: Algebra, data: dict) -> "Representation":
        F = alg.field
        dims = [int(data["dimension_vector"][v]) for v in alg.vertices]
        mats = []
        for k, a in enumerate(alg.arrows):
            rows = data["arrows"][a.label]
            mats.append(F.matrix(rows, dims[alg.quiver.src(k)], dims[alg.quiver.tgt(k)]))
        return cls(alg, dims, mats)

    # small helpers ---------------------------------------------------------
    def vertex_support(self):
        return [self.alg.vertices[v] for v in range(self.alg.n) if self.dims[v]]

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, [self.field.eye(d) for d in self.dims], check=False)

    def zero_map_to(self, other) -> "ModuleMap":
        return ModuleMap(self, other, [self.field.zeros(a, b) for a, b in zip(self.dims, other.dims)],
                         check=False)


class ModuleMap:
    """A morphism given by one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, mats, check: bool = True):
        self.source, self.target = source, target
        self.mats = list(mats)
        self.field = source.field
        if check:
            for v, m in enumerate(self.mats):
                if la.shape(m) != (source.dims[v], target.dims[v]):
                    raise ValueError("map block has the wrong shape")
            if not self.is_homomorphism():
                raise ValueError("matrices do not intertwine the arrow actions")

    def is_homomorphism(self) -> bool:
        q = self.source.alg.quiver
        for k in range(len(q.arrows)):
            s, t = q.src(k), q.tgt(k)
            lhs = self.source.mats[k] * self.mats[t]
            rhs = self.mats[s] * self.target.mats[k]
            if lhs != rhs:
                return False
        return True

    def __mul__(self, other: "ModuleMap") -> "ModuleMap":
        """``f * g`` is f followed by g (row convention)."""
        return ModuleMap(self.source, other.target, [a * b for a, b in zip(self.mats, other.mats)],
                         check=False)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)],
                         check=False)

    def scale(self, c):
        return ModuleMap(self.source, self.target, [m * self.field(c) for m in self.mats], check=False)

    def is_zero(self) -> bool:
        return all(la.is_zero(m) for m in self.mats)

    def rank(self) -> int:
        return sum(la.rank(m) for m in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and all(
            la.rank(m) == m.nrows() for m in self.mats)

    def is_mono(self) -> bool:
        return all(la.rank(m) == m.nrows() for m in self.mats)

    def is_epi(self) -> bool:
        return all(la.rank(m) == m.ncols() for m in self.mats)

    def inverse(self) -> "ModuleMap":
        return ModuleMap(self.target, self.source,
                         [m.inv() if m.nrows() else m for m in self.mats], check=False)

    def total(self):
        return la.block_diag(self.mats, self.field)


# constructors ------------------------------------------------------------------
def simple(alg: Algebra, x) -> Representation:
    v = x if isinstance(x, int) else alg.vertex(x)
    F = alg.field
    dims = [1 if u == v else 0 for u in range(alg.n)]
    mats = [F.zeros(dims[alg.quiver.src(k)], dims[alg.quiver.tgt(k)]) for k in range(len(alg.arrows))]
    return Representation(alg, dims, mats, check=False, name=f"S({alg.vertices[v]})")


def projective(alg: Algebra, x) -> Representation:
    """P(x) = e_x A."""
    v = x if isinstance(x, int) else alg.vertex(x)
    F = alg.field
    at = [[i for i in range(alg.dim) if alg.src[i] == v and alg.tgt[i] == u] for u in range(alg.n)]
    pos = [{i: k for k, i in enumerate(lst)} for lst in at]
    mats = []
    for k in range(len(alg.arrows)):
        s, t = alg.quiver.src(k), alg.quiver.tgt(k)
        m = F.zeros(len(at[s]), len(at[t]))
        for r, i in enumerate(at[s]):
            for j, c in alg.basis_mul(i, alg.arrow_index[k]).items():
                m[r, pos[t][j]] = c
        mats.append(m)
    rep = Representation(alg, [len(l) for l in at], mats, check=False, name=f"P({alg.vertices[v]})")
    rep.basis_elements = at
    return rep


def injective(alg: Algebra, x) -> Representation:
    """I(x) = D(A e_x); the basis at u is dual to e_u A e_x."""
    v = x if isinstance(x, int) else alg.vertex(x)
    F = alg.field
    at = [[i for i in range(alg.dim) if alg.tgt[i] == v and alg.src[i] == u] for u in range(alg.n)]
    pos = [{i: k for k, i in enumerate(lst)} for lst in at]
    mats = []
    for k in range(len(alg.arrows)):
        s, t = alg.quiver.src(k), alg.quiver.tgt(k)
        m = F.zeros(len(at[s]), len(at[t]))
        for cidx, j in enumerate(at[t]):
            for i, c in alg.basis_mul(alg.arrow_index[k], j).items():
                m[pos[s][i], cidx] = c
        mats.append(m)
    rep = Representation(alg, [len(l) for l in at], mats, check=False, name=f"I({alg.vertices[v]})")
    rep.basis_elements = at
    return rep


def dual(M: Representation) -> Representation:
    """D M = Hom_k(M, k) as a right module over the opposite algebra."""
    op = _op(M.alg)
    mats = [m.transpose() for m in M.mats]
    return Representation(op, M.dims, mats, check=False)


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), [m.transpose() for m in f.mats], check=False)


def direct_sum(mods, alg: Algebra | None = None) -> Representation:
    mods = list(mods)
    if not mods:
        if alg is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_module(alg)
    alg = mods[0].alg
    F = alg.field
    dims = [sum(M.dims[v] for M in mods) for v in range(alg.n)]
    mats = [la.block_diag([M.mats[k] for M in mods], F) for k in range(len(alg.arrows))]
    return Representation(alg, dims, mats, check=False)


def direct_sum_maps(maps, source: Representation | None = None, target: Representation | None = None):
    """Block diagonal map between direct sums."""
    maps = list(maps)
    F = maps[0].field
    source = source or direct_sum([f.source for f in maps])
    target = target or direct_sum([f.target for f in maps])
    n = source.alg.n
    return ModuleMap(source, target, [la.block_diag([f.mats[v] for f in maps], F) for v in range(n)],
                     check=False)


def zero_module(alg: Algebra) -> Representation:
    F = alg.field
    return Representation(alg, [0] * alg.n, [F.zeros(0, 0) for _ in alg.arrows], check=False)


def column_map(source: Representation, targets: list, maps: list) -> ModuleMap:
    """The map source -> (+) targets with components ``maps``."""
    T = direct_sum(targets, source.alg)
    F = source.field
    mats = []
    for v in range(source.alg.n):
        mats.append(la.hstack([f.mats[v] for f in maps], nrows=source.dims[v], field=F)
                    if maps else F.zeros(source.dims[v], 0))
    return ModuleMap(source, T, mats, check=False)


def row_map(sources: list, target: Representation, maps: list) -> ModuleMap:
    """The map (+) sources -> target with components ``maps``."""
    S = direct_sum(sources, target.alg)
    F = target.field
    mats = []
    for v in range(target.alg.n):
        mats.append(la.vstack([f.mats[v] for f in maps], ncols=target.dims[v], field=F)
                    if maps else F.zeros(0, target.dims[v]))
    return ModuleMap(S, target, mats, check=False)


# Hom spaces -------------------------------------------------------------------
def _pbasis(alg: Algebra):
    """pb[x][u] = basis indices of e_x A e_u."""
    if getattr(alg, "_pb", None) is None:
        pb = [[[] for _ in range(alg.n)] for _ in range(alg.n)]
        for b in range(alg.dim):
            pb[alg.src[b]][alg.tgt[b]].append(b)
        alg._pb = pb
    return alg._pb


class PresentationData:
    """Generators of M and generators of their relation module.

    ``gens`` are (vertex, row vector); ``rels`` are (vertex y, {generator i:
    element of e_{x_i} A e_y}) with sum_i g_i * c_i = 0.
    """

    def __init__(self, M: Representation):
        alg, F = M.alg, M.field
        pb = _pbasis(alg)
        self.gens = []
        # top complement at each vertex
        q = alg.quiver
        for v in range(alg.n):
            imgs = [M.mats[k] for k in range(len(q.arrows)) if q.tgt(k) == v]
            rad = la.vstack(imgs, ncols=M.dims[v], field=F) if imgs else F.zeros(0, M.dims[v])
            comp, _ = la.complement_rows(la.row_space(rad) if la.rank(rad) else F.zeros(0, M.dims[v]),
                                         M.dims[v], F)
            for r in range(comp.nrows()):
                self.gens.append((v, la.rows(comp, [r])))
        # cover map P0 -> M at each vertex; rows indexed by (generator, basis element)
        self.cover = []
        self.rowkeys = []
        for u in range(alg.n):
            keys, rows = [], []
            for i, (x, vec) in enumerate(self.gens):
                for b in pb[x][u]:
                    keys.append((i, b))
                    rows.append(vec * M.basis_action(b))
            self.rowkeys.append(keys)
            self.cover.append(la.vstack(rows, ncols=M.dims[u], field=F) if rows else F.zeros(0, M.dims[u]))
        self.rinv = []
        for u in range(alg.n):
            c = self.cover[u]
            if M.dims[u] == 0:
                self.rinv.append(F.zeros(0, c.nrows()))
            else:
                x = la.solve_left(c, F.eye(M.dims[u]))
                if x is None:
                    raise RuntimeError("generators do not generate the module")
                self.rinv.append(x)
        self.module = M
        self._rels = None

    @property
    def rels(self):
        if self._rels is None:
            self._rels = self._relations()
        return self._rels

    def _relations(self):
        """Generators of ker(P0 -> M), found by a top computation on the kernel."""
        M = self.module
        alg, F = M.alg, M.field
        q = alg.quiver
        pb = _pbasis(alg)
        # kernel of the cover at each vertex, as rows over P0_u
        ker = [la.left_kernel(c) if c.nrows() else F.zeros(0, 0) for c in self.cover]
        # P0 arrow action: for each arrow k: u -> w, matrix P0_u -> P0_w
        pos = [{key: r for r, key in enumerate(keys)} for keys in self.rowkeys]
        out = []
        for u in range(alg.n):
            if ker[u].nrows() == 0:
                continue
            # radical of the kernel at u: images of kernel elements under incoming arrows
            imgs = []
            for k in range(len(q.arrows)):
                if q.tgt(k) != u:
                    continue
                w = q.src(k)
                if ker[w].nrows() == 0:
                    continue
                act = F.zeros(len(self.rowkeys[w]), len(self.rowkeys[u]))
                for r, (i, b) in enumerate(self.rowkeys[w]):
                    for bb, c in alg.basis_mul(b, alg.arrow_index[k]).items():
                        act[r, pos[u][(i, bb)]] = c
                imgs.append(ker[w] * act)
            rad = la.vstack(imgs, ncols=len(self.rowkeys[u]), field=F) if imgs else None
            if rad is not None and la.rank(rad):
                # complement of rad inside ker[u], in kernel coordinates
                coords = la.solve_left(ker[u], la.row_space(rad))
                _, chosen = la.complement_rows(coords, ker[u].nrows(), F)
                for r in chosen:
                    out.append((u, self._split(la.rows(ker[u], [r]), u)))
            else:
                for r in range(ker[u].nrows()):
                    out.append((u, self._split(la.rows(ker[u], [r]), u)))
        return out

    def _split(self, row, u):
        el: dict = {}
        for r, (i, b) in enumerate(self.rowkeys[u]):
            c = row[0, r]
            if c != 0:
                el.setdefault(i, {})[b] = c
        return el


def presentation_data(M: Representation) -> PresentationData:
    if getattr(M, "_presdata", None) is None:
        M._presdata = PresentationData(M)
    return M._presdata


def element_action(N: Representation, c: dict, x: int, y: int):
    """Matrix of the element c in e_x A e_y acting N_x -> N_y."""
    F = N.field
    out = F.zeros(N.dims[x], N.dims[y])
    for b, coef in c.items():
        out += N.basis_action(b) * coef
    return out


def map_from_generator_images(M: Representation, N: Representation, images: list) -> "ModuleMap":
    """The map M -> N sending the i-th generator of M to images[i] (row vectors)."""
    pd = presentation_data(M)
    alg, F = M.alg, M.field
    mats = []
    for u in range(alg.n):
        rows = []
        for (i, b) in pd.rowkeys[u]:
            rows.append(images[i] * N.basis_action(b))
        phi = la.vstack(rows, ncols=N.dims[u], field=F) if rows else F.zeros(0, N.dims[u])
        mats.append(pd.rinv[u] * phi)
    return ModuleMap(M, N, mats, check=False)


def generator_images(f: "ModuleMap") -> list:
    pd = presentation_data(f.source)
    return [vec * f.mats[v] for v, vec in pd.gens]


def map_signature(f: "ModuleMap") -> list:
    """Flat coordinates of f determined by the generator images."""
    out = []
    for img in generator_images(f):
        out.extend(img[0, j] for j in range(img.ncols()))
    return out


def hom_space(M: Representation, N: Representation) -> list:
    """A basis of Hom(M, N) as ModuleMaps."""
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return []
    pd = presentation_data(M)
    offs, nv = [], 0
    for x, _ in pd.gens:
        offs.append(nv)
        nv += N.dims[x]
    if nv == 0:
        return []
    cols = []
    for y, el in pd.rels:
        if N.dims[y] == 0:
            continue
        blk = F.zeros(nv, N.dims[y])
        for i, c in el.items():
            x = pd.gens[i][0]
            a = element_action(N, c, x, y)
            for r in range(a.nrows()):
                for cc in range(a.ncols()):
                    if a[r, cc] != 0:
                        blk[offs[i] + r, cc] = a[r, cc]
        cols.append(blk)
    A = la.hstack(cols, nrows=nv, field=F) if cols else F.zeros(nv, 0)
    K = la.left_kernel(A) if A.ncols() else F.eye(nv)
    out = []
    for r in range(K.nrows()):
        images = []
        for i, (x, _) in enumerate(pd.gens):
            v = F.zeros(1, N.dims[x])
            for j in range(N.dims[x]):
                v[0, j] = K[r, offs[i] + j]
            images.append(v)
        out.append(map_from_generator_images(M, N, images))
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def combine(maps: list, coeffs) -> ModuleMap:
    out = None
    for f, c in zip(maps, coeffs):
        if c == 0:
            continue
        g = f.scale(c)
        out = g if out is None else out + g
    if out is None:
        f = maps[0]
        return f.source.zero_map_to(f.target)
    return out


# submodules and quotients -----------------------------------------------------
def submodule(M: Representation, spaces: list):
    """Submodule with basis rows ``spaces[v]`` at each vertex; returns (S, inclusion)."""
    F = M.field
    q = M.alg.quiver
    spaces = [s if s.nrows() == 0 else la.row_space(s) for s in spaces]
    dims = [s.nrows() for s in spaces]
    mats = []
    for k in range(len(q.arrows)):
        x, y = q.src(k), q.tgt(k)
        img = spaces[x] * M.mats[k]
        if dims[x] == 0:
            mats.append(F.zeros(0, dims[y]))
            continue
        c = la.solve_left(spaces[y], img) if dims[y] else (F.zeros(dims[x], 0) if la.is_zero(img) else None)
        if c is None:
            raise ValueError("subspaces are not closed under the arrow action")
        mats.append(c)
    S = Representation(M.alg, dims, mats, check=False)
    return S, ModuleMap(S, M, spaces, check=False)


def generated_submodule(M: Representation, gens: list):
    """Submodule generated by elements gens = [(vertex, row vector)]."""
    F = M.field
    q = M.alg.quiver
    spaces = [F.zeros(0, M.dims[v]) for v in range(M.alg.n)]
    todo = list(gens)
    while todo:
        v, vec = todo.pop()
        if la.in_row_space(spaces[v], vec):
            continue
        spaces[v] = la.vstack([spaces[v], vec], ncols=M.dims[v], field=F)
        for k in range(len(q.arrows)):
            if q.src(k) == v:
                todo.append((q.tgt(k), vec * M.mats[k]))
    return submodule(M, spaces)


def quotient_module(M: Representation, spaces: list):
    """M / S for a submodule given by row spaces; returns (Q, projection)."""
    F = M.field
    q = M.alg.quiver
    subs, comps, coords = [], [], []
    for v in range(M.alg.n):
        s = spaces[v] if spaces[v].nrows() == 0 else la.row_space(spaces[v])
        c, _ = la.complement_rows(s, M.dims[v], F)
        basis = la.vstack([s, c], ncols=M.dims[v], field=F)
        inv = basis.inv() if M.dims[v] else basis
        # coordinates in the quotient: last columns of inv
        proj = la.cols(inv, range(s.nrows(), M.dims[v])) if M.dims[v] else F.zeros(0, 0)
        subs.append(s)
        comps.append(c)
        coords.append(proj)
    dims = [c.nrows() for c in comps]
    mats = [comps[q.src(k)] * M.mats[k] * coords[q.tgt(k)] for k in range(len(q.arrows))]
    Q = Representation(M.alg, dims, mats, check=False)
    return Q, ModuleMap(M, Q, coords, check=False)


def radical(M: Representation):
    F = M.field
    q = M.alg.quiver
    spaces = []
    for v in range(M.alg.n):
        imgs = [M.mats[k] for k in range(len(q.arrows)) if q.tgt(k) == v]
        spaces.append(la.vstack(imgs, ncols=M.dims[v], field=F) if imgs else F.zeros(0, M.dims[v]))
    return submodule(M, spaces)


def socle(M: Representation):
    F = M.field
    q = M.alg.quiver
    spaces = []
    for v in range(M.alg.n):
        outs = [M.mats[k] for k in range(len(q.arrows)) if q.src(k) == v]
        if outs:
            spaces.append(la.left_kernel(la.hstack(outs, nrows=M.dims[v], field=F)))
        else:
            spaces.append(F.eye(M.dims[v]))
    return submodule(M, spaces)


def top(M: Representation):
    R, inc = radical(M)
    return quotient_module(M, inc.mats)


def top_vector(M: Representation):
    return radical_quotient_dims(M)


def radical_quotient_dims(M: Representation):
    R, _ = radical(M)
    return tuple(a - b for a, b in zip(M.dims, R.dims))


def socle_dims(M: Representation):
    S, _ = socle(M)
    return S.dims


def kernel(f: ModuleMap):
    F = f.field
    spaces = [la.left_kernel(m) if m.nrows() else F.zeros(0, 0) for m in f.mats]
    return submodule(f.source, spaces)


def image(f: ModuleMap):
    F = f.field
    spaces = [m if m.nrows() else F.zeros(0, m.ncols()) for m in f.mats]
    return submodule(f.target, spaces)


def cokernel(f: ModuleMap):
    F = f.field
    spaces = [m if m.nrows() else F.zeros(0, m.ncols()) for m in f.mats]
    return quotient_module(f.target, spaces)


def restrict_map(f: ModuleMap, inc: ModuleMap) -> ModuleMap:
    """f composed after an inclusion."""
    return inc * f


def factor_through_mono(f: ModuleMap, mono: ModuleMap) -> ModuleMap | None:
    """g with g * mono = f, if it exists."""
    mats = []
    F = f.field
    for v in range(len(f.mats)):
        a, m = f.mats[v], mono.mats[v]
        if a.nrows() == 0:
            mats.append(F.zeros(0, m.nrows()))
            continue
        if m.nrows() == 0:
            if not la.is_zero(a):
                return None
            mats.append(F.zeros(a.nrows(), 0))
            continue
        x = la.solve_left(m, a)
        if x is None:
            return None
        mats.append(x)
    return ModuleMap(f.source, mono.source, mats, check=False)


# endomorphisms, decomposition, isomorphism ------------------------------------------
def _total(f: ModuleMap):
    return f.total()


def _end_is_local(M: Representation, basis: list) -> bool:
    """End(M) = k*1 + N with N a nilpotent ideal (so M is indecomposable)."""
    F = M.field
    D = M.dim
    eye = F.eye(D)
    nil = []
    for f in basis:
        t = _total(f)
        facs = la.charpoly_factors(t)
        if len(facs) != 1 or facs[0][0].degree() != 1:
            return False
        lam = -facs[0][0].coeffs()[0] / facs[0][0].coeffs()[1]
        nil.append(t - eye * F(lam))
    # N = span(nil) must be closed under products and nilpotent
    if not nil:
        return True
    flat = lambda m: F.matrix([[m[i, j] for i in range(D) for j in range(D)]], 1, D * D)
    Nspace = la.row_space(la.vstack([flat(m) for m in nil], ncols=D * D, field=F))
    power = nil
    for _ in range(D + 1):
        prods = [a * b for a in power for b in nil]
        prods = [p for p in prods if not la.is_zero(p)]
        if not prods:
            return True
        P = la.vstack([flat(m) for m in prods], ncols=D * D, field=F)
        if Nspace.nrows() == 0 or la.rank(la.vstack([Nspace, P], ncols=D * D, field=F)) != Nspace.nrows():
            return False
        Prs = la.row_space(P)
        power = [_unflat(Prs, i, D, F) for i in range(Prs.nrows())]
    return False


def _unflat(rowsm, i, D, F):
    m = F.zeros(D, D)
    for a in range(D):
        for b in range(D):
            m[a, b] = rowsm[i, a * D + b]
    return m


def _stable_kernel_image(g):
    """Rows spanning ker g^n and im g^n for n large (Fitting)."""
    F = la.field_of(g)
    d = g.nrows()
    if d == 0:
        return F.zeros(0, 0), F.zeros(0, 0)
    img = F.eye(d)
    while True:
        nxt = img * g
        nxt = la.row_space(nxt) if la.rank(nxt) else F.zeros(0, d)
        if nxt.nrows() == img.nrows():
            break
        img = nxt
    ker = F.zeros(0, d)
    while True:
        if ker.nrows() == 0:
            nxt = la.left_kernel(g)
        else:
            N = la.null_space(ker)
            nxt = la.left_kernel(g * N.transpose()) if N.nrows() else F.eye(d)
        if nxt.nrows() == ker.nrows():
            break
        ker = nxt
    return ker, img


def _split_by(M: Representation, f: ModuleMap):
    """Try to split M using the Fitting decomposition of an endomorphism."""
    t = _total(f)
    facs = la.charpoly_factors(t)
    if len(facs) < 2:
        return None
    p = min(facs, key=lambda pf: pf[0].degree())[0]
    kers, imgs = [], []
    for v in range(M.alg.n):
        g = la.poly_eval(p, f.mats[v])
        k, i = _stable_kernel_image(g)
        kers.append(k if M.dims[v] else M.field.zeros(0, 0))
        imgs.append(i if M.dims[v] else M.field.zeros(0, 0))
    if all(k.nrows() == 0 for k in kers) or all(i.nrows() == 0 for i in imgs):
        return None
    return submodule(M, kers), submodule(M, imgs)


def decompose(M: Representation, seed: int = 0, max_dim: int = 200) -> list:
    """Krull-Schmidt decomposition as a list of (indecomposable, multiplicity)."""
    parts = decompose_with_maps(M, seed, max_dim)
    groups: list = []
    for N, _ in parts:
        for g in groups:
            if is_isomorphic(g[0], N):
                g[1] += 1
                break
        else:
            groups.append([N, 1])
    return [(g[0], g[1]) for g in groups]


def indecomposable_summands(M: Representation, seed: int = 0) -> list:
    return [N for N, _ in decompose_with_maps(M, seed)]


def decompose_with_maps(M: Representation, seed: int = 0, max_dim: int = 200) -> list:
    """List of (summand, inclusion into M); the inclusions give a direct sum decomposition."""
    if M.dim > max_dim:
        raise ValueError(f"module of dimension {M.dim} exceeds the decomposition bound {max_dim}")
    if M.is_zero():
        return []
    F = M.field
    basis = hom_space(M, M)
    if len(basis) == 1:
        return [(M, M.identity())]
    rng = random.Random(seed)
    cands = list(basis)
    for _ in range(6):
        cands.append(combine(basis, [F.random_element(rng, 3) for _ in basis]))
    for f in cands:
        res = _split_by(M, f)
        if res is not None:
            out = []
            for N, inc in res:
                for P, j in decompose_with_maps(N, seed, max_dim):
                    out.append((P, j * inc))
            return out
    if _end_is_local(M, basis):
        return [(M, M.identity())]
    raise FieldTooSmall(f"could not split {M!r} over {F!r}")


def is_indecomposable(M: Representation) -> bool:
    if M.is_zero():
        return False
    return len(decompose_with_maps(M)) == 1


def find_isomorphism(M: Representation, N: Representation, seed: int = 0, tries: int = 8):
    """An isomorphism M -> N, or None."""
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return M.identity()
    basis = hom_space(M, N)
    if not basis:
        return None
    if len(basis) == 1:
        return basis[0] if basis[0].is_iso() else None
    F = M.field
    rng = random.Random(seed)
    for f in basis:
        if f.is_iso():
            return f
    for _ in range(tries):
        f = combine(basis, [F.random_element(rng, 1000) for _ in basis])
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return find_isomorphism(M, N) is not None


def dimension_vector(M: Representation) -> dict:
    return dict(zip(M.alg.vertices, M.dims))


def split_epi_section(f: ModuleMap):
    """A section of an epimorphism f (g with g*f = id), or None."""
    basis = hom_space(f.target, f.source)
    if not basis:
        return None
    F = f.field
    # solve sum c_i (g_i * f) = id linearly
    D = f.target.dim
    target = f.target.identity().total()
    flat = lambda m: [m[i, j] for i in range(m.nrows()) for j in range(m.ncols())]
    A = F.matrix([flat((g * f).total()) for g in basis], len(basis), D * D)
    b = F.matrix([flat(target)], 1, D * D)
    x = la.solve_left(A, b)
    if x is None:
        return None
    return combine(basis, [x[0, i] for i in range(len(basis))])


def split_mono_retraction(f: ModuleMap):
    basis = hom_space(f.target, f.source)
    if not basis:
        return None
    F = f.field
    D = f.source.dim
    flat = lambda m: [m[i, j] for i in range(m.nrows()) for j in range(m.ncols())]
    A = F.matrix([flat((f * g).total()) for g in basis], len(basis), D * D)
    b = F.matrix([flat(f.source.identity().total())], 1, D * D)
    x = la.solve_left(A, b)
    if x is None:
        return None
    return combine(basis, [x[0, i] for i in range(len(basis))])
