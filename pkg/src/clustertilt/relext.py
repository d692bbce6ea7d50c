"""The bimodule Ext^2(DC, C) and the relation-extension C ⋉ Ext^2(DC, C)."""
from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .algebra import Algebra, Echelon, from_table, find_isomorphism, vadd
from .homology import (AtLeast, ClassSpace, global_dimension, lift_to_omega2, projective_map,
                       resolution)
from .modules import ModuleMap, injective, projective
from .quiver import Arrow, BoundQuiver


class NonTriangular(ValueError):
    pass


class GlobalDimensionTooHigh(ValueError):
    pass


@dataclass
class Bimodule:
    """A C-C-bimodule with basis elements living in blocks e_x E e_y.

    ``left[(b, k)]`` is c_b * basis_k and ``right[(k, b)]`` is basis_k * c_b,
    as sparse coordinate dicts, for C basis elements b.
    """
    algebra: Algebra
    blocks: list          # (x, y) per basis element
    left: dict
    right: dict

    @property
    def dim(self) -> int:
        return len(self.blocks)

    def act_left(self, c: dict, e: dict) -> dict:
        out: dict = {}
        for b, cb in c.items():
            for k, ek in e.items():
                r = self.left.get((b, k))
                if r:
                    vadd(out, r, cb * ek)
        return out

    def act_right(self, e: dict, c: dict) -> dict:
        out: dict = {}
        for k, ek in e.items():
            for b, cb in c.items():
                r = self.right.get((k, b))
                if r:
                    vadd(out, r, cb * ek)
        return out

    def check(self) -> bool:
        """Unital, and (c e) c' = c (e c') on basis elements; also both actions associative."""
        C = self.algebra
        F = C.field
        one = C.one()
        for k in range(self.dim):
            e = {k: F(1)}
            if self.act_left(one, e) != e or self.act_right(e, one) != e:
                return False
        for k in range(self.dim):
            e = {k: F(1)}
            for a in C.arrow_index:
                for b in C.arrow_index:
                    ca, cb = {a: F(1)}, {b: F(1)}
                    if self.act_right(self.act_left(ca, e), cb) != self.act_left(ca, self.act_right(e, cb)):
                        return False
                    if self.act_left(ca, self.act_left(cb, e)) != self.act_left(C.mul(ca, cb), e):
                        return False
                    if self.act_right(self.act_right(e, ca), cb) != self.act_right(e, C.mul(ca, cb)):
                        return False
        return True

    def top_basis(self) -> list:
        """Indices of basis elements spanning E / (rad C E + E rad C)."""
        C = self.algebra
        F = C.field
        ech = Echelon(F, prefer="max")
        for k in range(self.dim):
            e = {k: F(1)}
            for a in C.arrow_index:
                for v in (self.act_left({a: F(1)}, e), self.act_right(e, {a: F(1)})):
                    if v:
                        ech.add(v)
        out = []
        for k in range(self.dim):
            if ech.add({k: F(1)}):
                out.append(k)
        return out


def ext2_bimodule(C: Algebra, check_gldim: bool = True) -> Bimodule:
    """E = Ext^2_C(DC, C) with e_x E e_y = Ext^2(I(y), P(x))."""
    if not C.is_triangular():
        raise NonTriangular("the quiver has an oriented cycle")
    if check_gldim:
        gd = global_dimension(C, bound=2)
        if isinstance(gd, AtLeast):
            raise GlobalDimensionTooHigh("global dimension exceeds 2")
    F = C.field
    n = C.n
    P = [projective(C, x) for x in range(n)]
    I = [injective(C, y) for y in range(n)]
    res = [resolution(I[y]) for y in range(n)]
    spaces = {}
    blocks, index = [], {}
    for y in range(n):
        for x in range(n):
            cs = ClassSpace(res[y].omega2, res[y].inc2, res[y].cover1.projective, P[x])
            spaces[(x, y)] = cs
            for k in range(cs.dimension):
                index[(x, y, k)] = len(blocks)
                blocks.append((x, y))
    local = {}
    for (x, y, k), g in index.items():
        local[g] = (x, y, k)
    left, right = {}, {}
    # left action: c in e_x' C e_x gives P(x) -> P(x'), u -> c u
    for b in range(C.dim):
        xp, x = C.src[b], C.tgt[b]
        lam = projective_map(C, [x], [xp], [[{b: F(1)}]])
        lam = ModuleMap(P[x], P[xp], lam.mats, check=False)
        for y in range(n):
            src_space, dst_space = spaces[(x, y)], spaces[(xp, y)]
            for k, h in enumerate(src_space.cocycles):
                img = h * lam
                coords = dst_space.coordinates(img)
                vec = {index[(xp, y, j)]: c for j, c in enumerate(coords) if c != 0}
                if vec:
                    left[(b, index[(x, y, k)])] = vec
    # right action: c in e_y C e_y' gives I(y') -> I(y), f -> (u -> f(u c))
    for b in range(C.dim):
        y, yp = C.src[b], C.tgt[b]
        mats = []
        for u in range(n):
            rows_ = I[yp].basis_elements[u]
            cols_ = I[y].basis_elements[u]
            pos = {j: r for r, j in enumerate(rows_)}
            m = F.zeros(len(rows_), len(cols_))
            for cidx, bb in enumerate(cols_):
                for j, c in C.basis_mul(bb, b).items():
                    m[pos[j], cidx] = c
            mats.append(m)
        phi = ModuleMap(I[yp], I[y], mats, check=False)
        phi2 = lift_to_omega2(phi, res[yp], res[y])
        for x in range(n):
            src_space, dst_space = spaces[(x, y)], spaces[(x, yp)]
            for k, h in enumerate(src_space.cocycles):
                img = phi2 * h
                coords = dst_space.coordinates(img)
                vec = {index[(x, yp, j)]: c for j, c in enumerate(coords) if c != 0}
                if vec:
                    right[(index[(x, y, k)], b)] = vec
    return Bimodule(C, blocks, left, right)


@dataclass
class TrivialExtension:
    """C ⋉ E as a path-basis algebra, with embeddings of C and E."""
    base: Algebra
    bimodule: Bimodule
    algebra: Algebra
    convert: object      # raw coordinates (C first, then E) -> algebra coordinates
    new_arrows: list     # labels of arrows coming from E

    def embed_c(self, x: dict) -> dict:
        return self.convert(dict(x))

    def embed_e(self, e: dict) -> dict:
        d = self.base.dim
        return self.convert({d + k: c for k, c in e.items()})

    def e_block(self, x: int, y: int) -> list:
        """Basis vectors of e_x E e_y inside the algebra."""
        F = self.base.field
        return [self.embed_e({k: F(1)}) for k, b in enumerate(self.bimodule.blocks) if b == (x, y)]

    @property
    def presentation(self) -> BoundQuiver:
        return self.algebra.presentation

    def check_square_zero(self) -> bool:
        F = self.base.field
        es = [self.embed_e({k: F(1)}) for k in range(self.bimodule.dim)]
        return all(not self.algebra.mul(a, b) for a in es for b in es)


def trivial_extension(C: Algebra, E: Bimodule, labels: list | None = None,
                      name: str | None = None) -> TrivialExtension:
    F = C.field
    d = C.dim
    total = d + E.dim

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        xc = {i: c for i, c in x.items() if i < d}
        xe = {i - d: c for i, c in x.items() if i >= d}
        yc = {i: c for i, c in y.items() if i < d}
        ye = {i - d: c for i, c in y.items() if i >= d}
        if xc and yc:
            vadd(out, C.mul(xc, yc))
        if xc and ye:
            vadd(out, {k + d: c for k, c in E.act_left(xc, ye).items()})
        if xe and yc:
            vadd(out, {k + d: c for k, c in E.act_right(xe, yc).items()})
        return out

    top = E.top_basis()
    used = {a.label for a in C.arrows} | set(C.vertices)
    if labels is None:
        labels, i = [], 1
        while len(labels) < len(top):
            lab = f"rho{i}"
            if lab not in used:
                labels.append(lab)
            i += 1
    arrows = [(a, {C.arrow_index[k]: F(1)}) for k, a in enumerate(C.arrows)]
    for lab, k in zip(labels, top):
        x, y = E.blocks[k]
        arrows.append((Arrow(lab, C.vertices[x], C.vertices[y]), {d + k: F(1)}))
    idem = [{C.idem[v]: F(1)} for v in range(C.n)]
    alg, conv = from_table(F, C.vertices, total, mul, idem, arrows, name or (C.name + "~"))
    return TrivialExtension(C, E, alg, conv, list(labels))


def relation_extension(C: Algebra, labels: list | None = None, name: str | None = None) -> TrivialExtension:
    """The relation-extension of a triangular algebra of global dimension at most 2."""
    return trivial_extension(C, ext2_bimodule(C), labels, name)


def certify_relation_extension(bq: BoundQuiver, ext: TrivialExtension, base_images: dict | None = None):
    """Find an isomorphism from the presented algebra ``bq`` onto ``ext``.

    Arrows whose labels occur in C are sent to their C image plus a correction
    in E; the remaining arrows go into E.  ``base_images`` overrides the C part
    (vectors in C coordinates).  Returns the arrow images or None.
    """
    C = ext.base
    F = C.field
    base, free = {}, {}
    labels = {a.label for a in C.arrows}
    for a in bq.arrows:
        if base_images is not None and a.label in base_images:
            base[a.label] = ext.embed_c(base_images[a.label])
        elif base_images is None and a.label in labels:
            base[a.label] = ext.embed_c(C.arrow(a.label))
        else:
            base[a.label] = {}
        try:
            x, y = C.vertex(a.source), C.vertex(a.target)
        except ValueError:
            return None
        free[a.label] = ext.e_block(x, y)
    return find_isomorphism(bq, ext.algebra, base, free)
