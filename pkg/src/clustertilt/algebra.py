"""Finite-dimensional bound quiver algebras with an explicit multiplication table.

Every :class:`Algebra` carries a *path basis*: a prefix-closed list of paths of
its quiver whose residue classes form a basis.  Idempotents and arrows are
always basis elements, so modules over the algebra are plain quiver
representations.  Elements are sparse dicts ``{basis index: coefficient}``.
"""
from __future__ import annotations

from functools import cached_property
import random

import flint

from . import linalg as la
from .linalg import Field
from .quiver import Arrow, BoundQuiver, Quiver, path_str


class NonAdmissible(ValueError):
    """The relations do not bound the path lengths within the search bound."""


class DimensionExceeded(ValueError):
    """The quotient is larger than the caller's dimension cap."""


class PresentationRecoveryFailed(RuntimeError):
    pass


# sparse vectors ------------------------------------------------------------
def vadd(u: dict, v: dict, c=1) -> dict:
    """u += c*v in place; returns u."""
    for k, x in v.items():
        y = u.get(k)
        y = c * x if y is None else y + c * x
        if y == 0:
            u.pop(k, None)
        else:
            u[k] = y
    return u


def vscale(v: dict, c) -> dict:
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Incremental sparse row echelon form.

    Each stored row is normalised to have coefficient 1 at its pivot.  With
    ``prefer="max"`` the pivot is the largest index of the row, so smaller
    indices tend to survive as non-pivots.
    """

    def __init__(self, field: Field, prefer: str = "max", track: bool = False):
        self.field = field
        self.rows: dict = {}
        self.combos: dict = {}
        self.prefer = max if prefer == "max" else min
        self.track = track
        self.count = 0

    def reduce(self, v: dict, combo: dict | None = None):
        r = dict(v)
        c = dict(combo) if combo is not None else None
        while True:
            hits = [k for k in r if k in self.rows]
            if not hits:
                return r, c
            k = self.prefer(hits)
            coef = r[k]
            vadd(r, self.rows[k], -coef)
            if c is not None:
                vadd(c, self.combos[k], -coef)

    def add(self, v: dict, tag=None) -> bool:
        """Insert v; returns True if it was independent."""
        combo = {tag if tag is not None else self.count: self.field(1)} if self.track else None
        self.count += 1
        r, c = self.reduce(v, combo)
        if not r:
            return False
        p = self.prefer(r)
        inv = 1 / r[p]
        self.rows[p] = vscale(r, inv)
        if c is not None:
            self.combos[p] = vscale(c, inv)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: dict):
        """Coefficients of v in terms of the tagged inserted vectors, or None."""
        r, c = self.reduce(v, {})
        if r:
            return None
        return vscale(c, self.field(-1))

    def full_reduce(self):
        for p in sorted(self.rows, reverse=self.prefer is max):
            row = self.rows[p]
            while True:
                hits = [k for k in row if k != p and k in self.rows]
                if not hits:
                    break
                k = self.prefer(hits)
                coef = row[k]
                vadd(row, self.rows[k], -coef)
                if self.track:
                    vadd(self.combos[p], self.combos[k], -coef)

    @property
    def rank(self) -> int:
        return len(self.rows)


# the algebra ---------------------------------------------------------------
class Algebra:
    """kQ/I given by a prefix-closed path basis and a multiplication table."""

    def __init__(self, field: Field, quiver: Quiver, paths: list, table: dict, name: str = "A",
                 presentation: BoundQuiver | None = None):
        self.field = field
        self.quiver = quiver
        self.paths = list(paths)
        self.table = table
        self.name = name
        self.index = {p: i for i, p in enumerate(self.paths)}
        self._atgt = [quiver.tgt(i) for i in range(len(quiver.arrows))]
        self._asrc = [quiver.src(i) for i in range(len(quiver.arrows))]
        self.src = [p[0] for p in self.paths]
        self.tgt = [self._path_target(p) for p in self.paths]
        self.idem = [self.index[(v, ())] for v in range(quiver.n)]
        self.arrow_index = [self.index[(self._asrc[a], (a,))] for a in range(len(quiver.arrows))]
        self._presentation = presentation

    def _path_target(self, p):
        return self._atgt[p[1][-1]] if p[1] else p[0]

    # basic data ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.paths)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def vertex(self, label) -> int:
        return self.quiver.vertex_index(str(label))

    def arrow(self, label: str) -> dict:
        return {self.arrow_index[self.quiver.arrow_index(label)]: self.field(1)}

    def name_of(self, i: int) -> str:
        return path_str(self.quiver, self.paths[i])

    def length(self, i: int) -> int:
        return len(self.paths[i][1])

    def __repr__(self):
        return f"Algebra({self.name}, dim={self.dim}, vertices={self.n}, arrows={len(self.arrows)})"

    def dimension_matrix(self):
        """d[x][y] = dim e_x A e_y."""
        d = [[0] * self.n for _ in range(self.n)]
        for i in range(self.dim):
            d[self.src[i]][self.tgt[i]] += 1
        return d

    # arithmetic ---------------------------------------------------------
    def basis_mul(self, i: int, j: int) -> dict:
        if self.tgt[i] != self.src[j]:
            return {}
        return self.table.get((i, j), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                t = self.basis_mul(i, j)
                if t:
                    vadd(out, t, a * b)
        return out

    def path_value(self, path) -> dict:
        v, arrows = path
        x = {self.idem[v]: self.field(1)}
        for a in arrows:
            x = self.mul(x, {self.arrow_index[a]: self.field(1)})
        return x

    def element(self, comb: dict) -> dict:
        """Value of a path combination {path: coef}."""
        out: dict = {}
        for p, c in comb.items():
            vadd(out, self.path_value(p), c)
        return out

    def combination(self, x: dict) -> dict:
        return {self.paths[i]: c for i, c in x.items()}

    def multiply(self, a: dict, b: dict) -> dict:
        """Product of two path combinations, reduced to the path basis."""
        return self.combination(self.mul(self.element(a), self.element(b)))

    def one(self) -> dict:
        return {i: self.field(1) for i in self.idem}

    def fmt(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = self.field.fmt(x[i])
            parts.append(self.name_of(i) if c == "1" else f"{c}*{self.name_of(i)}")
        return " + ".join(parts)

    def left_matrix(self, x: dict):
        """Matrix of b -> x*b in row convention (row j = coords of x*b_j)."""
        rows = [[self.field(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.mul(x, {j: self.field(1)}).items():
                rows[j][k] = c
        return self.field.matrix(rows, self.dim, self.dim)

    def right_matrix(self, x: dict):
        rows = [[self.field(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.mul({j: self.field(1)}, x).items():
                rows[j][k] = c
        return self.field.matrix(rows, self.dim, self.dim)

    @cached_property
    def radical_basis(self) -> list:
        return [i for i in range(self.dim) if self.paths[i][1]]

    def radical_power_basis(self, k: int) -> list:
        """Echelon rows spanning rad^k."""
        cur = [{i: self.field(1)} for i in self.radical_basis]
        for _ in range(k - 1):
            ech = Echelon(self.field)
            nxt = []
            for x in cur:
                for a in self.arrow_index:
                    y = self.mul(x, {a: self.field(1)})
                    if y and ech.add(y):
                        nxt.append(y)
            cur = nxt
        return cur

    @cached_property
    def loewy_length(self) -> int:
        k = 1
        while self.radical_power_basis(k):
            k += 1
        return k

    # checks ---------------------------------------------------------------
    def check_associative(self) -> bool:
        one = self.field(1)
        for i in range(self.dim):
            for j in range(self.dim):
                if self.tgt[i] != self.src[j]:
                    continue
                ij = self.basis_mul(i, j)
                for k in range(self.dim):
                    if self.tgt[j] != self.src[k]:
                        continue
                    if self.mul(ij, {k: one}) != self.mul({i: one}, self.basis_mul(j, k)):
                        return False
        return True

    def check_unit(self) -> bool:
        one = self.one()
        for i in range(self.dim):
            x = {i: self.field(1)}
            if self.mul(one, x) != x or self.mul(x, one) != x:
                return False
        for u in range(self.n):
            for v in range(self.n):
                p = self.basis_mul(self.idem[u], self.idem[v])
                if p != ({self.idem[u]: self.field(1)} if u == v else {}):
                    return False
        return True

    def is_triangular(self) -> bool:
        return self.quiver.is_acyclic()

    # derived algebras ----------------------------------------------------
    def opposite(self) -> "Algebra":
        q = self.quiver.opposite()
        paths = [(self.tgt[i], tuple(reversed(p[1]))) for i, p in enumerate(self.paths)]
        table = {(j, i): v for (i, j), v in self.table.items()}
        if _prefix_closed(q, paths):
            alg = Algebra(self.field, q, paths, table, self.name + "_op")
            alg.from_opposite = dict
            return alg
        # the reversed basis is not prefix-closed; rebuild over a fresh path basis
        raw = _RawTable(self.field, paths, table, q)
        idem = [{paths.index((v, ())): self.field(1)} for v in range(q.n)]
        arrows = [(a, {paths.index((q.src(k), (k,))): self.field(1)}) for k, a in enumerate(q.arrows)]
        alg, conv = from_table(self.field, q.vertices, self.dim, raw.mul, idem, arrows, self.name + "_op")
        alg.from_opposite = conv
        return alg

    def quotient(self, generators: list, name: str | None = None) -> "Algebra":
        """A/<generators>; the result records ``projection`` from A."""
        return quotient(self, generators, name)

    def ideal_closure(self, generators: list) -> Echelon:
        one = self.field(1)
        ech = Echelon(self.field)
        todo = []
        for g in generators:
            for u in range(self.n):
                for v in range(self.n):
                    part = {i: c for i, c in g.items() if self.src[i] == u and self.tgt[i] == v}
                    if part and ech.add(part):
                        todo.append(part)
        while todo:
            x = todo.pop()
            for a in self.arrow_index:
                for y in (self.mul(x, {a: one}), self.mul({a: one}, x)):
                    if y and ech.add(y):
                        todo.append(y)
        ech.full_reduce()
        return ech

    # presentation ----------------------------------------------------------
    def raw_relations(self) -> list:
        """Relations p*a - NF(p*a) for basis paths p and arrows a leaving the basis."""
        rels = []
        one = self.field(1)
        for i, p in enumerate(self.paths):
            t = self.tgt[i]
            for a in range(len(self.arrows)):
                if self._asrc[a] != t:
                    continue
                pa = (p[0], p[1] + (a,))
                if pa in self.index:
                    continue
                rel = {pa: one}
                for k, c in self.basis_mul(i, self.arrow_index[a]).items():
                    if len(self.paths[k][1]) < 2:
                        raise PresentationRecoveryFailed("arrow set does not generate rad/rad^2 freely")
                    rel[self.paths[k]] = rel.get(self.paths[k], self.field(0)) - c
                rel = {k: c for k, c in rel.items() if c != 0}
                rels.append(rel)
        return rels

    @property
    def presentation(self) -> BoundQuiver:
        if self._presentation is None:
            self._presentation = minimize_relations(
                BoundQuiver(self.quiver, self.raw_relations(), self.field, self.name), self.dim)
        return self._presentation

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": repr(self.field),
            "dimension": self.dim,
            "vertices": list(self.vertices),
            "arrows": [{"label": a.label, "source": a.source, "target": a.target} for a in self.arrows],
            "basis": [{"path": [self.arrows[a].label for a in p[1]], "source": self.vertices[p[0]],
                       "target": self.vertices[self.tgt[i]]} for i, p in enumerate(self.paths)],
            "table": [{"left": i, "right": j, "product": {str(k): self.field.fmt(c) for k, c in sorted(v.items())}}
                      for (i, j), v in sorted(self.table.items()) if v],
            "composition": "left-to-right",
        }


class _RawTable:
    def __init__(self, field, paths, table, quiver):
        self.field, self.paths, self.table = field, paths, table
        atgt = [quiver.tgt(a) for a in range(len(quiver.arrows))]
        self.tgt = [atgt[p[1][-1]] if p[1] else p[0] for p in paths]

    def mul(self, x, y):
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if self.tgt[i] != self.paths[j][0]:
                    continue
                t = self.table.get((i, j))
                if t:
                    vadd(out, t, a * b)
        return out


def _prefix_closed(q: Quiver, paths) -> bool:
    s = set(paths)
    for v, arrows in paths:
        if arrows and (v, arrows[:-1]) not in s:
            return False
    return all((v, ()) in s for v in range(q.n))


# basis computation ---------------------------------------------------------------
def compute_basis(bq: BoundQuiver, bound: int = 64, max_dim: int | None = None) -> Algebra:
    """Path basis and multiplication table of kQ/I."""
    if all(len({len(p[1]) for p in r}) == 1 for r in bq.relations):
        return _graded_basis(bq, bound, max_dim)
    return _truncated_basis(bq, bound, max_dim)


def _out_arrows(q: Quiver):
    out = [[] for _ in range(q.n)]
    for a in range(len(q.arrows)):
        out[q.src(a)].append(a)
    return out


def _graded_basis(bq: BoundQuiver, bound: int, max_dim) -> Algebra:
    q, F = bq.quiver, bq.field
    out = _out_arrows(q)
    atgt = [q.tgt(a) for a in range(len(q.arrows))]
    rels_by_len: dict = {}
    for r in bq.relations:
        rels_by_len.setdefault(len(next(iter(r))[1]), []).append(r)
    std = [[(v, ()) for v in range(q.n)]]
    idx = [{p: i for i, p in enumerate(std[0])}]
    red = [None]
    windex = [None]
    memo: dict = {}

    def target(p):
        return atgt[p[1][-1]] if p[1] else p[0]

    def nf(path):
        d = len(path[1])
        if d >= len(std):
            return {}
        if d == 0:
            return {idx[0][path]: F(1)}
        key = path
        if key in memo:
            return memo[key]
        pre = nf((path[0], path[1][:-1]))
        a = path[1][-1]
        res: dict = {}
        for j, c in pre.items():
            k = windex[d].get((j, a))
            if k is not None:
                vadd(res, red[d][k], c)
        memo[key] = res
        return res

    total = q.n
    d = 1
    while std[d - 1]:
        if d > bound:
            raise NonAdmissible(f"path lengths exceed {bound}: quotient is not finite dimensional")
        W = [(j, a) for j, p in enumerate(std[d - 1]) for a in out[target(p)]]
        widx = {w: k for k, w in enumerate(W)}
        windex.append(widx)

        def wcoords(path):
            pre = nf((path[0], path[1][:-1])) if len(path[1]) - 1 < len(std) else {}
            a = path[1][-1]
            res: dict = {}
            for j, c in pre.items():
                k = widx.get((j, a))
                if k is not None:
                    vadd(res, {k: F(1)}, c)
            return res

        ech = Echelon(F, prefer="max")
        for ell, rs in rels_by_len.items():
            if ell > d:
                continue
            for s in std[d - ell]:
                ts = target(s)
                for r in rs:
                    if next(iter(r))[0] != ts:
                        continue
                    vec: dict = {}
                    for (v0, arrows), c in r.items():
                        vadd(vec, wcoords((s[0], s[1] + arrows)), c)
                    if vec:
                        ech.add(vec)
        ech.full_reduce()
        new_std = []
        sidx = {}
        for k, (j, a) in enumerate(W):
            if k not in ech.rows:
                sidx[k] = len(new_std)
                p = std[d - 1][j]
                new_std.append((p[0], p[1] + (a,)))
        rd = []
        for k in range(len(W)):
            if k in sidx:
                rd.append({sidx[k]: F(1)})
            else:
                rd.append({sidx[c]: -x for c, x in ech.rows[k].items() if c != k})
        red.append(rd)
        std.append(new_std)
        idx.append({p: i for i, p in enumerate(new_std)})
        total += len(new_std)
        if max_dim is not None and total > max_dim:
            raise DimensionExceeded(total)
        d += 1

    paths = [p for layer in std for p in layer]
    offset = []
    acc = 0
    for layer in std:
        offset.append(acc)
        acc += len(layer)
    index = {p: i for i, p in enumerate(paths)}
    table = {}
    for i, p in enumerate(paths):
        t = target(p)
        for j, r in enumerate(paths):
            if r[0] != t:
                continue
            prod = (p[0], p[1] + r[1])
            dd = len(prod[1])
            if dd >= len(std):
                continue
            v = nf(prod)
            if v:
                table[(i, j)] = {offset[dd] + k: c for k, c in v.items()}
    return Algebra(F, q, paths, table, bq.name, presentation=bq)


def _truncated_basis(bq: BoundQuiver, bound: int, max_dim) -> Algebra:
    q, F = bq.quiver, bq.field
    out = _out_arrows(q)
    atgt = [q.tgt(a) for a in range(len(q.arrows))]

    def target(p):
        return atgt[p[1][-1]] if p[1] else p[0]

    maxrel = max(len(p[1]) for r in bq.relations for p in r)
    M = maxrel + 1
    while True:
        if M > bound:
            raise NonAdmissible(f"path lengths exceed {bound}: quotient is not finite dimensional")
        layers = [[(v, ()) for v in range(q.n)]]
        for _ in range(1, M):
            layers.append([(p[0], p[1] + (a,)) for p in layers[-1] for a in out[target(p)]])
        # longer paths get smaller indices so that pivots prefer them
        paths = [p for layer in reversed(layers) for p in layer]
        pidx = {p: i for i, p in enumerate(paths)}
        ech = Echelon(F, prefer="min")
        todo = []
        for r in bq.relations:
            vec = {pidx[p]: c for p, c in r.items() if len(p[1]) < M}
            if vec and ech.add(vec):
                todo.append(vec)
        while todo:
            x = todo.pop()
            for a in range(len(q.arrows)):
                right: dict = {}
                left: dict = {}
                for i, c in x.items():
                    p = paths[i]
                    if len(p[1]) + 1 >= M:
                        continue
                    if target(p) == q.src(a):
                        right[pidx[(p[0], p[1] + (a,))]] = c
                    if p[0] == atgt[a]:
                        left[pidx[(q.src(a), (a,) + p[1])]] = c
                for y in (right, left):
                    if y and ech.add(y):
                        todo.append(y)
        if all(ech.contains({pidx[p]: F(1)}) for p in layers[M - 1]):
            break
        if max_dim is not None and len(paths) - ech.rank > max_dim:
            raise DimensionExceeded(len(paths) - ech.rank)
        M += 1
    ech.full_reduce()
    keep = [i for i in range(len(paths)) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(keep)}

    def reduce(vec):
        r, _ = ech.reduce(vec)
        return {pos[i]: c for i, c in r.items()}

    dim = len(keep)
    if max_dim is not None and dim > max_dim:
        raise DimensionExceeded(dim)
    kpaths = [paths[i] for i in keep]

    def mul_old(x, y):
        res: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                p, r = kpaths[i], kpaths[j]
                if target(p) != r[0] or len(p[1]) + len(r[1]) >= M:
                    continue
                vadd(res, reduce({pidx[(p[0], p[1] + r[1])]: F(1)}), a * b)
        return res

    idem = [reduce({pidx[(v, ())]: F(1)}) for v in range(q.n)]
    arrows = [(a, reduce({pidx[(q.src(k), (k,))]: F(1)})) for k, a in enumerate(q.arrows)]
    alg, _ = from_table(F, q.vertices, dim, mul_old, idem, arrows, bq.name)
    alg._presentation = bq
    return alg


def from_table(field: Field, vertices, dim: int, mul, idem_vecs: list, arrows: list, name: str = "A"):
    """Build a path-basis Algebra from an abstract table.

    ``mul`` multiplies sparse vectors in the old basis; ``arrows`` is a list of
    (Arrow, vector) whose vectors must be a basis of rad/rad^2.  Returns the
    algebra and a function converting old coordinates to the new basis.
    """
    q = Quiver(tuple(vertices), tuple(a for a, _ in arrows))
    avec = [v for _, v in arrows]
    out = _out_arrows(q)
    ech = Echelon(field, prefer="min")
    paths, vals = [], []
    for v in range(q.n):
        if not ech.add(idem_vecs[v]):
            raise PresentationRecoveryFailed("idempotents are dependent")
        paths.append((v, ()))
        vals.append(idem_vecs[v])
    frontier = list(range(q.n))
    first = True
    while frontier:
        new = []
        for i in frontier:
            p = paths[i]
            t = q.tgt(p[1][-1]) if p[1] else p[0]
            for a in out[t]:
                val = mul(vals[i], avec[a])
                if val and ech.add(val):
                    paths.append((p[0], p[1] + (a,)))
                    vals.append(val)
                    new.append(len(paths) - 1)
                elif first:
                    raise PresentationRecoveryFailed(f"arrow {q.arrows[a].label} is not independent")
        frontier = new
        first = False
    if len(paths) != dim:
        raise PresentationRecoveryFailed(f"arrows generate a subalgebra of dimension {len(paths)} < {dim}")
    M = field.matrix([[v.get(k, field(0)) for k in range(dim)] for v in vals], dim, dim)
    Minv = M.inv()

    def convert(x: dict) -> dict:
        res: dict = {}
        for k, c in x.items():
            for j in range(dim):
                e = Minv[k, j]
                if e != 0:
                    vadd(res, {j: field(1)}, c * e)
        return res

    # row k of Minv, sparse, for speed
    minv_rows = []
    for k in range(dim):
        minv_rows.append({j: Minv[k, j] for j in range(dim) if Minv[k, j] != 0})

    def convert_fast(x: dict) -> dict:
        res: dict = {}
        for k, c in x.items():
            vadd(res, minv_rows[k], c)
        return res

    table = {}
    tg = [q.tgt(p[1][-1]) if p[1] else p[0] for p in paths]
    for i in range(dim):
        for j in range(dim):
            if tg[i] != paths[j][0]:
                continue
            v = convert_fast(mul(vals[i], vals[j]))
            if v:
                table[(i, j)] = v
    return Algebra(field, q, paths, table, name), convert_fast


def quotient(alg: Algebra, generators: list, name: str | None = None) -> Algebra:
    """Quotient by the two-sided ideal generated by ``generators`` (sparse vectors)."""
    F = alg.field
    ech = alg.ideal_closure(generators)
    dropped = [v for v in range(alg.n) if ech.contains({alg.idem[v]: F(1)})]
    keep = [i for i in range(alg.dim) if i not in ech.rows]
    pos = {i: k for k, i in enumerate(keep)}

    def project(x: dict) -> dict:
        r, _ = ech.reduce(x)
        return {pos[i]: c for i, c in r.items()}

    def mul_old(x, y):
        lift_x = {keep[i]: c for i, c in x.items()}
        lift_y = {keep[j]: c for j, c in y.items()}
        return project(alg.mul(lift_x, lift_y))

    verts = [v for v in range(alg.n) if v not in dropped]
    idem = [project({alg.idem[v]: F(1)}) for v in verts]
    # rad^2 of the quotient, to pick surviving arrows
    rad = [k for k, i in enumerate(keep) if alg.paths[i][1]]
    sq = Echelon(F, prefer="min")
    for i in rad:
        for j in rad:
            y = mul_old({i: F(1)}, {j: F(1)})
            if y:
                sq.add(y)
    arrows = []
    for k, a in enumerate(alg.arrows):
        if alg.quiver.src(k) in dropped or alg.quiver.tgt(k) in dropped:
            continue
        img = project({alg.arrow_index[k]: F(1)})
        if img and sq.add(img):
            arrows.append((a, img))
    new, conv = from_table(F, [alg.vertices[v] for v in verts], len(keep), mul_old, idem, arrows,
                           name or alg.name + "_quot")
    new.projection = lambda x: conv(project(x))
    new.ideal = ech
    new.parent = alg
    return new


# presentations -----------------------------------------------------------------
def _relation_rank(rel: dict):
    lengths = [len(p[1]) for p in rel]
    return (max(lengths), len(rel))


def minimize_relations(bq: BoundQuiver, dim: int) -> BoundQuiver:
    """Greedily drop relations that are not needed to cut the algebra down to ``dim``."""
    rels = list(bq.relations)
    order = sorted(range(len(rels)), key=lambda i: _relation_rank(rels[i]), reverse=True)
    alive = set(range(len(rels)))
    for i in order:
        trial = [rels[j] for j in sorted(alive) if j != i]
        try:
            d = compute_basis(BoundQuiver(bq.quiver, trial, bq.field, bq.name), max_dim=dim).dim
        except (DimensionExceeded, NonAdmissible):
            continue
        if d == dim:
            alive.discard(i)
    return BoundQuiver(bq.quiver, [rels[j] for j in sorted(alive)], bq.field, bq.name)


def generated_dimension(alg: Algebra, images: list) -> int:
    """Dimension of the subalgebra generated by the idempotents and ``images``."""
    F = alg.field
    ech = Echelon(F)
    cur = []
    for v in range(alg.n):
        x = {alg.idem[v]: F(1)}
        if ech.add(x):
            cur.append(x)
    while cur:
        nxt = []
        for x in cur:
            for y in images:
                z = alg.mul(x, y)
                if z and ech.add(z):
                    nxt.append(z)
        cur = nxt
    return ech.rank


def relations_hold(bq: BoundQuiver, alg: Algebra, images: dict) -> bool:
    """Do the relations of ``bq`` vanish when arrow labels map to ``images``?"""
    F = alg.field
    for r in bq.relations:
        tot: dict = {}
        for (v, arrows), c in r.items():
            x = {alg.idem[alg.vertex(bq.vertices[v])]: F(1)}
            for a in arrows:
                x = alg.mul(x, images[bq.arrows[a].label])
            vadd(tot, x, c)
        if tot:
            return False
    return True


def check_homomorphism(bq: BoundQuiver, alg: Algebra, images: dict) -> bool:
    """True if the arrow assignment defines an isomorphism kQ/I -> alg."""
    if sorted(bq.vertices) != sorted(alg.vertices):
        return False
    for a in bq.arrows:
        x = images[a.label]
        s, t = alg.vertex(a.source), alg.vertex(a.target)
        if any(alg.src[i] != s or alg.tgt[i] != t or not alg.paths[i][1] for i in x):
            return False
    if not relations_hold(bq, alg, images):
        return False
    if generated_dimension(alg, list(images.values())) != alg.dim:
        return False
    return compute_basis(bq, max_dim=alg.dim).dim == alg.dim


def isomorphic_by_labels(bq: BoundQuiver, alg: Algebra) -> bool:
    """Certify kQ/I ~ alg with each arrow sent to the equally labelled arrow."""
    try:
        images = {a.label: alg.arrow(a.label) for a in bq.arrows}
    except (KeyError, ValueError):
        return False
    try:
        return check_homomorphism(bq, alg, images)
    except DimensionExceeded:
        return False


def find_isomorphism(bq: BoundQuiver, alg: Algebra, base: dict, free: dict,
                     seed: int = 0, tries: int = 12):
    """Search an isomorphism kQ/I -> alg of the form a -> base[a] + (free part).

    ``free[a]`` lists vectors spanning the allowed corrections for arrow a;
    all products of two free vectors must vanish (square-zero ideal), which
    makes the relation equations linear.  Returns the arrow images or None.
    """
    F = alg.field
    for a in bq.arrows:
        base.setdefault(a.label, {})
        free.setdefault(a.label, [])
    unknowns = [(a.label, k) for a in bq.arrows for k in range(len(free[a.label]))]
    col = {u: i for i, u in enumerate(unknowns)}
    eqs_const, eqs_lin = [], []
    for r in bq.relations:
        const: dict = {}
        lin = [dict() for _ in unknowns]
        for (v, arrows), c in r.items():
            labs = [bq.arrows[a].label for a in arrows]
            x = {alg.idem[alg.vertex(bq.vertices[v])]: F(1)}
            for lab in labs:
                x = alg.mul(x, base[lab])
            vadd(const, x, c)
            for pos, lab in enumerate(labs):
                left = {alg.idem[alg.vertex(bq.vertices[v])]: F(1)}
                for l2 in labs[:pos]:
                    left = alg.mul(left, base[l2])
                for k, f in enumerate(free[lab]):
                    y = alg.mul(left, f)
                    for l2 in labs[pos + 1:]:
                        y = alg.mul(y, base[l2])
                    if y:
                        vadd(lin[col[(lab, k)]], y, c)
        eqs_const.append(const)
        eqs_lin.append(lin)
    coords = sorted({k for e in eqs_const for k in e} | {k for lin in eqs_lin for d in lin for k in d})
    cidx = {k: i for i, k in enumerate(coords)}
    nrows = len(eqs_const) * len(coords)
    nu = len(unknowns)
    A = [[F(0)] * nrows for _ in range(nu)]
    b = [F(0)] * nrows
    for e, (const, lin) in enumerate(zip(eqs_const, eqs_lin)):
        for k, c in const.items():
            b[e * len(coords) + cidx[k]] = -c
        for u, d in enumerate(lin):
            for k, c in d.items():
                A[u][e * len(coords) + cidx[k]] = c
    if nu == 0:
        if any(x != 0 for x in b):
            return None
        cand = {lab: dict(base[lab]) for lab in base}
        return cand if check_homomorphism(bq, alg, cand) else None
    Am = F.matrix(A, nu, nrows)
    bm = F.matrix([b], 1, nrows)
    part = la.solve_left(Am, bm) if nrows else F.zeros(1, nu)
    if part is None:
        return None
    kern = la.left_kernel(Am) if nrows else F.eye(nu)
    rng = random.Random(seed)
    nk = la.shape(kern)[0]
    for attempt in range(tries):
        t = [part[0, i] for i in range(nu)]
        for r in range(nk):
            c = F(0) if attempt == 0 and nk == 0 else F.random_element(rng, 7 + attempt * 11)
            for i in range(nu):
                t[i] += c * kern[r, i]
        cand = {}
        for a in bq.arrows:
            x = dict(base[a.label])
            for k, f in enumerate(free[a.label]):
                vadd(x, f, t[col[(a.label, k)]])
            cand[a.label] = x
        try:
            if check_homomorphism(bq, alg, cand):
                return cand
        except DimensionExceeded:
            return None
    return None
