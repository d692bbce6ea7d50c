"""Almost split sequences and knitted fragments of the AR quiver."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
import json

from . import linalg as la
from .algebra import Algebra
from .homology import ClassSpace, syzygy, tau, tau_inverse
from .modules import (ModuleMap, Representation, cokernel, decompose, direct_sum, find_isomorphism,
                      hom_space, injective, is_isomorphic, projective, quotient_module, radical, simple,
                      socle)


class MeshVerificationFailed(RuntimeError):
    pass


@dataclass
class ARSequence:
    """0 -> left -> middle -> right -> 0, almost split."""
    left: Representation
    middle: Representation
    right: Representation
    f: ModuleMap
    g: ModuleMap
    summands: list  # (indecomposable, multiplicity)

    def is_exact(self) -> bool:
        if not self.f.is_mono() or not self.g.is_epi() or not (self.f * self.g).is_zero():
            return False
        return self.left.dim + self.right.dim == self.middle.dim


def _eigenvalue(t):
    facs = la.charpoly_factors(t)
    if len(facs) != 1 or facs[0][0].degree() != 1:
        raise MeshVerificationFailed("endomorphism ring is not local")
    c = facs[0][0].coeffs()
    return -c[0] / c[1]


def radical_of_local_end(M: Representation) -> list:
    """Basis of rad End(M) for an indecomposable M (as maps)."""
    F = M.field
    out = []
    for f in hom_space(M, M):
        lam = _eigenvalue(f.total())
        g = f + M.identity().scale(-lam)
        if not g.is_zero():
            out.append(g)
    return out


def ar_sequence_ending_at(M: Representation, tauM: Representation | None = None) -> ARSequence:
    """The almost split sequence ending at a non-projective indecomposable M."""
    F = M.field
    if tauM is None:
        tauM = tau(M)
    if tauM.is_zero():
        raise ValueError("module is projective: no almost split sequence ends there")
    K, inc, cov = syzygy(M)
    cs = ClassSpace(K, inc, cov.projective, tauM)
    if cs.dimension == 0:
        raise MeshVerificationFailed("Ext^1(M, tau M) vanishes")
    # the socle of Ext^1(M, tau M) under rad End(tau M)
    rad = radical_of_local_end(tauM)
    d = cs.dimension
    if rad:
        cols = []
        for n in rad:
            for k, h in enumerate(cs.cocycles):
                pass
        mat = F.zeros(d, d * len(rad))
        for r, h in enumerate(cs.cocycles):
            for s, n in enumerate(rad):
                coords = cs.coordinates(h * n)
                for j, c in enumerate(coords):
                    mat[r, s * d + j] = c
        soc = la.left_kernel(mat)
    else:
        soc = F.eye(d)
    if soc.nrows() == 0:
        raise MeshVerificationFailed("no socle element in Ext^1(M, tau M)")
    coeffs = [soc[0, k] for k in range(d)]
    fmap = None
    for c, h in zip(coeffs, cs.cocycles):
        if c != 0:
            fmap = h.scale(c) if fmap is None else fmap + h.scale(c)
    # pushout of 0 -> K -> P0 -> M -> 0 along fmap: K -> tau M
    P0 = cov.projective
    S = direct_sum([P0, tauM])
    mats = []
    for v in range(M.alg.n):
        mats.append(la.hstack([inc.mats[v], -fmap.mats[v]], nrows=K.dims[v], field=F))
    emb = ModuleMap(K, S, mats, check=False)
    E, proj = cokernel(emb)
    # f: tau M -> E is the second component; g: E -> M induced by (cover, 0)
    fm = []
    for v in range(M.alg.n):
        o = P0.dims[v]
        z = F.zeros(tauM.dims[v], S.dims[v])
        for i in range(tauM.dims[v]):
            z[i, o + i] = F(1)
        fm.append(z * proj.mats[v])
    f = ModuleMap(tauM, E, fm, check=False)
    gm = []
    for v in range(M.alg.n):
        # E_v basis rows are complements in S_v; map through (cover, 0)
        top = la.vstack([cov.map.mats[v], F.zeros(tauM.dims[v], M.dims[v])], ncols=M.dims[v], field=F)
        # proj has a right inverse on complements: choose preimages
        pre = _right_inverse(proj.mats[v], F)
        gm.append(pre * top)
    g = ModuleMap(E, M, gm, check=False)
    return ARSequence(tauM, E, M, f, g, decompose(E))


def _right_inverse(m, F):
    """Some r with r * m = id (m surjective)."""
    n, c = la.shape(m)
    if c == 0:
        return F.zeros(0, n)
    x = la.solve_left(m, F.eye(c))
    if x is None:
        raise MeshVerificationFailed("projection is not surjective")
    return x


def verify_sequence(seq: ARSequence) -> dict:
    """Exactness and non-splitness of a computed almost split sequence."""
    from .modules import split_epi_section
    cert = {"exact": seq.is_exact(), "homomorphisms": seq.f.is_homomorphism() and seq.g.is_homomorphism()}
    cert["nonsplit"] = split_epi_section(seq.g) is None
    cert["ok"] = all(cert.values())
    return cert


# fragments ----------------------------------------------------------------------
@dataclass
class ARFragment:
    """A finite knitted piece of the AR quiver."""
    algebra: Algebra
    modules: list = dc_field(default_factory=list)
    names: list = dc_field(default_factory=list)
    arrows: dict = dc_field(default_factory=dict)        # (i, j) -> multiplicity
    tau: dict = dc_field(default_factory=dict)           # i -> id of tau M, or None if projective
    tau_inv: dict = dc_field(default_factory=dict)       # i -> id of tau^-1 M, or None if injective
    sequences: dict = dc_field(default_factory=dict)     # right end id -> ARSequence
    boundary: set = dc_field(default_factory=set)
    expanded_left: set = dc_field(default_factory=set)
    expanded_right: set = dc_field(default_factory=set)
    projectives: dict = dc_field(default_factory=dict)   # vertex index -> id
    injectives: dict = dc_field(default_factory=dict)
    tags: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.modules)

    # registry ----------------------------------------------------------------------
    def find(self, M: Representation):
        for i, N in enumerate(self.modules):
            if N.dims == M.dims and is_isomorphic(N, M):
                return i
        return None

    def add(self, M: Representation, name: str | None = None) -> int:
        i = self.find(M)
        if i is not None:
            if name and self.names[i].startswith("("):
                self.names[i] = name
            return i
        self.modules.append(M)
        self.names.append(name or self.default_name(M))
        return len(self.modules) - 1

    def default_name(self, M: Representation) -> str:
        alg = self.algebra
        for v in range(alg.n):
            if M.dims == _proj(alg, v).dims and is_isomorphic(M, _proj(alg, v)):
                return f"P({alg.vertices[v]})"
            if M.dims == _inj(alg, v).dims and is_isomorphic(M, _inj(alg, v)):
                return f"I({alg.vertices[v]})"
        if M.dim == 1:
            v = M.dims.index(1)
            return f"S({alg.vertices[v]})"
        return M.dimvec_str()

    def label(self, i: int) -> str:
        return self.names[i]

    def is_projective(self, i: int) -> bool:
        return i in self.projectives.values()

    def is_injective(self, i: int) -> bool:
        return i in self.injectives.values()

    def predecessors(self, i: int) -> list:
        return sorted({a for (a, b) in self.arrows if b == i})

    def successors(self, i: int) -> list:
        return sorted({b for (a, b) in self.arrows if a == i})

    def multiplicity(self, i: int, j: int) -> int:
        return self.arrows.get((i, j), 0)

    def _set_arrow(self, i: int, j: int, m: int):
        old = self.arrows.get((i, j))
        if old is not None and old != m:
            raise MeshVerificationFailed(f"inconsistent arrow multiplicity {self.names[i]} -> {self.names[j]}")
        self.arrows[(i, j)] = m

    # expansion ----------------------------------------------------------------------
    def expand_left(self, i: int) -> list:
        """Compute all arrows ending at module i (and tau of it)."""
        if i in self.expanded_left:
            return []
        M = self.modules[i]
        new = []
        pv = self._projective_vertex(i)
        if pv is not None:
            self.tau[i] = None
            R, _ = radical(M)
            for N, m in decompose(R):
                j = self.add(N)
                self._set_arrow(j, i, m)
                new.append(j)
        else:
            seq = ar_sequence_ending_at(M)
            t = self.add(seq.left)
            self.tau[i] = t
            self.tau_inv[t] = i
            self.sequences[i] = seq
            new.append(t)
            for N, m in seq.summands:
                j = self.add(N)
                self._set_arrow(j, i, m)
                self._set_arrow(t, j, m)
                new.append(j)
        self.expanded_left.add(i)
        return new

    def expand_right(self, i: int) -> list:
        """Compute all arrows starting at module i (and tau^-1 of it)."""
        if i in self.expanded_right:
            return []
        M = self.modules[i]
        new = []
        iv = self._injective_vertex(i)
        if iv is not None:
            self.tau_inv[i] = None
            S, sin = socle(M)
            Q, _ = quotient_module(M, sin.mats)
            for N, m in decompose(Q):
                j = self.add(N)
                self._set_arrow(i, j, m)
                new.append(j)
        else:
            N = tau_inverse(M)
            k = self.add(N)
            new.append(k)
            if k not in self.sequences:
                seq = ar_sequence_ending_at(self.modules[k], tauM=M)
                self.sequences[k] = seq
            seq = self.sequences[k]
            self.tau[k] = i
            self.tau_inv[i] = k
            for E, m in seq.summands:
                j = self.add(E)
                self._set_arrow(i, j, m)
                self._set_arrow(j, k, m)
                new.append(j)
            self.expanded_left.add(k)
        self.expanded_right.add(i)
        return new

    def ensure_tau(self, i: int):
        """Id of tau M without computing the mesh; None for projectives."""
        if i not in self.tau:
            if self.is_projective(i):
                self.tau[i] = None
            else:
                t = self.add(tau(self.modules[i]))
                self.tau[i] = t
                self.tau_inv.setdefault(t, i)
        return self.tau[i]

    def ensure_tau_inv(self, i: int):
        """Id of tau^-1 M without computing the mesh; None for injectives."""
        if i not in self.tau_inv:
            if self.is_injective(i):
                self.tau_inv[i] = None
            else:
                t = self.add(tau_inverse(self.modules[i]))
                self.tau_inv[i] = t
                self.tau.setdefault(t, i)
        return self.tau_inv[i]

    def _projective_vertex(self, i: int):
        for v, j in self.projectives.items():
            if j == i:
                return v
        return None

    def _injective_vertex(self, i: int):
        for v, j in self.injectives.items():
            if j == i:
                return v
        return None

    def register_census(self):
        """Place every indecomposable projective and injective in the registry."""
        alg = self.algebra
        for v in range(alg.n):
            self.projectives[v] = self.add(_proj(alg, v), f"P({alg.vertices[v]})")
        for v in range(alg.n):
            self.injectives[v] = self.add(_inj(alg, v), f"I({alg.vertices[v]})")

    # queries --------------------------------------------------------------------------
    def tau_orbit_root(self, i: int):
        seen = set()
        while self.tau.get(i) is not None and i not in seen:
            seen.add(i)
            i = self.tau[i]
        return i

    def verify_mesh(self, i: int) -> dict:
        """Certificate for the mesh ending at module i."""
        if i not in self.sequences:
            return {"ok": False, "reason": "no mesh computed (projective or boundary)"}
        seq = self.sequences[i]
        cert = verify_sequence(seq)
        # tau agreement with the independent computation
        t = tau(self.modules[i])
        cert["tau_agrees"] = is_isomorphic(t, seq.left)
        mids = {}
        for N, m in seq.summands:
            j = self.find(N)
            mids[j] = m
        frag = {a: m for (a, b), m in self.arrows.items() if b == i}
        cert["middle_matches"] = frag == mids
        cert["ok"] = all(v for k, v in cert.items() if k != "ok")
        return cert

    def to_json(self) -> dict:
        alg = self.algebra
        return {
            "algebra": alg.name,
            "vertices": [{"id": i, "name": self.names[i], "dimension_vector": list(M.dims),
                          "boundary": i in self.boundary, "tag": self.tags.get(i, "")}
                         for i, M in enumerate(self.modules)],
            "arrows": [{"source": a, "target": b, "multiplicity": m}
                       for (a, b), m in sorted(self.arrows.items())],
            "tau": [{"module": i, "tau": t} for i, t in sorted(self.tau.items()) if t is not None],
        }

    def to_dot(self, name: str = "AR") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for i, M in enumerate(self.modules):
            lab = self.names[i]
            if not lab.startswith("("):
                lab = f"{lab}\\n{M.dimvec_str()}"
            style = ', style=dashed' if i in self.boundary else ""
            lines.append(f'  m{i} [label="{lab}"{style}];')
        for (a, b), m in sorted(self.arrows.items()):
            extra = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  m{a} -> m{b}{extra};")
        for i, t in sorted(self.tau.items()):
            if t is not None:
                lines.append(f"  m{i} -> m{t} [style=dotted, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _proj(alg: Algebra, v: int):
    if getattr(alg, "_projs", None) is None:
        alg._projs = [projective(alg, w) for w in range(alg.n)]
    return alg._projs[v]


def _inj(alg: Algebra, v: int):
    if getattr(alg, "_injs", None) is None:
        alg._injs = [injective(alg, w) for w in range(alg.n)]
    return alg._injs[v]


def knit_around(alg: Algebra, seeds: list, radius: int, fragment: ARFragment | None = None,
                max_dim: int | None = None) -> ARFragment:
    """Knit in both directions from ``seeds`` up to graph distance ``radius``.

    Modules of dimension above ``max_dim`` are left unexpanded.
    """
    frag = fragment or ARFragment(alg)
    if not frag.projectives:
        frag.register_census()
    dist = {}
    queue = deque()
    for s in seeds:
        i = s if isinstance(s, int) else frag.add(s)
        dist[i] = 0
        queue.append(i)
    while queue:
        i = queue.popleft()
        if dist[i] >= radius or (max_dim is not None and frag.modules[i].dim > max_dim):
            continue
        for j in frag.expand_left(i) + frag.expand_right(i):
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    frag.boundary = {i for i in dist if dist[i] >= radius} | {
        i for i in range(len(frag)) if i not in dist}
    frag.boundary -= {i for i in frag.expanded_left & frag.expanded_right}
    return frag


def knit_window(alg: Algebra, seeds: list, steps: int, fragment: ARFragment | None = None,
                max_dim: int | None = None) -> ARFragment:
    """Knit rightwards from ``seeds`` for ``steps`` arrow steps.

    Every vertex at distance < steps is expanded on both sides, so its full
    neighbourhood is known; only vertices to the left of the seeds that are
    needed as predecessors are added (they are marked as boundary).  Modules
    of dimension above ``max_dim`` are never expanded.
    """
    frag = fragment or ARFragment(alg)
    if not frag.projectives:
        frag.register_census()
    dist = {}
    queue = deque()
    for s in seeds:
        i = s if isinstance(s, int) else frag.add(s)
        dist[i] = 0
        queue.append(i)
    while queue:
        i = queue.popleft()
        if dist[i] >= steps or (max_dim is not None and frag.modules[i].dim > max_dim):
            continue
        for j in frag.expand_right(i):
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    interior = sorted(i for i in dist if dist[i] < steps and i in frag.expanded_right)
    for i in interior:
        frag.expand_left(i)
    frag.boundary = {i for i in range(len(frag))
                     if not (i in frag.expanded_left and i in frag.expanded_right)}
    return frag


def _knit_layers(alg: Algebra, steps: int, forward: bool) -> ARFragment:
    """BFS along arrows from the projectives (injectives); one tau-step is two arrows."""
    frag = ARFragment(alg)
    frag.register_census()
    seeds = frag.projectives if forward else frag.injectives
    level = {seeds[v]: 0 for v in range(alg.n)}
    queue = deque(sorted(level))
    done = frag.expanded_right if forward else frag.expanded_left
    while queue:
        i = queue.popleft()
        if level[i] >= 2 * steps:
            continue
        for j in (frag.expand_right(i) if forward else frag.expand_left(i)):
            if j not in level:
                level[j] = level[i] + 1
                queue.append(j)
    frag.boundary = {i for i in level if i not in done}
    frag.tags.update({i: "level %d" % (level[i] // 2) for i in level})
    return frag


def knit_postprojective(alg: Algebra, steps: int) -> ARFragment:
    """Knit forward from the projectives through about ``steps`` layers of tau^-1."""
    return _knit_layers(alg, steps, True)


def knit_preinjective(alg: Algebra, steps: int) -> ARFragment:
    """Knit backward from the injectives through about ``steps`` layers of tau."""
    return _knit_layers(alg, steps, False)
