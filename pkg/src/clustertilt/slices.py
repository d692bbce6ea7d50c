"""Local slices in knitted fragments, their annihilators and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as la
from .algebra import Algebra, Echelon, quotient as algebra_quotient
from .arknit import ARFragment


class InsufficientFragment(RuntimeError):
    pass


class NoSliceInFragment(RuntimeError):
    pass


@dataclass
class SliceData:
    """A candidate local slice with its certificate."""
    fragment: ARFragment
    members: frozenset
    presection: bool = False
    convex: bool = False
    cardinality: bool = False
    failures: list = dc_field(default_factory=list)
    fragment_relative: bool = False
    _ann: list | None = None

    @property
    def ok(self) -> bool:
        return self.presection and self.convex and self.cardinality

    def names(self) -> list:
        return sorted(self.fragment.names[i] for i in self.members)

    def modules(self) -> list:
        return [self.fragment.modules[i] for i in sorted(self.members)]

    def arrows(self) -> dict:
        return {(a, b): m for (a, b), m in self.fragment.arrows.items()
                if a in self.members and b in self.members}

    def sources(self) -> list:
        inner = self.arrows()
        return sorted(i for i in self.members if not any(b == i for (_, b) in inner))

    def sinks(self) -> list:
        inner = self.arrows()
        return sorted(i for i in self.members if not any(a == i for (a, _) in inner))

    def is_rightmost(self) -> bool:
        return all(self.fragment.is_injective(i) for i in self.sources())

    def is_leftmost(self) -> bool:
        return all(self.fragment.is_projective(i) for i in self.sinks())

    def strong_sinks(self) -> list:
        """Vertices x with I(x) an injective source (only for rightmost slices)."""
        if not self.is_rightmost():
            return []
        inj = {j: v for v, j in self.fragment.injectives.items()}
        return sorted(inj[i] for i in self.sources())

    def strong_sources(self) -> list:
        if not self.is_leftmost():
            return []
        proj = {j: v for v, j in self.fragment.projectives.items()}
        return sorted(proj[i] for i in self.sinks())

    def annihilator(self) -> list:
        if self._ann is None:
            self._ann = annihilator(self.fragment.algebra, self.modules())
        return self._ann

    def quotient(self, name: str | None = None) -> Algebra:
        alg = self.fragment.algebra
        return algebra_quotient(alg, self.annihilator(), name or alg.name + "_slice")

    def to_json(self) -> dict:
        frag = self.fragment
        return {
            "members": [{"id": i, "name": frag.names[i], "dimension_vector": list(frag.modules[i].dims)}
                        for i in sorted(self.members)],
            "presection": self.presection, "sectionally_convex": self.convex,
            "cardinality": self.cardinality, "failures": list(self.failures),
            "rightmost": self.is_rightmost(), "leftmost": self.is_leftmost(),
            "strong_sinks": [frag.algebra.vertices[v] for v in self.strong_sinks()],
            "strong_sources": [frag.algebra.vertices[v] for v in self.strong_sources()],
            "fragment_relative": self.fragment_relative,
        }


def _interior(frag: ARFragment, i: int) -> bool:
    return i in frag.expanded_left and i in frag.expanded_right


def is_local_slice(frag: ARFragment, members) -> SliceData:
    """Check the three local slice axioms on the fragment."""
    S = frozenset(members)
    out = SliceData(frag, S)
    name = frag.names
    for x in sorted(S):
        if not _interior(frag, x):
            raise InsufficientFragment(f"{name[x]} lies on the fragment boundary")
    fails = []
    for x in sorted(S):
        for y in frag.successors(x):
            if y in S:
                continue
            t = frag.ensure_tau(y)
            if t is None or t not in S:
                fails.append(f"arrow {name[x]} -> {name[y]}: neither {name[y]} nor its tau is in the slice")
        for y in frag.predecessors(x):
            if y in S:
                continue
            t = frag.ensure_tau_inv(y)
            if t is None or t not in S:
                fails.append(f"arrow {name[y]} -> {name[x]}: neither {name[y]} nor its tau^-1 is in the slice")
    out.presection = not fails
    conv, relative = _sectional_violations(frag, S)
    out.fragment_relative = relative
    out.convex = not conv
    fails += conv
    out.cardinality = len(S) == frag.algebra.n
    if not out.cardinality:
        fails.append(f"slice has {len(S)} modules, algebra has {frag.algebra.n} vertices")
    out.failures = fails
    return out


def _sectional_violations(frag: ARFragment, S: frozenset):
    """Sectional paths leaving S and coming back; explored inside the fragment."""
    fails = []
    relative = False
    seen = set()
    stack = []
    for x in sorted(S):
        for y in frag.successors(x):
            if y not in S:
                stack.append((x, y))
    while stack:
        prev, cur = stack.pop()
        if (prev, cur) in seen:
            continue
        seen.add((prev, cur))
        if cur not in frag.expanded_right:
            relative = True
            continue
        for z in frag.successors(cur):
            if frag.tau.get(z) == prev and frag.tau.get(z) is not None:
                continue  # not sectional
            if z in S:
                fails.append(f"sectional path leaves the slice and returns at {frag.names[z]}")
                continue
            stack.append((cur, z))
    return fails, relative


def enumerate_slices(frag: ARFragment, seeds=None, limit: int = 200) -> list:
    """Local slices inside the fragment reachable by presection closure from ``seeds``."""
    n = frag.algebra.n
    interior = [i for i in range(len(frag)) if _interior(frag, i)]
    inner = set(interior)
    seeds = interior if seeds is None else list(seeds)
    found = {}

    def orbit_clash(S, y):
        for z in S:
            a = z
            for _ in range(n + 1):
                a = frag.tau.get(a)
                if a is None:
                    break
                if a == y:
                    return True
            a = z
            for _ in range(n + 1):
                a = frag.tau_inv.get(a)
                if a is None:
                    break
                if a == y:
                    return True
        return False

    def open_constraint(S):
        for x in sorted(S):
            for y in frag.successors(x):
                if y not in S and frag.tau.get(y) not in S:
                    return [y, frag.tau.get(y)]
            for y in frag.predecessors(x):
                if y not in S and frag.tau_inv.get(y) not in S:
                    return [y, frag.tau_inv.get(y)]
        return None

    def search(S):
        if len(found) >= limit or len(S) > n:
            return
        opts = open_constraint(S)
        if opts is None:
            if len(S) == n and S not in found:
                data = is_local_slice(frag, S)
                if data.ok:
                    found[S] = data
            return
        for y in opts:
            if y is None or y not in inner or orbit_clash(S, y):
                continue
            search(S | {y})

    for s in seeds:
        if s in inner:
            search(frozenset([s]))
    return sorted(found.values(), key=lambda d: sorted(d.members))


def _move_right(frag: ARFragment, S: frozenset, x: int):
    """Replace the source x by tau^-1 x, if that stays inside the fragment."""
    t = frag.tau_inv.get(x)
    if t is None or not _interior(frag, t):
        return None
    return (S - {x}) | {t}


def _move_left(frag: ARFragment, S: frozenset, x: int):
    t = frag.tau.get(x)
    if t is None or not _interior(frag, t):
        return None
    return (S - {x}) | {t}


def rightmost_slice(frag: ARFragment, start: SliceData | None = None) -> SliceData:
    """A slice whose sources are all injective.

    From ``start`` the slice is swept rightwards across meshes.  Without a start
    the enumerated rightmost slices are ranked by their number of strong sinks,
    ties broken by stable ids.
    """
    if start is None:
        cands = [s for s in enumerate_slices(frag) if s.is_rightmost()]
        if not cands:
            raise NoSliceInFragment("no rightmost slice inside the fragment")
        return min(cands, key=lambda s: (-len(s.strong_sinks()), sorted(s.members)))
    cur = start
    for _ in range(10 * len(frag) + 10):
        if cur.is_rightmost():
            return cur
        moved = False
        for x in cur.sources():
            if frag.is_injective(x):
                continue
            nxt = _move_right(frag, cur.members, x)
            if nxt is None:
                continue
            data = is_local_slice(frag, nxt)
            if data.ok:
                cur = data
                moved = True
                break
        if not moved:
            raise NoSliceInFragment("cannot sweep further right inside the fragment")
    raise NoSliceInFragment("sweep did not terminate")


def leftmost_slice(frag: ARFragment, start: SliceData | None = None) -> SliceData:
    """A slice whose sinks are all projective (dual of ``rightmost_slice``)."""
    if start is None:
        cands = [s for s in enumerate_slices(frag) if s.is_leftmost()]
        if not cands:
            raise NoSliceInFragment("no leftmost slice inside the fragment")
        return min(cands, key=lambda s: (-len(s.strong_sources()), sorted(s.members)))
    cur = start
    for _ in range(10 * len(frag) + 10):
        if cur.is_leftmost():
            return cur
        moved = False
        for x in cur.sinks():
            if frag.is_projective(x):
                continue
            nxt = _move_left(frag, cur.members, x)
            if nxt is None:
                continue
            data = is_local_slice(frag, nxt)
            if data.ok:
                cur = data
                moved = True
                break
        if not moved:
            raise NoSliceInFragment("cannot sweep further left inside the fragment")
    raise NoSliceInFragment("sweep did not terminate")


def _any_slice(frag: ARFragment) -> SliceData:
    found = enumerate_slices(frag, limit=1)
    if not found:
        raise NoSliceInFragment("no local slice inside the fragment")
    return found[0]


def annihilator(alg: Algebra, modules: list) -> list:
    """Basis of the elements of ``alg`` acting as zero on every module."""
    F = alg.field
    out = []
    blocks: dict = {}
    for i in range(alg.dim):
        blocks.setdefault((alg.src[i], alg.tgt[i]), []).append(i)
    for (s, t), idx in sorted(blocks.items()):
        width = sum(M.dims[s] * M.dims[t] for M in modules)
        if width == 0:
            out.extend({i: F(1)} for i in idx)
            continue
        mat = F.zeros(len(idx), width)
        for r, i in enumerate(idx):
            col = 0
            for M in modules:
                blk = M.basis_action(i)
                for a in range(M.dims[s]):
                    for b in range(M.dims[t]):
                        mat[r, col] = blk[a, b]
                        col += 1
        ker = la.left_kernel(mat)
        for k in range(ker.nrows()):
            v = {idx[j]: ker[k, j] for j in range(len(idx)) if ker[k, j] != 0}
            if v:
                out.append(v)
    return out


def ideal_span(alg: Algebra, gens: list) -> Echelon:
    ech = Echelon(alg.field)
    for g in gens:
        ech.add(dict(g))
    return ech


def same_ideal(alg: Algebra, a: list, b: list) -> bool:
    ea, eb = ideal_span(alg, a), ideal_span(alg, b)
    return ea.rank == eb.rank and all(ea.contains(dict(v)) for v in b)


def slice_equivalent(s1: SliceData, s2: SliceData) -> bool:
    """Slices with the same annihilator, hence the same quotient."""
    return same_ideal(s1.fragment.algebra, s1.annihilator(), s2.annihilator())


def slice_fragment(alg: Algebra, seeds=None, steps: int = 6, max_dim: int | None = 30) -> ARFragment:
    """A knitted window to the right of the given injectives (default: all of them)."""
    from .arknit import knit_window
    frag = ARFragment(alg)
    frag.register_census()
    if seeds is None:
        ids = [frag.injectives[v] for v in range(alg.n)]
    else:
        ids = [frag.injectives[alg.vertex(s)] if not isinstance(s, int) else frag.injectives[s] for s in seeds]
    return knit_window(alg, ids, steps, frag, max_dim=max_dim)
