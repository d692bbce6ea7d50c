"""Completions, reflections of local slices, and reflection sequences."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .algebra import Algebra, quotient as algebra_quotient
from .arknit import ARFragment
from .homology import global_dimension
from .slices import (InsufficientFragment, NoSliceInFragment, SliceData, is_local_slice,
                     slice_equivalent, _interior)


class NotRightmost(ValueError):
    pass


class NotStrongSink(ValueError):
    pass


class UndefinedOrbitStep(ValueError):
    pass


class SplitVerificationFailed(RuntimeError):
    pass


class FragmentTooSmall(RuntimeError):
    pass


@dataclass
class Completion:
    """H_x = J (injectives) + J^- (with an injective successor) + E (the rest)."""
    slice: SliceData
    anchor: int            # vertex index x (or y for the dual)
    members: frozenset
    J: frozenset
    Jminus: frozenset
    E: frozenset
    dual: bool = False

    @property
    def G_exists(self) -> bool:
        return not self.Jminus

    def names(self, part=None) -> list:
        frag = self.slice.fragment
        return sorted(frag.names[i] for i in (self.members if part is None else part))


# cluster tau --------------------------------------------------------------------
def cluster_tau_inverse(frag: ARFragment, i: int, power: int = 1) -> int:
    """tau^-power of module i computed as in the cluster category (power 1 or 2)."""
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    inj = {j: v for v, j in frag.injectives.items()}
    if power == 1:
        if i in inj:
            raise UndefinedOrbitStep(f"tau^-1 of the injective {frag.names[i]} is not a module")
        return frag.ensure_tau_inv(i)
    if i in inj:
        return frag.projectives[inj[i]]
    t = frag.ensure_tau_inv(i)
    if t in inj:
        return frag.projectives[inj[t]]
    return frag.ensure_tau_inv(t)


def cluster_tau(frag: ARFragment, i: int, power: int = 1) -> int:
    """Dual rule: tau^2 P(y) = I(y)."""
    if power not in (1, 2):
        raise ValueError("power must be 1 or 2")
    proj = {j: v for v, j in frag.projectives.items()}
    if power == 1:
        if i in proj:
            raise UndefinedOrbitStep(f"tau of the projective {frag.names[i]} is not a module")
        return frag.ensure_tau(i)
    if i in proj:
        return frag.injectives[proj[i]]
    t = frag.ensure_tau(i)
    if t in proj:
        return frag.injectives[proj[t]]
    return frag.ensure_tau(t)


# completions --------------------------------------------------------------------
def _reaches(step: dict, start: int, targets: set, within: set) -> bool:
    """Is some member of ``targets`` reachable from ``start`` by a nonempty path inside ``within``?"""
    seen, stack = set(), [start]
    while stack:
        c = stack.pop()
        for s in step[c]:
            if s in within and s not in seen:
                if s in targets:
                    return True
                seen.add(s)
                stack.append(s)
    return False


def _complete(sl: SliceData, start: int, special: set, fwd: dict, back: dict) -> tuple:
    """Fixpoint of: add the ``fwd`` neighbours of members with a path to a special member,
    then close under ``back`` neighbours."""
    H = {start}
    while True:
        old = set(H)
        grow = True
        while grow:
            grow = False
            for L in sorted(H):
                if L in special or _reaches(fwd, L, special & H, H):
                    for M in fwd[L]:
                        if M not in H:
                            H.add(M)
                            grow = True
        todo = list(H)
        while todo:
            m = todo.pop()
            for p in back[m]:
                if p not in H:
                    H.add(p)
                    todo.append(p)
        if H == old:
            break
    J = {i for i in H if i in special}
    Jm = {i for i in H if i not in special and _reaches(fwd, i, J, H)}
    return frozenset(H), frozenset(J), frozenset(Jm), frozenset(H - J - Jm)


def completion(sl: SliceData, x: int) -> Completion:
    """The completion H_x of the strong sink x in the rightmost slice ``sl``.

    "Injective successor" is read as a successor along a path inside H_x, not
    only a direct one.
    """
    frag = sl.fragment
    if not sl.is_rightmost():
        raise NotRightmost("the slice has a non-injective source")
    if x not in sl.strong_sinks():
        raise NotStrongSink(f"{frag.algebra.vertices[x]} is not a strong sink of the slice")
    arrows = sl.arrows()
    succ = {i: {b for (a, b) in arrows if a == i} for i in sl.members}
    pred = {i: {a for (a, b) in arrows if b == i} for i in sl.members}
    inj = {frag.injectives[v] for v in frag.injectives}
    H, J, Jm, E = _complete(sl, frag.injectives[x], inj, succ, pred)
    return Completion(sl, x, H, J, Jm, E)


def cocompletion(sl: SliceData, y: int) -> Completion:
    """Dual completion at a strong source y of a leftmost slice."""
    frag = sl.fragment
    if not sl.is_leftmost():
        raise NotRightmost("the slice has a non-projective sink")
    if y not in sl.strong_sources():
        raise NotStrongSink(f"{frag.algebra.vertices[y]} is not a strong source of the slice")
    arrows = sl.arrows()
    succ = {i: {b for (a, b) in arrows if a == i} for i in sl.members}
    pred = {i: {a for (a, b) in arrows if b == i} for i in sl.members}
    proj = {frag.projectives[v] for v in frag.projectives}
    H, J, Jm, E = _complete(sl, frag.projectives[y], proj, pred, succ)
    return Completion(sl, y, H, J, Jm, E, dual=True)


# reflections --------------------------------------------------------------------
def _check_window(frag: ARFragment, ids):
    for i in ids:
        if not _interior(frag, i):
            raise InsufficientFragment(f"{frag.names[i]} lies on the fragment boundary")


def equivalent_rightmost(sl: SliceData) -> SliceData:
    """Sweep right across meshes while the annihilator is unchanged."""
    frag = sl.fragment
    cur = sl
    while not cur.is_rightmost():
        moved = False
        for x in cur.sources():
            if frag.is_injective(x):
                continue
            t = frag.tau_inv.get(x)
            if t is None or not _interior(frag, t):
                continue
            cand = is_local_slice(frag, (cur.members - {x}) | {t})
            if cand.ok and slice_equivalent(cand, cur):
                cur = cand
                moved = True
                break
        if not moved:
            raise NoSliceInFragment("no equivalent rightmost slice inside the fragment")
    return cur


def equivalent_leftmost(sl: SliceData) -> SliceData:
    frag = sl.fragment
    cur = sl
    while not cur.is_leftmost():
        moved = False
        for x in cur.sinks():
            if frag.is_projective(x):
                continue
            t = frag.tau.get(x)
            if t is None or not _interior(frag, t):
                continue
            cand = is_local_slice(frag, (cur.members - {x}) | {t})
            if cand.ok and slice_equivalent(cand, cur):
                cur = cand
                moved = True
                break
        if not moved:
            raise NoSliceInFragment("no equivalent leftmost slice inside the fragment")
    return cur


def reflect_slice(sl: SliceData, x: int) -> SliceData:
    """sigma_x^+ of the slice (taken at the equivalent rightmost slice)."""
    frag = sl.fragment
    if not sl.is_rightmost():
        sl = equivalent_rightmost(sl)
    H = completion(sl, x)
    new = set(sl.members - H.members)
    for i in H.J | H.Jminus:
        new.add(cluster_tau_inverse(frag, i, 2))
    for i in H.E:
        new.add(cluster_tau_inverse(frag, i, 1))
    _check_window(frag, new)
    out = is_local_slice(frag, new)
    if not out.ok:
        raise RuntimeError("reflected set is not a local slice: " + "; ".join(out.failures))
    return out


def coreflect_slice(sl: SliceData, y: int) -> SliceData:
    """sigma_y^- of the slice (taken at the equivalent leftmost slice)."""
    frag = sl.fragment
    if not sl.is_leftmost():
        sl = equivalent_leftmost(sl)
    H = cocompletion(sl, y)
    new = set(sl.members - H.members)
    for i in H.J | H.Jminus:
        new.add(cluster_tau(frag, i, 2))
    for i in H.E:
        new.add(cluster_tau(frag, i, 1))
    _check_window(frag, new)
    out = is_local_slice(frag, new)
    if not out.ok:
        raise RuntimeError("coreflected set is not a local slice: " + "; ".join(out.failures))
    return out


def apply_sequence(sl: SliceData, seq: list) -> SliceData:
    for sign, v in seq:
        sl = reflect_slice(sl, v) if sign == "+" else coreflect_slice(sl, v)
    return sl


def _moves(sl: SliceData):
    out = []
    try:
        r = sl if sl.is_rightmost() else equivalent_rightmost(sl)
        out += [("+", x, r) for x in r.strong_sinks()]
    except NoSliceInFragment:
        pass
    try:
        le = sl if sl.is_leftmost() else equivalent_leftmost(sl)
        out += [("-", y, le) for y in le.strong_sources()]
    except NoSliceInFragment:
        pass
    return out


def reflection_sequence(s1: SliceData, s2: SliceData, max_length: int = 6) -> list:
    """A shortest list of (sign, vertex) steps with sigma s1 equivalent to s2."""
    if slice_equivalent(s1, s2):
        return []
    seen = {s1.members}
    queue = deque([(s1, [])])
    hit_wall = False
    while queue:
        cur, path = queue.popleft()
        if len(path) >= max_length:
            continue
        for sign, v, base in _moves(cur):
            try:
                nxt = reflect_slice(base, v) if sign == "+" else coreflect_slice(base, v)
            except (InsufficientFragment, NoSliceInFragment):
                hit_wall = True
                continue
            if nxt.members in seen:
                continue
            seen.add(nxt.members)
            steps = path + [(sign, v)]
            if slice_equivalent(nxt, s2):
                return steps
            queue.append((nxt, steps))
    if hit_wall:
        raise FragmentTooSmall("reflections leave the fragment; knit a larger window "
                               f"(for instance {2 * max_length + 4} steps)")
    raise FragmentTooSmall("no sequence found inside the fragment")


# the triangular split of a tilted algebra -------------------------------------------
@dataclass
class SplitData:
    vertices: list          # S_x (vertex indices of C)
    hereditary: Algebra     # the full subalgebra on S_x
    rest: Algebra | None    # the full subalgebra on the complement
    bimodule_dim: int       # dimension of the paths from the complement into S_x
    successor_closed: bool


def _full_subalgebra(C: Algebra, keep: list, name: str) -> Algebra | None:
    F = C.field
    drop = [v for v in range(C.n) if v not in keep]
    if not keep:
        return None
    return algebra_quotient(C, [{C.idem[v]: F(1)} for v in drop], name)


def lemma_s_split(C: Algebra, comp: Completion, vertex_map: dict | None = None) -> SplitData:
    """Split C along S_x = {y : I(y) in H_x}; checks hereditary and successor closed."""
    frag = comp.slice.fragment
    inj = {j: v for v, j in frag.injectives.items()}
    labels = {frag.algebra.vertices[inj[i]] for i in comp.J}
    S = [C.vertices.index(lab) for lab in sorted(labels, key=str) if lab in C.vertices]
    S.sort()
    closed = True
    for k in range(C.dim):
        if C.src[k] in S and C.tgt[k] not in S:
            closed = False
    if not closed:
        raise SplitVerificationFailed("S_x is not closed under successors")
    H = _full_subalgebra(C, S, C.name + "_H")
    if H is None or global_dimension(H) > 1:
        raise SplitVerificationFailed("the subalgebra on S_x is not hereditary")
    rest = [v for v in range(C.n) if v not in S]
    R = _full_subalgebra(C, rest, C.name + "_rest")
    bdim = sum(1 for k in range(C.dim) if C.src[k] in rest and C.tgt[k] in S)
    return SplitData(S, H, R, bdim, closed)


def reflection_algebra(sl: SliceData, x: int, name: str | None = None) -> Algebra:
    """sigma_x^+ C as the quotient of B by the annihilator of the reflected slice."""
    return reflect_slice(sl, x).quotient(name)
