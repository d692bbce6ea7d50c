"""Partition ideals of cluster-tilted algebras and their quasi-tilted quotients.

The summands of the tilting object are split between the transjective
component and the exceptional tubes.  Choosing a subset I of the tubes (the
ones placed before the transjective part) gives the partition ideal

    K = <Ann S_L  meet  Ann S_R, L, R>

where S_L, S_R are the two extreme classes of local slices of the transjective
component and L, R are realised by the connecting arrows: for a tube in I the
arrows from the tube into the transjective part are killed, for a tube outside
I the arrows from the transjective part into the tube are killed.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg as la
from .algebra import Algebra, Echelon, quotient as algebra_quotient
from .arknit import ARFragment, knit_window
from .homology import global_dimension
from .slices import SliceData, enumerate_slices, annihilator
from .tubes import Census, locate_projectives


class UnplacedSummand(RuntimeError):
    pass


class SectionNotFound(RuntimeError):
    pass


# tubular types -------------------------------------------------------------------------
class TubularTypeTable:
    """Tubular types of euclidean type: (p,q), (2,2,r), (2,3,3), (2,3,4), (2,3,5)."""

    exceptional = {(2, 3, 3), (2, 3, 4), (2, 3, 5)}

    @staticmethod
    def normalise(ranks) -> tuple:
        return tuple(sorted(int(r) for r in ranks if int(r) > 1)) or ()

    def contains(self, ranks) -> bool:
        raw = sorted(int(r) for r in ranks)
        if any(r < 1 for r in raw):
            raise ValueError("tube ranks are positive")
        t = self.normalise(raw)
        if len(raw) <= 2 and len(t) <= 2:
            return True                     # (p, q), ones included
        if len(t) <= 2:
            return True                     # padding by rank-one tubes
        if len(t) == 3:
            return (t[0] == 2 and t[1] == 2) or t in self.exceptional
        return False


TUBULAR_TYPES = TubularTypeTable()


def euclidean_flag(ranks) -> bool:
    return TUBULAR_TYPES.contains(ranks)


# summand partition ----------------------------------------------------------------------
@dataclass
class SummandPartition:
    algebra: Algebra
    transjective: list                   # vertex indices
    tubes: list                          # list of vertex index lists
    ranks: list                          # rank of each tube
    census: Census | None = None

    def tube_of(self, v: int):
        for k, t in enumerate(self.tubes):
            if v in t:
                return k
        return None

    def to_json(self) -> dict:
        V = self.algebra.vertices
        return {"transjective": [V[v] for v in self.transjective],
                "tubes": [{"vertices": [V[v] for v in t], "rank": r} for t, r in zip(self.tubes, self.ranks)]}


def locate_summands(B: Algebra, census: Census | None = None, radius: int = 4,
                    max_dim: int = 40) -> SummandPartition:
    """Place every P_B(i) in the transjective component or in a tube."""
    census = census or locate_projectives(B, radius=radius, max_dim=max_dim)
    placed = set(census.component)
    if placed != set(range(B.n)):
        raise UnplacedSummand("some projective was not located")
    groups: dict = {}
    for v, c in census.component.items():
        if census.kind[c] == "tube":
            groups.setdefault(c, []).append(v)
    keys = sorted(groups, key=lambda c: min(groups[c]))
    tubes = [sorted(groups[c]) for c in keys]
    ranks = [census.rank[c] for c in keys]
    return SummandPartition(B, census.transjective_vertices(), tubes, ranks, census)


# slice classes of the transjective component ------------------------------------------
@dataclass
class SliceClass:
    """Local slices of the transjective fragment sharing one annihilator."""
    ideal: Echelon
    generators: list
    slices: list

    @property
    def representative(self) -> SliceData:
        return self.slices[0]


def transjective_slice_classes(B: Algebra, part: SummandPartition, steps: int | None = None,
                               max_dim: int = 40, limit: int = 5000) -> list:
    """Group the local slices of a transjective window by annihilator, left to right."""
    frag = ARFragment(B)
    frag.register_census()
    seeds = []
    for v in part.transjective:
        seeds += [frag.injectives[v], frag.projectives[v]]
    if not seeds:
        return []
    steps = steps or max(6, B.n + 2)
    frag = knit_window(B, sorted(set(seeds)), steps, frag, max_dim=max_dim)
    tube_ids = set()
    for t in part.tubes:
        for v in t:
            tube_ids |= {frag.projectives[v], frag.injectives[v]}
    found = enumerate_slices(frag, limit=limit)
    classes: list = []
    for s in found:
        if s.members & tube_ids:
            continue
        gens = s.annihilator()
        ech = B.ideal_closure(gens)
        for c in classes:
            if c.ideal.rank == ech.rank and all(c.ideal.contains(dict(g)) for g in gens):
                c.slices.append(s)
                break
        else:
            classes.append(SliceClass(ech, gens, [s]))
    if not classes:
        raise SectionNotFound("no local slice in the transjective window")
    pos = {c_idx: _position(frag, c.representative) for c_idx, c in enumerate(classes)}
    order = sorted(range(len(classes)), key=lambda k: pos[k])
    return [classes[k] for k in order]


def _position(frag: ARFragment, s: SliceData) -> float:
    """Mean number of tau^-1 steps from the fragment's left edge."""
    def depth(i):
        d = 0
        while frag.tau.get(i) is not None and d < 200:
            i = frag.tau[i]
            d += 1
        return d
    return sum(depth(i) for i in s.members) / len(s.members)


# ideals --------------------------------------------------------------------------------
def _dense(alg: Algebra, ech: Echelon):
    F = alg.field
    m = F.zeros(len(ech.rows), alg.dim)
    for r, row in enumerate(ech.rows.values()):
        for i, c in row.items():
            m[r, i] = c
    return m


def intersect_ideals(alg: Algebra, a: Echelon, b: Echelon) -> list:
    """Basis of the intersection of two subspaces of the algebra."""
    if not a.rows or not b.rows:
        return []
    A, Bm = _dense(alg, a), _dense(alg, b)
    ker = la.left_kernel(la.vstack([A, -Bm]))
    out = []
    for k in range(ker.nrows()):
        v = {}
        for j in range(alg.dim):
            c = sum((ker[k, r] * A[r, j] for r in range(A.nrows())), alg.field(0))
            if c != 0:
                v[j] = c
        if v:
            out.append(v)
    return out


def connecting_arrows(B: Algebra, part: SummandPartition, tube: int, direction: str) -> list:
    """Arrow labels from the transjective part into the tube ("in") or back ("out")."""
    trans = set(part.transjective)
    vs = set(part.tubes[tube])
    out = []
    for k, a in enumerate(B.arrows):
        s, t = B.quiver.src(k), B.quiver.tgt(k)
        if direction == "in" and s in trans and t in vs:
            out.append(a.label)
        if direction == "out" and s in vs and t in trans:
            out.append(a.label)
    return out


@dataclass
class PartitionIdeal:
    algebra: Algebra
    subset: tuple                        # tube indices placed before the transjective part
    arrows: list                         # killed connecting arrows
    L: list                              # arrows from tubes in the subset to the transjective part
    R: list                              # arrows from the transjective part to tubes outside it
    common: list                         # Ann S_L meet Ann S_R
    ideal: Echelon = None

    @property
    def L_zero(self) -> bool:
        return not self.L

    @property
    def R_zero(self) -> bool:
        return not self.R

    def generators(self) -> list:
        return [self.algebra.arrow(a) for a in self.arrows] + list(self.common)

    def generator_names(self) -> list:
        """Killed arrows plus any further arrows lying in the ideal."""
        names = list(self.arrows)
        for a in self.algebra.arrows:
            if a.label not in names and self.ideal.contains(self.algebra.arrow(a.label)):
                names.append(a.label)
        return names

    def quotient(self, name: str | None = None) -> Algebra:
        return algebra_quotient(self.algebra, self.generators(), name or self.algebra.name + "_K")


def partition_ideal(B: Algebra, part: SummandPartition, subset, classes: list | None = None) -> PartitionIdeal:
    subset = tuple(sorted(subset))
    if classes is None:
        classes = transjective_slice_classes(B, part)
    common = intersect_ideals(B, classes[0].ideal, classes[-1].ideal) if classes else []
    L, R = [], []
    for k in range(len(part.tubes)):
        if k in subset:
            L += connecting_arrows(B, part, k, "out")
        else:
            R += connecting_arrows(B, part, k, "in")
    arrows = sorted(L + R, key=lambda a: [x.label for x in B.arrows].index(a))
    K = PartitionIdeal(B, subset, arrows, L, R, common)
    K.ideal = B.ideal_closure(K.generators())
    return K


# classification -------------------------------------------------------------------------
@dataclass
class Classification:
    tilted: bool
    witness: str | None                  # "S_L" or "S_R" when tilted
    acyclic: bool
    gldim: int | None

    @property
    def label(self) -> str:
        return "tilted" if self.tilted else "quasi-tilted, not tilted"


def _same(a: Echelon, b: Echelon) -> bool:
    return a.rank == b.rank and all(a.contains(dict(v)) for v in b.rows.values())


def classify_quotient(B: Algebra, K: PartitionIdeal, classes: list | None = None,
                      quotient: Algebra | None = None) -> Classification:
    """Tilted iff L = 0 or R = 0; the tilted case is witnessed by K = Ann S_L or Ann S_R."""
    tilted = K.L_zero or K.R_zero
    witness = None
    if tilted and classes:
        if _same(K.ideal, classes[0].ideal):
            witness = "S_L"
        elif _same(K.ideal, classes[-1].ideal):
            witness = "S_R"
    C = quotient or K.quotient()
    acyc = C.quiver.is_acyclic()
    gd = global_dimension(C) if acyc else None
    return Classification(tilted, witness, acyc, gd)


@dataclass
class PartitionEntry:
    subset: tuple
    ideal: PartitionIdeal
    classification: Classification
    quotient: Algebra

    def row(self, part: SummandPartition) -> dict:
        V = part.algebra.vertices
        return {"subset": [[V[v] for v in part.tubes[k]] for k in self.subset],
                "generators": self.ideal.generator_names(),
                "classification": self.classification.label,
                "tilted": self.classification.tilted,
                "witness": self.classification.witness,
                "gldim": self.classification.gldim,
                "quotient": self.quotient.presentation.to_text()}


def enumerate_partitions(B: Algebra, part: SummandPartition | None = None,
                         classes: list | None = None) -> list:
    """All 2^t partition ideals, t the number of tubes carrying summands."""
    part = part or locate_summands(B)
    if classes is None:
        classes = transjective_slice_classes(B, part)
    out = []
    t = len(part.tubes)
    for size in range(t + 1):
        for sub in combinations(range(t), size):
            K = partition_ideal(B, part, sub, classes)
            C = K.quotient()
            out.append(PartitionEntry(sub, K, classify_quotient(B, K, classes, C), C))
    return out


def section_slices_of_quasitilted(C: Algebra, B: Algebra, K: PartitionIdeal,
                                  classes: list | None = None) -> dict:
    """Recover C = B/Ann(S- + S+) from the two extreme slice classes.

    Only euclidean tubular types are supported; other inputs report
    ``supported = False``.
    """
    part = locate_summands(B)
    if not euclidean_flag(part.ranks or [1, 1]):
        return {"supported": False}
    if classes is None:
        classes = transjective_slice_classes(B, part)
    if not classes:
        raise SectionNotFound("no transjective slices")
    left, right = classes[0], classes[-1]
    mods = left.representative.modules() + right.representative.modules()
    ann = B.ideal_closure(annihilator(B, mods) + [B.arrow(a) for a in K.arrows])
    return {"supported": True, "left": left.representative, "right": right.representative,
            "recovers": _same(ann, K.ideal)}
