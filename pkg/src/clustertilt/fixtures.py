"""Bundled worked examples and an end-to-end runner checking them against goldens."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, compute_basis, isomorphic_by_labels
from .linalg import Field
from .modules import radical_quotient_dims, socle_dims
from .quiver import BoundQuiver, load

DATA = os.path.join(os.path.dirname(__file__), "data")


def fixture_names() -> list:
    return sorted(f[:-3] for f in os.listdir(DATA) if f.endswith(".bq"))


def fixture_path(name: str) -> str:
    """Path of a bundled fixture, or ``name`` itself when it is an existing file."""
    if os.path.exists(name):
        return name
    path = os.path.join(DATA, name if name.endswith(".bq") else name + ".bq")
    if not os.path.exists(path):
        raise FileNotFoundError(f"no such file or fixture: {name}")
    return path


def load_fixture(name: str, field: Field | None = None) -> tuple:
    bq = load(fixture_path(name), field)
    return bq, compute_basis(bq)


def goldens() -> dict:
    with open(os.path.join(DATA, "golden", "goldens.json"), encoding="utf-8") as fh:
        return json.load(fh)


@dataclass
class Check:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class FixtureReport:
    name: str
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, label: str, ok: bool, detail="") -> bool:
        self.checks.append(Check(label, bool(ok), str(detail)))
        return bool(ok)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks": [{"label": c.label, "ok": c.ok, "detail": c.detail} for c in self.checks]}


# individual examples --------------------------------------------------------------------
def check_sec3(g: dict | None = None) -> FixtureReport:
    from .relext import certify_relation_extension, relation_extension
    g = g or goldens()["sec3"]
    rep = FixtureReport("sec3")
    _, C = load_fixture(g["base"])
    bq, B = load_fixture(g["target"])
    ext = relation_extension(C)
    pres = ext.presentation
    new = sorted((a.source, a.target) for a in pres.arrows if a.label in ext.new_arrows)
    rep.add("new arrows", new == sorted(tuple(p) for p in g["new_arrows"]), new)
    rep.add("relation count", len(pres.relations) == g["relation_count"], len(pres.relations))
    rep.add("isomorphic to printed B", certify_relation_extension(bq, ext) is not None)
    Q = B.quotient([B.arrow(a) for a in g["cut"]])
    bqC, _ = load_fixture(g["base"])
    rep.add("B/<cut> is C", Q.dim == C.dim and isomorphic_by_labels(bqC, Q), Q.dim)
    return rep


def check_remark3(g: dict | None = None) -> FixtureReport:
    from .relext import certify_relation_extension, relation_extension
    g = g or goldens()["remark3"]
    rep = FixtureReport("remark3")
    bq, _ = load_fixture(g["target"])
    for key in ("base", "alternative"):
        _, C = load_fixture(g[key])
        ext = relation_extension(C)
        rep.add(f"relext({g[key]}) is {g['target']}", certify_relation_extension(bq, ext) is not None)
    return rep


def check_sec4(g: dict | None = None) -> FixtureReport:
    from .reflect import completion, reflect_slice
    from .slices import rightmost_slice, slice_fragment
    g = g or goldens()["sec4"]
    rep = FixtureReport("sec4")
    _, B = load_fixture(g["algebra"])
    frag = slice_fragment(B, g["seeds"], g["steps"], g["max_dim"])
    sl = rightmost_slice(frag)
    V = B.vertices
    rep.add("rightmost slice", sl.names() == g["slice"], sl.names())
    rep.add("strong sinks", [V[v] for v in sl.strong_sinks()] == g["strong_sinks"])
    x3, x6 = B.vertex("3"), B.vertex("6")
    H3, H6 = completion(sl, x3), completion(sl, x6)
    rep.add("H_3", H3.names() == g["H3"], H3.names())
    rep.add("H_6 is the slice", H6.members == sl.members)
    rep.add("J- of H_3 and H_6", H3.names(H3.Jminus) == g["Jminus"] == H6.names(H6.Jminus))
    s6 = reflect_slice(sl, x6)
    s3 = reflect_slice(sl, x3)
    rep.add("sigma_6 slice", s6.names() == g["sigma6"], s6.names())
    rep.add("sigma_3 slice", s3.names() == g["sigma3"], s3.names())
    H6b = completion(s3, x6)
    rep.add("H'_6", H6b.names() == g["H6_after_sigma3"], H6b.names())
    rep.add("sigma_6 sigma_3 = sigma_6", reflect_slice(s3, x6).members == s6.members)
    return rep


def check_sec5(g: dict | None = None) -> FixtureReport:
    from .tubes import complete_tube, quotient_setup, tau_omega_injective
    g = g or goldens()["sec5"]
    rep = FixtureReport("sec5")
    _, B = load_fixture(g["algebra"])
    _, C1 = load_fixture(g["C1"])
    _, C2 = load_fixture(g["C2"])
    st1, st2 = quotient_setup(B, C1), quotient_setup(B, C2)
    T = complete_tube(B, g["root"], 4, st1, st2)
    lists = {"coray": T.coray, "ray": T.ray}
    for key, line in lists.items():
        # the printed windows: the last four modules of the coray, the first four of the ray
        cut = slice(-4, None) if key == "coray" else slice(0, 4)
        mods = line.target_line.modules[cut]
        src = [list(d) for d in line.source_line.dimension_vectors()][cut]
        rep.add(f"{key} in mod C", src == g["source_" + key], src)
        rep.add(f"{key} dims", [list(M.dims) for M in mods] == g[key]["dims"])
        rep.add(f"{key} tops", [list(radical_quotient_dims(M)) for M in mods] == g[key]["top"])
        rep.add(f"{key} socles", [list(socle_dims(M)) for M in mods] == g[key]["socle"])
        rep.add(f"{key} is the {key} of B", line.matches_line and line.irreducible)
    ks = T.coray.kernels()
    rep.add("coray kernels constant", T.coray.kernels_isomorphic()
            and list(ks[0].dims) == g["coray_kernel"])
    cs = T.ray.kernels()
    rep.add("ray cokernels constant", T.ray.kernels_isomorphic() and list(cs[0].dims) == g["ray_cokernel"])
    if T.mesh:
        J, N, R = (list(T.fragment.modules[i].dims) for i in T.mesh)
        rep.add("mesh J -> N -> R", [J, N, R] == [g["mesh"]["J"], g["mesh"]["N"], g["mesh"]["R"]], (J, N, R))
    else:
        rep.add("mesh J -> N -> R", False, "not found")
    rep.add("mesh certificate", T.mesh_certificate.get("ok", False))
    rep.add("tube rank", T.rank == g["rank"], T.rank)
    m = g["mouth"]
    _, C = load_fixture(m["algebra"])
    mc = tau_omega_injective(C, m["vertex"])
    rep.add("tau Omega I on the mouth", mc.applicable and mc.on_mouth and mc.agrees
            and [list(M.dims) for M in mc.direct] == [m["module"]])
    return rep


def check_e7(g: dict | None = None) -> FixtureReport:
    from .partition import enumerate_partitions, locate_summands, transjective_slice_classes
    from .relext import certify_relation_extension, relation_extension
    g = g or goldens()["e7"]
    rep = FixtureReport("e7")
    bq, B = load_fixture(g["algebra"])
    V = B.vertices
    part = locate_summands(B)
    rep.add("tubes", [[V[v] for v in t] for t in part.tubes] == g["tubes"])
    rep.add("transjective", [V[v] for v in part.transjective] == g["transjective"])
    rep.add("tube ranks", part.ranks == g["ranks"], part.ranks)
    classes = transjective_slice_classes(B, part)
    rows = enumerate_partitions(B, part, classes)
    rep.add("row count", len(rows) == g["rows"], len(rows))
    rep.add("tilted count", sum(r.classification.tilted for r in rows) == g["tilted"])
    good = True
    for r in rows:
        tubes_in = set(r.subset)
        want = set()
        for k, t in enumerate(part.tubes):
            vs = set(t)
            for i, a in enumerate(B.arrows):
                s, tt = B.quiver.src(i), B.quiver.tgt(i)
                if k in tubes_in and s in vs and tt not in vs:
                    want.add(a.label)
                if k not in tubes_in and tt in vs and s not in vs:
                    want.add(a.label)
        want.add("epsilon")
        good &= set(r.ideal.generator_names()) == want
    rep.add("generator sets", good)
    rep.add("relext(B/K) is B", all(certify_relation_extension(bq, relation_extension(r.quotient)) is not None
                                    for r in rows))
    return rep


CHECKS = {"sec3": check_sec3, "remark3": check_remark3, "sec4": check_sec4,
          "sec5": check_sec5, "e7": check_e7}


def run_fixtures(names=None) -> list:
    g = goldens()
    return [CHECKS[n](g[n]) for n in (names or list(CHECKS))]
