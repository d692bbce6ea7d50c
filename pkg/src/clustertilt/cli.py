"""Command-line front end: ``clustertilt <subcommand> <file> [options]``.

Exit codes: 0 success, 1 computation error, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .algebra import compute_basis
from .fixtures import fixture_path, run_fixtures, CHECKS
from .linalg import Field
from .quiver import DSLError, load

FORMATS = ("text", "json", "dot")


class UsageError(Exception):
    pass


# helpers ---------------------------------------------------------------------------------
def _load(args):
    try:
        path = fixture_path(args.file)
    except FileNotFoundError as e:
        raise UsageError(str(e)) from None
    bq = load(path, args.field)
    return bq, compute_basis(bq)


def _vertex(alg, label: str) -> int:
    try:
        return alg.vertex(label)
    except (ValueError, KeyError):
        raise UsageError(f"unknown vertex {label!r}") from None


def _seeds(args):
    return args.seeds.split(",") if getattr(args, "seeds", None) else None


def _fragment(args, alg):
    from .slices import slice_fragment
    seeds = _seeds(args)
    if seeds:
        for s in seeds:
            _vertex(alg, s)
    return slice_fragment(alg, seeds, args.steps, args.max_dim)


def _names(frag, ids) -> list:
    return [frag.names[i] for i in sorted(ids)]


# subcommands: each returns (text, json-able data, dot or None) ----------------------------
def cmd_parse(args):
    try:
        path = fixture_path(args.file)
    except FileNotFoundError as e:
        raise UsageError(str(e)) from None
    bq = load(path, args.field)
    return bq.to_text(), bq.to_json(), None


def cmd_basis(args):
    _, alg = _load(args)
    lines = [f"{alg.name}: dimension {alg.dim} over {alg.field!r}"]
    lines += [f"  {i}: {alg.name_of(i)}" for i in range(alg.dim)]
    lines.append("Cartan matrix (rows: P(x) dimension vectors):")
    lines += ["  " + " ".join(str(c) for c in row) for row in alg.dimension_matrix()]
    return "\n".join(lines), alg.to_json(), None


def cmd_relext(args):
    from .relext import certify_relation_extension, relation_extension
    _, C = _load(args)
    ext = relation_extension(C)
    pres = ext.presentation
    data = {"dimension": ext.algebra.dim, "bimodule_dimension": ext.bimodule.dim,
            "new_arrows": list(ext.new_arrows), "presentation": pres.to_json()}
    text = pres.to_text()
    if args.compare:
        bq = load(fixture_path(args.compare), args.field)
        iso = certify_relation_extension(bq, ext)
        data["isomorphic_to_compare"] = iso is not None
        text += f"\n# isomorphic to {args.compare}: {'yes' if iso is not None else 'no'}"
    return text, data, None


def cmd_knit(args):
    from .arknit import knit_postprojective, knit_preinjective
    _, alg = _load(args)
    if args.mode == "postprojective":
        frag = knit_postprojective(alg, args.steps)
    elif args.mode == "preinjective":
        frag = knit_preinjective(alg, args.steps)
    else:
        frag = _fragment(args, alg)
    lines = [f"{len(frag)} modules, {len(frag.arrows)} arrows"]
    for i, M in enumerate(frag.modules):
        succ = ", ".join(frag.names[j] for j in frag.successors(i))
        t = frag.tau.get(i)
        mark = " [boundary]" if i in frag.boundary else ""
        dv = "" if frag.names[i] == M.dimvec_str() else " " + M.dimvec_str()
        lines.append(f"  {i}: {frag.names[i]}{dv}{mark} -> {succ}"
                     + (f"  (tau = {frag.names[t]})" if t is not None else ""))
    return "\n".join(lines), frag.to_json(), frag.to_dot(alg.name)


def cmd_tube(args):
    from .tubes import complete_tube, quotient_setup, tau_omega_injective
    _, B = _load(args)
    _vertex(B, args.root)
    st1 = st2 = None
    if args.c1:
        st1 = quotient_setup(B, compute_basis(load(fixture_path(args.c1), args.field)))
    if args.c2:
        st2 = quotient_setup(B, compute_basis(load(fixture_path(args.c2), args.field)))
    T = complete_tube(B, args.root, args.rows, st1, st2)
    frag = T.fragment
    data = {"rank": T.rank, "fragment": frag.to_json(),
            "mesh": None if T.mesh is None else dict(zip("JNR", _named(frag, T.mesh))),
            "mesh_certificate": T.mesh_certificate}
    lines = [f"tube through P({args.root}): rank {T.rank}"]
    if T.mesh:
        lines.append("mesh 0 -> {} -> {} -> {} -> 0".format(*_named(frag, T.mesh)))
    for key, line in (("coray", T.coray), ("ray", T.ray)):
        if line is None:
            continue
        dims = [M.dimvec_str() for M in line.target_line.modules]
        kers = [K.dimvec_str() for K in line.kernels()]
        data[key] = {"modules": dims, "kernels": kers, "matches": line.matches_line}
        lines.append(f"{key}: " + " -> ".join(dims))
        lines.append(f"  {'kernels' if key == 'coray' else 'cokernels'}: " + ", ".join(kers))
    if args.c1:
        C1 = st1.C
        mc = tau_omega_injective(C1, args.root)
        data["mouth"] = {"applicable": mc.applicable, "reason": mc.reason,
                         "direct": [M.dimvec_str() for M in mc.direct],
                         "predicted": mc.predicted.dimvec_str() if mc.predicted is not None else None,
                         "on_mouth": mc.on_mouth, "agrees": mc.agrees}
        if mc.applicable:
            lines.append(f"tau Omega I_C({args.root}) = {', '.join(data['mouth']['direct'])}; "
                         f"predicted {data['mouth']['predicted']}; on mouth: {mc.on_mouth}")
        else:
            lines.append(f"tau Omega I_C({args.root}): not applicable ({mc.reason})")
    return "\n".join(lines), data, frag.to_dot(B.name)


def _named(frag, ids):
    return [frag.names[i] for i in ids]


def cmd_slices(args):
    from .slices import enumerate_slices
    _, alg = _load(args)
    frag = _fragment(args, alg)
    found = enumerate_slices(frag, limit=args.limit)
    lines = [f"{len(found)} local slices in a window of {len(frag)} modules"]
    for s in found:
        flags = []
        if s.is_rightmost():
            flags.append("rightmost, strong sinks " + ",".join(alg.vertices[v] for v in s.strong_sinks()))
        if s.is_leftmost():
            flags.append("leftmost, strong sources " + ",".join(alg.vertices[v] for v in s.strong_sources()))
        lines.append("  {" + ", ".join(s.names()) + "}" + (f"  [{'; '.join(flags)}]" if flags else ""))
    return "\n".join(lines), {"slices": [s.to_json() for s in found]}, frag.to_dot(alg.name)


def cmd_reflect(args):
    from .reflect import cocompletion, completion, coreflect_slice, reflect_slice
    from .slices import leftmost_slice, rightmost_slice
    _, alg = _load(args)
    v = _vertex(alg, args.vertex)
    frag = _fragment(args, alg)
    if args.sign == "+":
        sl = rightmost_slice(frag)
        H = completion(sl, v)
        new = reflect_slice(sl, v)
    else:
        sl = leftmost_slice(frag)
        H = cocompletion(sl, v)
        new = coreflect_slice(sl, v)
    Q = new.quotient(alg.name + "_refl")
    data = {"slice": sl.to_json(), "completion": {"members": H.names(), "J": H.names(H.J),
                                                  "J-": H.names(H.Jminus), "E": H.names(H.E)},
            "reflected": new.to_json(), "quotient": Q.presentation.to_json()}
    lines = ["slice: {" + ", ".join(sl.names()) + "}",
             f"completion at {args.vertex}: J = {H.names(H.J)}, J- = {H.names(H.Jminus)}, E = {H.names(H.E)}",
             "reflected: {" + ", ".join(new.names()) + "}",
             "quotient by the annihilator:", Q.presentation.to_text()]
    return "\n".join(lines), data, None


def cmd_partitions(args):
    from .partition import enumerate_partitions, locate_summands
    _, B = _load(args)
    part = locate_summands(B)
    rows = enumerate_partitions(B, part)
    data = {"summands": part.to_json(), "rows": [r.row(part) for r in rows]}
    V = B.vertices
    lines = ["transjective: " + " ".join(V[v] for v in part.transjective),
             "tubes: " + "; ".join(f"{' '.join(V[v] for v in t)} (rank {r})" for t, r in zip(part.tubes, part.ranks))]
    for r in data["rows"]:
        sub = "{" + ", ".join("[" + " ".join(t) + "]" for t in r["subset"]) + "}"
        lines.append(f"I = {sub}: K = <{', '.join(r['generators'])}>  {r['classification']}")
        if args.verbose:
            lines += ["    " + ln for ln in r["quotient"].splitlines()]
    return "\n".join(lines), data, None


def cmd_fixtures(args):
    names = args.names or None
    if names:
        bad = [n for n in names if n not in CHECKS]
        if bad:
            raise UsageError(f"unknown fixture(s): {', '.join(bad)}; known: {', '.join(CHECKS)}")
    reports = run_fixtures(names)
    lines = []
    for r in reports:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.name}")
        for c in r.checks:
            if not c.ok or args.verbose:
                lines.append(f"    {'ok ' if c.ok else 'BAD'} {c.label}" + (f": {c.detail}" if c.detail and not c.ok else ""))
    data = {"reports": [r.to_json() for r in reports]}
    status = 0 if all(r.ok for r in reports) else 1
    return "\n".join(lines), data, None, status


COMMANDS = {"parse": cmd_parse, "basis": cmd_basis, "relext": cmd_relext, "knit": cmd_knit,
            "tube": cmd_tube, "slices": cmd_slices, "reflect": cmd_reflect,
            "partitions": cmd_partitions, "fixtures": cmd_fixtures}


# argument parsing -------------------------------------------------------------------------
def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("budgets must be positive")
    return n


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=Field(), help="q (default) or fp:<p>")
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--out", metavar="DIR", help="write the output to DIR instead of stdout")

    p = argparse.ArgumentParser(prog="clustertilt", description="Bound quiver algebras, AR knitting, "
                                "slices, reflections, tubes and partition ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, with_file=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if with_file:
            sp.add_argument("file", help="bound quiver file or bundled fixture name")
        return sp

    add("parse", "parse a bound quiver and print it canonically")
    add("basis", "path basis and Cartan matrix")
    sp = add("relext", "relation-extension C ⋉ Ext²(DC, C)")
    sp.add_argument("--compare", metavar="FILE", help="certify an isomorphism with this presentation")
    for name, help_ in (("knit", "knit a fragment of the AR quiver"),
                        ("slices", "enumerate local slices in a knitted window"),
                        ("reflect", "reflect the rightmost (or coreflect the leftmost) slice")):
        sp = add(name, help_)
        sp.add_argument("--steps", type=_positive, default=6)
        sp.add_argument("--seeds", help="comma separated vertices whose injectives seed the window")
        sp.add_argument("--max-dim", type=_positive, default=30, dest="max_dim")
        if name == "knit":
            sp.add_argument("--mode", choices=("window", "postprojective", "preinjective"), default="window")
        if name == "slices":
            sp.add_argument("--limit", type=_positive, default=200)
        if name == "reflect":
            sp.add_argument("--vertex", required=True)
            sp.add_argument("--sign", choices=("+", "-"), default="+")
    sp = add("tube", "complete the tube through a root projective")
    sp.add_argument("--root", required=True)
    sp.add_argument("--rows", type=_positive, default=4)
    sp.add_argument("--c1", metavar="FILE", help="quotient C1 used for the induced coray")
    sp.add_argument("--c2", metavar="FILE", help="quotient C2 used for the coinduced ray")
    sp = add("partitions", "partition ideals and quasi-tilted quotients")
    sp.add_argument("-v", "--verbose", action="store_true", help="print quotient presentations")
    sp = add("fixtures", "run the bundled worked examples against the goldens", with_file=False)
    sp.add_argument("names", nargs="*")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def _emit(args, text, data, dot):
    if args.format == "json":
        out, ext = json.dumps(data, indent=2, sort_keys=True, default=str), "json"
    elif args.format == "dot":
        if dot is None:
            raise UsageError(f"{args.command} has no DOT output")
        out, ext = dot, "dot"
    else:
        out, ext = text, "txt"
    if not out.endswith("\n"):
        out += "\n"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        stem = os.path.splitext(os.path.basename(getattr(args, "file", None) or "fixtures"))[0]
        path = os.path.join(args.out, f"{stem}.{args.command}.{ext}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
        print(path)
    else:
        sys.stdout.write(out)


def _fail(kind: str, err: Exception, code: int) -> int:
    msg = {"error": kind, "type": type(err).__name__, "message": str(err)}
    if isinstance(err, DSLError):
        msg.update(line=err.line, column=err.column)
    print(json.dumps(msg), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        res = COMMANDS[args.command](args)
        status = res[3] if len(res) > 3 else 0
        _emit(args, *res[:3])
        return status
    except (UsageError, DSLError, FileNotFoundError) as e:
        return _fail("usage", e, 2)
    except Exception as e:  # noqa: BLE001 - every computation failure becomes exit 1
        return _fail("computation", e, 1)


if __name__ == "__main__":
    sys.exit(main())
