"""Quivers, paths, relations and the bound-quiver text format.

Paths compose left to right: ``alpha*beta`` means alpha followed by beta, so
the target of alpha must be the source of beta.

Text format::

    algebra C
    field q                 # optional; q (default) or fp:<p>
    vertices 1 2 3 4
    arrow alpha: 4 -> 2
    arrow beta: 2 -> 1
    relations
    alpha*beta = 0
    3/2*gamma*delta - alpha*beta = 0
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import json
import re

from .linalg import Field, QQ


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("arrow labels must be unique")
        if set(labels) & set(self.vertices):
            raise ValueError("arrow and vertex labels must differ")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.label} refers to an unknown vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    def arrow_index(self, label: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.label == label:
                return i
        raise KeyError(label)

    def src(self, i: int) -> int:
        return self.vertices.index(self.arrows[i].source)

    def tgt(self, i: int) -> int:
        return self.vertices.index(self.arrows[i].target)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        todo = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while todo:
            v = todo.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        todo.append(a.target)
        return seen == self.n

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))

    def without(self, labels) -> "Quiver":
        labels = set(labels)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.label not in labels))


# A path is (start vertex index, tuple of arrow indices).
def path_source(q: Quiver, path) -> int:
    return path[0]


def path_target(q: Quiver, path) -> int:
    v, arrows = path
    return q.tgt(arrows[-1]) if arrows else v


def compose(q: Quiver, p1, p2):
    """Concatenate two paths, or None if they do not compose."""
    if path_target(q, p1) != p2[0]:
        return None
    return (p1[0], p1[1] + p2[1])


def path_str(q: Quiver, path) -> str:
    v, arrows = path
    if not arrows:
        return f"e_{q.vertices[v]}"
    return "*".join(q.arrows[i].label for i in arrows)


def paths_of_length(q: Quiver, d: int):
    if d == 0:
        return [(v, ()) for v in range(q.n)]
    out = []
    for p in paths_of_length(q, d - 1):
        t = path_target(q, p)
        for i in range(len(q.arrows)):
            if q.src(i) == t:
                out.append((p[0], p[1] + (i,)))
    return out


@dataclass
class BoundQuiver:
    """A quiver with a list of relation generators (dicts path -> coefficient)."""

    quiver: Quiver
    relations: list
    field: Field = dc_field(default_factory=lambda: QQ)
    name: str = "A"

    def __post_init__(self):
        for r in self.relations:
            check_relation(self.quiver, r)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def is_homogeneous(self) -> bool:
        return all(len({len(p[1]) for p in r}) <= 1 for r in self.relations)

    def opposite(self) -> "BoundQuiver":
        qo = self.quiver.opposite()
        rels = [{(path_target(self.quiver, p), tuple(reversed(p[1]))): c for p, c in r.items()}
                for r in self.relations]
        return BoundQuiver(qo, rels, self.field, self.name + "_op")

    def relation_str(self, r) -> str:
        return relation_str(self.quiver, self.field, r)

    def to_text(self) -> str:
        lines = [f"algebra {self.name}"]
        if self.field.p is not None:
            lines.append(f"field {self.field!r}")
        lines.append("vertices " + " ".join(self.vertices))
        for a in self.arrows:
            lines.append(f"arrow {a.label}: {a.source} -> {a.target}")
        if self.relations:
            lines.append("relations")
            for r in self.relations:
                lines.append(self.relation_str(r) + " = 0")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "field": repr(self.field),
            "vertices": list(self.vertices),
            "arrows": [{"label": a.label, "source": a.source, "target": a.target} for a in self.arrows],
            "relations": [
                [{"coefficient": self.field.fmt(c), "path": [self.arrows[i].label for i in p[1]]}
                 for p, c in sorted(r.items())]
                for r in self.relations
            ],
            "composition": "left-to-right",
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoundQuiver":
        F = Field.parse(data.get("field", "q"))
        q = Quiver(tuple(data["vertices"]),
                   tuple(Arrow(a["label"], a["source"], a["target"]) for a in data["arrows"]))
        rels = []
        for r in data["relations"]:
            rel = {}
            for term in r:
                idx = tuple(q.arrow_index(l) for l in term["path"])
                rel[(q.src(idx[0]), idx)] = F(term["coefficient"])
            rels.append(rel)
        return cls(q, rels, F, data.get("name", "A"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def check_relation(q: Quiver, rel: dict):
    ends = set()
    for (v, arrows), c in rel.items():
        if c == 0:
            raise ValueError("zero coefficients must not be stored")
        if len(arrows) < 2:
            raise ValueError("relations must be combinations of paths of length >= 2")
        for a, b in zip(arrows, arrows[1:]):
            if q.tgt(a) != q.src(b):
                raise ValueError("relation contains a non-composable path")
        ends.add((v, path_target(q, (v, arrows))))
    if len(ends) > 1:
        raise ValueError("relation sums non-parallel paths")


def relation_str(q: Quiver, F: Field, rel: dict) -> str:
    parts = []
    for p, c in sorted(rel.items(), key=lambda kv: (len(kv[0][1]), kv[0][1])):
        s = F.fmt(c)
        neg = False
        if F.p is None and c < 0:
            neg, s = True, F.fmt(-c)
        body = path_str(q, p)
        term = body if s == "1" else f"{s}*{body}"
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][\w']*(?:\s*\*\s*[A-Za-z_][\w']*)*)?\s*")


def _parse_side(text: str, q: Quiver, F: Field, sign: int, lineno: int, offset: int, rel: dict):
    pos = 0
    text_stripped = text.strip()
    if text_stripped == "0":
        return
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise DSLError(f"cannot parse term near {text[pos:]!r}", lineno, offset + pos + 1)
        sgn, coef, body = m.group(1), m.group(2), m.group(3)
        if not first and sgn is None:
            raise DSLError("expected '+' or '-' between terms", lineno, offset + pos + 1)
        if body is None:
            raise DSLError("term without a path", lineno, offset + pos + 1)
        c = F(Fraction(coef)) if coef else F(1)
        if sgn == "-":
            c = -c
        labels = [s.strip() for s in body.split("*")]
        idx = []
        for lab in labels:
            try:
                idx.append(q.arrow_index(lab))
            except KeyError:
                col = offset + text.find(lab, pos) + 1
                raise DSLError(f"unknown arrow {lab!r}", lineno, col) from None
        for a, b in zip(idx, idx[1:]):
            if q.tgt(a) != q.src(b):
                raise DSLError(f"arrows {q.arrows[a].label} and {q.arrows[b].label} do not compose",
                               lineno, offset + pos + 1)
        key = (q.src(idx[0]), tuple(idx))
        val = rel.get(key, F(0)) + c * sign
        if val == 0:
            rel.pop(key, None)
        else:
            rel[key] = val
        pos = m.end()
        first = False


def parse_bound_quiver(text: str, field: Field | None = None) -> BoundQuiver:
    """Parse the bound-quiver text format; raises DSLError with line/column."""
    name = "A"
    vertices: list = []
    arrows: list = []
    rel_lines = []
    F = field
    in_rel = False
    saw_any = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        saw_any = True
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        word = body.split()[0]
        if word == "algebra":
            parts = body.split()
            if len(parts) != 2:
                raise DSLError("expected 'algebra <name>'", lineno, indent + 1)
            name = parts[1]
            in_rel = False
        elif word == "field":
            if field is None:
                try:
                    F = Field.parse(body[5:])
                except ValueError as e:
                    raise DSLError(str(e), lineno, indent + 7) from None
        elif word == "vertices":
            vertices.extend(body.split()[1:])
            in_rel = False
        elif word == "arrow":
            m = re.fullmatch(r"arrow\s+([A-Za-z_][\w']*)\s*:\s*(\S+)\s*->\s*(\S+)", body)
            if not m:
                raise DSLError("expected 'arrow <label>: <source> -> <target>'", lineno, indent + 1)
            lab, s, t = m.groups()
            for v in (s, t):
                if v not in vertices:
                    raise DSLError(f"unknown vertex {v!r}", lineno, indent + body.find(v) + 1)
            arrows.append(Arrow(lab, s, t))
            in_rel = False
        elif word == "relations":
            in_rel = True
        elif in_rel:
            rel_lines.append((lineno, indent, body))
        else:
            raise DSLError(f"unexpected statement {word!r}", lineno, indent + 1)
    if not saw_any:
        raise DSLError("empty input", 1, 1)
    if not vertices:
        raise DSLError("no vertices declared", 1, 1)
    F = F or QQ
    try:
        q = Quiver(tuple(vertices), tuple(arrows))
    except ValueError as e:
        raise DSLError(str(e), 1, 1) from None
    rels = []
    for lineno, indent, body in rel_lines:
        if body.count("=") != 1:
            raise DSLError("relation must have the form '<lhs> = <rhs>'", lineno, indent + 1)
        lhs, rhs = body.split("=")
        rel: dict = {}
        _parse_side(lhs, q, F, 1, lineno, indent, rel)
        _parse_side(rhs, q, F, -1, lineno, indent + len(lhs) + 1, rel)
        if not rel:
            continue
        try:
            check_relation(q, rel)
        except ValueError as e:
            raise DSLError(str(e), lineno, indent + 1) from None
        rels.append(rel)
    return BoundQuiver(q, rels, F, name)


def load(path: str, field: Field | None = None) -> BoundQuiver:
    with open(path, encoding="utf-8") as fh:
        return parse_bound_quiver(fh.read(), field)
