"""Text and JSON forms for graphs, maps, and polynomials.

Graph text format, one record per line, `#` starts a comment:

    v <id>                     optional explicit vertex
    a <id> <tail> <head>       directed arc
    e <id> <u> <v>             undirected edge
    rot <vertex> <end> ...     end is <arcid>+ (tail end) or <arcid>- (head end)

A file is directed or undirected, never both. Ids are alphanumeric
tokens (underscores allowed).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .embedding import End, RotationSystem
from .errors import GraphFormatError
from .fourflow import KleinMap, PairQuotientPoly, xvar, yvar
from .graphs import Digraph, UndirectedGraph
from .polynomials import Poly
from .quotient import QuotientPoly

_ID = re.compile(r"^[A-Za-z0-9_]+$")


def _check_id(token: str, line: int) -> str:
    if not _ID.match(token):
        raise GraphFormatError(f"bad id {token!r}", line)
    return token


@dataclass(frozen=True)
class ParsedGraph:
    kind: str  # "digraph" | "undirected"
    digraph: Digraph | None
    undirected: UndirectedGraph | None
    rotation: RotationSystem | None

    @property
    def graph(self):
        return self.digraph if self.kind == "digraph" else self.undirected

    def as_digraph(self) -> Digraph:
        """The digraph itself, or the stored-order orientation."""
        if self.digraph is not None:
            return self.digraph
        from .graphs import orient

        return orient(self.undirected)

    def as_undirected(self) -> UndirectedGraph:
        if self.undirected is not None:
            return self.undirected
        return self.digraph.underlying()


def parse_graph_text(text: str) -> ParsedGraph:
    vertices: list[str] = []
    arcs: list[tuple[str, str, str]] = []
    edges: list[tuple[str, str, str]] = []
    rotations: dict[str, tuple[End, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "v":
            if len(fields) != 2:
                raise GraphFormatError("v takes exactly one id", lineno)
            vertices.append(_check_id(fields[1], lineno))
        elif tag == "a":
            if len(fields) != 4:
                raise GraphFormatError("a takes id, tail, head", lineno)
            arcs.append(tuple(_check_id(f, lineno) for f in fields[1:]))
        elif tag == "e":
            if len(fields) != 4:
                raise GraphFormatError("e takes id, u, v", lineno)
            edges.append(tuple(_check_id(f, lineno) for f in fields[1:]))
        elif tag == "rot":
            if len(fields) < 2:
                raise GraphFormatError("rot takes a vertex and its ends", lineno)
            v = _check_id(fields[1], lineno)
            if v in rotations:
                raise GraphFormatError(f"duplicate rot for {v!r}", lineno)
            ends = []
            for tok in fields[2:]:
                if len(tok) < 2 or tok[-1] not in "+-":
                    raise GraphFormatError(f"bad arc end {tok!r}", lineno)
                ends.append(End(_check_id(tok[:-1], lineno), tok[-1] == "+"))
            rotations[v] = tuple(ends)
        else:
            raise GraphFormatError(f"unknown record {tag!r}", lineno)
    if arcs and edges:
        raise GraphFormatError("file mixes directed and undirected records")
    rotation = RotationSystem(rotations) if rotations else None
    try:
        if edges:
            return ParsedGraph(
                "undirected", None, UndirectedGraph.build(edges, vertices), rotation
            )
        return ParsedGraph(
            "digraph", Digraph.build(arcs, vertices), None, rotation
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def load_graph(path) -> ParsedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def graph_to_text(g, rotation: RotationSystem | None = None) -> str:
    lines = []
    if isinstance(g, Digraph):
        touched = {w for a in g.arcs for w in a.ends()}
        for v in g.sorted_vertices:
            if v not in touched:
                lines.append(f"v {v}")
        for a in sorted(g.arcs, key=lambda a: a.id):
            lines.append(f"a {a.id} {a.tail} {a.head}")
    else:
        touched = {w for e in g.edges for w in e.ends()}
        for v in g.sorted_vertices:
            if v not in touched:
                lines.append(f"v {v}")
        for e in sorted(g.edges, key=lambda e: e.id):
            lines.append(f"e {e.id} {e.u} {e.v}")
    if rotation is not None:
        for v in sorted(rotation.orders):
            ends = " ".join(str(e) for e in rotation.orders[v])
            lines.append(f"rot {v} {ends}")
    return "\n".join(lines) + "\n"


def parse_zp_map(text: str) -> "ZpMap":
    """Either the `p=3; e1=1; ...` text form or the JSON form."""
    from .flows import ZpMap

    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        return ZpMap(int(data["p"]), {k: int(v) for k, v in data["values"].items()})
    parts = [chunk.strip() for chunk in text.split(";") if chunk.strip()]
    p = None
    values = {}
    for part in parts:
        if "=" not in part:
            raise GraphFormatError(f"bad assignment {part!r}")
        key, val = (s.strip() for s in part.split("=", 1))
        if key == "p":
            p = int(val)
        else:
            values[key] = int(val)
    if p is None:
        raise GraphFormatError("map text must set p")
    return ZpMap(p, values)


def zp_map_to_text(m) -> str:
    parts = [f"p={m.p}"] + [f"{a}={m.values[a]}" for a in sorted(m.values)]
    return "; ".join(parts)


def zp_map_to_json(m) -> dict:
    return {"p": m.p, "values": {a: m.values[a] for a in sorted(m.values)}}


def parse_klein_map(text: str) -> KleinMap:
    data = json.loads(text)
    return KleinMap({k: tuple(v) for k, v in data["values"].items()})


def klein_map_to_json(m: KleinMap) -> dict:
    return {"values": {e: list(m.values[e]) for e in sorted(m.values)}}


def quotient_poly_to_json(q: QuotientPoly) -> dict:
    arcs = q.arcs
    terms = []
    for mono, coeff in q.poly.sorted_terms(arcs):
        terms.append(
            {"coeff": str(coeff), "exps": {v: e for v, e in mono}}
        )
    return {"p": q.p, "terms": terms}


def poly_to_text(poly: Poly, variables: tuple[str, ...]) -> str:
    """Human-readable form, terms by descending exponent vector."""
    if poly.is_zero:
        return "0"
    bits = []
    for mono, coeff in poly.sorted_terms(variables, reverse=True):
        factors = "*".join(f"{v}^{e}" if e > 1 else v for v, e in mono)
        mag = abs(coeff)
        if factors:
            body = factors if mag == 1 else f"{mag}*{factors}"
        else:
            body = str(mag)
        if not bits:
            bits.append(body if coeff > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(bits)


def quotient_poly_to_text(q: QuotientPoly) -> str:
    return poly_to_text(q.poly, q.arcs)


def _pair_exps(mono) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for (kind, edge), exp in mono:
        out.setdefault(edge, [0, 0])[0 if kind == "x" else 1] = exp
    return out


def pair_poly_to_json(q: PairQuotientPoly) -> dict:
    variables = tuple(
        v for e in q.edges for v in (xvar(e), yvar(e))
    )
    terms = []
    for mono, coeff in q.poly.sorted_terms(variables):
        terms.append(
            {
                "coeff": str(coeff),
                "exps": {e: pair for e, pair in sorted(_pair_exps(mono).items())},
            }
        )
    return {"terms": terms}


def pair_poly_to_text(q: PairQuotientPoly) -> str:
    variables = tuple(v for e in q.edges for v in (xvar(e), yvar(e)))
    if q.poly.is_zero:
        return "0"
    bits = []
    for mono, coeff in q.poly.sorted_terms(variables, reverse=True):
        names = []
        for (kind, edge), exp in sorted(mono, key=lambda t: (t[0][1], t[0][0])):
            names.append(f"{kind}_{edge}")
        factors = "*".join(names)
        mag = abs(coeff)
        if factors:
            body = factors if mag == 1 else f"{mag}*{factors}"
        else:
            body = str(mag)
        if not bits:
            bits.append(body if coeff > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(bits)


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
