"""Document formats: ice quivers with potential and dimer models as JSON.

Serialization is canonical: fixed key order, vertices and arrows sorted by
id, potential terms sorted by cycle, compact separators, one trailing
newline.  parse/serialize round-trip exactly on canonical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import CyclicWord, Potential, cyclic_word
from .dimer import DimerModel
from .errors import ParseError
from .quiver import Arrow, IceQuiver, Vertex


def _require(cond: bool, message: str, location: str):
    if not cond:
        raise ParseError(message, location)


def _load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}",
                         f"line {e.lineno} column {e.colno}") from None
    _require(isinstance(doc, dict), "document must be a JSON object", "$")
    return doc


def iqp_to_document(q: IceQuiver, w: Potential) -> dict:
    return {
        "vertices": [{"id": v.id, "frozen": v.frozen}
                     for v in sorted(q.vertices, key=lambda v: v.id)],
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "frozen": a.frozen}
                   for a in sorted(q.arrows, key=lambda a: a.id)],
        "potential": [{"coeff": str(c), "cycle": list(word.arrows)}
                      for word, c in sorted(w.terms.items(),
                                            key=lambda t: (len(t[0]), t[0].arrows))],
    }


def serialize_iqp(q: IceQuiver, w: Potential) -> str:
    return json.dumps(iqp_to_document(q, w), sort_keys=True,
                      separators=(",", ":")) + "\n"


def document_to_iqp(doc: dict) -> tuple[IceQuiver, Potential]:
    vertices = []
    for i, item in enumerate(doc.get("vertices", [])):
        loc = f"vertices[{i}]"
        _require(isinstance(item, dict), "expected object", loc)
        _require(isinstance(item.get("id"), int), "id must be an integer", loc)
        vertices.append(Vertex(item["id"], bool(item.get("frozen", False))))
    arrows = []
    for i, item in enumerate(doc.get("arrows", [])):
        loc = f"arrows[{i}]"
        _require(isinstance(item, dict), "expected object", loc)
        _require(isinstance(item.get("id"), str), "id must be a string", loc)
        _require(isinstance(item.get("tail"), int), "tail must be an integer", loc)
        _require(isinstance(item.get("head"), int), "head must be an integer", loc)
        arrows.append(Arrow(item["id"], item["tail"], item["head"],
                            bool(item.get("frozen", False))))
    q = IceQuiver(vertices, arrows)
    terms: dict[CyclicWord, Fraction] = {}
    for i, item in enumerate(doc.get("potential", [])):
        loc = f"potential[{i}]"
        _require(isinstance(item, dict), "expected object", loc)
        cycle = item.get("cycle")
        _require(isinstance(cycle, list) and cycle and
                 all(isinstance(x, str) for x in cycle),
                 "cycle must be a non-empty list of arrow ids", loc)
        try:
            coeff = Fraction(str(item.get("coeff", "1")))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {item.get('coeff')!r}", loc) from None
        for a in cycle:
            _require(q.has_arrow(a), f"unknown arrow {a!r} in cycle", loc)
        try:
            word = cyclic_word(q, cycle)
        except Exception as e:
            raise ParseError(f"cycle not composable: {e}", loc) from None
        terms[word] = terms.get(word, Fraction(0)) + coeff
    return q, Potential(terms)


def parse_iqp(text: str) -> tuple[IceQuiver, Potential]:
    return document_to_iqp(_load_json(text))


def document_to_dimer(doc: dict) -> DimerModel:
    def field(name, default=None):
        return doc.get(name, [] if default is None else default)

    nodes = []
    for i, item in enumerate(field("nodes")):
        loc = f"nodes[{i}]"
        _require(isinstance(item, dict) and isinstance(item.get("id"), str),
                 "node needs a string id", loc)
        _require(item.get("colour") in ("black", "white"),
                 "colour must be black or white", loc)
        nodes.append((item["id"], item["colour"]))
    edges = []
    for i, item in enumerate(field("edges")):
        loc = f"edges[{i}]"
        ends = item.get("ends")
        _require(isinstance(ends, list) and len(ends) == 2,
                 "edge needs two ends", loc)
        edges.append((item.get("id"), (ends[0], ends[1])))
    half_edges = []
    for i, item in enumerate(field("half_edges")):
        loc = f"half_edges[{i}]"
        _require(isinstance(item.get("node"), str), "half-edge needs a node", loc)
        half_edges.append((item.get("id"), item["node"]))
    faces = []
    for i, item in enumerate(field("faces")):
        loc = f"faces[{i}]"
        _require(isinstance(item.get("id"), int), "face id must be an integer", loc)
        walk = item.get("walk")
        _require(isinstance(walk, list) and walk, "face needs a walk", loc)
        faces.append((item["id"], bool(item.get("boundary", False)), tuple(walk)))
    orders = doc.get("node_orders", {})
    _require(isinstance(orders, dict), "node_orders must be an object", "node_orders")
    return DimerModel.build(nodes, edges, half_edges, faces, orders,
                            doc.get("euler_characteristic"))


def parse_dimer(text: str) -> DimerModel:
    return document_to_dimer(_load_json(text))


def dimer_to_document(model: DimerModel) -> dict:
    doc = {
        "nodes": [{"id": n.id, "colour": n.colour} for n in model.nodes],
        "edges": [{"id": e.id, "ends": list(e.ends)} for e in model.edges],
        "half_edges": [{"id": h.id, "node": h.node} for h in model.half_edges],
        "faces": [{"id": f.id, "boundary": f.boundary, "walk": list(f.walk)}
                  for f in model.faces],
        "node_orders": {k: list(v) for k, v in sorted(model.node_orders.items())},
    }
    if model.euler_characteristic is not None:
        doc["euler_characteristic"] = model.euler_characteristic
    return doc


def serialize_dimer(model: DimerModel) -> str:
    return json.dumps(dimer_to_document(model), sort_keys=True,
                      separators=(",", ":")) + "\n"


def dumps_canonical(obj) -> str:
    """Deterministic JSON rendering used for every CLI/service payload."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
