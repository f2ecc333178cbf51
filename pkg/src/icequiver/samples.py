"""Sample objects and pseudo-random generators for test harnesses.

Everything here is deterministic given an explicit ``random.Random``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import NCPoly, Potential, Substitution, cyclic_word
from .dimer import (BLACK, WHITE, DimerEdge, DimerFace, DimerModel, HalfEdge,
                    _cyclic_pairs, _walk_has_adjacent)
from .errors import PreconditionError
from .quiver import IceQuiver
from .reduction import reduce_iqp


# -- ice quivers with potential -------------------------------------------------


def random_ice_quiver(rng: random.Random, max_vertices=5, max_arrows=10,
                      allow_frozen=True) -> IceQuiver:
    """A loop-free random ice quiver with valid frozen flags."""
    n = rng.randint(2, max_vertices)
    frozen = [allow_frozen and rng.random() < 0.4 for _ in range(n)]
    vertices = [(i, frozen[i]) for i in range(n)]
    arrows = []
    n_arrows = rng.randint(1, max_arrows)
    for idx in range(n_arrows):
        i, j = rng.sample(range(n), 2)
        can_freeze = frozen[i] and frozen[j]
        flag = can_freeze and rng.random() < 0.5
        arrows.append((f"x{idx}", i, j, flag))
    return IceQuiver.build(vertices, arrows)


def random_cycles(rng: random.Random, q: IceQuiver, count: int,
                  max_degree=4) -> list[tuple[str, ...]]:
    """Random cyclic words of degree 2..max_degree, found by random walks."""
    out = []
    arrows = list(q.arrows)
    if not arrows:
        return out
    for _ in range(count * 20):
        if len(out) >= count:
            break
        length = rng.randint(2, max_degree)
        first = rng.choice(arrows)
        walk = [first]
        for _ in range(length - 1):
            nxt = [a for a in arrows if a.head == walk[-1].tail]
            if not nxt:
                break
            walk.append(rng.choice(nxt))
        if len(walk) != length or walk[0].head != walk[-1].tail:
            continue
        word = tuple(a.id for a in walk)
        if length == 2 and word[0] == word[1]:
            continue
        out.append(word)
    return out


def random_potential(rng: random.Random, q: IceQuiver, max_terms=3,
                     max_degree=4) -> Potential:
    terms = {}
    for word in random_cycles(rng, q, rng.randint(1, max_terms), max_degree):
        coeff = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
        terms[cyclic_word(q, word)] = coeff
    # keep only valid terms (no degree-2 loop words can occur: loop-free)
    return Potential(terms)


def random_reduced_iqp(rng: random.Random, max_vertices=5, max_arrows=10,
                       max_degree=4, truncation=6) -> tuple[IceQuiver, Potential]:
    """A random reduced ice quiver with potential (reduction of a random one)."""
    while True:
        q = random_ice_quiver(rng, max_vertices, max_arrows)
        w = random_potential(rng, q, max_degree=max_degree)
        try:
            out = reduce_iqp(q, w, truncation)
        except Exception:
            continue
        return out.quiver, out.potential


def random_substitution(rng: random.Random, q: IceQuiver, n: int,
                        max_extra=2) -> Substitution:
    """A vertex-fixing homomorphism: each arrow maps to itself plus a few
    parallel paths of length <= 3."""
    from .algebra import paths_up_to

    paths = paths_up_to(q, 3)
    images = {}
    for a in q.arrows:
        img = NCPoly.from_arrow(q, a.id, n, rng.choice([1, 1, 1, 2]))
        parallels = [p for p in paths
                     if p.source == a.tail and p.target == a.head
                     and p.arrows != (a.id,) and len(p) >= 1]
        for p in rng.sample(parallels, k=min(len(parallels), rng.randint(0, max_extra))):
            img = img + NCPoly.from_path(q, p, n, Fraction(rng.choice([-1, 1]),
                                                           rng.choice([1, 2])))
        images[a.id] = img
    return Substitution(q, q, images, n, label="random")


# -- dimer models -----------------------------------------------------------------


def minimal_disk_dimer() -> DimerModel:
    """One black-white edge with two half-edges per node: four boundary faces."""
    return DimerModel.build(
        nodes=[("B", BLACK), ("W", WHITE)],
        edges=[("e", ("B", "W"))],
        half_edges=[("hB1", "B"), ("hB2", "B"), ("hW1", "W"), ("hW2", "W")],
        faces=[
            (0, True, ("hB1", "e", "hW1")),
            (1, True, ("hW1", "hW2")),
            (2, True, ("hW2", "e", "hB2")),
            (3, True, ("hB2", "hB1")),
        ],
        node_orders={"B": ("hB1", "e", "hB2"), "W": ("hW1", "hW2", "e")},
        euler_characteristic=1,
    )


def pentagon_disk_dimer() -> DimerModel:
    """A disk model with five boundary legs, eight nodes and seven faces."""
    return DimerModel.build(
        nodes=[("b6", BLACK), ("b7", WHITE), ("b8", BLACK), ("b9", WHITE),
               ("b10", BLACK), ("b11", WHITE), ("b12", BLACK), ("b13", BLACK)],
        edges=[
            ("e67", ("b6", "b7")), ("e712", ("b7", "b12")), ("e78", ("b7", "b8")),
            ("e89", ("b8", "b9")), ("e913", ("b9", "b13")), ("e910", ("b9", "b10")),
            ("e1011", ("b10", "b11")), ("e116", ("b11", "b6")),
            ("e811", ("b8", "b11")),
        ],
        half_edges=[("h1", "b6"), ("h2", "b12"), ("h3", "b8"), ("h4", "b13"),
                    ("h5", "b10")],
        faces=[
            (45, True, ("h5", "e1011", "e116", "h1")),
            (15, True, ("h1", "e67", "e712", "h2")),
            (12, True, ("h2", "e712", "e78", "h3")),
            (23, True, ("h3", "e89", "e913", "h4")),
            (34, True, ("h4", "e913", "e910", "h5")),
            (25, False, ("e67", "e78", "e811", "e116")),
            (24, False, ("e89", "e910", "e1011", "e811")),
        ],
        node_orders={
            "b6": ("e116", "e67", "h1"),
            "b7": ("e712", "e67", "e78"),
            "b8": ("h3", "e78", "e811", "e89"),
            "b9": ("e89", "e910", "e913"),
            "b10": ("e910", "e1011", "h5"),
            "b11": ("e811", "e116", "e1011"),
            "b12": ("h2", "e712"),
            "b13": ("e913", "h4"),
        },
        euler_characteristic=1,
    )


def _shared_node(model: DimerModel, x: str, y: str):
    def nodes_of(s):
        if s in model._edge_by_id:
            return set(model._edge_by_id[s].ends)
        return {model._half_by_id[s].node}
    common = nodes_of(x) & nodes_of(y)
    return next(iter(common)) if common else None


def subdivide_edge(model: DimerModel, edge_id: str) -> tuple[DimerModel, str]:
    """Insert two nodes in the middle of an edge (keeps bipartiteness).

    Returns the new model and the id of the planted white bivalent node.
    """
    e = model._edge_by_id[edge_id]
    black_end = next(x for x in e.ends if model.node(x).colour == BLACK)
    white_end = next(x for x in e.ends if model.node(x).colour == WHITE)
    wn, bn = f"{edge_id}#w", f"{edge_id}#b"
    e1, e2, e3 = f"{edge_id}#1", f"{edge_id}#2", f"{edge_id}#3"
    nodes = list(model.nodes) + [
        type(model.nodes[0])(wn, WHITE), type(model.nodes[0])(bn, BLACK)]
    edges = [x for x in model.edges if x.id != edge_id] + [
        DimerEdge(e1, (black_end, wn)), DimerEdge(e2, (wn, bn)),
        DimerEdge(e3, (bn, white_end))]
    faces = []
    for f in model.faces:
        if edge_id not in f.walk:
            faces.append(f)
            continue
        i = f.walk.index(edge_id)
        prev = f.walk[i - 1]
        if _shared_node(model, prev, edge_id) == black_end:
            seq = (e1, e2, e3)
        else:
            seq = (e3, e2, e1)
        walk = f.walk[:i] + seq + f.walk[i + 1:]
        faces.append(DimerFace(f.id, f.boundary, walk))
    node_orders = {
        k: tuple(e1 if (x == edge_id and k == black_end)
                 else e3 if (x == edge_id and k == white_end) else x
                 for x in v)
        for k, v in model.node_orders.items()}
    node_orders[wn] = (e1, e2)
    node_orders[bn] = (e2, e3)
    return DimerModel(nodes, edges, model.half_edges, faces, node_orders,
                      model.euler_characteristic), wn


def attach_boundary_spur(model: DimerModel, node_id: str,
                         gap: tuple[str, str]) -> tuple[DimerModel, str]:
    """Attach a new node with one edge and one half-edge inside the boundary
    face between consecutive ends ``gap`` at ``node_id``.

    Returns the new model and the planted bivalent node id.
    """
    x, y = gap
    order = model.node_orders[node_id]
    if (x, y) not in _cyclic_pairs(order):
        raise PreconditionError(f"{gap} is not a consecutive gap at {node_id!r}")
    face = next((f for f in model.faces if _walk_has_adjacent(f.walk, x, y)
                 and f.boundary), None)
    if face is None:
        raise PreconditionError(f"gap {gap} does not border a boundary face")
    colour = WHITE if model.node(node_id).colour == BLACK else BLACK
    un = f"{node_id}#u{len(model.nodes)}"
    eid, hid = f"{un}#e", f"{un}#h"

    walk = face.walk
    m = len(walk)
    start = next(i for i in range(m) if {walk[i], walk[(i + 1) % m]} == {x, y})
    rotated = walk[start + 1:] + walk[:start + 1]
    # find the single boundary-arc adjacency (consecutive entries sharing no node)
    arc = [i for i in range(len(rotated))
           if _shared_node(model, rotated[i], rotated[(i + 1) % len(rotated)]) is None]
    if len(arc) != 1:
        raise PreconditionError(
            "spur needs a boundary face with exactly one boundary arc")
    b = arc[0]
    w2 = (hid, eid) + rotated[:b + 1]
    w1 = rotated[b + 1:] + (eid, hid)
    new_id = max(f.id for f in model.faces) + 1
    faces = [f for f in model.faces if f.id != face.id]
    faces.append(DimerFace(face.id, True, w1))
    faces.append(DimerFace(new_id, True, w2))

    nodes = list(model.nodes) + [type(model.nodes[0])(un, colour)]
    edges = list(model.edges) + [DimerEdge(eid, (node_id, un))]
    halves = list(model.half_edges) + [HalfEdge(hid, un)]
    i = order.index(x)
    node_orders = dict(model.node_orders)
    node_orders[node_id] = order[:i + 1] + (eid,) + order[i + 1:]
    node_orders[un] = (eid, hid)
    return DimerModel(nodes, edges, halves, faces, node_orders,
                      model.euler_characteristic), un


def random_planted_dimer(rng: random.Random) -> tuple[DimerModel, str]:
    """A random valid disk dimer with exactly one planted bivalent defect."""
    from .dimer import remove_bivalent

    base = pentagon_disk_dimer()
    base = remove_bivalent(base, "b12")
    base = remove_bivalent(base, "b13")
    bases = [minimal_disk_dimer(), base]
    model = rng.choice(bases)
    if rng.random() < 0.5:
        edge = rng.choice(model.edges)
        return subdivide_edge(model, edge.id)
    # spur at a random gap bordering a boundary face
    options = []
    for node in model.nodes:
        for x, y in _cyclic_pairs(model.node_orders[node.id]):
            if x == y:
                continue
            face = next((f for f in model.faces
                         if _walk_has_adjacent(f.walk, x, y) and f.boundary), None)
            if face is None:
                continue
            arcs = [i for i in range(len(face.walk))
                    if _shared_node(model, face.walk[i],
                                    face.walk[(i + 1) % len(face.walk)]) is None]
            if len(arcs) == 1:
                options.append((node.id, (x, y)))
    node_id, gap = rng.choice(sorted(options))
    return attach_boundary_spur(model, node_id, gap)
