"""Dimer models with boundary, as purely combinatorial objects.

A model is a bipartite graph with half-edges (legs reaching the surface
boundary), together with explicit faces (closed walks of edge/half-edge ids)
and counterclockwise cyclic orders of the edge ends at every node.  No
embedding is computed: validation checks the incidence shadow of the
topological axioms, and the optional Euler characteristic check is necessary
but not sufficient for the faces to be discs.

The dual ice quiver has one vertex per face (frozen iff the face meets the
boundary) and one arrow per edge or half-edge, oriented so that the cycle of
dual arrows around a black node runs consistently with the node order, and
oppositely around a white node; equivalently, the black node of the dual
edge sits on the arrow's left.  Swapping all colours reverses every arrow.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .algebra import CyclicWord, Potential
from .errors import PreconditionError, ValidationFailure
from .quiver import Arrow, IceQuiver, Vertex

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class DimerNode:
    id: str
    colour: str


@dataclass(frozen=True)
class DimerEdge:
    id: str
    ends: tuple[str, str]


@dataclass(frozen=True)
class HalfEdge:
    id: str
    node: str


@dataclass(frozen=True)
class DimerFace:
    id: int
    boundary: bool
    walk: tuple[str, ...]


class DimerModel:
    def __init__(self, nodes, edges, half_edges, faces, node_orders,
                 euler_characteristic=None):
        self.nodes: tuple[DimerNode, ...] = tuple(nodes)
        self.edges: tuple[DimerEdge, ...] = tuple(edges)
        self.half_edges: tuple[HalfEdge, ...] = tuple(half_edges)
        self.faces: tuple[DimerFace, ...] = tuple(faces)
        self.node_orders: dict[str, tuple[str, ...]] = {
            k: tuple(v) for k, v in node_orders.items()}
        self.euler_characteristic = euler_characteristic
        self._node_by_id = {n.id: n for n in self.nodes}
        self._edge_by_id = {e.id: e for e in self.edges}
        self._half_by_id = {h.id: h for h in self.half_edges}

    @classmethod
    def build(cls, nodes, edges, half_edges, faces, node_orders,
              euler_characteristic=None) -> "DimerModel":
        return cls(
            [DimerNode(str(i), c) for i, c in nodes],
            [DimerEdge(str(i), (str(a), str(b))) for i, (a, b) in edges],
            [HalfEdge(str(i), str(v)) for i, v in half_edges],
            [DimerFace(int(i), bool(b), tuple(str(x) for x in w))
             for i, b, w in faces],
            {str(k): tuple(str(x) for x in v) for k, v in node_orders.items()},
            euler_characteristic,
        )

    def node(self, node_id: str) -> DimerNode:
        try:
            return self._node_by_id[node_id]
        except KeyError:
            raise PreconditionError(f"unknown dimer node {node_id!r}") from None

    def strand_ids(self) -> list[str]:
        return [e.id for e in self.edges] + [h.id for h in self.half_edges]

    def ends_at(self, node_id: str) -> list[str]:
        """Edge/half-edge ends incident with the node (edges can appear once
        only: bipartiteness forbids loops)."""
        out = [e.id for e in self.edges if node_id in e.ends]
        out += [h.id for h in self.half_edges if h.node == node_id]
        return out

    def colour_swapped(self) -> "DimerModel":
        swapped = [replace(n, colour=BLACK if n.colour == WHITE else WHITE)
                   for n in self.nodes]
        return DimerModel(swapped, self.edges, self.half_edges, self.faces,
                          self.node_orders, self.euler_characteristic)

    def require_valid(self) -> None:
        violations = validate_dimer(self)
        if violations:
            raise ValidationFailure(violations)


def _cyclic_pairs(seq):
    m = len(seq)
    return [(seq[i], seq[(i + 1) % m]) for i in range(m)]


def _walk_has_adjacent(walk, x, y):
    return any({a, b} == {x, y} for a, b in _cyclic_pairs(walk))


def validate_dimer(model: DimerModel) -> list[str]:
    """Violations of the dimer axioms (empty = valid)."""
    v = []
    node_ids = set()
    for n in model.nodes:
        if n.id in node_ids:
            v.append(f"duplicate node id {n.id!r}")
        node_ids.add(n.id)
        if n.colour not in (BLACK, WHITE):
            v.append(f"node {n.id!r} has colour {n.colour!r}")
    strand_ids = set()
    for e in model.edges:
        if e.id in strand_ids:
            v.append(f"duplicate edge id {e.id!r}")
        strand_ids.add(e.id)
        for end in e.ends:
            if end not in node_ids:
                v.append(f"edge {e.id!r} has dangling end {end!r}")
        if all(end in node_ids for end in e.ends):
            c0 = model.node(e.ends[0]).colour
            c1 = model.node(e.ends[1]).colour
            if c0 == c1:
                v.append(f"edge {e.id!r} joins two {c0} nodes")
    for h in model.half_edges:
        if h.id in strand_ids:
            v.append(f"duplicate half-edge id {h.id!r}")
        strand_ids.add(h.id)
        if h.node not in node_ids:
            v.append(f"half-edge {h.id!r} has dangling node {h.node!r}")
    face_ids = set()
    containing: dict[str, list[DimerFace]] = {s: [] for s in strand_ids}
    for f in model.faces:
        if f.id in face_ids:
            v.append(f"duplicate face id {f.id}")
        face_ids.add(f.id)
        seen = set()
        for x in f.walk:
            if x not in strand_ids:
                v.append(f"face {f.id} walk mentions unknown strand {x!r}")
            elif x in seen:
                v.append(f"face {f.id} walk repeats strand {x!r}")
            else:
                seen.add(x)
                containing[x].append(f)
        halves_here = [x for x in f.walk if x in model._half_by_id]
        if halves_here and not f.boundary:
            v.append(f"face {f.id} contains half-edges but is not boundary")
    for s, fs in sorted(containing.items()):
        if len(fs) != 2:
            v.append(f"strand {s!r} lies in {len(fs)} faces, expected 2")
    for s in model._half_by_id:
        for f in containing.get(s, []):
            if not f.boundary:
                v.append(f"half-edge {s!r} borders non-boundary face {f.id}")
    # node orders: permutations of the incident ends, face-consistent
    for n in model.nodes:
        order = model.node_orders.get(n.id)
        incident = sorted(model.ends_at(n.id))
        if order is None:
            v.append(f"missing node order for {n.id!r}")
            continue
        if sorted(order) != incident:
            v.append(f"node order for {n.id!r} is not a permutation of its ends")
            continue
        if len(order) >= 2:
            for x, y in set(_cyclic_pairs(order)):
                if not any(_walk_has_adjacent(f.walk, x, y) for f in model.faces):
                    v.append(
                        f"node {n.id!r}: consecutive ends ({x!r}, {y!r}) "
                        f"share no face")
    if model.euler_characteristic is not None:
        chi = len(model.nodes) - (len(model.edges) + len(model.half_edges)) \
            + len(model.faces)
        if chi != model.euler_characteristic:
            v.append(f"Euler characteristic {chi} differs from declared "
                     f"{model.euler_characteristic} (necessary check only)")
    return v


# -- duality -------------------------------------------------------------------


def _faces_of_strand(model: DimerModel) -> dict[str, tuple[int, int]]:
    out = {}
    for s in model.strand_ids():
        fs = tuple(f.id for f in model.faces if s in f.walk)
        out[s] = fs
    return out


def _resolve_directions(model: DimerModel) -> dict[str, tuple[int, int]]:
    """(tail face, head face) of each dual arrow.

    At a black node the dual arrows run from the face before the strand to
    the face after it in the node order; at a white node the other way.  At
    bivalent nodes (and around digon faces) the flanking faces do not
    determine the side, so unresolved strands are propagated from resolved
    neighbours by the chaining of the cycle around each node.
    """
    faces_of = _faces_of_strand(model)
    resolved: dict[str, tuple[int, int]] = {}

    def strand_nodes(s):
        if s in model._edge_by_id:
            return model._edge_by_id[s].ends
        return (model._half_by_id[s].node,)

    def between(x, y):
        cands = [f.id for f in model.faces if _walk_has_adjacent(f.walk, x, y)]
        return cands[0] if len(cands) == 1 else None

    def from_endpoint(s, node_id):
        order = model.node_orders[node_id]
        if len(order) < 2:
            return None
        i = order.index(s)
        pred = order[i - 1]
        succ = order[(i + 1) % len(order)]
        if pred == succ:  # valence 2: flanking faces cannot be told apart here
            return None
        before = between(pred, s)
        after = between(s, succ)
        if before is None and after is None:
            return None
        pair = set(faces_of[s])
        if before is not None and after is None:
            after = (pair - {before}).pop() if len(pair - {before}) == 1 else None
        if after is not None and before is None:
            before = (pair - {after}).pop() if len(pair - {after}) == 1 else None
        if before is None or after is None or before == after:
            return None
        if model.node(node_id).colour == BLACK:
            return (before, after)
        return (after, before)

    pending = set(model.strand_ids())
    for s in sorted(pending):
        results = [r for node_id in strand_nodes(s)
                   if (r := from_endpoint(s, node_id)) is not None]
        if results:
            if len(set(results)) > 1:
                raise ValidationFailure(
                    [f"strand {s!r}: endpoints disagree about dual orientation"])
            resolved[s] = results[0]
    pending -= set(resolved)

    changed = True
    while pending and changed:
        changed = False
        for s in sorted(pending):
            for node_id in strand_nodes(s):
                order = model.node_orders[node_id]
                i = order.index(s)
                pred = order[i - 1]
                succ = order[(i + 1) % len(order)]
                colour = model.node(node_id).colour
                tail = None
                if colour == BLACK:
                    # tail(dual s) = head(dual pred); head(dual s) = tail(dual succ)
                    if pred in resolved:
                        tail = resolved[pred][1]
                    elif succ in resolved:
                        head = resolved[succ][0]
                        pair = set(faces_of[s]) - {head}
                        tail = pair.pop() if len(pair) == 1 else None
                        if tail is not None:
                            resolved[s] = (tail, head)
                            pending.discard(s)
                            changed = True
                        break
                else:
                    # white: tail(dual s) = head(dual succ); head = tail(dual pred)
                    if succ in resolved:
                        tail = resolved[succ][1]
                    elif pred in resolved:
                        head = resolved[pred][0]
                        pair = set(faces_of[s]) - {head}
                        tail = pair.pop() if len(pair) == 1 else None
                        if tail is not None:
                            resolved[s] = (tail, head)
                            pending.discard(s)
                            changed = True
                        break
                if tail is not None:
                    rest = set(faces_of[s]) - {tail}
                    if len(rest) == 1:
                        resolved[s] = (tail, rest.pop())
                        pending.discard(s)
                        changed = True
                        break
            if changed:
                break
    if pending:
        raise ValidationFailure(
            [f"cannot orient dual arrows for strands {sorted(pending)}"])
    return resolved


def dual_ice_quiver(model: DimerModel) -> tuple[IceQuiver, dict[str, str]]:
    """The dual ice quiver and the arrow -> edge/half-edge correspondence.

    Arrow ids equal the ids of their dual strands, so the correspondence is
    the identity on ids; it is returned explicitly as part of the contract.
    """
    model.require_valid()
    directions = _resolve_directions(model)
    vertices = [Vertex(f.id, f.boundary) for f in model.faces]
    arrows = []
    for s in model.strand_ids():
        tail, head = directions[s]
        arrows.append(Arrow(s, tail, head, s in model._half_by_id))
    q = IceQuiver(vertices, arrows)
    q.require_valid()
    return q, {s: s for s in model.strand_ids()}


def node_cycle(model: DimerModel, q: IceQuiver, node_id: str) -> CyclicWord:
    """The cycle of dual arrows around a node, in the node-order orientation."""
    order = model.node_orders[node_id]
    colour = model.node(node_id).colour
    written = tuple(reversed(order)) if colour == BLACK else tuple(order)
    word = CyclicWord(written)
    # composability check doubles as an orientation consistency check
    from .algebra import cyclic_word
    return cyclic_word(q, word.arrows)


def dimer_potential(model: DimerModel, q: IceQuiver | None = None) -> Potential:
    """The canonical dimer potential: black cycles minus white cycles."""
    if q is None:
        q, _ = dual_ice_quiver(model)
    total = Potential.zero()
    for n in sorted(model.nodes, key=lambda n: n.id):
        try:
            word = node_cycle(model, q, n.id)
        except PreconditionError as e:
            raise PreconditionError(
                f"node {n.id!r}: incident dual arrows do not compose "
                f"(inconsistent node orders): {e}") from None
        sign = 1 if n.colour == BLACK else -1
        total = total + Potential({word: Fraction(sign)})
    return total


# -- bivalent reduction moves ----------------------------------------------------


def _splice_walk(walk, pattern, replacement):
    """Replace one cyclic occurrence of the adjacent pattern by replacement."""
    m = len(walk)
    for i in range(m):
        j = (i + 1) % m
        if {walk[i], walk[j]} == set(pattern):
            if j == 0:
                return tuple(replacement) + tuple(walk[1:i])
            return tuple(walk[:i]) + tuple(replacement) + tuple(walk[j + 1:])
    raise PreconditionError(f"pattern {pattern} not adjacent in walk {walk}")


def remove_bivalent(model: DimerModel, node_id: str) -> DimerModel:
    """Remove a bivalent node.

    Interior case (two full edges): the node is deleted and its two
    neighbours merge; dually, an unfrozen 2-cycle disappears.  Boundary case
    (one full edge and one half-edge): node, edge and half-edge are deleted
    and the half-edge reattaches to the neighbour; dually, a half-frozen
    2-cycle is replaced by a frozen arrow in the unfrozen direction.
    """
    model.require_valid()
    node = model.node(node_id)
    ends = model.ends_at(node_id)
    if len(ends) != 2:
        raise PreconditionError(
            f"node {node_id!r} has valence {len(ends)}, not bivalent")
    halves = [x for x in ends if x in model._half_by_id]
    fulls = [x for x in ends if x in model._edge_by_id]

    if len(fulls) == 2:
        e1, e2 = (model._edge_by_id[x] for x in model.node_orders[node_id])
        n1 = next(x for x in e1.ends if x != node_id)
        n2 = next(x for x in e2.ends if x != node_id)
        if n1 == n2:
            raise PreconditionError(
                "unsupported: bivalent node with a doubled neighbour")
        flanking = {f.id for f in model.faces if e1.id in f.walk}
        if len(flanking) != 2:
            raise PreconditionError("unsupported: degenerate flanking faces")
        # splice n2's fan into n1's order at the slot of e1
        order1 = list(model.node_orders[n1])
        order2 = list(model.node_orders[n2])
        k2 = order2.index(e2.id)
        fan = [order2[(k2 + 1 + t) % len(order2)] for t in range(len(order2) - 1)]
        k1 = order1.index(e1.id)
        merged_order = order1[:k1] + fan + order1[k1 + 1:]
        nodes = [n for n in model.nodes if n.id not in (node_id, n2)]
        edges = []
        for e in model.edges:
            if e.id in (e1.id, e2.id):
                continue
            new_ends = tuple(n1 if x == n2 else x for x in e.ends)
            edges.append(DimerEdge(e.id, new_ends))
        half_edges = [replace(h, node=n1) if h.node == n2 else h
                      for h in model.half_edges]
        faces = []
        for f in model.faces:
            walk = tuple(x for x in f.walk if x not in (e1.id, e2.id))
            if not walk:
                raise PreconditionError("unsupported: move would empty a face")
            faces.append(DimerFace(f.id, f.boundary, walk))
        node_orders = {k: v for k, v in model.node_orders.items()
                       if k not in (node_id, n2)}
        node_orders[n1] = tuple(merged_order)
        return DimerModel(nodes, edges, half_edges, faces, node_orders,
                          model.euler_characteristic)

    if len(fulls) == 1 and len(halves) == 1:
        e = model._edge_by_id[fulls[0]]
        h = model._half_by_id[halves[0]]
        n1 = next(x for x in e.ends if x != node_id)
        nodes = [n for n in model.nodes if n.id != node_id]
        edges = [x for x in model.edges if x.id != e.id]
        half_edges = [x for x in model.half_edges if x.id != h.id]
        half_edges.append(HalfEdge(h.id, n1))
        order1 = tuple(h.id if x == e.id else x for x in model.node_orders[n1])
        faces = []
        for f in model.faces:
            if e.id in f.walk:
                walk = _splice_walk(f.walk, (e.id, h.id), (h.id,))
                faces.append(DimerFace(f.id, f.boundary, walk))
            else:
                faces.append(f)
        node_orders = {k: v for k, v in model.node_orders.items() if k != node_id}
        node_orders[n1] = order1
        return DimerModel(nodes, edges, half_edges, faces, node_orders,
                          model.euler_characteristic)

    raise PreconditionError(
        "unsupported: bivalent node with two half-edges")
