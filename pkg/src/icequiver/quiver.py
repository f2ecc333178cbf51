"""Ice quivers and their combinatorial (extended Fomin-Zelevinsky) mutation.

An ice quiver is a finite directed multigraph together with a frozen
subquiver: a set of frozen vertices and a set of frozen arrows whose
endpoints must all be frozen.  The frozen subquiver need not be full, so
arrows between frozen vertices may or may not be frozen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, ValidationFailure


@dataclass(frozen=True, order=True)
class Vertex:
    id: int
    frozen: bool = False


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    tail: int
    head: int
    frozen: bool = False


def star_name(arrow_id: str) -> str:
    """Reversal naming with involutive folding: a -> a*, a* -> a."""
    return arrow_id[:-1] if arrow_id.endswith("*") else arrow_id + "*"


def composite_name(later: str, earlier: str) -> str:
    """Name of the composite arrow replacing the length-2 path later∘earlier."""
    return f"[{later},{earlier}]"


class IceQuiver:
    """Immutable ice quiver. Construction is permissive; use :meth:`validate`."""

    def __init__(self, vertices, arrows):
        self.vertices: tuple[Vertex, ...] = tuple(sorted(vertices, key=lambda v: v.id))
        self.arrows: tuple[Arrow, ...] = tuple(sorted(arrows, key=lambda a: a.id))
        self._vertex_by_id = {v.id: v for v in self.vertices}
        self._arrow_by_id = {a.id: a for a in self.arrows}

    @classmethod
    def build(cls, vertices, arrows) -> "IceQuiver":
        """Build from tuples ``(id, frozen)`` and ``(id, tail, head[, frozen])``."""
        vs = [Vertex(int(i), bool(f)) for i, f in vertices]
        ars = [Arrow(str(a[0]), int(a[1]), int(a[2]), bool(a[3]) if len(a) > 3 else False)
               for a in arrows]
        return cls(vs, ars)

    # -- basic accessors -------------------------------------------------

    def vertex(self, v: int) -> Vertex:
        try:
            return self._vertex_by_id[v]
        except KeyError:
            raise PreconditionError(f"unknown vertex id {v!r}") from None

    def arrow(self, a: str) -> Arrow:
        try:
            return self._arrow_by_id[a]
        except KeyError:
            raise PreconditionError(f"unknown arrow id {a!r}") from None

    def has_vertex(self, v: int) -> bool:
        return v in self._vertex_by_id

    def has_arrow(self, a: str) -> bool:
        return a in self._arrow_by_id

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    @property
    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def arrows_at(self, v: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == v or a.head == v)

    def arrows_from(self, v: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == v)

    def arrows_into(self, v: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.head == v)

    def mutable_vertices(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices if not v.frozen)

    def frozen_vertices(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices if v.frozen)

    def __eq__(self, other):
        return (isinstance(other, IceQuiver)
                and self.vertices == other.vertices and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"IceQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    # -- validation ------------------------------------------------------

    def validate(self) -> list[str]:
        """Return a list of violations of the ice-quiver axioms (empty = valid)."""
        violations = []
        seen_v = set()
        for v in self.vertices:
            if v.id in seen_v:
                violations.append(f"duplicate vertex id {v.id}")
            seen_v.add(v.id)
            if v.id < 0:
                violations.append(f"negative vertex id {v.id}")
        seen_a = set()
        for a in self.arrows:
            if a.id in seen_a:
                violations.append(f"duplicate arrow id {a.id!r}")
            seen_a.add(a.id)
            for end, label in ((a.tail, "tail"), (a.head, "head")):
                if end not in seen_v:
                    violations.append(f"arrow {a.id!r} has dangling {label} {end}")
            if a.frozen:
                for end in (a.tail, a.head):
                    if end in self._vertex_by_id and not self._vertex_by_id[end].frozen:
                        violations.append(
                            f"frozen arrow {a.id!r} endpoint {end} mutable")
        return violations

    def require_valid(self) -> None:
        violations = self.validate()
        if violations:
            raise ValidationFailure(violations)

    # -- derived combinatorics --------------------------------------------

    def loops_at(self, v: int) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.tail == v and a.head == v)

    def two_cycles(self) -> list[tuple[Arrow, Arrow]]:
        """All 2-cycles, as pairs (a, b) with a.id < b.id and a,b mutually inverse."""
        pairs = []
        for a, b in itertools.combinations(self.arrows, 2):
            if a.tail == b.head and a.head == b.tail and a.tail != a.head:
                pairs.append((a, b))
        return pairs

    def two_cycles_at(self, v: int) -> list[tuple[Arrow, Arrow]]:
        return [(a, b) for a, b in self.two_cycles() if v in (a.tail, a.head)]

    def unfrozen_two_cycles(self) -> list[tuple[Arrow, Arrow]]:
        """2-cycles containing at least one unfrozen arrow."""
        return [(a, b) for a, b in self.two_cycles() if not (a.frozen and b.frozen)]

    def signed_adjacency(self) -> dict[tuple[int, int], int]:
        """b[i,j] = #(arrows i->j) - #(arrows j->i), over all vertices."""
        b: dict[tuple[int, int], int] = {}
        ids = self.vertex_ids
        for i in ids:
            for j in ids:
                b[(i, j)] = 0
        for a in self.arrows:
            if a.tail != a.head:
                b[(a.tail, a.head)] += 1
                b[(a.head, a.tail)] -= 1
        return b

    # -- mutation ----------------------------------------------------------

    def mutability_check(self, v: int) -> bool:
        """True iff v is mutable and carries no loop and no 2-cycle."""
        vertex = self.vertex(v)
        if vertex.frozen:
            return False
        if self.loops_at(v):
            return False
        if self.two_cycles_at(v):
            return False
        return True

    def fz_mutate(self, v: int) -> "IceQuiver":
        """Extended Fomin-Zelevinsky mutation at the mutable vertex v.

        Steps: (i) add unfrozen composites [b,a] for a: u->v, b: v->w;
        (ii) reverse all arrows at v; (iii) remove a maximal collection of
        unfrozen 2-cycles; (iv) replace a maximal collection of half-frozen
        2-cycles by frozen arrows in the direction of the unfrozen arrow.
        Maximal collections are chosen greedily in lexicographic order of
        (min arrow id, max arrow id), so the output is deterministic; it is
        well defined up to isomorphism.
        """
        if not self.mutability_check(v):
            raise PreconditionError(f"vertex {v} is not mutable in this quiver")
        incoming = self.arrows_into(v)
        outgoing = self.arrows_from(v)
        new_arrows: list[Arrow] = []
        for a in self.arrows:
            if a.head == v:
                new_arrows.append(Arrow(star_name(a.id), v, a.tail, False))
            elif a.tail == v:
                new_arrows.append(Arrow(star_name(a.id), a.head, v, False))
            else:
                new_arrows.append(a)
        for a in incoming:
            for b in outgoing:
                new_arrows.append(Arrow(composite_name(b.id, a.id), a.tail, b.head, False))

        by_id = {a.id: a for a in new_arrows}
        if len(by_id) != len(new_arrows):
            raise PreconditionError("arrow name collision during mutation")

        def candidate_pairs(half_frozen: bool):
            pairs = []
            for a, b in itertools.combinations(sorted(by_id.values(), key=lambda x: x.id), 2):
                if a.tail == b.head and a.head == b.tail and a.tail != a.head:
                    n_frozen = int(a.frozen) + int(b.frozen)
                    if (n_frozen == 1) == half_frozen and n_frozen < 2:
                        pairs.append((a, b))
            pairs.sort(key=lambda p: (p[0].id, p[1].id))
            return pairs

        # step (iii): unfrozen 2-cycles
        removed = set()
        for a, b in candidate_pairs(half_frozen=False):
            if a.id in removed or b.id in removed:
                continue
            removed.update((a.id, b.id))
        # step (iv): half-frozen 2-cycles
        counter = 0
        replacements = []
        for a, b in candidate_pairs(half_frozen=True):
            if a.id in removed or b.id in removed:
                continue
            removed.update((a.id, b.id))
            unfrozen = a if not a.frozen else b
            while f"fz#{counter}" in by_id:
                counter += 1
            replacements.append(Arrow(f"fz#{counter}", unfrozen.tail, unfrozen.head, True))
            counter += 1

        final = [a for a in by_id.values() if a.id not in removed] + replacements
        return IceQuiver(self.vertices, final)


# -- canonical form ----------------------------------------------------------


def _refine_vertex_colors(q: IceQuiver) -> dict[int, int]:
    """Stable colouring of vertices by frozen flag and iterated degree data."""
    colors = {v.id: (v.frozen,) for v in q.vertices}
    for _ in range(len(q.vertices) + 1):
        sig = {}
        for v in q.vertex_ids:
            outs = sorted((a.frozen, colors[a.head]) for a in q.arrows_from(v))
            ins = sorted((a.frozen, colors[a.tail]) for a in q.arrows_into(v))
            sig[v] = (colors[v], tuple(outs), tuple(ins))
        ranked = sorted(set(sig.values()))
        new = {v: ranked.index(sig[v]) for v in q.vertex_ids}
        if all(
            (new[u] == new[v]) == (colors[u] == colors[v])
            for u in q.vertex_ids for v in q.vertex_ids
        ):
            colors = new
            break
        colors = new
    return colors


def canonical_form(q: IceQuiver) -> tuple[IceQuiver, dict[int, int], dict[str, str]]:
    """Canonically relabelled copy of q, with the vertex and arrow maps.

    Two ice quivers are isomorphic (respecting frozen flags on vertices and
    arrows) iff their canonical forms are equal.  Mutable vertices come first
    in the canonical numbering.  Ties between parallel arrows of equal frozen
    flag are broken by original id; this does not affect the canonical quiver.
    """
    verts = list(q.vertices)
    mutable = sorted(v.id for v in verts if not v.frozen)
    frozen = sorted(v.id for v in verts if v.frozen)
    colors = _refine_vertex_colors(q)

    def orderings():
        # candidate labellings: permutations within refinement classes,
        # mutable block before frozen block
        def block_orders(ids):
            groups: dict[int, list[int]] = {}
            for v in ids:
                groups.setdefault(colors[v], []).append(v)
            keys = sorted(groups)
            pools = [itertools.permutations(groups[k]) for k in keys]
            for combo in itertools.product(*pools):
                yield [v for chunk in combo for v in chunk]

        for m_order in block_orders(mutable):
            for f_order in block_orders(frozen):
                yield m_order + f_order

    best_cert = None
    best_order = None
    for order in orderings():
        pos = {v: i for i, v in enumerate(order)}
        cert = tuple(sorted(
            (pos[a.tail], pos[a.head], a.frozen) for a in q.arrows))
        if best_cert is None or cert < best_cert:
            best_cert = cert
            best_order = order

    pos = {v: i for i, v in enumerate(best_order)} if best_order else {}
    new_vertices = [Vertex(pos[v.id], v.frozen) for v in verts]
    # canonical arrow naming: index within the sorted (tail, head, frozen) list
    keyed = sorted(q.arrows, key=lambda a: (pos[a.tail], pos[a.head], a.frozen, a.id))
    arrow_map = {}
    new_arrows = []
    for i, a in enumerate(keyed):
        name = f"a{i}"
        arrow_map[a.id] = name
        new_arrows.append(Arrow(name, pos[a.tail], pos[a.head], a.frozen))
    return IceQuiver(new_vertices, new_arrows), pos, arrow_map
