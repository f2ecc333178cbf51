"""Truncated frozen Jacobian algebras and their invariants.

The frozen Jacobian algebra of (Q, F, W) is the quotient of K<<Q>> by the
closure of the ideal generated by the cyclic derivatives of W at unfrozen
arrows.  At truncation N we compute the exact quotient by (ideal + J^(N+1)),
which equals the algebra modulo the (N+1)-st power of its radical.  Every
answer carries its bound: nothing here claims to see past degree N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import algebra as alg
from .algebra import (NCPoly, Path, Potential, STRIP_LEFTMOST, STRIP_RIGHTMOST,
                      cyclic_derivative, edge_derivative, idempotent, make_path,
                      paths_up_to, require_valid_potential)
from .errors import PreconditionError, TruncationTooSmall
from .linalg import GaussianSpan
from .quiver import IceQuiver, composite_name, star_name

DEFAULT_EDGE_CONVENTION = STRIP_LEFTMOST


def relation_generators(q: IceQuiver, w: Potential, n: int) -> dict[str, NCPoly]:
    """The cyclic derivatives d_a W at unfrozen arrows a, truncated at n."""
    return {a.id: cyclic_derivative(q, w, a.id, n)
            for a in q.arrows if not a.frozen}


def _saturate_ideal(q: IceQuiver, generators, n: int) -> dict[tuple[int, int], GaussianSpan]:
    """Span of {u r v : r generator, u,v paths}, truncated at n, per block.

    Computed by saturation: close the generator span under multiplication by
    single arrows on both sides.  Each row lies in one (source, target) block.
    """
    spans: dict[tuple[int, int], GaussianSpan] = {}
    worklist: list[tuple[tuple[int, int], dict]] = []

    def insert(f: NCPoly):
        if f.is_zero():
            return
        some = next(iter(f.terms))
        block = (some.source, some.target)
        span = spans.setdefault(block, GaussianSpan())
        pivot = span.insert(dict(f.terms))
        if pivot is not None:
            worklist.append((block, dict(span.rows[pivot])))

    for g in generators:
        insert(g)
    arrow_polys = {a.id: NCPoly.from_arrow(q, a.id, n) for a in q.arrows}
    while worklist:
        (src, tgt), row = worklist.pop()
        f = NCPoly(q, n, row)
        for a in q.arrows:
            if a.tail == tgt:
                insert(alg.multiply(arrow_polys[a.id], f, n))
            if a.head == src:
                insert(alg.multiply(f, arrow_polys[a.id], n))
    return spans


class TruncatedAlgebra:
    """Basis and normal forms for the frozen Jacobian algebra mod rad^(N+1)."""

    def __init__(self, quiver: IceQuiver, potential: Potential, truncation: int):
        quiver.require_valid()
        require_valid_potential(quiver, potential)
        self.quiver = quiver
        self.potential = potential
        self.truncation = int(truncation)
        gens = relation_generators(quiver, potential, self.truncation)
        self.relations = gens
        self.max_relation_degree = max(
            (f.max_degree() or 0 for f in gens.values()), default=0)
        self._spans = _saturate_ideal(quiver, gens.values(), self.truncation)
        self._paths = paths_up_to(quiver, self.truncation)
        self.basis: dict[tuple[int, int], list[Path]] = {}
        for p in self._paths:
            block = (p.source, p.target)
            span = self._spans.get(block)
            if span is not None and p in span.rows:
                continue
            self.basis.setdefault(block, []).append(p)

    def reduce_poly(self, f: NCPoly) -> NCPoly:
        """Normal form of f modulo the relation span and J^(N+1)."""
        blocks: dict[tuple[int, int], dict] = {}
        for p, c in f.truncate(self.truncation).terms.items():
            blocks.setdefault((p.source, p.target), {})[p] = c
        out: dict[Path, Fraction] = {}
        for block, row in blocks.items():
            span = self._spans.get(block)
            red = span.reduce(row) if span is not None else row
            out.update(red)
        return NCPoly(self.quiver, self.truncation, out)

    def is_zero_in_quotient(self, f: NCPoly) -> bool:
        return self.reduce_poly(f).is_zero()

    def dim(self, source: int, target: int) -> int:
        return len(self.basis.get((source, target), []))

    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())


def truncated_algebra(q: IceQuiver, w: Potential, n: int) -> TruncatedAlgebra:
    return TruncatedAlgebra(q, w, n)


def hom_dims(a: TruncatedAlgebra) -> dict[tuple[int, int], int]:
    """Entry (i, j) = dim e_j (Lambda/rad^(N+1)) e_i, i.e. classes of paths i->j."""
    ids = a.quiver.vertex_ids
    return {(i, j): a.dim(i, j) for i in ids for j in ids}


def hom_dims_matrix(a: TruncatedAlgebra) -> list[list[int]]:
    ids = a.quiver.vertex_ids
    return [[a.dim(i, j) for j in ids] for i in ids]


def gabriel_quiver(a: TruncatedAlgebra) -> IceQuiver:
    """Quiver with arrow multiplicities dim e_j (rad/rad^2) e_i.

    Requires N >= 2 + max relation degree, otherwise a low-degree relation
    consequence could still be hidden above the bound.
    """
    need = 2 + a.max_relation_degree
    if a.truncation < need:
        raise TruncationTooSmall(
            f"gabriel_quiver needs truncation >= {need}, got {a.truncation}")
    q = a.quiver
    arrows = []
    count = 0
    for i in q.vertex_ids:
        for j in q.vertex_ids:
            block_paths = [p for p in a._paths
                           if p.source == i and p.target == j and len(p) >= 1]
            span1 = GaussianSpan()
            span2 = GaussianSpan()
            r1 = r2 = 0
            for p in block_paths:
                red = a.reduce_poly(NCPoly.from_path(q, p, a.truncation))
                if red.is_zero():
                    continue
                if span1.insert(dict(red.terms)) is not None:
                    r1 += 1
                if len(p) >= 2 and span2.insert(dict(red.terms)) is not None:
                    r2 += 1
            for _ in range(r1 - r2):
                arrows.append((f"g{count}", i, j))
                count += 1
    return IceQuiver.build([(v.id, v.frozen) for v in q.vertices],
                           [(aid, t, h) for aid, t, h in arrows])


# -- trace space, deformation space, rigidity --------------------------------


@dataclass
class TraceReport:
    truncation: int
    dims_by_degree: dict[int, int]
    witnesses: dict[int, Path]

    def total(self) -> int:
        return sum(self.dims_by_degree.values())


def _deformation_span(q: IceQuiver, w: Potential, n: int):
    """Span of relations + commutators + S + frozen cycles, over paths <= n."""
    paths = paths_up_to(q, n)
    span = GaussianSpan()
    # relation ideal
    for block_span in _saturate_ideal(
            q, relation_generators(q, w, n).values(), n).values():
        for pivot in list(block_span.rows):
            span.insert(dict(block_span.rows[pivot]))
    # vertex span S
    for v in q.vertex_ids:
        span.insert({idempotent(v): Fraction(1)})
    # frozen-arrow-only paths
    for p in paths:
        if p.arrows and all(q.arrow(x).frozen for x in p.arrows):
            span.insert({p: Fraction(1)})
    # commutators u v - v u over path pairs with total degree <= n
    by_target: dict[int, list[Path]] = {}
    for p in paths:
        by_target.setdefault(p.target, []).append(p)
    for u in paths:
        for v in by_target.get(u.source, ()):  # u v composable: v then u
            if len(u) + len(v) > n:
                continue
            uv = Path(u.arrows + v.arrows, v.source, u.target)
            row = {uv: Fraction(1)}
            if v.source == u.target:  # v u also composable
                vu = Path(v.arrows + u.arrows, u.source, v.target)
                row[vu] = row.get(vu, Fraction(0)) - Fraction(1)
            if any(c != 0 for c in row.values()):
                span.insert(row)
    return span, paths


def trace_space_dims(q: IceQuiver, w: Potential, n: int) -> TraceReport:
    """Graded dimensions of Tr(Lambda)/(S + frozen part) in degrees 1..N.

    Dimensions are of the degree filtration of the truncated quotient; the
    witness in each degree is the least surviving cycle class.
    """
    q.require_valid()
    require_valid_potential(q, w)
    span, paths = _deformation_span(q, w, n)
    pivots_by_degree: dict[int, int] = {}
    for pivot in span.rows:
        pivots_by_degree[len(pivot.arrows)] = pivots_by_degree.get(len(pivot.arrows), 0) + 1
    dims = {}
    witnesses = {}
    for d in range(1, n + 1):
        total = sum(1 for p in paths if len(p) == d)
        dims[d] = total - pivots_by_degree.get(d, 0)
        if dims[d] > 0:
            survivors = [p for p in paths if len(p) == d and p not in span.rows]
            if survivors:
                witnesses[d] = min(survivors, key=lambda p: (p.arrows, p.source))
    return TraceReport(n, dims, witnesses)


@dataclass
class RigidityReport:
    rigid: bool
    bound: int
    witness: Path | None = None

    def __str__(self):
        if self.rigid:
            return f"RigidUpTo({self.bound})"
        return f"NotRigid({self.witness})"


def rigidity(q: IceQuiver, w: Potential, n: int) -> RigidityReport:
    """NotRigid with a surviving cycle witness, else RigidUpTo(N).

    Refutation is certified exactly; rigidity only up to the stated bound.
    """
    report = trace_space_dims(q, w, n)
    for d in sorted(report.dims_by_degree):
        if report.dims_by_degree[d] > 0:
            return RigidityReport(False, n, report.witnesses.get(d))
    return RigidityReport(True, n)


# -- the premutation derivative identities -----------------------------------


@dataclass
class IdentityCheck:
    identity: str
    ok: bool
    failures: list[str]


@dataclass
class IdentityReport:
    convention: str
    checks: dict[str, IdentityCheck]

    def ok(self, *identities: str) -> bool:
        which = identities or tuple(self.checks)
        return all(self.checks[i].ok for i in which)


def _expand_composites(q: IceQuiver, f: NCPoly, comp_map: dict[str, tuple[str, str]],
                       n: int) -> NCPoly:
    """Send each composite arrow [b,a] back to the written pair (b, a) in K<<Q>>."""
    out: dict[Path, Fraction] = {}
    for p, c in f.terms.items():
        arrows: list[str] = []
        for x in p.arrows:
            if x in comp_map:
                arrows.extend(comp_map[x])
            else:
                if not q.has_arrow(x):
                    raise PreconditionError(
                        f"cannot expand path containing {x!r} into the base quiver")
                arrows.append(x)
        new = make_path(q, arrows) if arrows else idempotent(p.source)
        out[new] = out.get(new, Fraction(0)) + c
    return NCPoly(q, n, out)


def verify_derivative_identities(q: IceQuiver, w: Potential, k: int,
                                 convention: str = DEFAULT_EDGE_CONVENTION
                                 ) -> IdentityReport:
    """Check the six derivative identities relating W and its premutation at k.

    Identities (iii)-(v) pick out a unique edge-derivative convention; the
    iterated edge derivatives inside identity (ii) transpose with the
    convention.  Composite arrows are expanded back to paths of the original
    quiver before comparisons that mix the two path algebras.  Identity (vi)
    asserts vanishing of the remaining combinations, excluding pairs of two
    composite arrows, which the premutated potential does not constrain.
    """
    from .mutation import premutate  # local import: mutation builds on reduction

    if convention not in (STRIP_LEFTMOST, STRIP_RIGHTMOST):
        raise PreconditionError(f"unknown convention {convention!r}")
    q2, w2 = premutate(q, w, k)
    n = 2 * (alg.default_truncation(w) + 2)
    outgoing = [a for a in q.arrows_from(k)]
    incoming = [b for b in q.arrows_into(k)]
    pairs = [(a, b) for a in outgoing for b in incoming]
    comp_map = {composite_name(a.id, b.id): (a.id, b.id) for a, b in pairs}
    shared = [c.id for c in q.arrows if k not in (c.tail, c.head)]
    stars_out = {a.id: star_name(a.id) for a in outgoing}
    stars_in = {b.id: star_name(b.id) for b in incoming}

    def d(quiver, pot, arrow):
        return cyclic_derivative(quiver, pot, arrow, n)

    def e(f, arrow):
        return edge_derivative(f, arrow, convention)

    checks: dict[str, IdentityCheck] = {}

    def record(identity, failures):
        checks[identity] = IdentityCheck(identity, not failures, failures)

    # (i) shared/shared combinations agree with the unmutated potential
    failures = []
    for g1 in shared:
        dw2 = d(q2, w2, g1)
        dw = d(q, w, g1)
        for g0 in shared:
            lhs = _expand_composites(q, e(dw2, g0), comp_map, n)
            rhs = e(dw, g0)
            if lhs != rhs:
                failures.append(f"(i) failed at ({g0}, {g1})")
    record("i", failures)

    # (ii) composite/shared combinations reduce to iterated derivatives of W
    failures = []
    for a, b in pairs:
        cid = composite_name(a.id, b.id)
        d_comp = d(q2, w2, cid)
        if convention == STRIP_RIGHTMOST:
            inner = edge_derivative(d(q, w, b.id), a.id, convention)
        else:
            inner = edge_derivative(d(q, w, a.id), b.id, convention)
        for g in shared:
            lhs = _expand_composites(q, e(d_comp, g), comp_map, n)
            if lhs != e(inner, g):
                failures.append(f"(ii<) failed at ({g}, {cid})")
        dg2 = {g: d(q2, w2, g) for g in shared}
        for g in shared:
            lhs = _expand_composites(q, e(dg2[g], cid), comp_map, n)
            if convention == STRIP_RIGHTMOST:
                rhs = e(e(d(q, w, g), b.id), a.id)
            else:
                rhs = e(e(d(q, w, g), a.id), b.id)
            if lhs != rhs:
                failures.append(f"(ii>) failed at ({cid}, {g})")
    record("ii", failures)

    # (iii)-(v) the three exact single-arrow identities
    fail3, fail4, fail5 = [], [], []
    for a, b in pairs:
        cid = composite_name(a.id, b.id)
        sa, sb = stars_out[a.id], stars_in[b.id]
        if e(d(q2, w2, sa), cid) != NCPoly.from_arrow(q2, sb, n):
            fail3.append(f"(iii) failed at pair ({a.id}, {b.id})")
        if e(d(q2, w2, cid), sb) != NCPoly.from_arrow(q2, sa, n):
            fail4.append(f"(iv) failed at pair ({a.id}, {b.id})")
        if e(d(q2, w2, sb), sa) != NCPoly.from_arrow(q2, cid, n):
            fail5.append(f"(v) failed at pair ({a.id}, {b.id})")
    record("iii", fail3)
    record("iv", fail4)
    record("v", fail5)

    # (vi) all remaining combinations vanish (composite/composite excluded)
    composites = set(comp_map)
    covered = set()
    for g0 in shared:
        for g1 in shared:
            covered.add((g0, g1))
        for cid in composites:
            covered.add((g0, cid))
            covered.add((cid, g0))
    for a, b in pairs:
        cid = composite_name(a.id, b.id)
        covered.add((cid, stars_out[a.id]))
        covered.add((stars_in[b.id], cid))
        covered.add((stars_out[a.id], stars_in[b.id]))
    failures = []
    all_ids = list(q2.arrow_ids)
    d_cache = {x: d(q2, w2, x) for x in all_ids}
    for outer in all_ids:
        for inner in all_ids:
            if (outer, inner) in covered:
                continue
            if outer in composites and inner in composites:
                continue
            if not e(d_cache[inner], outer).is_zero():
                failures.append(f"(vi) nonzero at ({outer}, {inner})")
    record("vi", failures)

    return IdentityReport(convention, checks)
