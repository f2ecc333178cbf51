"""Premutation and mutation of ice quivers with potential.

Mutation at a mutable vertex k (no loops or 2-cycles at k): add a composite
arrow [b,a] for every path a: u -> k, b: k -> w, reverse the arrows at k,
rewrite the potential through the composites and add the terms [b,a] a* b*,
then reduce.  Reversal names fold involutively, so a double mutation
reconstructs the original arrow names.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CyclicWord, Potential, require_valid_potential
from .errors import PreconditionError
from .quiver import Arrow, IceQuiver, canonical_form, composite_name, star_name
from .reduction import ReductionResult, is_irredundant, is_reduced, reduce_iqp


def premutate(q: IceQuiver, w: Potential, k: int) -> tuple[IceQuiver, Potential]:
    """Steps (i)-(iii) of mutation at k, before reduction."""
    q.require_valid()
    require_valid_potential(q, w)
    if not is_irredundant(q, w):
        raise PreconditionError("premutation requires an irredundant potential")
    if not q.mutability_check(k):
        raise PreconditionError(f"vertex {k} is not mutable (frozen, loop or 2-cycle)")

    incoming = q.arrows_into(k)
    outgoing = q.arrows_from(k)
    arrows: list[Arrow] = []
    for a in q.arrows:
        if a.head == k:
            arrows.append(Arrow(star_name(a.id), k, a.tail, False))
        elif a.tail == k:
            arrows.append(Arrow(star_name(a.id), a.head, k, False))
        else:
            arrows.append(a)
    composites = {}
    for a in incoming:
        for b in outgoing:
            cid = composite_name(b.id, a.id)
            composites[cid] = (b.id, a.id)
            arrows.append(Arrow(cid, a.tail, b.head, False))
    q2 = IceQuiver(q.vertices, arrows)
    q2.require_valid()

    # [W]: rewrite a representative with no term starting at k
    terms = {}
    if not w.is_zero():
        rep = w.as_ncpoly(q, w.max_degree(), avoid_start=k)
        for path, c in rep.terms.items():
            tup = list(path.arrows)
            out: list[str] = []
            j = 0
            while j < len(tup):
                if j + 1 < len(tup) and q.arrow(tup[j]).tail == k:
                    out.append(composite_name(tup[j], tup[j + 1]))
                    j += 2
                else:
                    out.append(tup[j])
                    j += 1
            word = CyclicWord(tuple(out))
            terms[word] = terms.get(word, Fraction(0)) + c
    w2 = Potential(terms)
    for a in incoming:
        for b in outgoing:
            word = CyclicWord((composite_name(b.id, a.id),
                               star_name(a.id), star_name(b.id)))
            w2 = w2 + Potential({word: Fraction(1)})
    require_valid_potential(q2, w2)
    return q2, w2


@dataclass
class MutationStep:
    vertex: int
    premutated_quiver: IceQuiver
    premutated_potential: Potential
    reduction: ReductionResult
    star_map: dict[str, str]

    @property
    def quiver(self) -> IceQuiver:
        return self.reduction.quiver

    @property
    def potential(self) -> Potential:
        return self.reduction.potential


def mutate(q: IceQuiver, w: Potential, k: int, n: int) -> MutationStep:
    """Full mutation at k: premutation followed by reduction at truncation n."""
    q2, w2 = premutate(q, w, k)
    red = reduce_iqp(q2, w2, n)
    star_map = {star_name(a.id): a.id for a in q.arrows_at(k)}
    return MutationStep(k, q2, w2, red, star_map)


@dataclass
class InvolutionReport:
    quiver_match: bool
    potential_match: bool
    dims_match: bool
    details: str = ""


def _canonical_potential(q: IceQuiver, w: Potential):
    _, _, arrow_map = canonical_form(q)
    return Potential({CyclicWord(tuple(arrow_map[a] for a in word.arrows)): c
                      for word, c in w.terms.items()})


def check_involution(q: IceQuiver, w: Potential, k: int, n: int) -> InvolutionReport:
    """Mutate twice at k and compare with the input.

    The double mutation is right equivalent to the input, so the canonical
    quivers and all truncated dimension matrices must agree; the potentials
    are compared after canonical relabelling and may legitimately differ.
    """
    from .jacobian import hom_dims, truncated_algebra

    if not is_reduced(q, w):
        raise PreconditionError("check_involution requires a reduced input")
    m1 = mutate(q, w, k, n)
    if not m1.quiver.mutability_check(k):
        raise PreconditionError(f"vertex {k} not mutable after first mutation")
    m2 = mutate(m1.quiver, m1.potential, k, n)
    q2, w2 = m2.quiver, m2.potential

    quiver_match = canonical_form(q2)[0] == canonical_form(q)[0]
    potential_match = False
    if quiver_match:
        potential_match = _canonical_potential(q, w) == _canonical_potential(q2, w2)

    dims_match = True
    detail = ""
    for m in range(0, max(0, n - 2) + 1):
        d_in = hom_dims(truncated_algebra(q, w, m))
        d_out = hom_dims(truncated_algebra(q2, w2, m))
        if d_in != d_out:
            dims_match = False
            detail = f"dimension matrices differ at truncation {m}"
            break
    return InvolutionReport(quiver_match, potential_match, dims_match, detail)


def fz_agreement(q: IceQuiver, w: Potential, k: int, n: int) -> bool:
    """Does the quiver of the mutation agree with extended FZ mutation of (Q,F)?"""
    step = mutate(q, w, k, n)
    return canonical_form(step.quiver)[0] == canonical_form(q.fz_mutate(k))[0]


@dataclass
class NondegeneracyReport:
    ok_to_depth: bool
    depth: int
    failing_sequence: list[int] | None = None


def nondegeneracy_search(q: IceQuiver, w: Potential, depth: int,
                         n: int) -> NondegeneracyReport:
    """Breadth-first search for a mutation sequence creating an unfrozen
    2-cycle, over sequences of length <= depth.

    Vertices failing the mutability check are skipped (they cannot be
    mutated); a 2-cycle blocking them is already reported at their parent.
    """
    if not is_reduced(q, w):
        raise PreconditionError("nondegeneracy_search requires a reduced input")
    queue = deque([(q, w, [])])
    while queue:
        cur_q, cur_w, seq = queue.popleft()
        if cur_q.unfrozen_two_cycles():
            return NondegeneracyReport(False, depth, seq)
        if len(seq) >= depth:
            continue
        for v in cur_q.mutable_vertices():
            if not cur_q.mutability_check(v):
                continue
            step = mutate(cur_q, cur_w, v, n)
            queue.append((step.quiver, step.potential, seq + [v]))
    return NondegeneracyReport(True, depth, None)
