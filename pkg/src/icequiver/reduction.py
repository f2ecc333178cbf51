"""Splitting and reduction of ice quivers with potential.

The pipeline: discard terms supported on frozen arrows only (they generate
no relations), normalize the degree-2 part and clean up extra occurrences of
2-cycle arrows by an explicit chain of elementary right equivalences, then
split off the trivial part (unfrozen 2-cycles) and trade each half-frozen
2-cycle for a frozen arrow.  The output potential has no 2-cycle terms and
the frozen Jacobian algebra is unchanged up to isomorphism; the isomorphism
witness on deleted arrows is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (CyclicWord, NCPoly, Potential, Substitution,
                      cyclic_derivative, make_path, require_valid_potential,
                      substitute)
from .errors import PreconditionError
from .quiver import Arrow, IceQuiver


def split_irredundant(w: Potential, q: IceQuiver) -> tuple[Potential, Potential]:
    """Unique splitting W = W_irr + W_frozen by frozen-only support per term."""
    irr, froz = {}, {}
    for word, c in w.terms.items():
        if all(q.arrow(a).frozen for a in word.arrows):
            froz[word] = c
        else:
            irr[word] = c
    return Potential(irr), Potential(froz)


def is_irredundant(q: IceQuiver, w: Potential) -> bool:
    return split_irredundant(w, q)[1].is_zero()


def is_reduced(q: IceQuiver, w: Potential) -> bool:
    """Irredundant and with no 2-cycle terms (admissible Jacobian ideal)."""
    if not is_irredundant(q, w):
        return False
    return all(len(word) != 2 for word in w.terms)


@dataclass
class NeatPair:
    """A normalized 2-cycle term alpha*beta, alpha unfrozen."""

    alpha: str
    beta: str
    beta_frozen: bool

    def word(self) -> CyclicWord:
        return CyclicWord((self.alpha, self.beta))


@dataclass
class NeatNormalForm:
    potential: Potential
    substitution: Substitution           # composite right equivalence
    steps: list[Substitution]            # elementary factors, in application order
    pairs: list[NeatPair]                # unfrozen-partner pairs first
    m_split: int                         # number of pairs with beta unfrozen

    def trivial_pairs(self) -> list[NeatPair]:
        return self.pairs[: self.m_split]

    def half_frozen_pairs(self) -> list[NeatPair]:
        return self.pairs[self.m_split:]


def _two_cycle_entries(q: IceQuiver, w: Potential, consumed: set[str]):
    """Nonzero degree-2 coefficients as entries (r, c) with r: u->v, c: v->u."""
    entries = {}
    for word, coeff in w.terms.items():
        if len(word) != 2:
            continue
        x, y = word.arrows
        if x in consumed or y in consumed:
            continue
        ax, ay = q.arrow(x), q.arrow(y)
        # orient: r runs min->max vertex
        if (ax.tail, ax.head) <= (ay.tail, ay.head):
            r, c = x, y
        else:
            r, c = y, x
        entries[(r, c)] = coeff
    return entries


def _elementary(q: IceQuiver, n: int, arrow_id: str, image: NCPoly,
                label: str) -> Substitution:
    return Substitution(q, q, {arrow_id: image}, n, label=label)


def _quadratic_stage(q: IceQuiver, w: Potential, n: int):
    """Normalize the degree-2 part of W to a sum of disjoint 2-cycles with
    coefficient 1, by constrained linear changes of arrows.

    Frozen arrows may only absorb frozen arrows, which is always achievable:
    every nonzero 2-cycle coefficient involves an unfrozen arrow.
    """
    steps: list[Substitution] = []
    pairs: list[NeatPair] = []
    consumed: set[str] = set()
    w_cur = w

    def arrow_poly(a, coeff=1):
        return NCPoly.from_arrow(q, a, n, coeff)

    guard = 0
    while True:
        guard += 1
        if guard > 4 * (len(q.arrows) + 1):
            raise RuntimeError("quadratic normalization did not terminate")
        entries = _two_cycle_entries(q, w_cur, consumed)
        if not entries:
            break

        def col_ok(r, c):
            # clearing the column of c substitutes r -> r - sum(other rows)
            if not q.arrow(r).frozen:
                return True
            return all(q.arrow(r2).frozen
                       for (r2, c2) in entries if c2 == c and r2 != r)

        def row_ok(r, c):
            # clearing the row of r substitutes c -> c - sum(other columns)
            if not q.arrow(c).frozen:
                return True
            return all(q.arrow(c2).frozen
                       for (r2, c2) in entries if r2 == r and c2 != c)

        candidates = sorted(
            ((r, c) for (r, c) in entries if col_ok(r, c) and row_ok(r, c)),
            key=lambda rc: (CyclicWord((rc[0], rc[1])).arrows, rc))
        if not candidates:
            raise RuntimeError("no admissible pivot in quadratic normalization")
        r0, c0 = candidates[0]
        pivot_coeff = entries[(r0, c0)]

        # clear the column of c0: r0 absorbs the other row arrows
        col_terms = {r: c for (r, c2), c in entries.items()
                     if c2 == c0 and r != r0}
        if col_terms:
            image = arrow_poly(r0)
            for r, coeff in sorted(col_terms.items()):
                image = image - arrow_poly(r, coeff / pivot_coeff)
            step = _elementary(q, n, r0, image, f"colclear:{r0}")
            steps.append(step)
            w_cur = substitute(step, w_cur, n)
        # clear the row of r0: c0 absorbs the other column arrows
        entries = _two_cycle_entries(q, w_cur, consumed)
        row_terms = {c: v for (r, c), v in entries.items()
                     if r == r0 and c != c0}
        if row_terms:
            image = arrow_poly(c0)
            for c, coeff in sorted(row_terms.items()):
                image = image - arrow_poly(c, coeff / pivot_coeff)
            step = _elementary(q, n, c0, image, f"rowclear:{c0}")
            steps.append(step)
            w_cur = substitute(step, w_cur, n)
        # rescale the pivot coefficient to 1
        coeff = w_cur.coefficient(CyclicWord((r0, c0)))
        if coeff != 1:
            scaled = r0 if not q.arrow(r0).frozen else c0
            step = _elementary(q, n, scaled, arrow_poly(scaled, Fraction(1) / coeff),
                               f"rescale:{scaled}")
            steps.append(step)
            w_cur = substitute(step, w_cur, n)

        fr0, fc0 = q.arrow(r0).frozen, q.arrow(c0).frozen
        if fr0 and fc0:
            raise RuntimeError("all-frozen 2-cycle term in irredundant potential")
        if fc0:
            pair = NeatPair(r0, c0, True)
        elif fr0:
            pair = NeatPair(c0, r0, True)
        else:
            alpha, beta = sorted((r0, c0))
            pair = NeatPair(alpha, beta, False)
        pairs.append(pair)
        consumed.update((r0, c0))

    return w_cur, steps, pairs


def _single_occurrence_flank(q, w: Potential, arrow_id: str, pair_word: CyclicWord,
                             n: int, rotate_to_start: bool) -> NCPoly:
    """Sum over non-pair terms containing the arrow, one flank path per term.

    With ``rotate_to_start`` the chosen rotation starts (leftmost) with the
    arrow and the flank is the rest; otherwise the rotation ends with it.
    """
    acc: dict = {}
    for word, c in w.terms.items():
        if word == pair_word or arrow_id not in word.arrows:
            continue
        tup = word.arrows
        if rotate_to_start:
            rots = [tup[j:] + tup[:j] for j in range(len(tup)) if tup[j] == arrow_id]
            rot = min(rots)
            flank = rot[1:]
        else:
            rots = [tup[j + 1:] + tup[:j + 1] for j in range(len(tup))
                    if tup[j] == arrow_id]
            rot = min(rots)
            flank = rot[:-1]
        p = make_path(q, flank)
        acc[p] = acc.get(p, Fraction(0)) + c
    return NCPoly(q, n, acc)


def neat_normal_form(q: IceQuiver, w: Potential, n: int) -> NeatNormalForm:
    """Right-equivalent normal form for an irredundant potential.

    After normalization the degree-2 terms are exactly the pair terms
    alpha_i * beta_i with coefficient 1; each beta_i occurs once in the
    whole potential; for pairs with beta_i unfrozen, alpha_i also occurs
    once.  The returned substitution certifies the right equivalence at
    truncation n, and substituting it into the input reproduces the normal
    form up to cyclic equivalence.
    """
    q.require_valid()
    require_valid_potential(q, w)
    if not is_irredundant(q, w):
        raise PreconditionError("neat_normal_form requires an irredundant potential")

    w_cur, steps, pairs = _quadratic_stage(q, w.truncate(n), n)
    pairs.sort(key=lambda p: (p.beta_frozen, p.word().arrows))

    for sweep in range(n + 3):
        changed = False
        for pair in pairs:
            pw = pair.word()
            gamma = _single_occurrence_flank(q, w_cur, pair.beta, pw, n,
                                             rotate_to_start=False)
            if not gamma.is_zero():
                if gamma.min_degree() < 2:
                    raise RuntimeError("degree-2 junk after quadratic stage")
                alpha_arrow = NCPoly.from_arrow(q, pair.alpha, n)
                step = _elementary(q, n, pair.alpha, alpha_arrow - gamma,
                                   f"phi:{pair.alpha}")
                steps.append(step)
                w_cur = substitute(step, w_cur, n).truncate(n)
                changed = True
            if not pair.beta_frozen:
                delta = _single_occurrence_flank(q, w_cur, pair.alpha, pw, n,
                                                 rotate_to_start=True)
                if not delta.is_zero():
                    beta_arrow = NCPoly.from_arrow(q, pair.beta, n)
                    step = _elementary(q, n, pair.beta, beta_arrow - delta,
                                       f"psi:{pair.beta}")
                    steps.append(step)
                    w_cur = substitute(step, w_cur, n).truncate(n)
                    changed = True
        if not changed:
            break
    else:
        raise RuntimeError("neat normal form iteration did not converge")

    sigma = Substitution.identity(q, n)
    for step in steps:
        sigma = step.compose_after(sigma, n)

    m = sum(1 for p in pairs if not p.beta_frozen)
    return NeatNormalForm(w_cur, sigma, steps, pairs, m)


@dataclass
class ReductionResult:
    """Outcome of reducing an ice quiver with potential."""

    quiver: IceQuiver
    potential: Potential
    trivial_part: list[tuple[str, str]]
    frozen_deleted: list[tuple[str, NCPoly]]
    newly_frozen: list[str]
    equivalence_log: list[Substitution]
    substitution: Substitution
    redundant_discarded: Potential
    truncation: int


def reduce_iqp(q: IceQuiver, w: Potential, n: int) -> ReductionResult:
    """Reduce (q, W) at truncation n; the frozen Jacobian algebra is preserved.

    Unfrozen 2-cycle pairs are deleted outright (the trivial part); for each
    half-frozen pair the frozen arrow beta is deleted and its unfrozen
    partner alpha is frozen, with the isomorphism witness beta -> -d_alpha
    W_red recorded.  Terms that end up supported on frozen arrows only are
    discarded (they generate no relations).
    """
    q.require_valid()
    require_valid_potential(q, w)
    w_irr, w_frozen = split_irredundant(w, q)
    nf = neat_normal_form(q, w_irr, n)

    w_work = nf.potential
    for pair in nf.pairs:
        w_work = w_work - Potential({pair.word(): Fraction(1)})

    deleted = set()
    newly_frozen = []
    trivial = []
    for pair in nf.trivial_pairs():
        deleted.update((pair.alpha, pair.beta))
        trivial.append((pair.alpha, pair.beta))
    for pair in nf.half_frozen_pairs():
        deleted.add(pair.beta)
        newly_frozen.append(pair.alpha)

    leftovers = sorted(a for a in deleted if a in w_work.arrows_used())
    if leftovers:
        raise RuntimeError(f"deleted arrows still occur in the potential: {leftovers}")

    frozen_set = set(newly_frozen)
    new_arrows = []
    for a in q.arrows:
        if a.id in deleted:
            continue
        if a.id in frozen_set:
            new_arrows.append(Arrow(a.id, a.tail, a.head, True))
        else:
            new_arrows.append(a)
    q_red = IceQuiver(q.vertices, new_arrows)
    q_red.require_valid()

    # freezing alpha may strand terms on frozen arrows only; discard them too
    w_red, newly_redundant = split_irredundant(w_work, q_red)
    discarded = w_frozen + newly_redundant

    frozen_deleted = []
    for pair in nf.half_frozen_pairs():
        repl = -cyclic_derivative(q_red, w_red, pair.alpha, n)
        frozen_deleted.append((pair.beta, repl))

    assert is_reduced(q_red, w_red)
    return ReductionResult(
        quiver=q_red,
        potential=w_red,
        trivial_part=trivial,
        frozen_deleted=frozen_deleted,
        newly_frozen=newly_frozen,
        equivalence_log=list(nf.steps),
        substitution=nf.substitution,
        redundant_discarded=discarded,
        truncation=n,
    )
