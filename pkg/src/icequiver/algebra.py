"""Exact truncated arithmetic in complete path algebras.

Paths are written left to right and composed right to left: in the word
``(a_k, ..., a_1)`` the rightmost arrow ``a_1`` applies first, so the path
runs from ``tail(a_1)`` (its source) to ``head(a_k)`` (its target).  All
series are truncated at a degree bound N: paths of length > N are dropped
identically, so every value represents its class modulo J^(N+1).

Coefficients are exact rationals throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ValidationFailure
from .quiver import IceQuiver

Coeff = Fraction

STRIP_RIGHTMOST = "strip-rightmost"
STRIP_LEFTMOST = "strip-leftmost"


@dataclass(frozen=True)
class Path:
    """A path of the quiver: arrow ids in written order, plus endpoints.

    The endpoints are stored so that length-zero paths (the vertex
    idempotents e_v) fit the same type, with source == target == v.
    """

    arrows: tuple[str, ...]
    source: int
    target: int

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return "".join(self.arrows) if self.arrows else f"e{self.source}"


def idempotent(v: int) -> Path:
    return Path((), v, v)


def make_path(q: IceQuiver, arrows) -> Path:
    """Build a path from written arrow ids, checking composability."""
    arrows = tuple(arrows)
    if not arrows:
        raise PreconditionError("make_path needs at least one arrow; use idempotent(v)")
    objs = [q.arrow(a) for a in arrows]
    for left, right in zip(objs, objs[1:]):
        if left.tail != right.head:
            raise PreconditionError(
                f"non-composable pair ({left.id}, {right.id}): "
                f"tail({left.id})={left.tail} != head({right.id})={right.head}")
    return Path(arrows, objs[-1].tail, objs[0].head)


class NCPoly:
    """Element of K<<Q>> modulo J^(N+1): a finite map path -> rational."""

    __slots__ = ("quiver", "truncation", "terms")

    def __init__(self, quiver: IceQuiver, truncation: int, terms=None):
        self.quiver = quiver
        self.truncation = int(truncation)
        clean: dict[Path, Coeff] = {}
        if terms:
            for p, c in (terms.items() if isinstance(terms, dict) else terms):
                c = Fraction(c)
                if c == 0 or len(p) > self.truncation:
                    continue
                acc = clean.get(p, Fraction(0)) + c
                if acc == 0:
                    clean.pop(p, None)
                else:
                    clean[p] = acc
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, q: IceQuiver, n: int) -> "NCPoly":
        return cls(q, n)

    @classmethod
    def from_path(cls, q: IceQuiver, path: Path, n: int, coeff=1) -> "NCPoly":
        return cls(q, n, {path: Fraction(coeff)})

    @classmethod
    def from_arrow(cls, q: IceQuiver, arrow_id: str, n: int, coeff=1) -> "NCPoly":
        return cls(q, n, {make_path(q, (arrow_id,)): Fraction(coeff)})

    @classmethod
    def vertex(cls, q: IceQuiver, v: int, n: int) -> "NCPoly":
        q.vertex(v)
        return cls(q, n, {idempotent(v): Fraction(1)})

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self) -> int | None:
        return min((len(p) for p in self.terms), default=None)

    def max_degree(self) -> int | None:
        return max((len(p) for p in self.terms), default=None)

    def truncate(self, n: int) -> "NCPoly":
        return NCPoly(self.quiver, n, self.terms)

    def __eq__(self, other):
        return (isinstance(other, NCPoly) and self.terms == other.terms
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.truncation))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms, key=lambda p: (len(p), p.arrows, p.source)):
            bits.append(f"{self.terms[p]}*{p}")
        return " + ".join(bits)

    # -- linear arithmetic -------------------------------------------------

    def _check_compatible(self, other: "NCPoly"):
        if self.quiver is not other.quiver and self.quiver != other.quiver:
            raise PreconditionError("NCPoly operands over different quivers")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check_compatible(other)
        n = min(self.truncation, other.truncation)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return NCPoly(self.quiver, n, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.quiver, self.truncation,
                      {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        return NCPoly(self.quiver, self.truncation,
                      {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        return multiply(self, other, min(self.truncation, other.truncation))


def multiply(f: NCPoly, g: NCPoly, n: int | None = None) -> NCPoly:
    """Concatenation product f*g (g applies first), truncated at n."""
    f._check_compatible(g)
    if n is None:
        n = min(f.truncation, g.truncation)
    out: dict[Path, Coeff] = {}
    for p, cp in f.terms.items():
        for r, cr in g.terms.items():
            if p.source != r.target or len(p) + len(r) > n:
                continue
            prod = Path(p.arrows + r.arrows, r.source, p.target)
            acc = out.get(prod, Fraction(0)) + cp * cr
            if acc == 0:
                out.pop(prod, None)
            else:
                out[prod] = acc
    return NCPoly(f.quiver, n, out)


# -- cyclic words and potentials ----------------------------------------------


def canonical_rotation(word: tuple[str, ...]) -> tuple[str, ...]:
    """Lexicographically least rotation of the word."""
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class CyclicWord:
    """A cyclic path up to rotation, stored in canonical rotation."""

    arrows: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", canonical_rotation(tuple(self.arrows)))

    def __len__(self):
        return len(self.arrows)

    def rotations(self):
        w = self.arrows
        return [w[i:] + w[:i] for i in range(len(w))]

    def __str__(self):
        return "".join(self.arrows)


def cyclic_word(q: IceQuiver, arrows) -> CyclicWord:
    """Build a cyclic word, checking cyclic composability in q."""
    arrows = tuple(arrows)
    if not arrows:
        raise PreconditionError("cyclic words have length >= 1")
    p = make_path(q, arrows)
    if p.source != p.target:
        raise PreconditionError(
            f"word {arrows} is not cyclic: runs {p.source} -> {p.target}")
    return CyclicWord(arrows)


class Potential:
    """A finite rational combination of cyclic words, up to cyclic equivalence."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[CyclicWord, Coeff] = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                c = Fraction(c)
                if c == 0:
                    continue
                acc = clean.get(w, Fraction(0)) + c
                if acc == 0:
                    clean.pop(w, None)
                else:
                    clean[w] = acc
        self.terms = clean

    @classmethod
    def zero(cls) -> "Potential":
        return cls()

    @classmethod
    def single(cls, q: IceQuiver, arrows, coeff=1) -> "Potential":
        return cls({cyclic_word(q, arrows): Fraction(coeff)})

    @classmethod
    def of_words(cls, q: IceQuiver, *word_coeffs) -> "Potential":
        return cls({cyclic_word(q, w): Fraction(c) for w, c in word_coeffs})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: CyclicWord) -> Coeff:
        return self.terms.get(word, Fraction(0))

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def arrows_used(self) -> set[str]:
        used: set[str] = set()
        for w in self.terms:
            used.update(w.arrows)
        return used

    def occurrences(self, arrow_id: str) -> int:
        return sum(w.arrows.count(arrow_id) * 1 for w in self.terms)

    def truncate(self, n: int) -> "Potential":
        return Potential({w: c for w, c in self.terms.items() if len(w) <= n})

    def __add__(self, other: "Potential") -> "Potential":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return Potential(out)

    def __neg__(self) -> "Potential":
        return Potential({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Potential":
        c = Fraction(c)
        return Potential({w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Potential) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"{c}*{w}" for w, c in sorted(self.terms.items(),
                                              key=lambda t: (len(t[0]), t[0].arrows))]
        return " + ".join(bits)

    def as_ncpoly(self, q: IceQuiver, n: int,
                  avoid_start: int | None = None) -> NCPoly:
        """A linear representative: one path per word.

        With ``avoid_start`` set, each word is rotated so that it does not
        begin (rightmost arrow tail) at that vertex; among valid rotations
        the least is taken.  This is the representative choice used by
        premutation, and exists whenever no word is a power of loops at the
        vertex.
        """
        terms: dict[Path, Coeff] = {}
        for w, c in self.terms.items():
            rot = w.arrows
            if avoid_start is not None:
                valid = [r for r in CyclicWord(w.arrows).rotations()
                         if q.arrow(r[-1]).tail != avoid_start]
                if not valid:
                    raise PreconditionError(
                        f"every rotation of {w} begins at {avoid_start}")
                rot = min(valid)
            p = make_path(q, rot)
            terms[p] = terms.get(p, Fraction(0)) + c
        return NCPoly(q, n, terms)


def cyclify(f: NCPoly) -> Potential:
    """Project a series of closed paths onto cyclic words (the trace map).

    Raises if some term is not a closed path.
    """
    out: dict[CyclicWord, Coeff] = {}
    for p, c in f.terms.items():
        if p.source != p.target or len(p) == 0:
            raise PreconditionError(f"term {p} is not a nonempty cycle")
        w = CyclicWord(p.arrows)
        out[w] = out.get(w, Fraction(0)) + c
    return Potential(out)


def potential_validate(q: IceQuiver, w: Potential) -> list[str]:
    """Violations of the potential axioms on q (empty = valid)."""
    violations = []
    for word in w.terms:
        for a in word.arrows:
            if not q.has_arrow(a):
                violations.append(f"term {word}: arrow {a!r} not in quiver")
        if any(not q.has_arrow(a) for a in word.arrows):
            continue
        try:
            cyclic_word(q, word.arrows)
        except PreconditionError as e:
            violations.append(f"term {word}: {e}")
            continue
        if len(word) < 2:
            violations.append(f"term {word} has degree {len(word)} < 2")
        elif len(word) == 2 and any(
                q.arrow(a).tail == q.arrow(a).head for a in word.arrows):
            violations.append(f"loop term {word} of degree 2")
    return violations


def require_valid_potential(q: IceQuiver, w: Potential) -> None:
    violations = potential_validate(q, w)
    if violations:
        raise ValidationFailure(violations)


def default_truncation(w: Potential) -> int:
    """Default degree bound: max(4, 2*maxdeg(W) + 2)."""
    return max(4, 2 * w.max_degree() + 2)


# -- derivatives ----------------------------------------------------------


def cyclic_derivative(q: IceQuiver, w: Potential, arrow_id: str, n: int) -> NCPoly:
    """d_a W: sum over occurrences of a of the path cut open there.

    Supported on paths head(a) -> tail(a); independent of representatives.
    """
    q.arrow(arrow_id)
    acc: dict[Path, Coeff] = {}
    for word, c in w.terms.items():
        tup = word.arrows
        for j in range(len(tup)):
            if tup[j] != arrow_id:
                continue
            cut = tup[j + 1:] + tup[:j]
            if len(cut) > n:
                continue
            if cut:
                p = make_path(q, cut)
            else:
                p = idempotent(q.arrow(arrow_id).head)
            acc[p] = acc.get(p, Fraction(0)) + c
    return NCPoly(q, n, acc)


def edge_derivative(f: NCPoly, arrow_id: str, side: str = STRIP_LEFTMOST) -> NCPoly:
    """Strip one written factor from every path of f.

    ``strip-rightmost`` removes the first-applied factor when it equals the
    arrow; ``strip-leftmost`` removes the last-applied factor.  Both extend
    linearly and send non-matching paths to zero.
    """
    q = f.quiver
    arr = q.arrow(arrow_id)
    out: dict[Path, Coeff] = {}
    for p, c in f.terms.items():
        if not p.arrows:
            continue
        if side == STRIP_RIGHTMOST:
            if p.arrows[-1] != arrow_id:
                continue
            rest = p.arrows[:-1]
            new = Path(rest, arr.head, p.target) if rest else idempotent(arr.head)
        elif side == STRIP_LEFTMOST:
            if p.arrows[0] != arrow_id:
                continue
            rest = p.arrows[1:]
            new = Path(rest, p.source, arr.tail) if rest else idempotent(arr.tail)
        else:
            raise PreconditionError(f"unknown edge-derivative side {side!r}")
        out[new] = out.get(new, Fraction(0)) + c
    return NCPoly(q, f.truncation, out)


@dataclass(frozen=True)
class TensorTerm:
    """Summand coeff * (left ⊗ right) of a splitting Delta_a(f)."""

    coeff: Coeff
    left: Path
    right: Path


def delta(f: NCPoly, arrow_id: str) -> list[TensorTerm]:
    """Delta_a(f): split each path at each occurrence of a.

    For a path (w_0.. w_{m-1}) with w_j = a, the summand is
    (w_0..w_{j-1}) ⊗ (w_{j+1}..w_{m-1}).
    """
    q = f.quiver
    arr = q.arrow(arrow_id)
    out = []
    for p, c in f.terms.items():
        tup = p.arrows
        for j, a in enumerate(tup):
            if a != arrow_id:
                continue
            left = tup[:j]
            right = tup[j + 1:]
            lp = make_path(q, left) if left else idempotent(arr.head)
            rp = make_path(q, right) if right else idempotent(arr.tail)
            out.append(TensorTerm(c, lp, rp))
    out.sort(key=lambda t: (t.left.arrows, t.right.arrows, t.left.source, t.right.source))
    return out


def bullet(term: TensorTerm, g: NCPoly, n: int) -> NCPoly:
    """(u ⊗ v) • g = v g u, truncated at n."""
    q = g.quiver
    u = NCPoly.from_path(q, term.left, n, term.coeff)
    v = NCPoly.from_path(q, term.right, n)
    return multiply(multiply(v, g, n), u, n)


def bullet_sum(terms: list[TensorTerm], g: NCPoly, n: int) -> NCPoly:
    out = NCPoly.zero(g.quiver, n)
    for t in terms:
        out = out + bullet(t, g, n)
    return out


# -- substitutions ----------------------------------------------------------


class Substitution:
    """A vertex-fixing algebra map K<<Q>> -> K<<Q'>> given on arrows.

    ``images`` maps arrow ids of the source quiver to NCPoly over the target
    quiver; arrows absent from the map are sent to themselves when they exist
    in the target.  Endpoints must match: the image of a is supported on
    paths tail(a) -> head(a).
    """

    def __init__(self, source: IceQuiver, target: IceQuiver,
                 images: dict[str, NCPoly], truncation: int,
                 label: str = ""):
        self.source = source
        self.target = target
        self.truncation = int(truncation)
        self.label = label
        self.images: dict[str, NCPoly] = {}
        for a, img in images.items():
            arr = source.arrow(a)
            for p in img.terms:
                if p.source != arr.tail or p.target != arr.head:
                    raise PreconditionError(
                        f"image of {a!r} contains path {p} with endpoints "
                        f"{p.source}->{p.target}, expected {arr.tail}->{arr.head}")
            self.images[a] = img.truncate(self.truncation)

    @classmethod
    def identity(cls, q: IceQuiver, n: int) -> "Substitution":
        return cls(q, q, {}, n, label="id")

    def image_of(self, arrow_id: str) -> NCPoly:
        if arrow_id in self.images:
            return self.images[arrow_id]
        self.target.arrow(arrow_id)
        return NCPoly.from_arrow(self.target, arrow_id, self.truncation)

    def apply_path(self, p: Path, n: int) -> NCPoly:
        if not p.arrows:
            return NCPoly.vertex(self.target, p.source, n)
        acc = None
        for a in p.arrows:
            img = self.image_of(a)
            acc = img if acc is None else multiply(acc, img, n)
            if acc.is_zero():
                break
        return acc

    def apply(self, f: NCPoly, n: int | None = None) -> NCPoly:
        if n is None:
            n = min(f.truncation, self.truncation)
        out = NCPoly.zero(self.target, n)
        for p, c in f.terms.items():
            out = out + self.apply_path(p, n).scale(c)
        return out

    def apply_potential(self, w: Potential, n: int | None = None) -> Potential:
        """Substitute into any linear representative and re-cyclify."""
        if n is None:
            n = self.truncation
        rep = w.as_ncpoly(self.source, n)
        img = self.apply(rep, n)
        return cyclify(img) if not img.is_zero() else Potential.zero()

    def compose_after(self, first: "Substitution", n: int | None = None) -> "Substitution":
        """The substitution 'self ∘ first' (first applies to the input first)."""
        if n is None:
            n = min(self.truncation, first.truncation)
        images = {}
        for a in set(first.images) | set(self.images):
            if first.source.has_arrow(a):
                images[a] = self.apply(first.image_of(a), n)
        return Substitution(first.source, self.target, images, n,
                            label=f"{self.label}∘{first.label}")

    # -- right-equivalence certification ------------------------------------

    def certify_right_equivalence(self) -> list[str]:
        """Reasons this map fails to certify a right equivalence (empty = ok).

        Checks: same vertex sets with matching frozen flags, invertible
        linear part as an S-bimodule map, and frozen arrows mapping into the
        frozen arrow span (so K<<F>> maps onto K<<F'>>).
        """
        problems = []
        sv = {(v.id, v.frozen) for v in self.source.vertices}
        tv = {(v.id, v.frozen) for v in self.target.vertices}
        if sv != tv:
            problems.append("source and target vertex sets differ")
            return problems
        # frozen closure
        for a in self.source.arrows:
            if not a.frozen:
                continue
            img = self.image_of(a.id)
            for p in img.terms:
                if any(not self.target.arrow(x).frozen for x in p.arrows):
                    problems.append(
                        f"frozen arrow {a.id!r} maps onto non-frozen path {p}")
        # invertible linear part, blockwise over (tail, head) pairs.
        blocks: dict[tuple[int, int], tuple[list[str], list[str]]] = {}
        for a in self.source.arrows:
            blocks.setdefault((a.tail, a.head), ([], []))[0].append(a.id)
        for a in self.target.arrows:
            blocks.setdefault((a.tail, a.head), ([], []))[1].append(a.id)
        for (t, h), (rows, cols) in sorted(blocks.items()):
            if len(rows) != len(cols):
                problems.append(f"linear part not square on block {t}->{h}")
                continue
            mat = []
            for r in rows:
                img = self.image_of(r)
                mat.append([img.terms.get(Path((c,), t, h), Fraction(0)) for c in cols])
            if _det(mat) == 0:
                problems.append(f"linear part singular on block {t}->{h}")
        return problems

    def certifies_right_equivalence(self) -> bool:
        return not self.certify_right_equivalence()

    def __repr__(self):
        parts = ", ".join(f"{a} -> {img}" for a, img in sorted(self.images.items()))
        return f"Substitution({self.label or parts or 'id'})"


def _det(mat: list[list[Coeff]]) -> Coeff:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def substitute(sigma: Substitution, value, n: int | None = None):
    """Apply a substitution to an NCPoly or a Potential."""
    if isinstance(value, Potential):
        return sigma.apply_potential(value, n)
    return sigma.apply(value, n)


# -- path enumeration (shared by the linear-algebra layers) -----------------


def paths_up_to(q: IceQuiver, n: int) -> list[Path]:
    """All paths of length <= n, idempotents included, in (length, word) order."""
    out: list[Path] = [idempotent(v) for v in q.vertex_ids]
    frontier = out[:]
    for _length in range(1, n + 1):
        nxt = []
        for p in frontier:
            # extend on the left: new arrow applied after the path
            for a in q.arrows:
                if a.tail == p.target:
                    nxt.append(Path((a.id,) + p.arrows, p.source, a.head))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    out.sort(key=lambda p: (len(p), p.arrows, p.source))
    return out
