"""Sparse exact Gaussian elimination over the rationals.

Rows are dicts mapping hashable keys (typically paths) to Fractions.  A
span keeps a fully reduced pivot table with deterministic pivot choice, so
ranks, normal forms and quotient bases are reproducible.
"""

from __future__ import annotations

from fractions import Fraction


class Rev:
    """Order-reversing wrapper, so 'max by key' can mean 'lexicographically least'."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return other.v < self.v

    def __le__(self, other):
        return other.v <= self.v

    def __eq__(self, other):
        return self.v == other.v

    def __hash__(self):
        return hash(self.v)


def path_pivot_key(p):
    """Pivot order for path-indexed rows: longest first, then least word.

    Every pivot has maximal length within its row, which makes pivot counts
    per degree compute dimensions of the degree filtration; among equal
    lengths the lexicographically smallest path is eliminated, so quotient
    bases keep the larger words.
    """
    return (len(p.arrows), Rev(p.arrows), Rev(p.source))


class GaussianSpan:
    """A subspace, stored as a fully reduced, pivot-normalized row table."""

    def __init__(self, pivot_key=path_pivot_key):
        self.pivot_key = pivot_key
        self.rows: dict = {}  # pivot -> row dict (pivot coefficient 1)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        """Normal form of row modulo the span."""
        out = {k: Fraction(c) for k, c in row.items() if c != 0}
        # iteratively eliminate any key that is a pivot
        again = True
        while again:
            again = False
            for key in sorted(out, key=self.pivot_key, reverse=True):
                if key in self.rows and out.get(key, 0) != 0:
                    coeff = out[key]
                    for k2, c2 in self.rows[key].items():
                        acc = out.get(k2, Fraction(0)) - coeff * c2
                        if acc == 0:
                            out.pop(k2, None)
                        else:
                            out[k2] = acc
                    again = True
                    break
        return out

    def insert(self, row: dict):
        """Reduce then insert; returns the new pivot key, or None if dependent."""
        red = self.reduce(row)
        if not red:
            return None
        pivot = max(red, key=self.pivot_key)
        inv = Fraction(1) / red[pivot]
        norm = {k: c * inv for k, c in red.items()}
        # keep the table fully reduced: clear the new pivot from older rows
        for old_pivot, old_row in self.rows.items():
            c = old_row.get(pivot)
            if c:
                for k2, c2 in norm.items():
                    acc = old_row.get(k2, Fraction(0)) - c * c2
                    if acc == 0:
                        old_row.pop(k2, None)
                    else:
                        old_row[k2] = acc
        self.rows[pivot] = norm
        return pivot

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def rank_of(rows, pivot_key=path_pivot_key) -> int:
    span = GaussianSpan(pivot_key)
    for r in rows:
        span.insert(r)
    return span.rank
