"""Quasi-homogeneous weights."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .poly import Polynomial

_FREE_VALUES = [Fraction(1, d) for d in range(2, 13)] + [Fraction(2, 3), Fraction(3, 4)]


def is_quasi_homogeneous(f: Polynomial, weights) -> bool:
    """Every monomial of ``f`` has weighted degree exactly 1."""
    w = [Fraction(x) for x in weights]
    return bool(f.terms) and all(sum(a * b for a, b in zip(w, e)) == 1 for e in f.terms)


def find_weights(f: Polynomial) -> Optional[Tuple[Fraction, ...]]:
    """Positive weights making ``f`` quasi-homogeneous of degree 1.

    Solves ``<w, e> = 1`` over the monomials of ``f`` by exact elimination.
    Variables left free are set to one common value, tried from a short list,
    until every weight is positive.  Variables absent from ``f`` are free.
    Returns ``None`` when no positive solution is found.
    """
    n = f.ring.nvars
    rows = [[Fraction(x) for x in e] + [Fraction(1)] for e in f.terms]
    if not rows:
        return None
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fac = rows[i][c]
                rows[i] = [a - fac * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in rows):
        return None
    free = [c for c in range(n) if c not in pivots]
    for t in _FREE_VALUES if free else [None]:
        w = [Fraction(0)] * n
        for c in free:
            w[c] = t
        for i, c in enumerate(pivots):
            w[c] = rows[i][n] - sum(rows[i][k] * w[k] for k in free)
        if all(x > 0 for x in w):
            return tuple(w)
    return None
