"""Gröbner and standard bases.

The engine works on sparse vectors ``{(component, exponents): coefficient}``
under a position-over-term order, so the same code serves ideals (every term
in component 0) and submodules of free modules (see :mod:`singlab.modules`).
Global orders use Buchberger's algorithm with the product and chain criteria;
the local order uses Mora's tangent-cone normal form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import OrderError, RingMismatchError
from .orders import MonomialOrder
from .poly import Polynomial, Ring

INFINITE = float("inf")


# ---------------------------------------------------------------------------
# vector engine


class TermOrder:
    """Position-over-term order on ``(component, exponents)``; lower
    component index dominates.  Keys are memoised."""

    def __init__(self, order: MonomialOrder, characteristic: int, field):
        self.order = order
        self.p = characteristic
        self.field = field
        self._cache = {}
        mkey = order.key
        cache = self._cache

        def key(t):
            k = cache.get(t)
            if k is None:
                k = cache[t] = (-t[0], mkey(t[1]))
            return k

        self.key = key

    def inv(self, c):
        return self.field.inv(c)


class Elt:
    """Basis element: terms plus cached leading term data."""

    __slots__ = ("terms", "lt", "lc", "ecart")

    def __init__(self, terms: dict, to: TermOrder):
        self.terms = terms
        self.lt = max(terms, key=to.key)
        self.lc = terms[self.lt]
        self.ecart = max(sum(t[1]) for t in terms) - sum(self.lt[1])


def _divides(a, b) -> bool:
    return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))


def _lcm(a, b):
    return (a[0], tuple(x if x > y else y for x, y in zip(a[1], b[1])))


def _axpy(acc: dict, terms: dict, c, shift, p: int) -> None:
    """acc -= c * x^shift * terms, in place."""
    for (k, e), v in terms.items():
        t = (k, tuple(a + b for a, b in zip(e, shift)))
        w = acc.get(t, 0) - c * v
        if p:
            w %= p
        if w:
            acc[t] = w
        else:
            acc.pop(t, None)


def monic_terms(terms: dict, to: TermOrder) -> dict:
    if not terms:
        return terms
    lc = terms[max(terms, key=to.key)]
    if lc == 1:
        return terms
    inv = to.inv(lc)
    p = to.p
    return {t: (c * inv) % p if p else c * inv for t, c in terms.items()}


def reduce_full(terms: dict, basis: Sequence[Elt], to: TermOrder) -> dict:
    """Complete reduction (global orders): no term of the result is divisible
    by a leading term of ``basis``."""
    by_comp = {}
    for g in basis:
        by_comp.setdefault(g.lt[0], []).append(g)
    acc = dict(terms)
    rem = {}
    key, p = to.key, to.p
    while acc:
        t = max(acc, key=key)
        c = acc[t]
        for g in by_comp.get(t[0], ()):
            lt = g.lt[1]
            e = t[1]
            if all(x <= y for x, y in zip(lt, e)):
                shift = tuple(y - x for x, y in zip(lt, e))
                coef = c * to.inv(g.lc)
                if p:
                    coef %= p
                _axpy(acc, g.terms, coef, shift, p)
                break
        else:
            rem[t] = c
            del acc[t]
    return rem


def _spoly(f: Elt, g: Elt, to: TermOrder) -> dict:
    lcm = _lcm(f.lt, g.lt)
    sf = tuple(x - y for x, y in zip(lcm[1], f.lt[1]))
    sg = tuple(x - y for x, y in zip(lcm[1], g.lt[1]))
    p = to.p
    acc = {}
    cf = to.inv(f.lc)
    _axpy(acc, f.terms, -cf % p if p else -cf, sf, p)
    _axpy(acc, g.terms, to.inv(g.lc), sg, p)
    return acc


def _select_key(to, lcm, i, j):
    return (to.key(lcm), i, j)


def buchberger_vectors(vectors: Sequence[dict], to: TermOrder, product_criterion: bool) -> List[dict]:
    """Reduced Gröbner basis (global order) of the module spanned by ``vectors``.

    Pair selection is the normal strategy: smallest lcm first, ties broken by
    pair indices.  Output is monic, interreduced and sorted by leading term
    (ascending), hence bit-identical for equal inputs.
    """
    G: List[Elt] = []
    pending = set()
    heap = []

    def add(terms):
        g = Elt(monic_terms(terms, to), to)
        n = len(G)
        G.append(g)
        for i in range(n):
            if G[i].lt[0] != g.lt[0]:
                continue
            lcm = _lcm(G[i].lt, g.lt)
            pending.add((i, n))
            heapq.heappush(heap, (to.key(lcm), i, n, lcm))

    for v in vectors:
        r = reduce_full(v, G, to)
        if r:
            add(r)

    while heap:
        _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        gi, gj = G[i], G[j]
        if product_criterion and all(
            not (a and b) for a, b in zip(gi.lt[1], gj.lt[1])
        ):
            continue
        skip = False
        for k, gk in enumerate(G):
            if k == i or k == j or gk.lt[0] != lcm[0]:
                continue
            if all(x <= y for x, y in zip(gk.lt[1], lcm[1])):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        r = reduce_full(_spoly(gi, gj, to), G, to)
        if r:
            add(r)
    return interreduce(G, to)


def interreduce(G: Sequence[Elt], to: TermOrder) -> List[dict]:
    keep = []
    for idx, g in enumerate(G):
        if any(
            _divides(h.lt, g.lt) and (h.lt != g.lt or jdx < idx)
            for jdx, h in enumerate(G)
            if jdx != idx
        ):
            continue
        keep.append(g)
    out = []
    for g in keep:
        others = [h for h in keep if h is not g]
        lt = g.lt
        tail = dict(g.terms)
        del tail[lt]
        red = reduce_full(tail, others, to)
        red[lt] = g.lc
        out.append(monic_terms(red, to))
    out.sort(key=lambda t: to.key(max(t, key=to.key)))
    return out


def mora_reduce(terms: dict, basis: Sequence[Elt], to: TermOrder) -> dict:
    """Mora's weak normal form for local orders (ecart-driven)."""
    T = list(basis)
    h = dict(terms)
    p = to.p
    while h:
        h_elt = Elt(h, to)
        cands = [g for g in T if _divides(g.lt, h_elt.lt)]
        if not cands:
            return h
        g = min(cands, key=lambda e: e.ecart)
        if g.ecart > h_elt.ecart:
            T.append(h_elt)
        shift = tuple(y - x for x, y in zip(g.lt[1], h_elt.lt[1]))
        coef = h_elt.lc * to.inv(g.lc)
        if p:
            coef %= p
        h = dict(h)
        _axpy(h, g.terms, coef, shift, p)
    return h


def standard_basis_vectors(vectors: Sequence[dict], to: TermOrder) -> List[dict]:
    """Standard basis for a local order (Mora); minimal, monic, not tail-reduced."""
    G: List[Elt] = []
    heap = []

    def add(terms):
        g = Elt(monic_terms(terms, to), to)
        n = len(G)
        G.append(g)
        for i in range(n):
            if G[i].lt[0] == g.lt[0]:
                lcm = _lcm(G[i].lt, g.lt)
                heapq.heappush(heap, (to.key(lcm), i, n))

    for v in vectors:
        r = mora_reduce(v, G, to)
        if r:
            add(r)
    while heap:
        _, i, j = heapq.heappop(heap)
        r = mora_reduce(_spoly(G[i], G[j], to), G, to)
        if r:
            add(r)
    keep = []
    for idx, g in enumerate(G):
        if any(
            _divides(h.lt, g.lt) and (h.lt != g.lt or jdx < idx)
            for jdx, h in enumerate(G)
            if jdx != idx
        ):
            continue
        keep.append(g.terms)
    keep.sort(key=lambda t: to.key(max(t, key=to.key)))
    return keep


def count_standard_monomials(leads: Sequence[Tuple[int, tuple]], nvars: int, ncomp: int):
    """Number of (component, monomial) pairs outside the monomial submodule
    spanned by ``leads``; INFINITE when the quotient is not Artinian."""
    total = 0
    for comp in range(ncomp):
        mons = [e for (k, e) in leads if k == comp]
        std = standard_monomials(mons, nvars)
        if std is None:
            return INFINITE
        total += len(std)
    return total


def standard_monomials(leads: Sequence[tuple], nvars: int) -> Optional[List[tuple]]:
    """Monomials not divisible by any of ``leads``; ``None`` if infinitely many."""
    if nvars == 0:
        return [] if leads else [()]
    for i in range(nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in leads) and not any(
            sum(e) == 0 for e in leads
        ):
            return None
    if any(sum(e) == 0 for e in leads):
        return []
    out = []
    seen = {(0,) * nvars}
    stack = [(0,) * nvars]
    while stack:
        m = stack.pop()
        if any(all(x <= y for x, y in zip(e, m)) for e in leads):
            continue
        out.append(m)
        for i in range(nvars):
            n = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if n not in seen:
                seen.add(n)
                stack.append(n)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# ideal-level API


def _term_order(ring: Ring) -> TermOrder:
    return TermOrder(ring.order, ring.characteristic, ring.field)


def _vec(f: Polynomial) -> dict:
    return {(0, e): c for e, c in f.terms.items()}


def _poly(ring: Ring, v: dict) -> Polynomial:
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def _same_ring(polys, ring=None):
    for f in polys:
        if ring is None:
            ring = f.ring
        elif f.ring != ring:
            raise RingMismatchError(f"{f.ring!r} vs {ring!r}")
    return ring


@dataclass(frozen=True)
class Staircase:
    leading: Tuple[tuple, ...]
    standard: Optional[Tuple[tuple, ...]]

    @property
    def finite(self) -> bool:
        return self.standard is not None

    def size(self):
        return len(self.standard) if self.standard is not None else INFINITE


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Gröbner basis (global order) or minimal standard basis (local)."""

    ring: Ring
    generators: Tuple[Polynomial, ...]
    source: Tuple[Polynomial, ...] = field(default=(), compare=False)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def is_local(self) -> bool:
        return self.ring.order.is_local

    def leading_exponents(self):
        return tuple(g.lead_exponent() for g in self.generators)

    def staircase(self) -> Staircase:
        leads = self.leading_exponents()
        std = standard_monomials(leads, self.ring.nvars)
        return Staircase(leads, tuple(std) if std is not None else None)

    def colength(self):
        return self.staircase().size()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __contains__(self, f: Polynomial) -> bool:
        if self.is_local:
            return mora_normal_form(f, self.generators).is_zero()
        return normal_form(f, self).is_zero()


def buchberger(generators: Sequence[Polynomial], ring: Ring = None) -> GroebnerBasis:
    ring = _same_ring(generators, ring)
    if ring is None:
        raise ValueError("need a ring for an empty generator list")
    if not ring.order.is_global:
        raise OrderError("buchberger needs a global order; use standard_basis for local orders")
    to = _term_order(ring)
    vecs = [_vec(g) for g in generators if g]
    basis = buchberger_vectors(vecs, to, product_criterion=True)
    return GroebnerBasis(ring, tuple(_poly(ring, v) for v in basis), tuple(generators))


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.ring != gb.ring:
        raise RingMismatchError(f"{f.ring!r} vs {gb.ring!r}")
    if gb.is_local:
        return mora_normal_form(f, gb.generators)
    to = _term_order(gb.ring)
    basis = [Elt(_vec(g), to) for g in gb.generators]
    return _poly(f.ring, reduce_full(_vec(f), basis, to))


def multivariate_divide(f: Polynomial, divisors: Sequence[Polynomial]):
    """Division algorithm: returns ``(quotients, remainder)`` with
    ``f = sum(q_i * g_i) + r`` and no term of ``r`` divisible by any LT(g_i)."""
    ring = _same_ring([f, *divisors])
    if not ring.order.is_global:
        raise OrderError("multivariate_divide needs a global order; use mora_normal_form")
    key = ring.order.key
    F = ring.field
    p = ring.characteristic
    leads = [(g.lead_exponent(), g.lead_coefficient()) if g else None for g in divisors]
    quot = [dict() for _ in divisors]
    rem = {}
    acc = dict(f.terms)
    while acc:
        e = max(acc, key=key)
        c = acc[e]
        for i, lead in enumerate(leads):
            if lead is None:
                continue
            le, lc = lead
            if all(x <= y for x, y in zip(le, e)):
                shift = tuple(y - x for x, y in zip(le, e))
                coef = c * F.inv(lc)
                if p:
                    coef %= p
                quot[i][shift] = quot[i].get(shift, 0) + coef
                if p:
                    quot[i][shift] %= p
                for ge, gc in divisors[i].terms.items():
                    t = tuple(a + b for a, b in zip(ge, shift))
                    w = acc.get(t, 0) - coef * gc
                    if p:
                        w %= p
                    if w:
                        acc[t] = w
                    else:
                        acc.pop(t, None)
                break
        else:
            rem[e] = c
            del acc[e]
    qs = [Polynomial(ring, {e: c for e, c in q.items() if c}) for q in quot]
    return qs, Polynomial(ring, rem)


def standard_basis(generators: Sequence[Polynomial], ring: Ring = None) -> GroebnerBasis:
    ring = _same_ring(generators, ring)
    if ring is None:
        raise ValueError("need a ring for an empty generator list")
    if not ring.order.is_local:
        raise OrderError("standard_basis needs a local order; use buchberger for global orders")
    to = _term_order(ring)
    basis = standard_basis_vectors([_vec(g) for g in generators if g], to)
    return GroebnerBasis(ring, tuple(_poly(ring, v) for v in basis), tuple(generators))


def mora_normal_form(f: Polynomial, generators: Sequence[Polynomial]) -> Polynomial:
    """Weak normal form in the localization at the origin.  Exact membership
    needs ``generators`` to be a standard basis."""
    ring = _same_ring([f, *generators])
    if not ring.order.is_local:
        raise OrderError("mora_normal_form needs a local order")
    to = _term_order(ring)
    basis = [Elt(_vec(g), to) for g in generators if g]
    return _poly(ring, mora_reduce(_vec(f), basis, to))


def groebner(generators: Sequence[Polynomial], ring: Ring = None) -> GroebnerBasis:
    """Dispatch on the order: Buchberger for global, Mora for local."""
    ring = _same_ring(generators, ring)
    if ring.order.is_local:
        return standard_basis(generators, ring)
    return buchberger(generators, ring)


def colength(basis: GroebnerBasis, nvars: int = None):
    """dim_k of the quotient (global or local per the basis order); INFINITE
    if not Artinian."""
    if nvars is not None and nvars != basis.ring.nvars:
        raise ValueError("variable count does not match the basis ring")
    return basis.colength()


def ideal_colength(generators: Sequence[Polynomial], ring: Ring = None):
    return groebner(generators, ring).colength()


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    ring = gb.ring
    to = _term_order(ring)
    elts = [Elt(_vec(g), to) for g in gb.generators]
    reducer = (lambda v: mora_reduce(v, elts, to)) if ring.order.is_local else (
        lambda v: reduce_full(v, elts, to)
    )
    for i in range(len(elts)):
        for j in range(i + 1, len(elts)):
            if reducer(_spoly(elts[i], elts[j], to)):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    gens = gb.generators
    for i, g in enumerate(gens):
        if g.lead_coefficient() != 1:
            return False
        for j, h in enumerate(gens):
            if i != j and any(
                all(a <= b for a, b in zip(h.lead_exponent(), e)) for e in g.terms
            ):
                return False
    return True
