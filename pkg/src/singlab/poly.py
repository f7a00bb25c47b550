"""Sparse multivariate polynomials over Q or F_p.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
coefficients, tied to a :class:`Ring` that fixes variable names, the
coefficient field and the monomial order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .errors import RingMismatchError
from .field import QQ
from .orders import GREVLEX, MonomialOrder

Exponent = Tuple[int, ...]


class Ring:
    """Polynomial ring context: ``names``, coefficient ``field`` and ``order``."""

    __slots__ = ("names", "field", "order", "nvars", "_index")

    def __init__(self, names: Sequence[str], field=QQ, order: MonomialOrder = GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.field = field
        self.order = order
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def __repr__(self):
        return f"Ring({', '.join(self.names)}; {self.field!r}; {self.order.name()})"

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def index(self, name: str) -> int:
        return self._index[name]

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.names, self.field, order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c != 0 else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self._index[i]
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Exponent, c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {tuple(exps): c} if c != 0 else {})

    def from_dict(self, terms: Dict[Exponent, object]) -> "Polynomial":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c != 0:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial

        return parse_polynomial(text, self)

    __call__ = parse


def _add_into(acc: dict, terms: dict, scale, p: int) -> None:
    """acc += scale * terms (in place), dropping cancelled terms."""
    for e, c in terms.items():
        v = acc.get(e, 0) + scale * c
        if p:
            v %= p
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


class Polynomial:
    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: Ring, terms: Dict[Exponent, object]):
        self.ring = ring
        self.terms = terms
        self._lead = None
        self._hash = None

    # -- structure -------------------------------------------------------
    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def ord(self) -> int:
        """Lowest total degree of a term; -1 for the zero polynomial."""
        return min((sum(e) for e in self.terms), default=-1)

    def lead_exponent(self) -> Exponent:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.order.key)
        return self._lead

    def lead_coefficient(self):
        return self.terms[self.lead_exponent()]

    def lead_term(self) -> "Polynomial":
        e = self.lead_exponent()
        return Polynomial(self.ring, {e: self.terms[e]})

    def sorted_terms(self):
        """Terms in decreasing order for the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.lead_coefficient())

    def change_ring(self, ring: Ring) -> "Polynomial":
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count differs")
        if ring.field == self.ring.field:
            return Polynomial(ring, dict(self.terms))
        return ring.from_dict(self.terms)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, 1, self.ring.characteristic)
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.characteristic
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1, self.ring.characteristic)
        return Polynomial(self.ring, acc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if c == 0:
                return self.ring.zero()
            p = self.ring.characteristic
            return Polynomial(
                self.ring, {e: (v * c) % p if p else v * c for e, v in self.terms.items()}
            )
        other = self._check(other)
        p = self.ring.characteristic
        acc: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = acc.get(e, 0) + ca * cb
                if p:
                    v %= p
                acc[e] = v
        return Polynomial(self.ring, {e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise TypeError("polynomial division needs multivariate_divide")
            other = other.constant_coefficient()
        return self * self.ring.field.inv(self.ring.field(other))

    def mul_term(self, exps: Exponent, c) -> "Polynomial":
        p = self.ring.characteristic
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if p:
                w %= p
            if w:
                out[tuple(x + y for x, y in zip(e, exps))] = w
        return Polynomial(self.ring, out)

    # -- calculus and substitution ----------------------------------------
    def partial(self, var) -> "Polynomial":
        """Formal partial derivative; the exponent is read in the field, so
        characteristic p can kill terms."""
        i = self.ring.index(var) if isinstance(var, str) else var
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range for {self.ring.nvars} variables")
        p = self.ring.characteristic
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            v = c * k
            if p:
                v %= p
            if v:
                out[e[:i] + (k - 1,) + e[i + 1 :]] = v
        return Polynomial(self.ring, out)

    def substitute(self, images: Sequence["Polynomial"], ring: Ring = None) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (all in ``ring``)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if ring is None:
            ring = images[0].ring if images else self.ring
        powers = [dict() for _ in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc: dict = {}
        p = ring.characteristic
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            _add_into(acc, term.terms, 1, p)
        return Polynomial(ring, acc)

    def evaluate(self, point: Sequence):
        F = self.ring.field
        total = F.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * F(x) ** k
            total = total + v
        return F(total)

    # -- comparison and text ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Polynomial({to_text(self)!r})"


def _monomial_text(names, e) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts)


def to_text(f: Polynomial) -> str:
    """Canonical text form: terms in decreasing order, ``^`` for powers."""
    if not f.terms:
        return "0"
    names = f.ring.names
    out = []
    for i, (e, c) in enumerate(f.sorted_terms()):
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        mono = _monomial_text(names, e)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def polys(ring: Ring, texts: Iterable[str]):
    return [ring.parse(t) for t in texts]
