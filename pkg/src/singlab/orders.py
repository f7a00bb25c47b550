"""Monomial orders expressed as sort keys.

Every order maps an exponent tuple to a key; a larger key is a larger
monomial.  Global orders (lex, grevlex, weighted grevlex, elimination blocks)
make 1 the smallest monomial; the local order ``ds`` makes 1 the largest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional


def _lex_key(e):
    return e


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


def _ds_key(e):
    return (-sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    weights: Optional[tuple] = None
    split: Optional[int] = None
    inner: Optional["MonomialOrder"] = None
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == "lex":
            k = _lex_key
        elif self.kind == "grevlex":
            k = _grevlex_key
        elif self.kind == "wgrevlex":
            if not self.weights or any(Fraction(w) <= 0 for w in self.weights):
                raise ValueError("weighted grevlex needs positive weights")
            w = tuple(Fraction(x) for x in self.weights)
            object.__setattr__(self, "weights", w)

            def k(e, w=w):
                return (sum(a * b for a, b in zip(w, e)), tuple(-x for x in reversed(e)))

        elif self.kind == "ds":
            k = _ds_key
        elif self.kind == "block":
            if self.split is None or self.inner is None or not self.inner.is_global:
                raise ValueError("block order needs a split index and a global inner order")
            s, ik = self.split, self.inner.key

            def k(e, s=s, ik=ik):
                return (ik(e[:s]), ik(e[s:]))

        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "key", k)

    @property
    def is_global(self) -> bool:
        return self.kind != "ds"

    @property
    def is_local(self) -> bool:
        return self.kind == "ds"

    def name(self) -> str:
        if self.kind == "wgrevlex":
            return "wgrevlex(" + ",".join(str(w) for w in self.weights) + ")"
        if self.kind == "block":
            return f"block({self.split},{self.inner.name()})"
        if self.kind == "ds":
            return "local"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")
LOCAL = MonomialOrder("ds")


def weighted_grevlex(weights) -> MonomialOrder:
    return MonomialOrder("wgrevlex", weights=tuple(weights))


def elimination_order(split: int, inner: MonomialOrder = GREVLEX) -> MonomialOrder:
    """Block order eliminating the first ``split`` variables."""
    return MonomialOrder("block", split=split, inner=inner)


def order_from_spec(spec: str) -> MonomialOrder:
    spec = spec.strip().lower()
    if spec == "lex":
        return LEX
    if spec == "grevlex":
        return GREVLEX
    if spec in ("local", "ds"):
        return LOCAL
    raise ValueError(f"unknown order {spec!r}; expected lex, grevlex or local")
