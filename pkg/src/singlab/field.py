"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    """Q with :class:`fractions.Fraction` elements (always in lowest terms)."""

    characteristic = 0

    def __call__(self, value):
        if isinstance(value, str):
            return Fraction(value)
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def fmt(self, c) -> str:
        return str(c)

    def spec(self) -> str:
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p with elements stored as ints in ``[0, p)``."""

    def __init__(self, p: int = 32003):
        if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"characteristic must be an odd prime, got {p}")
        self.characteristic = p

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, a):
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def fmt(self, c) -> str:
        return str(c)

    def spec(self) -> str:
        return f"fp:{self.characteristic}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Fp", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = RationalField()


def GF(p: int = 32003) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str):
    """Parse ``q`` or ``fp:<prime>`` (the CLI ``--field`` syntax)."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    if spec == "fp":
        return PrimeField()
    raise ValueError(f"unknown field spec {spec!r}; expected 'q' or 'fp:<prime>'")
