"""Milnor numbers, the Milnor-Orlik formula and the Deligne-Milnor report."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import NonIntegralResultError, NotQuasiHomogeneousError
from .grading import find_weights, is_quasi_homogeneous
from .groebner import INFINITE, buchberger, standard_basis
from .intersection import DoubleRing, ks_pairing
from .orders import GREVLEX, LOCAL
from .poly import Polynomial, to_text


class CharacteristicWarning(UserWarning):
    """Positive-characteristic anomaly (derivatives lost to ``p``)."""


def jacobian(f: Polynomial) -> List[Polynomial]:
    return [f.partial(i) for i in range(f.ring.nvars)]


def characteristic_warnings(f: Polynomial) -> List[str]:
    p = f.ring.characteristic
    if not p:
        return []
    out = []
    for e in sorted(f.terms):
        bad = [f.ring.names[i] for i, k in enumerate(e) if k and k % p == 0]
        if bad:
            out.append(
                f"CHAR_DEGENERATE: exponent of {', '.join(bad)} in a monomial of f "
                f"is divisible by {p}"
            )
    return out


def local_milnor_number(f: Polynomial):
    """Colength of the Jacobian ideal in the local ring at the origin."""
    ring = f.ring.with_order(LOCAL)
    J = [g.change_ring(ring) for g in jacobian(f)]
    return standard_basis(J, ring).colength()


def global_milnor_number(f: Polynomial):
    """Colength of the Jacobian ideal in the polynomial ring (all critical points)."""
    ring = f.ring.with_order(GREVLEX)
    J = [g.change_ring(ring) for g in jacobian(f)]
    return buchberger(J, ring).colength()


def milnor_number(f: Polynomial):
    """Local Milnor number at the origin, ``INFINITE`` for a non-isolated
    singularity.  Characteristic anomalies are reported as warnings."""
    for w in characteristic_warnings(f):
        warnings.warn(w, CharacteristicWarning, stacklevel=2)
    return local_milnor_number(f)


def milnor_orlik(f: Polynomial, weights: Sequence) -> int:
    """``prod (1/w_i - 1)`` for ``f`` quasi-homogeneous of weighted degree 1."""
    w = [Fraction(x) for x in weights]
    if len(w) != f.ring.nvars:
        raise ValueError(f"need {f.ring.nvars} weights, got {len(w)}")
    if any(x <= 0 for x in w) or not is_quasi_homogeneous(f, w):
        raise NotQuasiHomogeneousError("f is not quasi-homogeneous of degree 1 for these weights")
    out = Fraction(1)
    for x in w:
        out *= 1 / x - 1
    if out.denominator != 1:
        raise NonIntegralResultError(f"Milnor-Orlik product {out} is not an integer")
    return int(out)


@dataclass(frozen=True)
class DMReport:
    f: str
    n: int
    mu: object
    pairing: int
    milnor_orlik: Optional[int]
    verdict: bool
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "n": self.n,
            "mu": None if self.mu == INFINITE else int(self.mu),
            "pairing": self.pairing,
            "milnor_orlik": self.milnor_orlik,
            "verdict": self.verdict,
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def deligne_milnor_check(f: Polynomial, weights: Sequence = None) -> DMReport:
    """Compare the Milnor number with the self-pairing of the diagonal."""
    if f.is_constant():
        raise ValueError("the source polynomial must be non-constant")
    notes = characteristic_warnings(f)
    mu = local_milnor_number(f)
    if weights is None:
        weights = find_weights(f)
    if weights is None or not is_quasi_homogeneous(f, weights):
        total = global_milnor_number(f)
        if total != mu:
            notes.append(
                f"LOCAL_GLOBAL_MISMATCH: f is not quasi-homogeneous and has critical points "
                f"away from the origin (global Jacobian colength {_fmt(total)}, local {_fmt(mu)})"
            )
    report = ks_pairing(DoubleRing(f))
    mo = None
    if weights is not None and mu != INFINITE and f.ring.characteristic == 0:
        try:
            mo = milnor_orlik(f, weights)
        except (NotQuasiHomogeneousError, NonIntegralResultError):
            mo = None
    return DMReport(
        f=to_text(f),
        n=f.ring.nvars - 1,
        mu=mu,
        pairing=report.pairing,
        milnor_orlik=mo,
        verdict=mu == report.pairing,
        warnings=notes,
    )


def _fmt(v):
    return "infinite" if v == INFINITE else str(int(v))
