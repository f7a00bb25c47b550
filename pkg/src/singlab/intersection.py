"""Affine model of the self fiber product and the localized intersection pairing.

For ``X = V(f - t)`` over ``k[[t]]`` the fiber product ``X x_S X`` is the
hypersurface ``k[x, y] / (f(x) - f(y))``.  The pairing of the diagonal with a
class ``E`` is read off the 2-periodic tail of the minimal resolution of the
diagonal, tensored with ``E``.

Parity.  The stable Tors of the diagonal against itself sit in homological
degrees congruent to the number ``N`` of variables of ``f``.  The report
aligns its even slot with ``Tor_{2m+N}`` (homological degree shifted by the
codimension of the diagonal), so ``even - odd`` equals the Milnor number for
an isolated singularity.  The unshifted difference ``Tor_even - Tor_odd`` is
kept as ``ks_degree``; it equals ``(-1)^N`` times the pairing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrix as mx
from .errors import (
    InvariantViolation,
    NotSLinearError,
    StabilizationNotReachedError,
)
from .groebner import INFINITE
from .mf import (
    MatrixFactorization,
    Z2Complex,
    divided_differences,
    koszul_mf,
    stabilize_from_resolution,
    tail_index,
    z2_homology,
)
from .modules import (
    FpModule,
    FreeComplex,
    colon_ideal,
    complex_homology_dims,
    resolution_steps,
    tensor_homology_dims,
)
from .orders import GREVLEX
from .poly import Polynomial, Ring, to_text


class DoubleRing:
    """``k[x_0..x_n, y_0..y_n] / (f(x) - f(y))`` for a source polynomial ``f``."""

    def __init__(self, f: Polynomial):
        if f.is_constant():
            raise ValueError("the source polynomial must be non-constant")
        self.f = f
        self.source = f.ring
        N = f.ring.nvars
        xs = [f"x{i}" for i in range(N)]
        ys = [f"y{i}" for i in range(N)]
        self.ring = Ring(xs + ys, f.ring.field, GREVLEX)
        self.base = Ring(xs, f.ring.field, GREVLEX)
        gens = self.ring.gens()
        self.x, self.y = gens[:N], gens[N:]
        self.W = self.embed_x(f) - self.embed_y(f)
        self._cache: Dict[str, object] = {}

    @property
    def nvars(self) -> int:
        return self.source.nvars

    @property
    def n(self) -> int:
        """Relative dimension ``#vars - 1``."""
        return self.nvars - 1

    def embed_x(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.x, self.ring)

    def embed_y(self, p: Polynomial) -> Polynomial:
        return p.substitute(self.y, self.ring)

    def to_base(self, p: Polynomial) -> Polynomial:
        """Source polynomial in the chart variables ``x_0..x_n``."""
        return p.substitute(self.base.gens(), self.base)

    def __repr__(self):
        return f"DoubleRing({to_text(self.f)})"


def build_double_ring(f: Polynomial) -> DoubleRing:
    return DoubleRing(f)


@dataclass(frozen=True)
class CorrespondenceClass:
    """A finitely presented module over the double ring.

    ``chart`` optionally records images of ``x_0..x_n, y_0..y_n`` in the base
    ring such that tensoring with the class is base change along that map
    (graph classes).  ``name`` is the text used in reports.
    """

    name: str
    module: FpModule
    chart: Optional[Tuple[Polynomial, ...]] = None


def diagonal_module(D: DoubleRing) -> CorrespondenceClass:
    rels = [a - b for a, b in zip(D.x, D.y)]
    M = FpModule.cyclic(D.ring, rels, D.W)
    base = D.base.gens()
    return CorrespondenceClass("diagonal", M, tuple(base + base))


def graph_module(D: DoubleRing, sigma: Sequence[Polynomial]) -> CorrespondenceClass:
    """``R / (y_i - sigma_i(x))``; ``sigma`` is given in the source ring."""
    sigma = list(sigma)
    if len(sigma) != D.nvars:
        raise ValueError(f"need {D.nvars} substitution images, got {len(sigma)}")
    src = D.source
    sigma = [s if isinstance(s, Polynomial) else src.parse(str(s)) for s in sigma]
    if any(s.ring != src for s in sigma):
        raise ValueError("substitution images must live in the source ring")
    if sigma == src.gens():
        return diagonal_module(D)
    if D.f.substitute(sigma, src) != D.f:
        raise NotSLinearError("f(sigma(x)) != f(x): not an endomorphism over the base")
    rels = [b - D.embed_x(s) for b, s in zip(D.y, sigma)]
    M = FpModule.cyclic(D.ring, rels, D.W)
    chart = tuple(D.base.gens()) + tuple(D.to_base(s) for s in sigma)
    name = "graph(" + ", ".join(to_text(s) for s in sigma) + ")"
    return CorrespondenceClass(name, M, chart)


def free_class(D: DoubleRing, rank: int = 1) -> CorrespondenceClass:
    return CorrespondenceClass(f"free({rank})", FpModule.free(D.ring, rank, D.W))


def cyclic_class(D: DoubleRing, ideal: Sequence[Polynomial], name: str = None) -> CorrespondenceClass:
    ideal = [g if isinstance(g, Polynomial) else D.ring.parse(str(g)) for g in ideal]
    if name is None:
        name = "cyclic(" + ", ".join(to_text(g) for g in ideal) + ")"
    return CorrespondenceClass(name, FpModule.cyclic(D.ring, ideal, D.W))


def short_exact_sequence(D: DoubleRing, ideal: Sequence[Polynomial], g: Polynomial):
    """``0 -> R/(I:g) --g--> R/I -> R/(I + g) -> 0`` as three classes."""
    ideal = list(ideal)
    sub = colon_ideal(ideal + [D.W], g, D.ring)
    return (
        cyclic_class(D, sub, "cyclic(" + ", ".join(to_text(h) for h in sub) + ")"),
        cyclic_class(D, ideal),
        cyclic_class(D, ideal + [g]),
    )


@dataclass(frozen=True)
class StableTorReport:
    f: str
    cls: str
    even: int
    odd: int
    pairing: int
    stabilization_index: int
    tor_dims: Tuple
    support_finite: bool = True
    ks_degree: int = 0
    literal: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.pairing != self.even - self.odd:
            raise InvariantViolation("pairing differs from even - odd")

    def to_dict(self) -> dict:
        return {
            "f": self.f,
            "class": self.cls,
            "pairing": self.pairing,
            "even": self.even,
            "odd": self.odd,
            "stabilization_index": self.stabilization_index,
            "tor_dims": [None if d == INFINITE else int(d) for d in self.tor_dims],
            "support_finite": self.support_finite,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, separators=(", ", ": "))


def stabilization_cap(D: DoubleRing) -> int:
    return 2 * D.nvars + 6


def diagonal_resolution(D: DoubleRing, cap: int = None):
    """Resolution of the diagonal computed until its tail repeats exactly.

    Returns ``(C, s)`` with ``s`` the stabilization index (smallest ``s`` with
    ``d_{s+2} = d_s`` and ``d_{s+3} = d_{s+1}``).  A finite resolution of
    length ``L`` has ``s = L + 1``.
    """
    cap = stabilization_cap(D) if cap is None else cap
    key = f"resolution:{cap}"
    if key in D._cache:
        return D._cache[key]
    M = diagonal_module(D).module
    steps = resolution_steps(M)
    start = next(steps)
    ranks = [start.ngens]
    diffs: List[mx.Matrix] = []
    s = None
    for d in steps:
        diffs.append(d)
        ranks.append(len(d[0]) if d else 0)
        C = FreeComplex(D.ring, tuple(ranks), tuple(diffs), start.ideal, start.minimized)
        s = tail_index(C)
        if s is not None:
            break
        if len(diffs) >= cap + 3:
            raise StabilizationNotReachedError(
                f"resolution of the diagonal did not repeat by index {cap}"
            )
    else:
        C = FreeComplex(D.ring, tuple(ranks), tuple(diffs), start.ideal, start.minimized)
        s = len(diffs) + 1
    if s > cap:
        raise StabilizationNotReachedError(f"stabilization index {s} exceeds cap {cap}")
    D._cache[key] = (C, s)
    return C, s


def _extended(C: FreeComplex, length: int, s: int) -> FreeComplex:
    """``C`` continued to ``length`` differentials: periodically once the
    tail repeats from ``s``, by zero maps past a finite resolution."""
    ranks = list(C.ranks)
    diffs = list(C.differentials)
    periodic = C.length >= s + 3
    while len(diffs) < length:
        i = len(diffs)
        if periodic:
            diffs.append(diffs[i - 2])
            ranks.append(ranks[i - 1])
        else:
            ranks.append(0)
            diffs.append(tuple(() for _ in range(ranks[i])))
    return FreeComplex(C.ring, tuple(ranks), tuple(diffs), C.ideal, C.minimized)


def _tail_mf(D: DoubleRing, C: FreeComplex, s: int) -> MatrixFactorization:
    if C.length < s + 3:
        return MatrixFactorization(D.W, (), ())
    return stabilize_from_resolution(C, D.W)


def diagonal_tail(D: DoubleRing) -> MatrixFactorization:
    """Matrix factorization carried by the periodic tail of the diagonal."""
    return _tail_mf(D, *diagonal_resolution(D))


def _restrict(D: DoubleRing, Z: Z2Complex, E: CorrespondenceClass):
    """``Z`` tensored with ``E``: base change when ``E`` has a chart."""
    if E.chart is not None:
        return Z.substitute(E.chart, D.base), None
    return Z, E.module


def tail_homology(D: DoubleRing, mf: MatrixFactorization, E: CorrespondenceClass):
    """Unshifted ``(dim Tor_even, dim Tor_odd)`` of a tail against ``E``."""
    if mf.size == 0:
        return 0, 0
    Z, coeffs = _restrict(D, mf.to_z2(), E)
    return z2_homology(Z, artinian_support_required=True, coefficients=coeffs)


def _tor_dims(D: DoubleRing, C: FreeComplex, s: int, E: CorrespondenceClass, upto: int):
    C = _extended(C, upto + 1, s)
    if E.chart is not None:
        R = C.substitute(E.chart, D.base)
        return complex_homology_dims(R, degrees=range(upto + 1))
    return tensor_homology_dims(C, E.module, range(upto + 1))


def _aligned(D: DoubleRing, literal):
    """Even slot aligned with ``Tor_{2m+N}``."""
    even, odd = literal
    return (odd, even) if D.nvars % 2 else (even, odd)


def ks_pairing(D: DoubleRing, E: CorrespondenceClass = None) -> StableTorReport:
    """Stable Tor report of the diagonal against ``E`` (default: the diagonal)."""
    E = diagonal_module(D) if E is None else E
    if E.module.ring != D.ring:
        raise ValueError("class is not a module over this double ring")
    C, s = diagonal_resolution(D)
    mf = _tail_mf(D, C, s)
    literal = tail_homology(D, mf, E)
    upto = s + 3
    dims = _tor_dims(D, C, s, E, upto)
    for n in (s + 2, s + 3):
        if dims[n] != dims[n - 2]:
            raise InvariantViolation(f"Tor_{n} and Tor_{n - 2} differ past stabilization")
    a, b = dims[s + 2], dims[s + 3]
    stable = (a, b) if s % 2 == 0 else (b, a)
    if stable != tuple(literal):
        raise InvariantViolation("periodic tail homology disagrees with the Tor sequence")
    even, odd = _aligned(D, literal)
    return StableTorReport(
        f=to_text(D.f),
        cls=E.name,
        even=even,
        odd=odd,
        pairing=even - odd,
        stabilization_index=s,
        tor_dims=tuple(dims),
        support_finite=True,
        ks_degree=literal[0] - literal[1],
        literal=tuple(literal),
    )


def diagonal_koszul_mf(D: DoubleRing) -> MatrixFactorization:
    """Koszul factorization of ``f(x) - f(y) = sum (x_i - y_i) g_i``."""
    g = divided_differences(D.f, D.ring)
    a = [xi - yi for xi, yi in zip(D.x, D.y)]
    return koszul_mf(a, g)


def koszul_route_homology(D: DoubleRing, E: CorrespondenceClass = None):
    """Unshifted ``(even, odd)`` via the divided-difference Koszul factorization."""
    E = diagonal_module(D) if E is None else E
    return tail_homology(D, diagonal_koszul_mf(D), E)


def koszul_pairing(D: DoubleRing, E: CorrespondenceClass = None) -> int:
    even, odd = _aligned(D, koszul_route_homology(D, E))
    return even - odd
