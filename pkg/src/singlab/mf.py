"""Matrix factorizations, Koszul dg-modules and their 2-periodic folds.

Conventions.  A matrix factorization ``(A, B)`` of ``W`` lives on a
Z/2-graded free module ``P0 + P1`` with ``A : P1 -> P0`` and ``B : P0 -> P1``,
``A B = W I`` and ``B A = W I``.  The stable tail of a resolution
``... -> F_2 -> F_1 -> F_0`` gives ``A = d_odd``, ``B = d_even`` so that
``P0 = F_even``.  The Koszul factorization of ``W = sum a_i b_i`` has
``P0`` = even exterior powers, with ``a`` acting by contraction and ``b`` by
wedge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import matrix as mx
from .errors import (
    InvariantViolation,
    LiftFailedError,
    StabilizationNotReachedError,
)
from .groebner import multivariate_divide
from .modules import FpModule, FreeComplex, _Context, _homology_dims, to_terms
from .poly import Polynomial, Ring, to_text


@dataclass(frozen=True)
class MatrixFactorization:
    potential: Polynomial
    A: mx.Matrix
    B: mx.Matrix

    @property
    def ring(self) -> Ring:
        return self.potential.ring

    @property
    def size(self) -> int:
        return len(self.A)

    def to_z2(self) -> "Z2Complex":
        """Even part ``P0``: ``d+ = B``, ``d- = A``."""
        n = self.size
        return Z2Complex(self.ring, n, n, self.B, self.A, self.potential)

    def map_entries(self, fn, ring: Ring, potential=None) -> "MatrixFactorization":
        pot = fn(self.potential) if potential is None else potential
        return MatrixFactorization(pot, mx.apply(self.A, fn), mx.apply(self.B, fn))

    def to_json(self) -> dict:
        return {
            "potential": to_text(self.potential),
            "A": mx.to_strings(self.A),
            "B": mx.to_strings(self.B),
        }

    @classmethod
    def from_json(cls, data, ring: Ring) -> "MatrixFactorization":
        if isinstance(data, str):
            data = json.loads(data)
        rows = lambda m: tuple(tuple(ring.parse(x) for x in r) for r in m)  # noqa: E731
        return cls(ring.parse(data["potential"]), rows(data["A"]), rows(data["B"]))


def verify_mf(mf: MatrixFactorization):
    """``(True, None)`` iff ``AB = BA = W I``; otherwise ``(False, witness)``
    with ``witness = ("AB" | "BA", row, col)`` for the first bad entry."""
    A, B, W = mf.A, mf.B, mf.potential
    n = len(A)
    for M in (A, B):
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError("matrix factorization needs square matrices of equal size")
    for label, prod in (("AB", mx.mul(A, B, mf.ring)), ("BA", mx.mul(B, A, mf.ring))):
        for i in range(n):
            for j in range(n):
                want = W if i == j else mf.ring.zero()
                if prod[i][j] != want:
                    return False, (label, i, j)
    return True, None


def _subsets(n: int, parity: int):
    return [s for k in range(parity, n + 1, 2) for s in combinations(range(n), k)]


def koszul_mf(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> MatrixFactorization:
    """Koszul factorization of ``W = sum a_i b_i`` of size ``2^(n-1)``.

    ``delta = sum a_i * contract(e_i) + b_i * wedge(e_i)`` on the exterior
    algebra; basis subsets ordered by size, then lexicographically.
    """
    if len(a) != len(b):
        raise ValueError("koszul_mf needs sequences of equal length")
    if not a:
        raise ValueError("koszul_mf needs at least one pair")
    ring = a[0].ring
    n = len(a)
    W = ring.zero()
    for x, y in zip(a, b):
        W = W + x * y
    even, odd = _subsets(n, 0), _subsets(n, 1)
    idx_even = {s: i for i, s in enumerate(even)}
    idx_odd = {s: i for i, s in enumerate(odd)}
    size = len(even)
    z = ring.zero()
    A = [[z] * size for _ in range(size)]
    B = [[z] * size for _ in range(size)]

    def act(src, tgt_index, M, coeffs, contract):
        for col, s in enumerate(src):
            for i in range(n):
                if contract == (i in s):
                    sign = -1 if sum(1 for j in s if j < i) % 2 else 1
                    t = tuple(j for j in s if j != i) if contract else tuple(sorted(s + (i,)))
                    row = tgt_index[t]
                    M[row][col] = M[row][col] + coeffs[i] * sign

    # A : odd -> even, B : even -> odd
    act(odd, idx_even, A, a, True)
    act(odd, idx_even, A, b, False)
    act(even, idx_odd, B, a, True)
    act(even, idx_odd, B, b, False)
    mf = MatrixFactorization(W, mx.make(A), mx.make(B))
    ok, witness = verify_mf(mf)
    assert ok, witness
    return mf


def divided_differences(f: Polynomial, ring: Ring) -> List[Polynomial]:
    """``g_0..g_n`` over the doubled ring ``ring = k[x_0..x_n, y_0..y_n]`` with
    ``f(x) - f(y) = sum (x_i - y_i) g_i``, by sequential substitution:
    ``g_i = (f(y_<i, x_i, x_>i) - f(y_<i, y_i, x_>i)) / (x_i - y_i)``."""
    n = f.ring.nvars
    if ring.nvars != 2 * n:
        raise ValueError("doubled ring must have twice the variables of f")
    out = []
    for i in range(n):
        acc: Dict[tuple, object] = {}
        p = ring.characteristic
        for e, c in f.terms.items():
            k = e[i]
            if k == 0:
                continue
            # monomial in slot i: (x_i^k - y_i^k)/(x_i - y_i) = sum x_i^a y_i^(k-1-a)
            base = [0] * (2 * n)
            for j in range(n):
                if j < i:
                    base[n + j] = e[j]
                elif j > i:
                    base[j] = e[j]
            for a_ in range(k):
                m = list(base)
                m[i] = a_
                m[n + i] = k - 1 - a_
                m = tuple(m)
                v = acc.get(m, 0) + c
                if p:
                    v %= p
                acc[m] = v
        out.append(ring.from_dict({m: c for m, c in acc.items() if c}))
    return out


def tail_index(C: FreeComplex) -> Optional[int]:
    """Smallest ``s`` with ``d_{s+2} == d_s`` and ``d_{s+3} == d_{s+1}``."""
    for s in range(1, C.length - 2):
        if C.d(s + 2) == C.d(s) and C.d(s + 3) == C.d(s + 1):
            return s
    return None


def stabilize_from_resolution(C: FreeComplex, potential: Polynomial = None) -> MatrixFactorization:
    """The repeating pair ``(d_odd, d_even)`` of a periodic resolution, lifted
    to ``S`` so that ``A B = B A = W I``."""
    W = potential if potential is not None else (C.ideal[0] if C.ideal else None)
    if C.length == 0 or all(r == 0 for r in C.ranks[1:]):
        W = W if W is not None else C.ring.zero()
        return MatrixFactorization(W, (), ())
    if W is None:
        raise ValueError("resolution is not over a hypersurface ring")
    s = tail_index(C)
    if s is None:
        raise StabilizationNotReachedError(
            f"no exact repetition d_(i+2) = d_i within {C.length} differentials"
        )
    odd = s if s % 2 else s + 1
    A, B = C.d(odd), C.d(odd + 1)
    n = len(A)
    if any(len(r) != n for r in A) or len(B) != n:
        raise LiftFailedError("periodic tail is not square")
    prod = mx.mul(A, B, C.ring)
    H = []
    for row in prod:
        new = []
        for x in row:
            q, r = multivariate_divide(x, [W])
            if r:
                raise LiftFailedError("tail product is not divisible by the potential")
            new.append(q[0])
        H.append(tuple(new))
    Hinv = mx.constant_inverse(tuple(H), C.ring)
    if Hinv is None:
        raise LiftFailedError("tail product is not W times a unit matrix")
    if not mx.is_identity(tuple(H)):
        B = mx.mul(B, Hinv, C.ring)
    mf = MatrixFactorization(W, A, B)
    ok, witness = verify_mf(mf)
    if not ok:
        raise LiftFailedError(f"lifted tail fails AB = BA = W I at {witness}")
    return mf


# ---------------------------------------------------------------------------
# Z/2-periodic complexes


@dataclass(frozen=True)
class Z2Complex:
    """``even --d_plus--> odd --d_minus--> even`` over ``ring / ideal``.

    With a nonzero ``potential`` both composites equal ``W I``; homology is
    only defined once the composites vanish in ``ring / ideal``.
    """

    ring: Ring
    even_rank: int
    odd_rank: int
    d_plus: mx.Matrix
    d_minus: mx.Matrix
    potential: Optional[Polynomial] = None
    ideal: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        if len(self.d_plus) != self.odd_rank or any(len(r) != self.even_rank for r in self.d_plus):
            raise ValueError("d_plus must be odd_rank x even_rank")
        if len(self.d_minus) != self.even_rank or any(
            len(r) != self.odd_rank for r in self.d_minus
        ):
            raise ValueError("d_minus must be even_rank x odd_rank")

    def shift(self) -> "Z2Complex":
        return Z2Complex(self.ring, self.odd_rank, self.even_rank, self.d_minus, self.d_plus,
                         self.potential, self.ideal)

    def composites_vanish(self, extra=()) -> bool:
        ctx = _Context(self.ring, self.ideal + tuple(extra))
        for a, b, n in ((self.d_minus, self.d_plus, self.even_rank),
                        (self.d_plus, self.d_minus, self.odd_rank)):
            if not a or not b:
                continue
            prod = mx.mul(a, b, self.ring)
            for col in mx.columns(prod):
                if ctx.reduce_mod_ideal(to_terms(col), n):
                    return False
        return True

    def map_entries(self, fn, ring: Ring, ideal=None) -> "Z2Complex":
        pot = fn(self.potential) if self.potential is not None else None
        new_ideal = tuple(j for j in (ideal if ideal is not None else map(fn, self.ideal)) if j)
        return Z2Complex(ring, self.even_rank, self.odd_rank, mx.apply(self.d_plus, fn),
                         mx.apply(self.d_minus, fn), pot, new_ideal)

    def substitute(self, images, ring: Ring) -> "Z2Complex":
        return self.map_entries(lambda f: f.substitute(images, ring), ring)

    def with_ideal(self, extra) -> "Z2Complex":
        return Z2Complex(self.ring, self.even_rank, self.odd_rank, self.d_plus, self.d_minus,
                         self.potential, self.ideal + tuple(extra))


def z2_homology(Z: Z2Complex, artinian_support_required: bool = False,
                coefficients: FpModule = None):
    """``(even_dim, odd_dim)`` of the homology, optionally with coefficients
    in a finitely presented module (the complex tensored with it)."""
    from .errors import SupportNotFiniteError
    from .groebner import INFINITE

    ideal = Z.ideal
    e = 1
    rel_terms: List[dict] = []
    dp, dm = Z.d_plus, Z.d_minus
    ev, od = Z.even_rank, Z.odd_rank
    if coefficients is not None:
        ideal = ideal + coefficients.ideal
        e = coefficients.ngens
        rel_terms = [to_terms(r) for r in coefficients.relations]
        dp = mx.kron_identity(dp, e, Z.ring) if dp else dp
        dm = mx.kron_identity(dm, e, Z.ring) if dm else dm
    if not Z.composites_vanish(ideal[len(Z.ideal):]):
        raise InvariantViolation("composites do not vanish; homology undefined")
    ctx = _Context(Z.ring, ideal)
    z = Z.ring.zero()

    def fill(m, rows, cols):
        return m if m else tuple((z,) * cols for _ in range(rows))

    ev_e, od_e = ev * e, od * e
    dp = fill(dp, od_e, ev_e)
    dm = fill(dm, ev_e, od_e)

    def rels_for(base_rank):
        def rels_at(i):
            r = base_rank[i]
            out = []
            for a in range(r):
                for t in rel_terms:
                    out.append({(a * e + k, x): c for (k, x), c in t.items()})
            return out + ctx.ideal_vectors(r * e)
        return rels_at

    # even homology: odd <-d+ even <-d- odd ; odd homology: even <-d- odd <-d+ even
    even_dim = _homology_dims(ctx, (od_e, ev_e, od_e), (dp, dm), rels_for((od, ev, od)), [1])[0]
    odd_dim = _homology_dims(ctx, (ev_e, od_e, ev_e), (dm, dp), rels_for((ev, od, ev)), [1])[0]
    if artinian_support_required and INFINITE in (even_dim, odd_dim):
        raise SupportNotFiniteError("2-periodic homology is not of finite length")
    return even_dim, odd_dim


# ---------------------------------------------------------------------------
# Koszul dg-modules and the fold


@dataclass(frozen=True)
class KoszulDgModule:
    """Bounded complex ``(M, d)`` (cohomological, ``d : M^j -> M^(j+1)``) with
    ``h : M^j -> M^(j-1)``, ``h^2 = 0`` and ``dh + hd = 0``.

    ``ranks`` maps degree to rank; ``d[j]`` and ``h[j]`` are the matrices out
    of degree ``j``.  Missing entries are zero maps.
    """

    ring: Ring
    ranks: Dict[int, int]
    d: Dict[int, mx.Matrix]
    h: Dict[int, mx.Matrix]
    ideal: Tuple[Polynomial, ...] = ()

    def __post_init__(self):
        ranks = {j: r for j, r in self.ranks.items() if r}
        object.__setattr__(self, "ranks", ranks)
        for j, m in self.d.items():
            self._check_shape(m, j, j + 1, "d")
        for j, m in self.h.items():
            self._check_shape(m, j, j - 1, "h")
        problem = self.violation()
        if problem:
            raise InvariantViolation(problem)

    def _check_shape(self, m, src, tgt, name):
        rs, rt = self.rank(src), self.rank(tgt)
        if rs == 0 or rt == 0:
            if not mx.is_zero(m):
                raise ValueError(f"{name} out of degree {src} must vanish")
            return
        if len(m) != rt or any(len(r) != rs for r in m):
            raise ValueError(f"{name} out of degree {src} must be {rt}x{rs}")

    def rank(self, j: int) -> int:
        return self.ranks.get(j, 0)

    def _map(self, which, j):
        m = (self.d if which == "d" else self.h).get(j)
        tgt = j + 1 if which == "d" else j - 1
        if m is None or self.rank(j) == 0 or self.rank(tgt) == 0:
            return None
        return m

    def violation(self) -> Optional[str]:
        ctx = _Context(self.ring, self.ideal)

        def compose(first, j, second):
            m1 = self._map(first, j)
            if m1 is None:
                return None
            mid = j + 1 if first == "d" else j - 1
            m2 = self._map(second, mid)
            if m2 is None:
                return None
            return mx.mul(m2, m1, self.ring)

        def nonzero(prod, rank):
            return prod is not None and any(
                ctx.reduce_mod_ideal(to_terms(c), rank) for c in mx.columns(prod)
            )

        for j in self.ranks:
            if nonzero(compose("d", j, "d"), self.rank(j + 2)):
                return f"d^2 != 0 out of degree {j}"
            if nonzero(compose("h", j, "h"), self.rank(j - 2)):
                return f"h^2 != 0 out of degree {j}"
            dh, hd = compose("h", j, "d"), compose("d", j, "h")
            if dh is None and hd is None:
                continue
            if dh is None:
                total = hd
            elif hd is None:
                total = dh
            else:
                total = tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(dh, hd))
            if nonzero(total, self.rank(j)):
                return f"dh + hd != 0 out of degree {j}"
        return None


def xi_fold(K: KoszulDgModule) -> Z2Complex:
    """Fold to ``even = sum M^(2i)``, ``odd = sum M^(2i+1)`` with total
    differential ``d + h`` (trivial line bundle)."""
    evens = sorted(j for j in K.ranks if j % 2 == 0)
    odds = sorted(j for j in K.ranks if j % 2)
    z = K.ring.zero()

    def offsets(degs):
        out, pos = {}, 0
        for j in degs:
            out[j] = pos
            pos += K.rank(j)
        return out, pos

    off_e, ne = offsets(evens)
    off_o, no = offsets(odds)

    def assemble(src_degs, src_off, ns, tgt_off, nt):
        M = [[z] * ns for _ in range(nt)]
        for j in src_degs:
            for which, tgt in (("d", j + 1), ("h", j - 1)):
                m = K._map(which, j)
                if m is None:
                    continue
                for r, row in enumerate(m):
                    for c, x in enumerate(row):
                        if x:
                            M[tgt_off[tgt] + r][src_off[j] + c] = (
                                M[tgt_off[tgt] + r][src_off[j] + c] + x
                            )
        return mx.make(M)

    d_plus = assemble(evens, off_e, ne, off_o, no)
    d_minus = assemble(odds, off_o, no, off_e, ne)
    return Z2Complex(K.ring, ne, no, d_plus, d_minus, None, K.ideal)


def koszul_dg_module(a: Sequence[Polynomial], b: Sequence[Polynomial], ring: Ring,
                     ideal=()) -> KoszulDgModule:
    """Koszul complex of ``a`` (exterior power ``j`` in degree ``-j``,
    ``d`` = contraction with ``a``) with ``h`` = wedge with ``b``.  A Koszul
    dg-module exactly when ``sum a_i b_i`` vanishes in ``ring/ideal``."""
    n = len(a)
    subsets = {k: list(combinations(range(n), k)) for k in range(n + 1)}
    index = {k: {s: i for i, s in enumerate(v)} for k, v in subsets.items()}
    z = ring.zero()
    ranks, d, h = {}, {}, {}
    for k in range(n + 1):
        ranks[-k] = len(subsets[k])
    for k in range(n + 1):
        src = subsets[k]
        if k >= 1:
            M = [[z] * len(src) for _ in subsets[k - 1]]
            for c, s in enumerate(src):
                for pos, i in enumerate(s):
                    if a[i]:
                        t = s[:pos] + s[pos + 1 :]
                        M[index[k - 1][t]][c] = M[index[k - 1][t]][c] + a[i] * (-1 if pos % 2 else 1)
            d[-k] = mx.make(M)
        if k < n:
            M = [[z] * len(src) for _ in subsets[k + 1]]
            for c, s in enumerate(src):
                for i in range(n):
                    if i in s or not b[i]:
                        continue
                    sign = -1 if sum(1 for j in s if j < i) % 2 else 1
                    t = tuple(sorted(s + (i,)))
                    M[index[k + 1][t]][c] = M[index[k + 1][t]][c] + b[i] * sign
            h[-k] = mx.make(M)
    return KoszulDgModule(ring, ranks, d, h, tuple(ideal))


def free_koszul_module(ring: Ring, blocks: Sequence[Tuple[int, int]], twists=None) -> KoszulDgModule:
    """Direct sum of shifted copies of the free Koszul algebra ``A + A[1]``.

    Block ``(degree, rank)`` places ``A^rank`` in ``degree`` and in
    ``degree - 1`` with ``h`` between them an invertible constant matrix
    (``twists[i]``, default identity) and ``d = 0``.
    """
    ranks: Dict[int, int] = {}
    placed = []
    for deg, r in blocks:
        top = ranks.get(deg, 0)
        ranks[deg] = top + r
        bottom = ranks.get(deg - 1, 0)
        ranks[deg - 1] = bottom + r
        placed.append((deg, r, top, bottom))
    z = ring.zero()
    h_full = {j: [[z] * ranks[j] for _ in range(ranks.get(j - 1, 0))] for j in ranks}
    for idx, (deg, r, top, bottom) in enumerate(placed):
        T = twists[idx] if twists else mx.identity(ring, r)
        for i in range(r):
            for j in range(r):
                h_full[deg][bottom + i][top + j] = T[i][j]
    h = {j: mx.make(m) for j, m in h_full.items() if m and m[0]}
    return KoszulDgModule(ring, ranks, {}, h)
