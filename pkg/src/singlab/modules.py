"""Finitely presented modules, syzygies, minimal free resolutions and Tor.

Modules live over a polynomial ring ``S`` or a quotient ``S/J`` (usually a
hypersurface ``J = (W)``).  Everything is reduced to Gröbner computations in
free ``S``-modules: the relations of ``J`` are adjoined as ``j * e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import matrix as mx
from .errors import LiftFailedError, SupportNotFiniteError
from .groebner import (
    INFINITE,
    Elt,
    TermOrder,
    buchberger,
    buchberger_vectors,
    multivariate_divide,
    count_standard_monomials,
    reduce_full,
)
from .grading import find_weights
from .poly import Polynomial, Ring

Vector = Tuple[Polynomial, ...]


# ---------------------------------------------------------------------------
# conversions between polynomial vectors and engine term dicts


def to_terms(v: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for k, f in enumerate(v):
        for e, c in f.terms.items():
            out[(k + offset, e)] = c
    return out


def from_terms(t: dict, ring: Ring, rank: int, offset: int = 0) -> Vector:
    parts = [dict() for _ in range(rank)]
    for (k, e), c in t.items():
        parts[k - offset][e] = c
    return tuple(Polynomial(ring, d) for d in parts)


def _ideal_terms(J: Sequence[Polynomial], rank: int) -> List[dict]:
    return [{(k, e): c for e, c in j.terms.items()} for j in J if j for k in range(rank)]


class _Context:
    """Ring data shared by the Gröbner calls of one computation."""

    def __init__(self, ring: Ring, ideal: Sequence[Polynomial]):
        self.ring = ring
        self.to = TermOrder(ring.order, ring.characteristic, ring.field)
        self.ideal = tuple(j for j in ideal if j)
        self.ideal_gb = buchberger(list(self.ideal), ring).generators if self.ideal else ()
        self._gb_cache = {}

    def ideal_basis(self, rank: int) -> List[Elt]:
        if rank not in self._gb_cache:
            self._gb_cache[rank] = [
                Elt(t, self.to) for t in _ideal_terms(self.ideal_gb, rank)
            ]
        return self._gb_cache[rank]

    def ideal_vectors(self, rank: int) -> List[dict]:
        return _ideal_terms(self.ideal_gb, rank)

    def reduce_mod_ideal(self, t: dict, rank: int) -> dict:
        if not self.ideal_gb:
            return t
        return reduce_full(t, self.ideal_basis(rank), self.to)


def kernel_terms(ctx: _Context, gens: Sequence[dict], rank: int, target_rels: Sequence[dict]) -> List[dict]:
    """Generators of ``{a in S^m : sum a_k gens_k in span(target_rels)}``.

    Computed from a Gröbner basis of the augmented vectors ``(g_k, e_k)``
    under position-over-term with the target components dominant: the basis
    elements with vanishing target part form a Gröbner basis of the syzygy
    module.
    """
    zero = (0,) * ctx.ring.nvars
    vecs = []
    for k, g in enumerate(gens):
        v = dict(g)
        v[(rank + k, zero)] = ctx.ring.field.one
        vecs.append(v)
    vecs.extend(target_rels)
    basis = buchberger_vectors(vecs, ctx.to, product_criterion=False)
    out = []
    for v in basis:
        if min(k for k, _ in v) >= rank:
            out.append({(k - rank, e): c for (k, e), c in v.items()})
    return out


def _vector_degree(t: dict, weights, gdeg) -> Fraction:
    return max(sum(w * x for w, x in zip(weights, e)) + gdeg[k] for (k, e) in t)


def _is_homogeneous(t: dict, weights, gdeg) -> bool:
    return len({sum(w * x for w, x in zip(weights, e)) + gdeg[k] for (k, e) in t}) <= 1


def minimal_generators(ctx: _Context, vecs: Sequence[dict], rank: int, weights, gdeg) -> List[dict]:
    """Select generators in increasing degree, skipping any that lie in the
    span of those already kept (plus ``J``); minimal for graded input."""
    key = ctx.to.key
    cands = sorted(
        (v for v in vecs if v),
        key=lambda v: (_vector_degree(v, weights, gdeg), key(max(v, key=key))),
    )
    kept: List[dict] = []
    span = [e.terms for e in ctx.ideal_basis(rank)]
    basis = ctx.ideal_basis(rank)
    for v in cands:
        if reduce_full(v, basis, ctx.to):
            kept.append(v)
            span = buchberger_vectors(span + [v], ctx.to, product_criterion=False)
            basis = [Elt(t, ctx.to) for t in span]
    return kept


# ---------------------------------------------------------------------------
# modules and complexes


@dataclass(frozen=True)
class FpModule:
    """Cokernel of ``relations`` (each a vector over the ``ngens`` generators)
    over ``ring / (potential)``."""

    ring: Ring
    ngens: int
    relations: Tuple[Vector, ...]
    potential: Optional[Polynomial] = None
    degrees: Optional[Tuple] = None

    def __post_init__(self):
        rels = tuple(tuple(r) for r in self.relations)
        for r in rels:
            if len(r) != self.ngens:
                raise ValueError("relation length differs from generator count")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def cyclic(cls, ring: Ring, ideal: Sequence[Polynomial], potential=None) -> "FpModule":
        return cls(ring, 1, tuple((g,) for g in ideal), potential)

    @classmethod
    def free(cls, ring: Ring, rank: int = 1, potential=None) -> "FpModule":
        return cls(ring, rank, (), potential)

    @property
    def ideal(self) -> Tuple[Polynomial, ...]:
        return (self.potential,) if self.potential else ()

    def presentation_matrix(self):
        """Rows are relations."""
        return mx.make(self.relations)

    def pruned(self) -> "FpModule":
        """Drop generators killed by a relation with a nonzero constant entry."""
        rels = [list(r) for r in self.relations]
        alive = list(range(self.ngens))
        changed = True
        while changed:
            changed = False
            for ri, r in enumerate(rels):
                j = next((j for j in alive if r[j] and r[j].is_constant()), None)
                if j is None:
                    continue
                inv = self.ring.field.inv(r[j].constant_coefficient())
                # e_j = -inv * sum_{k != j} r_k e_k
                new = []
                for si, s in enumerate(rels):
                    if si == ri:
                        continue
                    if s[j]:
                        c = s[j] * inv
                        s = [sk - c * rk for sk, rk in zip(s, r)]
                    new.append(s)
                rels = new
                alive.remove(j)
                changed = True
                break
        rels = [tuple(r[j] for j in alive) for r in rels]
        rels = [r for r in rels if any(r)]
        degrees = tuple(self.degrees[j] for j in alive) if self.degrees else None
        return FpModule(self.ring, len(alive), tuple(rels), self.potential, degrees)

    def colength(self):
        """dim_k of the module (INFINITE if not Artinian)."""
        ctx = _Context(self.ring, self.ideal)
        vecs = [to_terms(r) for r in self.relations] + ctx.ideal_vectors(self.ngens)
        gb = buchberger_vectors(vecs, ctx.to, product_criterion=False)
        leads = [max(t, key=ctx.to.key) for t in gb]
        return count_standard_monomials(leads, self.ring.nvars, self.ngens)


@dataclass(frozen=True)
class FreeComplex:
    """Free modules ``F_0 <- F_1 <- ...`` over ``ring / ideal``.

    ``differentials[i-1]`` is ``d_i : F_i -> F_{i-1}``, an
    ``ranks[i-1] x ranks[i]`` matrix.
    """

    ring: Ring
    ranks: Tuple[int, ...]
    differentials: Tuple[mx.Matrix, ...]
    ideal: Tuple[Polynomial, ...] = ()
    minimized: bool = True

    def __post_init__(self):
        if len(self.differentials) != len(self.ranks) - 1:
            raise ValueError("need one differential per adjacent pair of ranks")
        for i, d in enumerate(self.differentials):
            rows, cols = len(d), (len(d[0]) if d else 0)
            if rows != self.ranks[i] or (rows and cols != self.ranks[i + 1]):
                raise ValueError(f"d_{i + 1} has shape {rows}x{cols}, expected "
                                 f"{self.ranks[i]}x{self.ranks[i + 1]}")

    @property
    def length(self) -> int:
        return len(self.differentials)

    def d(self, i: int) -> mx.Matrix:
        return self.differentials[i - 1]

    def squares_to_zero(self) -> bool:
        ctx = _Context(self.ring, self.ideal)
        for i in range(1, self.length):
            prod = mx.mul(self.d(i), self.d(i + 1), self.ring) if self.d(i) else ()
            for col in mx.columns(prod):
                if ctx.reduce_mod_ideal(to_terms(col), len(col)):
                    return False
        return True

    def map_entries(self, fn, ring: Ring, ideal=None) -> "FreeComplex":
        new_ideal = tuple(j for j in (ideal if ideal is not None else map(fn, self.ideal)) if j)
        return FreeComplex(
            ring,
            self.ranks,
            tuple(mx.apply(d, fn) for d in self.differentials),
            new_ideal,
            self.minimized,
        )

    def substitute(self, images: Sequence[Polynomial], ring: Ring) -> "FreeComplex":
        """Base change along the ring map ``var_i -> images[i]``."""
        return self.map_entries(lambda f: f.substitute(images, ring), ring)

    def with_ideal(self, extra: Sequence[Polynomial]) -> "FreeComplex":
        """Tensor with the cyclic module ``ring/(ideal + extra)``."""
        return FreeComplex(self.ring, self.ranks, self.differentials,
                           self.ideal + tuple(extra), self.minimized)


# ---------------------------------------------------------------------------
# operations


def syzygies(gens: Sequence[Vector], ring: Ring, ideal: Sequence[Polynomial] = ()) -> List[Vector]:
    """Generators of the relations ``sum a_i g_i = 0`` (modulo ``ideal``),
    entries reduced modulo ``ideal``."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return []
    rank = len(gens[0])
    ctx = _Context(ring, ideal)
    ker = kernel_terms(ctx, [to_terms(g) for g in gens], rank, ctx.ideal_vectors(rank))
    m = len(gens)
    out = []
    for t in ker:
        t = ctx.reduce_mod_ideal(t, m)
        if t:
            out.append(from_terms(t, ring, m))
    return out


def _grading(ring: Ring, ideal, weights):
    if weights is None:
        weights = None
        for j in ideal:
            weights = find_weights(j)
            break
        if weights is None:
            weights = (Fraction(1),) * ring.nvars
    return tuple(Fraction(w) for w in weights)


def free_resolution(M: FpModule, length: int, weights=None) -> FreeComplex:
    """Minimal free resolution of ``M`` up to homological degree ``length``.

    Minimality (no constant entries in the differentials) is guaranteed when
    the potential and the presentation are homogeneous for ``weights``
    (default: the quasi-homogeneous weights of the potential); otherwise the
    result is an irredundant resolution flagged ``minimized=False``.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    step = resolution_steps(M, weights)
    first = next(step)
    ranks = [first.ngens]
    diffs = []
    for _ in range(length):
        d = next(step, None)
        if d is None:
            break
        diffs.append(d)
        ranks.append(len(d[0]) if d else 0)
        if ranks[-1] == 0:
            diffs.pop()
            ranks.pop()
            break
    return FreeComplex(M.ring, tuple(ranks), tuple(diffs), first.ideal, first.minimized)


@dataclass
class _ResolutionStart:
    ngens: int
    ideal: tuple
    minimized: bool


def _mf_defect(ctx: _Context, prev: mx.Matrix, cur: mx.Matrix):
    """``H`` with ``prev * cur == W * H`` over ``S`` when both are square of
    equal size, ``H`` is constant and invertible, and ``J = (W)``; else None."""
    if len(ctx.ideal) != 1 or not prev or not cur:
        return None
    n = len(prev)
    if len(prev[0]) != n or len(cur) != n or len(cur[0]) != n:
        return None
    W = ctx.ideal[0]
    prod = mx.mul(prev, cur, ctx.ring)
    rows = []
    for row in prod:
        new = []
        for x in row:
            q, r = multivariate_divide(x, [W])
            if r:
                return None
            new.append(q[0])
        rows.append(tuple(new))
    H = tuple(rows)
    return H if mx.constant_inverse(H, ctx.ring) is not None else None


def _same_span(ctx: _Context, a: List[dict], b: List[dict], rank: int) -> bool:
    """span(a) + J == span(b) + J inside ``S^rank``."""
    for x, y in ((a, b), (b, a)):
        gb = buchberger_vectors(list(y) + ctx.ideal_vectors(rank), ctx.to, product_criterion=False)
        basis = [Elt(t, ctx.to) for t in gb]
        if any(reduce_full(t, basis, ctx.to) for t in x):
            return False
    return True


def resolution_steps(M: FpModule, weights=None):
    """Generator: yields a start record, then ``d_1, d_2, ...`` one at a time.

    Each differential comes from minimal generators of a Gröbner-computed
    kernel.  Once two consecutive square differentials satisfy
    ``d_i d_{i+1} = W H`` with ``H`` constant and invertible, the tail is a
    matrix factorization and the resolution continues with ``H^{-1} d_i``,
    then ``d_{i+1}``, and so on, so the differentials repeat exactly with
    period 2.  Every continuation step is checked against the Gröbner kernel.
    """
    ring = M.ring
    M = M.pruned()
    ctx = _Context(ring, M.ideal)
    w = _grading(ring, M.ideal, weights)
    gdeg = list(M.degrees) if M.degrees else [Fraction(0)] * M.ngens
    minimized = all(_is_homogeneous(to_terms((j,)), w, [0]) for j in ctx.ideal)
    rels = [ctx.reduce_mod_ideal(to_terms(r), M.ngens) for r in M.relations]
    rels = [r for r in rels if r]
    minimized = minimized and all(_is_homogeneous(r, w, gdeg) for r in rels)
    yield _ResolutionStart(M.ngens, ctx.ideal, minimized)
    rank = M.ngens
    cols = minimal_generators(ctx, rels, rank, w, gdeg)
    history: List[mx.Matrix] = []
    periodic = False
    while cols:
        d = mx.from_columns([from_terms(c, ring, rank) for c in cols], rank)
        history.append(d)
        yield d
        gdeg = [_vector_degree(c, w, gdeg) for c in cols]
        ker = kernel_terms(ctx, cols, rank, ctx.ideal_vectors(rank))
        rank = len(cols)
        ker = [t for t in (ctx.reduce_mod_ideal(t, rank) for t in ker) if t]
        if not periodic and len(history) >= 2:
            H = _mf_defect(ctx, history[-2], history[-1])
            if H is not None:
                periodic = True
                if not mx.is_identity(H):
                    history[-2] = mx.mul(mx.constant_inverse(H, ring), history[-2], ring)
        if periodic:
            nxt = history[-2]
            cand = _columns_terms(nxt)
            if not _same_span(ctx, cand, ker, rank):
                raise LiftFailedError("matrix factorization continuation does not span the kernel")
            cols = cand
        else:
            cols = minimal_generators(ctx, ker, rank, w, gdeg)


def _columns_terms(d: mx.Matrix):
    return [to_terms(c) for c in mx.columns(d)]


def _subquotient_dim(ctx: _Context, K: List[dict], D: List[dict], rank: int):
    """dim_k of ``(span K + span D) / span D`` inside ``S^rank``."""
    if not K:
        return 0
    rel = kernel_terms(ctx, K, rank, D)
    m = len(K)
    gb = buchberger_vectors(rel + ctx.ideal_vectors(m), ctx.to, product_criterion=False)
    leads = [max(t, key=ctx.to.key) for t in gb]
    return count_standard_monomials(leads, ctx.ring.nvars, m)


def _homology_dims(ctx, ranks, diffs, rels_at, degrees):
    """Homology of a complex of presented modules ``S^{ranks[i]} / rels_at(i)``
    with maps ``diffs[i-1]`` (over ``S``)."""
    out = []
    n = len(diffs)
    for i in degrees:
        r = ranks[i]
        if r == 0:
            out.append(0)
            continue
        if i == 0 or ranks[i - 1] == 0:
            zero = (0,) * ctx.ring.nvars
            K = [{(k, zero): ctx.ring.field.one} for k in range(r)]
        else:
            K = kernel_terms(ctx, _columns_terms(diffs[i - 1]), ranks[i - 1], rels_at(i - 1))
            K = [t for t in (ctx.reduce_mod_ideal(t, r) for t in K) if t]
        D = list(rels_at(i))
        if i < n:
            D += [t for t in _columns_terms(diffs[i]) if t]
        out.append(_subquotient_dim(ctx, K, D, r))
    return out


def complex_homology_dims(C: FreeComplex, artinian_support_required: bool = False, degrees=None):
    """``dim_k H_i`` for each ``i`` (INFINITE where not Artinian)."""
    ctx = _Context(C.ring, C.ideal)
    degrees = range(len(C.ranks)) if degrees is None else degrees
    dims = _homology_dims(
        ctx, C.ranks, C.differentials, lambda i: ctx.ideal_vectors(C.ranks[i]), degrees
    )
    if artinian_support_required and any(d == INFINITE for d in dims):
        bad = [i for i, d in zip(degrees, dims) if d == INFINITE]
        raise SupportNotFiniteError(f"homology not of finite length in degrees {bad}")
    return dims


def tensor_complex(C: FreeComplex, N: FpModule):
    """``C ⊗ N`` as (ranks, differentials, relation function) over ``S``."""
    e = N.ngens
    ring = C.ring
    ranks = tuple(r * e for r in C.ranks)
    diffs = tuple(mx.kron_identity(d, e, ring) for d in C.differentials)
    rel_terms = [to_terms(r) for r in N.relations]
    return ranks, diffs, rel_terms


def tor_dims(M: FpModule, N: FpModule, up_to: int, artinian_support_required: bool = False):
    """``dim_k Tor_i(M, N)`` for ``0 <= i <= up_to`` over ``ring/(potential)``."""
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    pot = M.potential if M.potential else N.potential
    if M.potential and N.potential and M.potential != N.potential:
        raise ValueError("modules over different quotient rings")
    M = FpModule(M.ring, M.ngens, M.relations, pot, M.degrees)
    C = free_resolution(M, up_to + 1)
    ranks = list(C.ranks) + [0] * (up_to + 2 - len(C.ranks))
    z = C.ring.zero()
    diffs = list(C.differentials)
    while len(diffs) < up_to + 1:
        i = len(diffs)
        diffs.append(tuple((z,) * ranks[i + 1] for _ in range(ranks[i])))
    C = FreeComplex(C.ring, tuple(ranks), tuple(diffs), C.ideal, C.minimized)
    return tensor_homology_dims(C, N, range(up_to + 1), artinian_support_required)


def tensor_homology_dims(C: FreeComplex, N: FpModule, degrees, artinian_support_required=False):
    """Homology of ``C ⊗ N`` in the given degrees."""
    ctx = _Context(C.ring, C.ideal + N.ideal)
    ranks, diffs, rel_terms = tensor_complex(C, N)
    e = N.ngens

    def rels_at(i):
        out = []
        for a in range(C.ranks[i]):
            for t in rel_terms:
                out.append({(a * e + k, x): c for (k, x), c in t.items()})
        return out + ctx.ideal_vectors(ranks[i])

    dims = _homology_dims(ctx, ranks, diffs, rels_at, list(degrees))
    if artinian_support_required and any(d == INFINITE for d in dims):
        raise SupportNotFiniteError("Tor not of finite length")
    return dims


def colon_ideal(I: Sequence[Polynomial], g: Polynomial, ring: Ring) -> List[Polynomial]:
    """Generators of ``(I : g)``."""
    syz = syzygies([(g,)] + [(h,) for h in I], ring)
    return [s[0] for s in syz if s[0]]
