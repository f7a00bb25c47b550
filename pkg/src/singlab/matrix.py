"""Polynomial matrices as tuples of row tuples."""

from __future__ import annotations

from typing import Sequence, Tuple

from .poly import Polynomial, Ring, to_text

Matrix = Tuple[Tuple[Polynomial, ...], ...]


def make(rows: Sequence[Sequence[Polynomial]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(ring: Ring, nrows: int, ncols: int) -> Matrix:
    z = ring.zero()
    return tuple((z,) * ncols for _ in range(nrows))


def identity(ring: Ring, n: int, scale=None) -> Matrix:
    one = ring.one() if scale is None else scale
    z = ring.zero()
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def shape(m: Matrix, ncols: int = None):
    return len(m), (len(m[0]) if m else (ncols or 0))


def mul(a: Matrix, b: Matrix, ring: Ring) -> Matrix:
    n = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != n:
        raise ValueError(f"shape mismatch {len(a)}x{len(a[0])} * {n}x{cols}")
    z = ring.zero()
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = z
            for k in range(n):
                if row[k] and b[k][j]:
                    acc = acc + row[k] * b[k][j]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def columns(m: Matrix):
    return [tuple(r[j] for r in m) for j in range(len(m[0]) if m else 0)]


def from_columns(cols, nrows: int) -> Matrix:
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def block_diag(blocks, ring: Ring) -> Matrix:
    nr = sum(len(b) for b in blocks)
    nc = sum(len(b[0]) if b else 0 for b in blocks)
    z = ring.zero()
    out = [[z] * nc for _ in range(nr)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += len(b)
        c0 += len(b[0]) if b else 0
    return make(out)


def kron_identity(m: Matrix, k: int, ring: Ring) -> Matrix:
    """m ⊗ I_k with the identity index varying fastest."""
    z = ring.zero()
    rows = []
    for row in m:
        for a in range(k):
            rows.append(tuple(x if a == b else z for x in row for b in range(k)))
    return tuple(rows)


def apply(m: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(x) for x in row) for row in m)


def is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


def to_strings(m: Matrix):
    return [[to_text(x) for x in row] for row in m]


def constant_inverse(m: Matrix, ring: Ring):
    """Inverse of a matrix with constant entries, or ``None`` if some entry is
    non-constant or the matrix is singular."""
    if any(not x.is_constant() for row in m for x in row):
        return None
    F = ring.field
    n = len(m)
    a = [[x.constant_coefficient() for x in row] + [F.one if i == j else F.zero for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [F(x * inv) for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                fac = a[r][c]
                a[r] = [F(x - fac * y) for x, y in zip(a[r], a[c])]
    return tuple(tuple(ring.const(x) for x in row[n:]) for row in a)


def is_identity(m: Matrix) -> bool:
    return all(
        (x == 1) if i == j else not x for i, row in enumerate(m) for j, x in enumerate(row)
    )
