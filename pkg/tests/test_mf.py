from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import R3, nonzero_polynomials, polynomials
from singlab import matrix as mx
from singlab.errors import InvariantViolation, StabilizationNotReachedError, SupportNotFiniteError
from singlab.mf import (
    KoszulDgModule,
    MatrixFactorization,
    Z2Complex,
    divided_differences,
    free_koszul_module,
    koszul_dg_module,
    koszul_mf,
    stabilize_from_resolution,
    verify_mf,
    xi_fold,
    z2_homology,
)
from singlab.modules import FpModule, free_resolution
from singlab.poly import Ring

R1 = Ring(["x"])
RXY = Ring(["x", "y"])


def one_by_one(p):
    return ((p,),)


# --- verify_mf ----------------------------------------------------------------


def test_verify_square_factorization():
    x = R1("x")
    assert verify_mf(MatrixFactorization(x * x, one_by_one(x), one_by_one(x))) == (True, None)


def test_verify_product_factorization():
    x, y = RXY("x"), RXY("y")
    assert verify_mf(MatrixFactorization(x * y, one_by_one(x), one_by_one(y)))[0]


def test_verify_reports_witness():
    x, y = RXY("x"), RXY("y")
    ok, witness = verify_mf(MatrixFactorization(x * x, one_by_one(x), one_by_one(y)))
    assert not ok and witness[1:] == (0, 0)


def test_verify_rejects_shape_mismatch():
    x = R1("x")
    with pytest.raises(ValueError):
        verify_mf(MatrixFactorization(x, one_by_one(x), mx.identity(R1, 2)))


def test_json_round_trip():
    mf = koszul_mf([RXY("x"), RXY("y")], [RXY("x"), RXY("y")])
    again = MatrixFactorization.from_json(mf.to_json(), RXY)
    assert again == mf


# --- koszul_mf ----------------------------------------------------------------


def test_rank_one_koszul():
    x = R1("x")
    mf = koszul_mf([x], [x])
    assert (mf.A, mf.B, mf.potential) == (one_by_one(x), one_by_one(x), x * x)


def test_two_variable_koszul_by_hand():
    x, y = RXY("x"), RXY("y")
    mf = koszul_mf([x, y], [x, y])
    assert mf.size == 2
    prod = mx.mul(mf.A, mf.B, RXY)
    assert prod == mx.identity(RXY, 2, RXY("x^2 + y^2"))


def test_three_variable_koszul():
    gens = R3.gens()
    mf = koszul_mf(gens, gens)
    assert mf.size == 4 and mf.potential == R3("x^2 + y^2 + z^2")
    assert verify_mf(mf)[0]


def test_koszul_length_mismatch():
    with pytest.raises(ValueError):
        koszul_mf([R1("x")], [])


@settings(max_examples=30)
@given(st.lists(st.tuples(polynomials(R3, max_terms=2, max_deg=2),
                          polynomials(R3, max_terms=2, max_deg=2)), min_size=1, max_size=3))
def test_koszul_mf_always_factorizes(pairs):
    a, b = zip(*pairs)
    assert verify_mf(koszul_mf(a, b))[0]


# --- divided differences -------------------------------------------------------


def test_cubic_divided_difference():
    D = Ring(["x", "y"])
    (g,) = divided_differences(R1("x^3"), D)
    assert g == D("x^2 + x*y + y^2")


def test_constant_has_zero_differences():
    D = Ring(["x0", "x1", "y0", "y1"])
    assert all(g.is_zero() for g in divided_differences(RXY("5"), D))


def test_two_variable_differences_remultiply():
    D = Ring(["x0", "x1", "y0", "y1"])
    f = RXY("x^2 + y^3")
    g0, g1 = divided_differences(f, D)
    assert g0 == D("x0 + y0")
    assert g1 == D("x1^2 + x1*y1 + y1^2")
    W = D("x0^2 + x1^3 - y0^2 - y1^3")
    assert D("x0 - y0") * g0 + D("x1 - y1") * g1 == W


@settings(max_examples=50)
@given(polynomials(R3, max_terms=5, max_deg=4))
def test_divided_differences_remultiply(f):
    D = Ring(["x0", "x1", "x2", "y0", "y1", "y2"])
    xs, ys = D.gens()[:3], D.gens()[3:]
    gs = divided_differences(f, D)
    total = D.zero()
    for xi, yi, g in zip(xs, ys, gs):
        total = total + (xi - yi) * g
    assert total == f.substitute(xs, D) - f.substitute(ys, D)


# --- stabilization -------------------------------------------------------------


def test_stabilize_residue_field_of_dual_numbers():
    k = FpModule.cyclic(R1, [R1("x")], R1("x^2"))
    mf = stabilize_from_resolution(free_resolution(k, 6))
    assert (mf.A, mf.B) == (one_by_one(R1("x")), one_by_one(R1("x")))


def test_stabilize_line_on_node():
    M = FpModule.cyclic(RXY, [RXY("x - y")], RXY("x^2 - y^2"))
    mf = stabilize_from_resolution(free_resolution(M, 6))
    assert {mf.A[0][0], mf.B[0][0]} == {RXY("x - y"), RXY("x + y")}
    assert verify_mf(mf)[0]


def test_stabilize_free_module_is_empty():
    M = FpModule.free(RXY, 1, RXY("x*y"))
    mf = stabilize_from_resolution(free_resolution(M, 4))
    assert mf.size == 0


def test_stabilize_needs_repetition():
    k = FpModule.cyclic(R1, [R1("x")], R1("x^2"))
    with pytest.raises(StabilizationNotReachedError):
        stabilize_from_resolution(free_resolution(k, 2))


# --- Z/2 complexes and the fold ----------------------------------------------


def test_node_tor_homology():
    x = R1("x")
    Z = Z2Complex(R1, 1, 1, one_by_one(R1.zero()), one_by_one(2 * x))
    assert z2_homology(Z) == (1, 0)


def test_zero_complex():
    assert z2_homology(Z2Complex(R1, 0, 0, (), ())) == (0, 0)


def test_homology_needs_vanishing_composites():
    x = R1("x")
    Z = Z2Complex(R1, 1, 1, one_by_one(x), one_by_one(x), x * x)
    with pytest.raises(InvariantViolation):
        z2_homology(Z)


def test_infinite_support_flag():
    Z = Z2Complex(R1, 1, 0, (), ((),))
    assert z2_homology(Z)[0] == float("inf")
    with pytest.raises(SupportNotFiniteError):
        z2_homology(Z, artinian_support_required=True)


def test_fold_of_single_free_module():
    K = KoszulDgModule(R1, {0: 1}, {}, {})
    Z = xi_fold(K)
    assert (Z.even_rank, Z.odd_rank) == (1, 0)


def test_fold_of_free_koszul_algebra_is_contractible():
    Z = xi_fold(free_koszul_module(R1, [(0, 1)]))
    assert (Z.even_rank, Z.odd_rank) == (1, 1)
    assert z2_homology(Z) == (0, 0)


def test_fold_agrees_with_resolution_of_the_node():
    # Koszul complex of x - y on k[x, y]/(x^2 - y^2), restricted to the diagonal
    D = RXY
    mf = stabilize_from_resolution(
        free_resolution(FpModule.cyclic(D, [D("x - y")], D("x^2 - y^2")), 6)
    )
    images = [R1("x"), R1("x")]
    via_tail = z2_homology(mf.to_z2().substitute(images, R1))
    K = koszul_dg_module([R1.zero()], [R1("2*x")], R1)
    assert z2_homology(xi_fold(K)) == via_tail == (0, 1)


def test_dg_invariants_are_enforced():
    x = R1("x")
    with pytest.raises(InvariantViolation):
        KoszulDgModule(R1, {0: 1, -1: 1}, {-1: one_by_one(x)}, {0: one_by_one(x)})
    with pytest.raises(InvariantViolation):
        koszul_dg_module([x], [x], R1)  # d h + h d = x^2, not 0


def _random_free_koszul(rng: random.Random, ring: Ring):
    blocks = [(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    twists = []
    for _, r in blocks:
        while True:
            T = mx.make([[ring.const(rng.randint(-2, 2)) for _ in range(r)] for _ in range(r)])
            if mx.constant_inverse(T, ring) is not None:
                twists.append(T)
                break
    return free_koszul_module(ring, blocks, twists)


@pytest.mark.parametrize("seed", range(8))
def test_random_free_koszul_modules_vanish(seed):
    rng = random.Random(seed)
    Z = xi_fold(_random_free_koszul(rng, RXY))
    assert z2_homology(Z) == (0, 0)


@settings(max_examples=30)
@given(nonzero_polynomials(R1, max_terms=2), st.booleans())
def test_shift_swaps_homology(p, flip):
    Z = Z2Complex(R1, 1, 1, one_by_one(R1.zero() if flip else p), one_by_one(p if flip else R1.zero()))
    e, o = z2_homology(Z)
    assert z2_homology(Z.shift()) == (o, e)
    assert Z.shift().shift() == Z
