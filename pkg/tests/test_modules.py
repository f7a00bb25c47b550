from __future__ import annotations

import pytest

from conftest import R2
from singlab import matrix as mx
from singlab.groebner import INFINITE
from singlab.modules import (
    FpModule,
    FreeComplex,
    colon_ideal,
    complex_homology_dims,
    free_resolution,
    syzygies,
    tor_dims,
)
from singlab.poly import Ring

R1 = Ring(["x"])


def test_syzygy_of_two_variables():
    (s,) = syzygies([(R2("x"),), (R2("y"),)], R2)
    assert s == (R2("y"), R2("-x")) or s == (R2("-y"), R2("x"))


def test_syzygies_modulo_an_ideal():
    # over k[x]/(x^2) the annihilator of x is (x)
    (s,) = syzygies([(R1("x"),)], R1, [R1("x^2")])
    assert s == (R1("x"),)


def test_residue_field_over_dual_numbers_is_periodic():
    k = FpModule.cyclic(R1, [R1("x")], R1("x^2"))
    C = free_resolution(k, 5)
    assert C.ranks == (1, 1, 1, 1, 1, 1)
    assert all(C.d(i) == ((R1("x"),),) for i in range(1, 6))
    assert C.minimized and C.squares_to_zero()
    assert tor_dims(k, k, 4) == [1, 1, 1, 1, 1]


def test_koszul_resolution_of_residue_field():
    k = FpModule.cyclic(R2, [R2("x"), R2("y")])
    C = free_resolution(k, 4)
    assert C.ranks == (1, 2, 1)
    assert tor_dims(k, k, 3) == [1, 2, 1, 0]


def test_hypersurface_resolution_of_a_line():
    M = FpModule.cyclic(R2, [R2("x - y")], R2("x^2 - y^2"))
    C = free_resolution(M, 4)
    assert C.ranks == (1, 1, 1, 1, 1)
    assert C.d(1) == ((R2("x - y"),),)
    assert C.d(2) == ((R2("x + y"),),)
    assert C.d(3) == C.d(1) and C.d(4) == C.d(2)


def test_free_module_has_no_differentials():
    M = FpModule.free(R2, 2, R2("x*y"))
    C = free_resolution(M, 3)
    assert C.ranks == (2,) and C.length == 0


def test_pruning_drops_unit_relations():
    M = FpModule(R2, 2, [(R2("1"), R2("x")), (R2("0"), R2("y"))])
    P = M.pruned()
    assert P.ngens == 1
    assert P.colength() == INFINITE
    assert FpModule.cyclic(R2, [R2("x"), R2("y^3")]).colength() == 3


def test_homology_of_a_short_complex():
    # k[x] <-x- k[x]: H_0 = k, H_1 = 0
    C = FreeComplex(R1, (1, 1), (((R1("x"),),),))
    assert complex_homology_dims(C) == [1, 0]
    zero = FreeComplex(R1, (1, 1), (((R1("0"),),),))
    assert complex_homology_dims(zero) == [INFINITE, INFINITE]


def test_shape_is_validated():
    with pytest.raises(ValueError):
        FreeComplex(R1, (1, 2), (((R1("x"),),),))


def test_colon_ideal():
    # (x^2*y, x*y^2) : x*y = (x, y)
    I = [R2("x^2*y"), R2("x*y^2")]
    Q = colon_ideal(I, R2("x*y"), R2)
    k = FpModule.cyclic(R2, Q)
    assert k.colength() == 1


def test_matrix_helpers():
    a = mx.make([[R1("x"), R1("1")]])
    b = mx.make([[R1("1")], [R1("x")]])
    assert mx.mul(a, b, R1) == ((R1("2*x"),),)
    assert mx.constant_inverse(mx.make([[R1("2")]]), R1) == ((R1("1/2"),),)
    assert mx.constant_inverse(mx.make([[R1("x")]]), R1) is None
