from __future__ import annotations

import pytest

from singlab.errors import InvariantViolation, NotSLinearError, SupportNotFiniteError
from singlab.groebner import ideal_colength
from singlab.intersection import (
    DoubleRing,
    StableTorReport,
    build_double_ring,
    cyclic_class,
    diagonal_module,
    diagonal_tail,
    free_class,
    graph_module,
    koszul_pairing,
    koszul_route_homology,
    ks_pairing,
    short_exact_sequence,
    stabilization_cap,
    tail_homology,
)
from singlab.parser import infer_ring
from singlab.poly import Ring, to_text


def double(text: str) -> DoubleRing:
    return build_double_ring(infer_ring(text)(text))


def jacobian_colength(text: str) -> int:
    # oracle: global Jacobian colength (local = global for these inputs)
    R = infer_ring(text)
    f = R(text)
    return ideal_colength([f.partial(i) for i in range(R.nvars)], R)


# --- double ring and classes ---------------------------------------------------


def test_double_ring_of_node():
    D = double("x^2")
    assert D.ring.names == ("x0", "y0")
    assert D.W == D.ring("x0^2 - y0^2")


def test_double_ring_two_variables():
    D = double("x^3 + y^3")
    assert D.ring.names == ("x0", "x1", "y0", "y1")
    assert D.W == D.ring("x0^3 + x1^3 - y0^3 - y1^3")


def test_double_ring_invariants():
    D = double("x^2*y + y^3")
    on_diagonal = D.W.substitute(D.x + D.x, D.ring)
    assert on_diagonal.is_zero()


def test_constant_is_rejected():
    with pytest.raises(ValueError):
        DoubleRing(Ring(["x"])("3"))


def test_diagonal_presentation():
    D = double("x^3")
    E = diagonal_module(D)
    assert E.module.ngens == 1
    assert E.module.relations == ((D.ring("x0 - y0"),),)
    assert E.module.potential == D.W


def test_identity_graph_is_the_diagonal():
    D = double("x^3 + y^4")
    assert graph_module(D, D.source.gens()) == diagonal_module(D)


def test_involution_graph_of_node():
    D = double("x^2")
    E = graph_module(D, [D.source("-x")])
    assert E.module.relations == ((D.ring("y0 + x0"),),)
    assert E.name == "graph(-x)"


def test_non_linear_endomorphism_is_rejected():
    D = double("x^3")
    with pytest.raises(NotSLinearError):
        graph_module(D, [D.source("-x")])


# --- pairing -----------------------------------------------------------------------


def test_node_pairing_matches_hand_computation():
    D = double("x^2")
    r = ks_pairing(D)
    assert (r.pairing, r.even, r.odd) == (1, 1, 0)
    mf = diagonal_tail(D)
    assert {to_text(mf.A[0][0]), to_text(mf.B[0][0])} == {"x0 - y0", "x0 + y0"}


@pytest.mark.parametrize("k", range(1, 9))
def test_a_k_pairing_is_jacobian_colength(k):
    text = f"x^{k + 1}"
    assert ks_pairing(double(text)).pairing == jacobian_colength(text) == k


def test_free_class_pairs_to_zero():
    D = double("x^2 + y^3")
    r = ks_pairing(D, free_class(D))
    assert (r.even, r.odd, r.pairing) == (0, 0, 0)


@pytest.mark.parametrize("cls", ["diagonal", "free", "cyclic"])
def test_smooth_source_vanishes(cls):
    D = double("x")
    E = {"diagonal": diagonal_module(D), "free": free_class(D),
         "cyclic": cyclic_class(D, [D.ring("x0 - y0"), D.ring("x0^2")])}[cls]
    assert ks_pairing(D, E).pairing == 0


def test_report_invariants_and_json():
    D = double("x^3 + y^3")
    r = ks_pairing(D)
    assert r.pairing == r.even - r.odd
    s = r.stabilization_index
    dims = r.tor_dims
    for n in range(s + 2, len(dims)):
        assert dims[n] == dims[n - 2]
    assert list(r.to_dict()) == [
        "f", "class", "pairing", "even", "odd", "stabilization_index", "tor_dims", "support_finite",
    ]
    assert s <= stabilization_cap(D)


def test_report_rejects_inconsistent_values():
    with pytest.raises(InvariantViolation):
        StableTorReport("x", "diagonal", 1, 0, 2, 1, ())


def test_unshifted_degree_carries_the_sign():
    # two variables: stable Tors sit in even degrees; one and three: odd degrees
    for text, sign in (("x^3", -1), ("x^2 + y^3", 1), ("x^2 + y^2 + z^2", -1)):
        r = ks_pairing(double(text))
        assert r.ks_degree == sign * r.pairing


def test_route_independence_on_cusp():
    D = double("x^2 + y^3")
    via_tail = tail_homology(D, diagonal_tail(D), diagonal_module(D))
    assert koszul_route_homology(D) == via_tail
    assert koszul_pairing(D) == ks_pairing(D).pairing


def test_route_independence_with_a_general_class():
    # the general tensor path (no chart substitution) on both routes
    D = double("x^3")
    E = cyclic_class(D, [D.ring("x0 - y0"), D.ring("x0^2")])
    assert koszul_route_homology(D, E) == tail_homology(D, diagonal_tail(D), E)


def test_general_path_agrees_with_chart_path():
    D = double("x^2 + y^3")
    chart = diagonal_module(D)
    plain = cyclic_class(D, [a - b for a, b in zip(D.x, D.y)], "diagonal")
    assert ks_pairing(D, plain).to_dict() == ks_pairing(D, chart).to_dict()


def test_euler_additivity_on_a_sequence():
    D = double("x^3")
    sub, mid, quo = short_exact_sequence(D, [D.ring("(x0 - y0)^2")], D.ring("x0 - y0"))
    p = [ks_pairing(D, E).pairing for E in (sub, mid, quo)]
    assert p[1] == p[0] + p[2]


def test_non_isolated_support_is_reported():
    D = double("x^2*y")
    with pytest.raises(SupportNotFiniteError):
        ks_pairing(D)
