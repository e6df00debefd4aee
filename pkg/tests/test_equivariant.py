from math import comb

import pytest

from stratachow import catalog
from stratachow.equivariant import (
    DELTA1_WEIGHTS,
    PN_RING,
    TORUS_RING,
    QUARTIC_RING,
    ProductP1Ring,
    alpha,
    an_class_quartic,
    c_factor,
    calibrate_weights,
    diagonal_class,
    diagonal_product,
    discriminant_ideal,
    h_product,
    identity_grid,
    multiple_root_class,
    pi1_one_closed_form,
    pushforward_pi_r,
    quartic_ci_class,
    verify_appendix_identity,
)
from stratachow.errors import ParameterOutOfRange, UnknownIdentity
from stratachow.poly import RingMap

TAU_TO_ZERO = RingMap(PN_RING, PN_RING, {"tau": "0", "h0": "h0"})


def test_diagonal_two_factors():
    P = ProductP1Ring(2)
    assert diagonal_class(2) == P.ring.parse("h1 + h2 + tau")


def test_diagonal_three_factors_matches_reduced_product():
    P = ProductP1Ring(3)
    expected = P.ring.parse("tau^2 + tau*(h1+h2+h3) + h1*h2 + h1*h3 + h2*h3")
    assert diagonal_class(3) == expected
    assert P.normal_form(diagonal_product(3)) == expected


@pytest.mark.parametrize("k", range(2, 9))
def test_diagonal_leading_tau_coefficient(k):
    P = ProductP1Ring(k)
    cls = diagonal_class(k)
    assert cls.coefficient((k - 1,) + (0,) * k) == 1
    assert P.normal_form(diagonal_product(k)) == cls


def test_product_ring_normal_form_is_in_relations():
    from stratachow.groebner import is_member

    P = ProductP1Ring(2)
    p = P.ring.parse("h1^3*h2 + tau*h2^2")
    assert is_member(p - P.normal_form(p), P.relations).member_over_Q


def test_pushforward_of_h0():
    for N, k in [(4, 2), (6, 3), (9, 1)]:
        assert pushforward_pi_r(N, k, 1, 0) == h_product(k)


@pytest.mark.parametrize("N", range(1, 9))
def test_pushforward_of_one_for_single_root(N):
    assert pushforward_pi_r(N, 1, 1, -1) == PN_RING.const(N)


@pytest.mark.parametrize("N,k", [(N, k) for N in range(2, 10) for k in range(1, N + 1)])
def test_pushforward_of_one_at_zero_weight(N, k):
    image = TAU_TO_ZERO(pushforward_pi_r(N, k, 1, -1))
    assert image == PN_RING.parse(f"{k * (N - k + 1)}*h0^{k - 1}")


def test_closed_form_agrees():
    for N in range(2, 9):
        for k in range(1, N + 1):
            assert pi1_one_closed_form(N, k) == pushforward_pi_r(N, k, 1, -1)


def test_pushforward_range_checks():
    with pytest.raises(ParameterOutOfRange):
        pushforward_pi_r(4, 5, 1, 0)
    with pytest.raises(ParameterOutOfRange):
        pushforward_pi_r(4, 2, 3, 0)
    with pytest.raises(ParameterOutOfRange):
        pushforward_pi_r(4, 2, 1, -2)


def test_discriminant_ideal_small():
    d = discriminant_ideal(4, 2)
    assert d.pi1_h0 == PN_RING.parse("h0^2 + tau*h0")
    big = discriminant_ideal(8, 3)
    assert big.pi1_one.degrees() == {2} and big.pi1_h0.degrees() == {3}
    assert TAU_TO_ZERO(discriminant_ideal(6, 2).pi1_one) == PN_RING.parse("10*h0")


def test_alpha_counts_compositions():
    # with k = 2 each part is 0 or 1 with weight C(2, j)
    assert alpha(2, 3, 0) == 1
    assert alpha(2, 3, 1) == 3 * 2
    assert alpha(2, 3, 3) == 8


def test_c10_direct():
    check = verify_appendix_identity("C10", {"k": 3, "m": 2, "N": 5})
    assert check.ok
    assert check.witness == (comb(3, 2), comb(3, 2))


def test_c09_small_cases():
    assert verify_appendix_identity("C09", (1, 1)).ok
    for m in range(4):
        assert verify_appendix_identity("C09", (0, m)).ok


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify_appendix_identity("C99", ())


@pytest.mark.parametrize("name", ["C08", "C09", "C10", "C11", "C12", "C13", "C14", "C15"])
def test_identity_grid_small(name):
    cases = list(identity_grid(name, max_N=6, max_k=3))
    assert cases
    for params in cases:
        assert verify_appendix_identity(name, params).ok, params


def test_multiple_root_classes():
    for k in (4, 5, 6):
        assert multiple_root_class(6, k) == catalog.load(f"multiple_root.k{k}")


def test_weight_calibration_is_unique_up_to_swap():
    targets = {k: catalog.load(f"multiple_root.k{k}") for k in (4, 5, 6)}
    found = calibrate_weights(6, targets, bound=4)
    assert len(found) == 2
    as_polys = [{key: TORUS_RING.parse(w[key]) for key in w} for w in found]
    frozen = {key: TORUS_RING.parse(v) for key, v in DELTA1_WEIGHTS.items()}
    swapped = {key: TORUS_RING.parse(v.replace("t0", "T").replace("t1", "t0").replace("T", "t1")) for key, v in DELTA1_WEIGHTS.items()}
    assert frozen in as_polys and swapped in as_polys


def test_quartic_classes():
    a2 = an_class_quartic(2)
    assert a2 == quartic_ci_class()
    assert an_class_quartic(3) == a2 * QUARTIC_RING.parse("-3*c1 + 5/2*h14 + k")
    a7 = an_class_quartic(7)
    assert a7.is_homogeneous() and a7.degree() == 9
    assert c_factor(4) == QUARTIC_RING.parse("-4*c1 + 7/2*h14")
    with pytest.raises(ParameterOutOfRange):
        an_class_quartic(8)
