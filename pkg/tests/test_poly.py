import pytest

from stratachow.errors import DegreeMismatch, ParseError, RingMismatch, UnknownVariable, ZeroDenominator
from stratachow.poly import (
    GradedRing,
    Polynomial,
    RingMap,
    homogeneous_components,
    parse_polynomial,
    print_canonical,
    substitute,
)

R = GradedRing([("x", 1), ("y", 1)])
M3 = GradedRing([("lambda1", 1), ("lambda2", 2), ("delta1", 1)])
H3 = GradedRing([("lambda1", 1), ("xi1", 1)])


def expand_by_multiplication(p, n):
    out = p.ring.one()
    for _ in range(n):
        out = out * p
    return out


def test_parse_simple_class():
    p = parse_polynomial("24*lambda1^2 - 48*lambda2", M3)
    assert p.degree() == 2
    assert p.is_homogeneous()
    assert p.coefficient((2, 0, 0)) == 24
    assert p.coefficient((0, 1, 0)) == -48


def test_parse_zero():
    assert parse_polynomial("0", R).is_zero()
    assert print_canonical(R.zero()) == "0"


def test_binomial_cancels():
    assert parse_polynomial("(x+y)^2 - x^2 - 2*x*y - y^2", R).is_zero()


def test_power_matches_repeated_product():
    p = R.parse("x - 3/2*y")
    for n in range(6):
        assert p ** n == expand_by_multiplication(p, n)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x + z", R)


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x + * y", R)
    assert info.value.position is not None


def test_zero_denominator():
    with pytest.raises(ZeroDenominator):
        parse_polynomial("x/0", R)


def test_hyperelliptic_generator_prints_canonically():
    d1 = H3.parse("2*xi1*(lambda1+xi1)*(4*lambda1+xi1)/9")
    text = print_canonical(d1)
    assert H3.parse(text) == d1
    assert print_canonical(H3.parse(text)) == text
    assert d1 == H3.parse("2/9*xi1^3 + 10/9*lambda1*xi1^2 + 8/9*lambda1^2*xi1")


def test_substitute_restriction():
    src = GradedRing([("lambda1", 1)])
    tgt = GradedRing([("t", 1), ("t0", 1), ("t1", 1)])
    f = RingMap(src, tgt, {"lambda1": "-t-t0-t1"})
    assert substitute(src.parse("lambda1^2"), f) == tgt.parse("(t+t0+t1)^2")


def test_identity_map():
    p = M3.parse("lambda1*lambda2 - 7*delta1^3 + lambda1^2*delta1")
    assert substitute(p, RingMap.identity(M3)) == p


def test_substitution_into_hyperelliptic_ring():
    src = GradedRing([("c1", 1), ("s", 1)])
    f = RingMap(src, H3, {"s": "-(xi1+lambda1)/3", "c1": "-xi1"})
    got = f(src.parse("2*s*c1*(c1-4*s)"))
    assert got == H3.parse("2*xi1*(lambda1+xi1)*(4*lambda1+xi1)/9")


def test_map_rejects_wrong_degree():
    src = GradedRing([("a", 2)])
    with pytest.raises(DegreeMismatch):
        RingMap(src, R, {"a": "x"})


def test_map_rejects_inhomogeneous_image():
    src = GradedRing([("a", 1)])
    with pytest.raises(DegreeMismatch):
        RingMap(src, R, {"a": "x + y^2"})


def test_ring_mismatch_on_substitute():
    f = RingMap.identity(M3)
    with pytest.raises(RingMismatch):
        substitute(R.parse("x"), f)


def test_homogeneous_components():
    one = GradedRing([("x", 1)])
    comps = homogeneous_components(one.parse("x + x^2"))
    assert comps == {1: one.parse("x"), 2: one.parse("x^2")}
    p = M3.parse("lambda2 + lambda1^2")
    assert list(homogeneous_components(p)) == [2]


def test_weighted_degree():
    p = M3.parse("lambda2^2*delta1")
    assert p.degree() == 5


def test_arithmetic_is_exact():
    p = R.parse("1/3*x") * 3
    assert p == R.parse("x")
    assert (R.parse("x") / 7) * 7 == R.parse("x")
