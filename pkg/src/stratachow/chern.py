"""Splitting-principle Chern calculus for bundles of rank at most 3.

A bundle is modelled by formal roots; top Chern classes of twisted symmetric
powers are products of linear forms in the roots, rewritten in elementary
symmetric functions by the classical leading-term reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement

from .errors import InexactDivision, InputError, NotDivisible, SymmetryReductionFailed
from .groebner import exact_divide
from .poly import ZERO, GradedRing, Polynomial, RingMap

#: ring of the hyperelliptic stratum after the change of variables
H3_RING = GradedRing([("lambda1", 1), ("lambda2", 2), ("xi1", 1)])
#: ring of the projective-bundle presentation (Chern classes of the rank-3 bundle and s)
P3_RING = GradedRing([("c1", 1), ("c2", 2), ("s", 1)])


@dataclass(frozen=True)
class RootBundle:
    rank: int
    elementary: tuple  # values of e_1..e_rank, Polynomials in one common ring

    def __post_init__(self):
        if not 1 <= self.rank <= 3:
            raise InputError(f"rank must be 1, 2 or 3, got {self.rank}")
        if len(self.elementary) != self.rank:
            raise InputError("need one elementary symmetric value per root")
        rings = {e.ring for e in self.elementary if isinstance(e, Polynomial)}
        if len(rings) != 1:
            raise InputError("elementary values must be polynomials in one ring")
        for i, e in enumerate(self.elementary, start=1):
            if not e.is_zero() and e.degrees() != {i}:
                raise InputError(f"e_{i} must be homogeneous of degree {i}")

    @property
    def ring(self) -> GradedRing:
        return self.elementary[0].ring


@dataclass(frozen=True)
class TwistSpec:
    factors: tuple = ()  # (degree-1 Polynomial, multiplicity)

    def shift(self, ring: GradedRing) -> Polynomial:
        out = ring.zero()
        for sym, mult in self.factors:
            if sym.ring != ring:
                sym = sym.in_ring(ring)
            if not sym.is_zero() and sym.degrees() != {1}:
                raise InputError("twist symbols must be of degree 1")
            out = out + sym * mult
        return out


def _root_ring(base: GradedRing, k: int) -> GradedRing:
    roots = [(f"_root{i}", 1) for i in range(k)]
    return GradedRing(roots + list(base.variables))


@lru_cache(maxsize=None)
def _elementary_in_roots(k: int, i: int) -> dict:
    out = {}
    for idx in combinations(range(k), i):
        out[tuple(1 if j in idx else 0 for j in range(k))] = 1
    return out


def _mul_root_dicts(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


@lru_cache(maxsize=None)
def _e_monomial(k: int, exps: tuple) -> dict:
    """prod e_i^{exps[i-1]} expanded in k roots (integer coefficients)."""
    if not any(exps):
        return {(0,) * k: 1}
    i = max(j for j, e in enumerate(exps) if e)
    lower = list(exps)
    lower[i] -= 1
    return _mul_root_dicts(_e_monomial(k, tuple(lower)), _elementary_in_roots(k, i + 1))


def symmetric_reduce(p: Polynomial, k: int) -> dict:
    """Rewrite p (first k variables are roots) as {(e-exponents, rest-monomial): coeff}.

    Raises SymmetryReductionFailed when p is not symmetric in the roots.
    """
    groups: dict = {}
    for m, c in p.as_dict().items():
        groups.setdefault(m[k:], {})[m[:k]] = c
    out = {}
    for rest, part in groups.items():
        part = dict(part)
        while part:
            lead = max(part)
            if any(lead[j] < lead[j + 1] for j in range(k - 1)):
                raise SymmetryReductionFailed(f"not symmetric in the roots (stuck at exponent {lead})")
            exps = tuple(lead[j] - (lead[j + 1] if j + 1 < k else 0) for j in range(k))
            c = part[lead]
            out[(exps, rest)] = c
            for m, v in _e_monomial(k, exps).items():
                nv = part.get(m, ZERO) - c * v
                if nv:
                    part[m] = nv
                else:
                    part.pop(m, None)
    return out


def _assemble(reduced: dict, bundle: RootBundle) -> Polynomial:
    ring = bundle.ring
    out = ring.zero()
    powers: dict = {}

    def epow(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = bundle.elementary[i] ** e
        return powers[key]

    for (exps, rest), c in reduced.items():
        term = Polynomial(ring, {rest: c})
        for i, e in enumerate(exps):
            if e:
                term = term * epow(i, e)
        out = out + term
    return out


def root_product(bundle: RootBundle, n: int, twist: TwistSpec = TwistSpec()) -> Polynomial:
    """Product over n-multisets of roots of (root sum + twist), in roots and base variables."""
    if n < 1:
        raise InputError("symmetric power must be at least 1")
    k = bundle.rank
    R = _root_ring(bundle.ring, k)
    roots = [R.var(f"_root{i}") for i in range(k)]
    shift = twist.shift(bundle.ring).in_ring(R)
    out = R.one()
    for multiset in combinations_with_replacement(range(k), n):
        factor = shift
        for i in multiset:
            factor = factor + roots[i]
        out = out * factor
    return out


def sym_twist_top_chern(bundle: RootBundle, n: int, twist: TwistSpec = TwistSpec()) -> Polynomial:
    """Top Chern class of Sym^n(B) twisted by line factors, in e_1..e_rank and the twist symbols."""
    prod = root_product(bundle, n, twist)
    return _assemble(symmetric_reduce(prod, bundle.rank), bundle)


# ---------------------------------------------------------------------------
# hyperelliptic stratum


def _h3_map() -> RingMap:
    return RingMap(
        P3_RING,
        H3_RING,
        {"s": "-(xi1+lambda1)/3", "c1": "-xi1", "c2": "lambda2-(lambda1^2-xi1^2)/3"},
        name="P3->H3",
    )


def _h3_inverse() -> RingMap:
    return RingMap(
        H3_RING,
        P3_RING,
        {"lambda1": "c1-3*s", "lambda2": "c2-2*s*c1+3*s^2", "xi1": "-c1"},
        name="H3->P3",
    )


def change_vars_H3(p: Polynomial) -> Polynomial:
    """Express a class in c1, c2, s in terms of lambda1, lambda2, xi1."""
    if p.ring != P3_RING:
        p = p.in_ring(P3_RING)
    return _h3_map()(p)


def change_vars_H3_inverse(p: Polynomial) -> Polynomial:
    if p.ring != H3_RING:
        p = p.in_ring(H3_RING)
    return _h3_inverse()(p)


LAMBDA3_H3 = "(xi1+lambda1)*(9*lambda2+(xi1+lambda1)*(xi1-2*lambda1))/27"


def derive_c3_vanishing(lambda3: str = LAMBDA3_H3) -> Polynomial:
    """Value of c3 forced by the lambda3 identity.

    lambda3 of the rank-3 bundle twisted by the dual of S is c3 - s*c2 + s^2*c1 - s^3.
    Matching that against the given expression for lambda3 pins down c3.
    """
    R = GradedRing([("c1", 1), ("c2", 2), ("c3", 3), ("s", 1)])
    c1, c2, s = R.var("c1"), R.var("c2"), R.var("s")
    stated = change_vars_H3_inverse(H3_RING.parse(lambda3)).in_ring(R)
    twisted_without_c3 = -s * c2 + s**2 * c1 - s**3
    return stated - twisted_without_c3


def _c3_value(c3) -> Polynomial:
    if c3 is None:
        c3 = derive_c3_vanishing()
    if not c3.is_zero():
        if not set(c3.variables_used()) <= set(P3_RING.names):
            raise InputError("c3 must be expressible in c1, c2, s")
        return c3.in_ring(P3_RING)
    return P3_RING.zero()


def c9_numerator_denominator(c3=None):
    ring = P3_RING
    c1, c2, s = ring.var("c1"), ring.var("c2"), ring.var("s")
    W = RootBundle(3, (c1, c2, _c3_value(c3)))
    num = sym_twist_top_chern(W, 4, TwistSpec(((s, -2),)))
    den = sym_twist_top_chern(W, 2, TwistSpec(((s, -2), (c1, 1))))
    return num, den


def compute_c9(c3=None) -> Polynomial:
    """The degree-9 relation on the hyperelliptic stratum, in lambda1, lambda2, xi1.

    Ratio of top Chern classes of S^-2 (x) Sym^4 W and S^-2 (x) det W (x) Sym^2 W.
    """
    num, den = c9_numerator_denominator(c3)
    try:
        q = exact_divide(num, den)
    except NotDivisible as exc:
        raise InexactDivision("numerator is not divisible by denominator; check conventions") from exc
    return change_vars_H3(q)


def hyperelliptic_D1() -> Polynomial:
    s, c1 = P3_RING.var("s"), P3_RING.var("c1")
    return change_vars_H3(2 * s * c1 * (c1 - 4 * s))


def hyperelliptic_D2() -> Polynomial:
    s, c1, c2 = P3_RING.var("s"), P3_RING.var("c1"), P3_RING.var("c2")
    return change_vars_H3(2 * s * c1 * (4 * s**2 - 2 * s * c1 + c2))
