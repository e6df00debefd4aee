"""Torus-equivariant classes on products of P^1 and on P^N.

Conventions: P^N carries the equivariant hyperplane classes h_i = h0 + i*tau;
(P^1)^n is presented by tau, h1..hn with relations h_i^2 + tau*h_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial

from .errors import DegreeMismatch, ParameterOutOfRange, UnknownIdentity
from .groebner import Ideal, is_member
from .poly import GradedRing, Polynomial, Q, RingMap

PN_RING = GradedRing([("tau", 1), ("h0", 1)])
TORUS_RING = GradedRing([("t0", 1), ("t1", 1)])
QUARTIC_RING = GradedRing([("h14", 1), ("k", 1), ("c1", 1), ("c2", 2), ("c3", 3)])

# Frozen weight convention for root-multiplicity loci on the genus-one-node stratum.
# Found by calibrate_weights() against the three stated classes; the only other
# integral solution is this one with t0 and t1 exchanged.
DELTA1_WEIGHTS = {"h0": "-4*t0+2*t1", "tau": "t0-t1"}


class ProductP1Ring:
    """Q[tau, h1..hn] / (h_i^2 + tau*h_i)."""

    def __init__(self, n: int):
        if n < 1:
            raise ParameterOutOfRange("need at least one factor")
        self.n = n
        self.ring = GradedRing([("tau", 1)] + [(f"h{i}", 1) for i in range(1, n + 1)])

    def h(self, i: int) -> Polynomial:
        return self.ring.var(f"h{i}")

    @property
    def tau(self) -> Polynomial:
        return self.ring.var("tau")

    @property
    def relations(self) -> Ideal:
        t = self.tau
        return Ideal(self.ring, [self.h(i) ** 2 + t * self.h(i) for i in range(1, self.n + 1)])

    def normal_form(self, p: Polynomial) -> Polynomial:
        """Multilinear representative: h_i^e = (-tau)^(e-1) h_i."""
        out: dict = {}
        for m, c in p.as_dict().items():
            shift = 0
            sign = 1
            new = [m[0]] + [min(e, 1) for e in m[1:]]
            for e in m[1:]:
                if e > 1:
                    shift += e - 1
                    sign *= (-1) ** (e - 1)
            new[0] += shift
            key = tuple(new)
            out[key] = out.get(key, 0) + sign * c
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})


def elementary(polys, j: int, ring: GradedRing) -> Polynomial:
    out = ring.zero()
    for idx in combinations(range(len(polys)), j):
        term = ring.one()
        for i in idx:
            term = term * polys[i]
        out = out + term
    return out


def diagonal_class(k: int) -> Polynomial:
    """Class of the small diagonal in (P^1)^k as sum_j tau^(k-1-j) sigma_j(h_1..h_k)."""
    if k < 2:
        raise ParameterOutOfRange("the diagonal class needs k >= 2")
    P = ProductP1Ring(k)
    hs = [P.h(i) for i in range(1, k + 1)]
    return sum((P.tau ** (k - 1 - j) * elementary(hs, j, P.ring) for j in range(k)), P.ring.zero())


def diagonal_product(k: int) -> Polynomial:
    """The complete-intersection form prod_{i<k} (h_i + h_{i+1} + tau), unreduced."""
    if k < 2:
        raise ParameterOutOfRange("the diagonal class needs k >= 2")
    P = ProductP1Ring(k)
    out = P.ring.one()
    for i in range(1, k):
        out = out * (P.h(i) + P.h(i + 1) + P.tau)
    return out


# ---------------------------------------------------------------------------
# P^N


def h(i: int) -> Polynomial:
    return PN_RING.var("h0") + i * PN_RING.var("tau")


@lru_cache(maxsize=None)
def h_product(n: int) -> Polynomial:
    """h0*h1*...*h_{n-1} (1 for n = 0)."""
    if n <= 0:
        return PN_RING.one()
    return h_product(n - 1) * h(n - 1)


@lru_cache(maxsize=None)
def alpha(k: int, d: int, l: int) -> int:
    """Number of weighted compositions: sum over j_1+..+j_d = l, 0 <= j_s <= k-1, of prod C(k, j_s)."""
    if d == 0:
        return 1 if l == 0 else 0
    return sum(comb(k, j) * alpha(k, d - 1, l - j) for j in range(min(k - 1, l) + 1))


def beta(N: int, k: int, m: int, r: int, l: int) -> Q:
    d = r - (m + 1)
    return Q(factorial(N - (m + 1) * k - l), factorial(N - k * r) * factorial(d))


def _check_range(N, k, r, m):
    if k < 1 or N < k:
        raise ParameterOutOfRange(f"need 1 <= k <= N, got k={k}, N={N}")
    if r < 1 or r * k > N:
        raise ParameterOutOfRange(f"need 1 <= r <= N/k, got r={r}")
    if m < -1 or m > r - 1:
        raise ParameterOutOfRange(f"need -1 <= m <= r-1, got m={m}")


def pushforward_pi_r(N: int, k: int, r: int, m: int) -> Polynomial:
    """Pushforward of h0*..*h_m along (f, g) -> f^k g from P^r x P^(N-kr); m = -1 means the class 1."""
    _check_range(N, k, r, m)
    d = r - (m + 1)
    tau = PN_RING.var("tau")
    out = PN_RING.zero()
    for l in range(d * (k - 1) + 1):
        coeff = alpha(k, d, l) * beta(N, k, m, r, l)
        if coeff:
            out = out + coeff * tau ** (d * (k - 1) - l) * h_product((m + 1) * k + l)
    return out


def pi1_one_closed_form(N: int, k: int) -> Polynomial:
    """Closed form of the r = 1, m = -1 case: sum_l C(k,l) (N-l)!/(N-k)! tau^(k-1-l) h0..h_{l-1}."""
    tau = PN_RING.var("tau")
    return sum(
        (comb(k, l) * Q(factorial(N - l), factorial(N - k)) * tau ** (k - 1 - l) * h_product(l) for l in range(k)),
        PN_RING.zero(),
    )


def pi1_one_as_printed(N: int, k: int) -> Polynomial:
    """The alternative coefficient (k-l)! C(k,l) C(N-k, N-l); kept to document the disagreement."""
    tau = PN_RING.var("tau")
    out = PN_RING.zero()
    for l in range(k):
        b = comb(N - k, N - l) if N - l >= 0 else 0
        out = out + factorial(k - l) * comb(k, l) * b * tau ** (k - 1 - l) * h_product(l)
    return out


@dataclass(frozen=True)
class DiscriminantIdeal:
    N: int
    k: int
    pi1_one: Polynomial
    pi1_h0: Polynomial

    @property
    def ideal(self) -> Ideal:
        return Ideal(PN_RING, [self.pi1_one, self.pi1_h0], name=f"I(N={self.N},k={self.k})")

    @property
    def generators(self) -> tuple:
        return (self.pi1_one, self.pi1_h0)


def discriminant_ideal(N: int, k: int) -> DiscriminantIdeal:
    if not 1 <= k <= N:
        raise ParameterOutOfRange(f"need 1 <= k <= N, got k={k}, N={N}")
    return DiscriminantIdeal(N, k, pushforward_pi_r(N, k, 1, -1), pushforward_pi_r(N, k, 1, 0))


# ---------------------------------------------------------------------------
# appendix identities


@dataclass
class IdentityCheck:
    name: str
    params: dict
    ok: bool
    witness: object  # certificate, defect polynomial, or (lhs, rhs) numbers
    smooth: bool = True


def _gamma(N, k, t) -> Polynomial:
    tau = PN_RING.var("tau")
    return Q(factorial(N - t), factorial(N - 2 * k + 1)) * tau ** (2 * (k - 1) - t) * h_product(t)


def _membership(name, params, p, N, k, scale=1):
    I = discriminant_ideal(N, k).ideal
    rep = is_member(p * Q(1, scale), I, certify=True)
    witness = rep.certificate if rep.member_over_Q else rep.remainder
    return IdentityCheck(name, params, rep.member_over_Q, witness, rep.smooth_over_Z16)


def _c09(n, m):
    if not 0 <= n <= m:
        raise ParameterOutOfRange("need 0 <= n <= m")
    lhs = PN_RING.one()
    for i in range(n):
        lhs = lhs * h(i) ** 2
    for i in range(n, m):
        lhs = lhs * h(i)
    tau = PN_RING.var("tau")
    rhs = sum(
        ((-1) ** s * factorial(s) * comb(n, s) * comb(m, s) * tau**s * h_product(m + n - s) for s in range(n + 1)),
        PN_RING.zero(),
    )
    defect = lhs - rhs
    return IdentityCheck("C09", {"n": n, "m": m}, defect.is_zero(), defect)


def _c10(k, m, N):
    if min(k, m, N) < 0 or k > N or m > N:
        raise ParameterOutOfRange("need non-negative k, m <= N")
    lhs = sum((-1) ** l * comb(m, l) * comb(N - l, k - 1 - l) for l in range(k))
    rhs = comb(N - m, k - 1) if k >= 1 else 0
    return IdentityCheck("C10", {"k": k, "m": m, "N": N}, lhs == rhs, (lhs, rhs))


def _c11(N, k, t):
    if not (1 <= k <= N and 0 <= t <= k - 1 and N - k - t >= 0):
        raise ParameterOutOfRange("need 0 <= t <= k-1 and N >= k + t")
    tau = PN_RING.var("tau")
    lhs = h_product(t) * pushforward_pi_r(N, k, 1, -1)
    rhs = sum(
        (
            Q(factorial(N - f - t), factorial(N - k - t)) * comb(k, f) * tau ** (k - 1 - f) * h_product(t + f)
            for f in range(k)
        ),
        PN_RING.zero(),
    )
    return _membership("C11", {"N": N, "k": k, "t": t}, lhs - rhs, N, k)


def _c12(N, k, t):
    if not (1 <= k <= N and 0 <= t <= k - 1 and N - 2 * k + 1 >= 0):
        raise ParameterOutOfRange("need 0 <= t <= k-1 and N >= 2k - 1")
    return _membership("C12", {"N": N, "k": k, "t": t}, _gamma(N, k, t), N, k)


def _c13(N, k, t):
    """Gamma_t divided by C(2(k-1)-t, k-1-t) still lies in I."""
    if not (1 <= k <= N and 0 <= t <= k - 1 and N - 2 * k + 1 >= 0):
        raise ParameterOutOfRange("need 0 <= t <= k-1 and N >= 2k - 1")
    scale = comb(2 * (k - 1) - t, k - 1 - t)
    return _membership("C13", {"N": N, "k": k, "t": t, "divisor": scale}, _gamma(N, k, t), N, k, scale=scale)


def _c14(k, r, l):
    if not (k >= 1 and r >= 0 and 0 <= l <= k - 1):
        raise ParameterOutOfRange("need 0 <= l <= k-1")
    lhs = alpha(k, r, l)
    return IdentityCheck("C14", {"k": k, "r": r, "l": l}, lhs == comb(r * k, l), (lhs, comb(r * k, l)))


def _c08(N, k, r, m):
    _check_range(N, k, r, m)
    if m < 0:
        raise ParameterOutOfRange("need m >= 0")
    return _membership("C08", {"N": N, "k": k, "r": r, "m": m}, pushforward_pi_r(N, k, r, m), N, k)


def _c15(N, k, r):
    _check_range(N, k, r, -1)
    if r < 2:
        raise ParameterOutOfRange("need r >= 2")
    return _membership("C15", {"N": N, "k": k, "r": r}, pushforward_pi_r(N, k, r, -1), N, k)


IDENTITIES = {
    "C08": _c08,
    "C09": _c09,
    "C10": _c10,
    "C11": _c11,
    "C12": _c12,
    "C13": _c13,
    "C14": _c14,
    "C15": _c15,
}


def verify_appendix_identity(name: str, params) -> IdentityCheck:
    """Check one named identity; params is a dict of keyword arguments or a tuple."""
    fn = IDENTITIES.get(name)
    if fn is None:
        raise UnknownIdentity(f"unknown identity {name!r}; known: {', '.join(sorted(IDENTITIES))}")
    if isinstance(params, dict):
        return fn(**params)
    return fn(*params)


def identity_grid(name: str, max_N: int = 10, max_k: int = 4):
    """Parameter tuples covering each identity on the standard grid."""
    for N in range(1, max_N + 1):
        for k in range(1, min(max_k, N) + 1):
            if name == "C08":
                for r in range(1, N // k + 1):
                    for m in range(0, r):
                        yield (N, k, r, m)
            elif name == "C15":
                for r in range(2, N // k + 1):
                    yield (N, k, r)
            elif name == "C11":
                for t in range(0, min(k - 1, N - k) + 1):
                    yield (N, k, t)
            elif name in ("C12", "C13"):
                if N >= 2 * k - 1:
                    for t in range(k):
                        yield (N, k, t)
            elif name == "C10":
                for m in range(N + 1):
                    yield (k, m, N)
            elif name == "C14":
                for r in range(0, 5):
                    for l in range(k):
                        yield (k, r, l)
    if name == "C09":
        for m in range(0, max_N + 1):
            for n in range(m + 1):
                yield (n, m)


# ---------------------------------------------------------------------------
# loci of forms with a multiple root


def weight_map(weights, target: GradedRing = TORUS_RING) -> RingMap:
    return RingMap(PN_RING, target, {"tau": weights["tau"], "h0": weights["h0"]}, name="weights")


def multiple_root_class(N: int, k: int, weights=None, target: GradedRing = TORUS_RING) -> Polynomial:
    """Class of binary forms of degree N with a root of multiplicity at least k, in torus weights."""
    if not 1 <= k <= N:
        raise ParameterOutOfRange(f"need 1 <= k <= N, got k={k}, N={N}")
    try:
        rmap = weight_map(weights or DELTA1_WEIGHTS, target)
    except DegreeMismatch:
        raise
    return rmap(pushforward_pi_r(N, k, 1, -1))


def _eval(p: Polynomial, point) -> Q:
    total = Q(0)
    for m, c in p.as_dict().items():
        v = c
        for x, e in zip(point, m):
            v *= Q(x) ** e
        total += v
    return total


def calibrate_weights(N: int, targets: dict, bound: int = 6):
    """All integral assignments h0 = a*t0 + b*t1, tau = c*t0 + d*t1 reproducing every target.

    targets maps k to the expected class in t0, t1. Screening uses evaluation at a few
    points; survivors are confirmed by exact polynomial comparison.
    """
    points = [(1, 2), (3, -1), (2, 5), (-2, 7), (5, 3)]
    pis = {k: pushforward_pi_r(N, k, 1, -1) for k in targets}
    want = {k: [_eval(t, pt) for pt in points] for k, t in targets.items()}
    found = []
    rng = range(-bound, bound + 1)
    for a, b, c, d in product(rng, rng, rng, rng):
        ok = True
        for k, p in pis.items():
            for pt, w in zip(points, want[k]):
                h0 = a * pt[0] + b * pt[1]
                tau = c * pt[0] + d * pt[1]
                if _eval(p, (tau, h0)) != w:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            weights = {"h0": f"{a}*t0+{b}*t1", "tau": f"{c}*t0+{d}*t1"}
            if all(multiple_root_class(N, k, weights) == t for k, t in targets.items()):
                found.append(weights)
    return found


# ---------------------------------------------------------------------------
# quartic singularity loci


def quartic_ci_class() -> Polynomial:
    return QUARTIC_RING.parse("2*(h14+k-c1)*(h14+4*k)*((h14+3*k)^2-(c1+k)*(h14+2*k)+c2)")


def c_factor(m: int) -> Polynomial:
    R = QUARTIC_RING
    return -m * R.var("c1") + Q(2 * m - 1, 2) * R.var("h14") + (4 - m) * R.var("k")


def an_class_quartic(n: int) -> Polynomial:
    """Class of the locus of A_n singularities (n = 2..7) in the quartic model."""
    if not 2 <= n <= 7:
        raise ParameterOutOfRange(f"n must be in 2..7, got {n}")
    out = quartic_ci_class()
    for m in range(3, n + 1):
        out = out * c_factor(m)
    return out
