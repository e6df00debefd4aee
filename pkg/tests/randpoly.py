"""Random homogeneous membership instances shared by the property and acceptance tests."""
import random

from gmpy2 import mpq

from stratachow.groebner import Ideal
from stratachow.poly import GradedRing, Polynomial


def random_ring(rng: random.Random) -> GradedRing:
    n = rng.randint(1, 4)
    return GradedRing([(f"v{i}", rng.choice((1, 1, 1, 2))) for i in range(n)])


def random_homogeneous(rng: random.Random, ring: GradedRing, d: int, terms: int) -> Polynomial:
    monos = ring.monomials_of_degree(d)
    if not monos:
        return ring.zero()
    picked = rng.sample(monos, min(terms, len(monos)))
    coeffs = {}
    for m in picked:
        num = rng.randint(-6, 6)
        den = rng.choice((1, 1, 1, 2, 3, 5))
        if num:
            coeffs[m] = mpq(num, den)
    return Polynomial(ring, coeffs)


def random_instance(rng: random.Random):
    """(target, ideal): a homogeneous target of degree <= 6 and 1-3 homogeneous generators.

    About half the targets are built as combinations of the generators, so both answers occur.
    """
    while True:
        ring = random_ring(rng)
        gens = []
        for _ in range(rng.randint(1, 3)):
            g = random_homogeneous(rng, ring, rng.randint(1, 3), rng.randint(1, 3))
            if not g.is_zero():
                gens.append(g)
        if not gens:
            continue
        d = rng.randint(max(g.degree() for g in gens), 6)
        if rng.random() < 0.5:
            target = ring.zero()
            for g in gens:
                if d - g.degree() >= 0:
                    target = target + random_homogeneous(rng, ring, d - g.degree(), 2) * g
        else:
            target = random_homogeneous(rng, ring, d, rng.randint(1, 4))
        if target.is_zero() and rng.random() < 0.8:
            continue
        return target, Ideal(ring, gens)
