"""Brute-force membership oracle by exact linear algebra in one degree.

Deliberately shares nothing with the Gröbner engine: it works with Python
Fractions, its own monomial enumeration and plain Gaussian elimination.
"""
from fractions import Fraction
from itertools import product


def _monomials(degrees, d):
    """Exponent tuples of weighted degree d for the given variable weights."""
    ranges = [range(d // w + 1) for w in degrees]
    return [e for e in product(*ranges) if sum(a * w for a, w in zip(e, degrees)) == d]


def _poly_items(p):
    return [(tuple(m), Fraction(int(c.numerator), int(c.denominator))) for m, c in p.as_dict().items()]


def _row_reduce(rows, ncols):
    """Row echelon form: dict pivot_col -> row (row normalized to 1 at pivot)."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                factor = row[col]
                for c, v in pivots[col].items():
                    nv = row.get(c, 0) - factor * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
                continue
            inv = 1 / row[col]
            pivots[col] = {c: v * inv for c, v in row.items()}
            break
    return pivots


def macaulay_span_contains(target, generators, degrees, d):
    """Is `target` (list of (exponent, Fraction)) in the span of m*g in degree d?"""
    if not target:
        return True
    cols = {}
    for m in _monomials(degrees, d):
        cols[m] = len(cols)
    rows = []
    for g in generators:
        if not g:
            continue
        gdeg = sum(a * w for a, w in zip(g[0][0], degrees))
        if gdeg > d:
            continue
        for u in _monomials(degrees, d - gdeg):
            row = {}
            for m, c in g:
                mm = tuple(a + b for a, b in zip(m, u))
                row[cols[mm]] = row.get(cols[mm], 0) + c
            rows.append({k: v for k, v in row.items() if v})
    pivots = _row_reduce(rows, len(cols))
    vec = {}
    for m, c in target:
        vec[cols[m]] = vec.get(cols[m], 0) + c
    vec = {k: v for k, v in vec.items() if v}
    while vec:
        col = min(vec)
        if col not in pivots:
            return False
        f = vec[col]
        for c, v in pivots[col].items():
            nv = vec.get(c, 0) - f * v
            if nv:
                vec[c] = nv
            else:
                vec.pop(c, None)
    return True


def member_linear_oracle(p, ideal) -> bool:
    """Decide p in ideal for homogeneous p by linear algebra in degree deg(p)."""
    ring = ideal.ring
    if p.ring != ring:
        raise ValueError("ring mismatch")
    if p.is_zero():
        return True
    degs = p.degrees()
    if len(degs) != 1:
        raise ValueError("oracle needs a homogeneous target")
    (d,) = degs
    gens = [_poly_items(g) for g in ideal.generators if not g.is_zero()]
    return macaulay_span_contains(_poly_items(p), gens, ring.degrees, d)
