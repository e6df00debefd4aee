"""Ideal arithmetic: Gröbner bases, certified normal forms, membership, kernels, quotients.

The engine works on polynomials stored as ``{packed_monomial: coefficient}``
dictionaries, where exponent ``e_i`` occupies bits ``16*i .. 16*i+15`` of a
Python integer.  Monomial multiplication is integer addition and divisibility
is a single subtraction plus a mask test (the top bit of every field is a
guard bit that catches borrows).
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DegreeCapExceeded,
    DegreeMismatch,
    HomogeneityViolation,
    LiftingFailed,
    NotDivisible,
    RingMismatch,
)
from .poly import ONE, ZERO, GradedRing, Polynomial, Q, RingMap, substitute

FIELD = 16
FMASK = (1 << FIELD) - 1
MAX_EXP = (1 << (FIELD - 1)) - 1


def _guard(n: int) -> int:
    return sum(1 << (FIELD * i + FIELD - 1) for i in range(n))


def pack(mono) -> int:
    code = 0
    for i, e in enumerate(mono):
        if e > MAX_EXP:
            raise OverflowError(f"exponent {e} too large")
        code |= e << (FIELD * i)
    return code


def unpack(code: int, n: int) -> tuple:
    return tuple((code >> (FIELD * i)) & FMASK for i in range(n))


def is_smooth_23(d: int) -> bool:
    """True when the positive integer d has no prime factors besides 2 and 3."""
    d = abs(int(d))
    for p in (2, 3):
        while d % p == 0:
            d //= p
    return d == 1


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted grevlex (one block) or a block elimination order.

    ``blocks`` lists groups of variable *names*; earlier blocks dominate.  Inside
    each block monomials are compared by weighted grevlex.  ``None`` means a
    single block holding every variable in ring order.
    """

    blocks: tuple | None = None

    @staticmethod
    def grevlex() -> "MonomialOrder":
        return MonomialOrder(None)

    @staticmethod
    def elimination(*blocks) -> "MonomialOrder":
        return MonomialOrder(tuple(tuple(b) for b in blocks))

    def describe(self) -> str:
        if self.blocks is None:
            return "grevlex"
        return "block(" + " | ".join(",".join(b) for b in self.blocks) + ")"

    def index_blocks(self, ring: GradedRing) -> list:
        if self.blocks is None:
            return [list(range(ring.nvars))]
        seen = [ring.index(n) for b in self.blocks for n in b]
        if sorted(seen) != list(range(ring.nvars)):
            raise RingMismatch(f"order blocks {self.blocks} do not partition {ring.names}")
        return [[ring.index(n) for n in b] for b in self.blocks]

    def key_function(self, ring: GradedRing):
        """Integer-valued key on exponent tuples, increasing with the order."""
        blocks = self.index_blocks(ring)
        w = ring.degrees

        def key(t):
            k = 0
            for blk in blocks:
                k = (k << 32) | sum(w[i] * t[i] for i in blk)
                for i in reversed(blk):
                    k = (k << FIELD) | (FMASK - t[i])
            return k

        return key


# ---------------------------------------------------------------------------
# the engine


class _Element:
    __slots__ = ("poly", "lm", "lmt", "tail", "sugar", "rep", "index", "redundant")

    def __init__(self, poly, lm, lmt, sugar, rep, index):
        self.poly = poly
        self.lm = lm
        self.lmt = lmt
        self.tail = [(m, c) for m, c in poly.items() if m != lm]
        self.sugar = sugar
        self.rep = rep
        self.index = index
        self.redundant = False


def _add_scaled_shifted(acc: dict, poly: dict, coef, shift: int):
    """acc += coef * x^shift * poly (packed monomials)."""
    for m, c in poly.items():
        mm = m + shift
        v = acc.get(mm, ZERO) + coef * c
        if v:
            acc[mm] = v
        else:
            acc.pop(mm, None)


def _rep_combine(pieces, ngens):
    """Sum of coef * x^shift * rep over pieces [(coef, shift, rep)]."""
    out = [None] * ngens
    for coef, shift, rep in pieces:
        if rep is None:
            continue
        for i, r in enumerate(rep):
            if r:
                if out[i] is None:
                    out[i] = {}
                _add_scaled_shifted(out[i], r, coef, shift)
    return [o if o else None for o in out]


class Engine:
    """Buchberger with sugar selection and Gebauer-Möller pair pruning.

    Resumable: ``run(maxdeg)`` processes every queued S-pair/generator with
    sugar at most ``maxdeg``; for homogeneous input the current basis is then a
    Gröbner basis up to that degree.
    """

    def __init__(self, ring: GradedRing, order: MonomialOrder, generators: Sequence[Polynomial], track=False):
        self.ring = ring
        self.order = order
        self.n = ring.nvars
        if self.n * FIELD > 4096:
            raise ValueError("too many variables")
        self.guard = _guard(self.n)
        self.weights = ring.degrees
        self._tkey = order.key_function(ring)
        self._keycache: dict = {}
        self._degcache: dict = {}
        self._divcache: dict = {}
        self.track = track
        self.gens = [g for g in generators]
        self.ngens = len(self.gens)
        self.G: list = []
        self.pairs: list = []  # heap of (sugar, lcm_key, i, j)
        self.homogeneous = all(g.is_homogeneous() for g in self.gens)
        self.stats = {"reductions": 0, "zero_reductions": 0}
        for idx, g in enumerate(self.gens):
            if g.ring != ring:
                raise RingMismatch("generator ring differs from engine ring")
            if g.is_zero():
                continue
            d = {pack(m): c for m, c in g._terms.items()}
            sugar = g.degree()
            rep = None
            if track:
                rep = [None] * self.ngens
                rep[idx] = {0: ONE}
            # generators enter the queue as pseudo-pairs (i = -1, j = idx)
            heapq.heappush(self.pairs, (sugar, self.key(max(d, key=self.key)), -1, idx, d, rep))

    # -- monomial helpers -------------------------------------------------
    def key(self, m: int) -> int:
        k = self._keycache.get(m)
        if k is None:
            k = self._tkey(unpack(m, self.n))
            self._keycache[m] = k
        return k

    def mdeg(self, m: int) -> int:
        d = self._degcache.get(m)
        if d is None:
            d = sum(e * w for e, w in zip(unpack(m, self.n), self.weights))
            self._degcache[m] = d
        return d

    def divides(self, a: int, b: int) -> bool:
        d = b - a
        return d >= 0 and not (d & self.guard)

    def leading(self, poly: dict) -> int:
        return max(poly, key=self.key)

    def find_reducer(self, m: int):
        G = self.G
        hit = self._divcache.get(m)
        if hit is not None:
            idx, upto = hit
            if idx >= 0:
                return G[idx]
            start = upto
        else:
            start = 0
        guard = self.guard
        for i in range(start, len(G)):
            d = m - G[i].lm
            if d >= 0 and not (d & guard):
                self._divcache[m] = (i, len(G))
                return G[i]
        self._divcache[m] = (-1, len(G))
        return None

    # -- reduction --------------------------------------------------------
    def reduce(self, poly: dict, full=True, track=False):
        """Reduce against the current basis.

        Returns (remainder, quotients) where quotients maps basis index to a
        packed polynomial: poly = sum q_i * G[i] + remainder.
        """
        acc = dict(poly)
        key = self.key
        heap = [(-key(m), m) for m in acc]
        heapq.heapify(heap)
        rem = {}
        quot: dict = {}
        G = self.G
        while heap:
            _, m = heapq.heappop(heap)
            c = acc.pop(m, None)
            if c is None:
                continue
            g = self.find_reducer(m) if G else None
            if g is None:
                rem[m] = c
                if not full:
                    # keep the rest untouched
                    rem.update(acc)
                    break
                continue
            u = m - g.lm
            for mg, cg in g.tail:
                mm = mg + u
                v = acc.get(mm)
                if v is None:
                    acc[mm] = -c * cg
                    heapq.heappush(heap, (-key(mm), mm))
                else:
                    v = v - c * cg
                    if v:
                        acc[mm] = v
                    else:
                        del acc[mm]
            if track:
                q = quot.setdefault(g.index, {})
                v = q.get(u, ZERO) + c
                if v:
                    q[u] = v
                else:
                    del q[u]
        return rem, quot

    def quotients_to_rep(self, quot: dict):
        pieces = []
        for gi, q in quot.items():
            rep = self.G[gi].rep
            for shift, c in q.items():
                pieces.append((c, shift, rep))
        return _rep_combine(pieces, self.ngens)

    # -- main loop --------------------------------------------------------
    def pending_min_sugar(self):
        return self.pairs[0][0] if self.pairs else None

    def run(self, maxdeg=None):
        # _insert rebinds self.pairs, so never hold on to the list across iterations
        while self.pairs:
            if maxdeg is not None and self.pairs[0][0] > maxdeg:
                break
            sugar, _k, i, j, payload, prep = heapq.heappop(self.pairs)
            if i == -1:
                spoly, srep = payload, prep
            else:
                gi, gj = self.G[i], self.G[j]
                lcm = payload
                ui, uj = lcm - gi.lm, lcm - gj.lm
                spoly = {}
                _add_scaled_shifted(spoly, gi.poly, ONE, ui)
                _add_scaled_shifted(spoly, gj.poly, -ONE, uj)
                srep = None
                if self.track:
                    srep = _rep_combine([(ONE, ui, gi.rep), (-ONE, uj, gj.rep)], self.ngens)
            self.stats["reductions"] += 1
            if not spoly:
                self.stats["zero_reductions"] += 1
                continue
            rem, quot = self.reduce(spoly, full=True, track=self.track)
            if not rem:
                self.stats["zero_reductions"] += 1
                continue
            rep = None
            if self.track:
                qrep = self.quotients_to_rep(quot)
                rep = _rep_combine([(ONE, 0, srep), (-ONE, 0, qrep)], self.ngens)
            lm = self.leading(rem)
            lc = rem[lm]
            inv = ONE / lc
            rem = {m: c * inv for m, c in rem.items()}
            if rep is not None:
                rep = [({m: c * inv for m, c in r.items()} if r else None) for r in rep]
            self._insert(rem, lm, sugar, rep)
        return self

    @property
    def complete(self) -> bool:
        return not self.pairs

    def _insert(self, poly, lm, sugar, rep):
        lmt = unpack(lm, self.n)
        h = _Element(poly, lm, lmt, sugar, rep, len(self.G))
        hidx = h.index
        G = self.G
        active = [g for g in G if not g.redundant]

        def lcm_t(a, b):
            return tuple(x if x > y else y for x, y in zip(a, b))

        def coprime(a, b):
            return all(x == 0 or y == 0 for x, y in zip(a, b))

        def divides_t(a, b):
            return all(x <= y for x, y in zip(a, b))

        # Gebauer-Möller update
        C = [(g, lcm_t(g.lmt, lmt)) for g in active]
        D = []
        while C:
            g1, l1 = C.pop(0)
            if coprime(g1.lmt, lmt) or (
                not any(divides_t(l2, l1) for _, l2 in C) and not any(divides_t(l2, l1) for _, l2 in D)
            ):
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not coprime(g.lmt, lmt)]
        kept = []
        for item in self.pairs:
            sug, k, i, j, payload, prep = item
            if i == -1:
                kept.append(item)
                continue
            lij = unpack(payload, self.n)
            if (
                divides_t(lmt, lij)
                and lcm_t(G[i].lmt, lmt) != lij
                and lcm_t(G[j].lmt, lmt) != lij
            ):
                continue
            kept.append(item)
        for g, l in E:
            lp = pack(l)
            ld = self.mdeg(lp)
            sug = max(g.sugar + ld - self.mdeg(g.lm), sugar + ld - self.mdeg(lm))
            kept.append((sug, self.key(lp), g.index, hidx, lp, None))
        heapq.heapify(kept)
        self.pairs = kept
        for g in active:
            if divides_t(lmt, g.lmt):
                g.redundant = True
        G.append(h)

    # -- output -----------------------------------------------------------
    def minimal_elements(self):
        return [g for g in self.G if not g.redundant]

    def reduced_basis(self) -> list:
        """Reduced Gröbner basis (of the computed part) as packed dicts, sorted by leading monomial.

        A tail term is never divisible by its own leading monomial, so one
        reducer over the minimal elements interreduces every tail.
        """
        mins = sorted(self.minimal_elements(), key=lambda g: self.key(g.lm))
        red = Engine.__new__(Engine)
        red.__dict__.update(self.__dict__)
        red._divcache = {}
        red.track = False
        red.G = [_Element(g.poly, g.lm, g.lmt, g.sugar, None, k) for k, g in enumerate(mins)]
        out = []
        for g in mins:
            tail = {m: c for m, c in g.poly.items() if m != g.lm}
            rem, _ = red.reduce(tail, full=True)
            rem[g.lm] = ONE
            out.append(rem)
        return out

    def to_poly(self, d: dict) -> Polynomial:
        return Polynomial(self.ring, {unpack(m, self.n): c for m, c in d.items()}, _trusted=True)

    def from_poly(self, p: Polynomial) -> dict:
        return {pack(m): c for m, c in p._terms.items()}


# ---------------------------------------------------------------------------
# public types


class Ideal:
    """Ideal of a graded ring given by homogeneous generators."""

    def __init__(self, ring: GradedRing, generators=(), name=None, check=True):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatch(f"generator {g} does not live in {ring}")
            if check and not g.is_homogeneous():
                raise HomogeneityViolation(f"generator is not homogeneous: {g}")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.name = name

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatch("sum of ideals in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def with_generators(self, *extra) -> "Ideal":
        return Ideal(self.ring, self.generators + tuple(extra))

    def nonzero(self) -> tuple:
        return tuple(g for g in self.generators if not g.is_zero())

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Ideal{label}<{len(self.generators)} generators in {self.ring}>"


@dataclass
class Certificate:
    target: Polynomial
    cofactors: list
    remainder: Polynomial
    generators: tuple = ()

    def verify(self) -> bool:
        total = self.remainder
        for c, g in zip(self.cofactors, self.generators):
            if not c.is_zero():
                total = total + c * g
        return total == self.target

    def denominators(self) -> set:
        out = set()
        for c in self.cofactors:
            out |= c.denominators()
        return out

    @property
    def smooth(self) -> bool:
        return all(is_smooth_23(d) for d in self.denominators())


@dataclass
class MembershipReport:
    member_over_Q: bool
    certificate: Certificate | None
    smooth_over_Z16: bool
    remainder: Polynomial | None = None

    def __bool__(self):
        return self.member_over_Q


@dataclass
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: list
    leading_monomials: list
    truncated_at: int | None = None
    engine: Engine | None = field(default=None, repr=False)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form (remainder only)."""
        return normal_form(p, self, certify=False).remainder


# ---------------------------------------------------------------------------
# engine cache

_ENGINES: dict = {}
_CACHE_LIMIT = 64


def _engine_for(ideal: Ideal, order: MonomialOrder, track: bool) -> Engine:
    key = (ideal.ring, ideal.generators, order, track)
    eng = _ENGINES.get(key)
    if eng is None:
        if len(_ENGINES) >= _CACHE_LIMIT:
            _ENGINES.pop(next(iter(_ENGINES)))
        eng = Engine(ideal.ring, order, ideal.generators, track=track)
        _ENGINES[key] = eng
    return eng


def clear_cache():
    _ENGINES.clear()


def _env_cap():
    v = os.environ.get("STRATACHOW_GB_MAXDEG")
    return int(v) if v not in (None, "") else None


def _ensure(eng: Engine, degree, cap=None):
    """Advance the engine far enough to decide questions up to `degree` (None = completely)."""
    if degree is None or not eng.homogeneous:
        if cap is not None:
            eng.run(cap)
            if not eng.complete:
                raise DegreeCapExceeded(
                    f"S-polynomials of degree {eng.pending_min_sugar()} exceed the cap {cap}"
                )
        else:
            eng.run(None)
    else:
        eng.run(degree)


def groebner_basis(ideal: Ideal, order: MonomialOrder | None = None, degree_cap=None, truncate=None) -> GroebnerBasis:
    """Reduced Gröbner basis.

    ``degree_cap``: raise DegreeCapExceeded if the computation needs S-pairs above it.
    ``truncate``: stop at this degree and return the (valid up to that degree) basis.
    """
    order = order or MonomialOrder.grevlex()
    if degree_cap is None and truncate is None:
        degree_cap = _env_cap()
    eng = _engine_for(ideal, order, track=False)
    if truncate is not None:
        if not eng.homogeneous:
            raise HomogeneityViolation("truncated bases require homogeneous generators")
        eng.run(truncate)
    else:
        _ensure(eng, None, cap=degree_cap)
    red = eng.reduced_basis()
    if truncate is not None:
        red = [r for r in red if eng.mdeg(eng.leading(r)) <= truncate]
    polys = [eng.to_poly(r) for r in red]
    lms = [unpack(eng.leading(r), eng.n) for r in red]
    trunc = truncate if (truncate is not None and not eng.complete) else None
    return GroebnerBasis(ideal, order, polys, lms, trunc, eng)


def normal_form(p: Polynomial, gb: GroebnerBasis, certify=True) -> Certificate:
    """Certified normal form of p with respect to the ideal of gb."""
    ideal = gb.ideal
    if p.ring != ideal.ring:
        raise RingMismatch(f"{p.ring} vs {ideal.ring}")
    return _certified_nf(p, ideal, gb.order, certify)


def _certified_nf(p: Polynomial, ideal: Ideal, order: MonomialOrder, certify: bool) -> Certificate:
    ring = ideal.ring
    zero = ring.zero()
    if p.is_zero():
        return Certificate(p, [zero] * len(ideal.generators), zero, ideal.generators)
    eng = _engine_for(ideal, order, track=certify)
    if p.is_homogeneous() and eng.homogeneous:
        _ensure(eng, p.degree())
    else:
        _ensure(eng, None)
    d = eng.from_poly(p)
    rem, quot = eng.reduce(d, full=True, track=certify)
    remainder = eng.to_poly(rem)
    cofactors = [zero] * len(ideal.generators)
    if certify:
        rep = eng.quotients_to_rep(quot)
        cofactors = [eng.to_poly(r) if r else zero for r in rep]
    return Certificate(p, cofactors, remainder, ideal.generators)


def is_member(p: Polynomial, ideal: Ideal, certify=True) -> MembershipReport:
    if p.ring != ideal.ring:
        raise RingMismatch(f"{p.ring} vs {ideal.ring}")
    cert = _certified_nf(p, ideal, MonomialOrder.grevlex(), certify)
    member = cert.remainder.is_zero()
    if not member:
        # the certificate still exhibits p = sum(c_i g_i) + remainder
        return MembershipReport(False, cert if certify else None, False, cert.remainder)
    smooth = cert.smooth if certify else False
    return MembershipReport(True, cert if certify else None, smooth, cert.remainder)


def ideal_contains(big: Ideal, small: Ideal) -> bool:
    return all(is_member(g, big, certify=False).member_over_Q for g in small.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")
    return ideal_contains(I, J) and ideal_contains(J, I)


def buchberger_check(gb: GroebnerBasis) -> bool:
    """All S-polynomials of the basis reduce to zero (up to the truncation degree)."""
    basis = gb.basis
    ring = gb.ideal.ring
    key = gb.order.key_function(ring)
    lms = [max(b._terms, key=key) for b in basis]
    eng = Engine(ring, gb.order, [], track=False)
    for b, lm in zip(basis, lms):
        d = eng.from_poly(b)
        eng.G.append(_Element(d, pack(lm), lm, b.degree(), None, len(eng.G)))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lcm = tuple(max(a, b) for a, b in zip(lms[i], lms[j]))
            if gb.truncated_at is not None and ring.monomial_degree(lcm) > gb.truncated_at:
                continue
            ui = pack(tuple(a - b for a, b in zip(lcm, lms[i])))
            uj = pack(tuple(a - b for a, b in zip(lcm, lms[j])))
            s = {}
            _add_scaled_shifted(s, eng.G[i].poly, ONE, ui)
            _add_scaled_shifted(s, eng.G[j].poly, -ONE, uj)
            rem, _ = eng.reduce(s)
            if rem:
                return False
    return True


# ---------------------------------------------------------------------------
# ring-map machinery: graph ideals, kernels, lifts


class GraphIdeal:
    """The graph ideal <X_i - f(X_i)> + J of a ring map, with target variables eliminated first."""

    def __init__(self, rmap: RingMap):
        src, tgt = rmap.source, rmap.target
        self.rmap = rmap
        rename = {}
        for n in tgt.names:
            new = n
            while new in src or new in rename.values():
                new = "_y_" + new
            rename[n] = new
        self.rename = rename
        self.ring = GradedRing([(rename[n], d) for n, d in tgt.variables] + list(src.variables))
        self.order = MonomialOrder.elimination([rename[n] for n in tgt.names], list(src.names))
        self.tgt_count = tgt.nvars
        gens = []
        for name, img in zip(src.names, rmap.images):
            gens.append(self.ring.var(name) - self.embed_target(img))
        for j in rmap.modulo:
            gens.append(self.embed_target(j))
        self.ideal = Ideal(self.ring, gens, check=False)
        self._engine = None

    def embed_target(self, p: Polynomial) -> Polynomial:
        out = {}
        k = self.tgt_count
        pad = (0,) * (self.ring.nvars - k)
        for m, c in p._terms.items():
            out[m + pad] = c
        return Polynomial(self.ring, out, _trusted=True)

    def engine(self) -> Engine:
        if self._engine is None:
            eng = _engine_for(self.ideal, self.order, track=False)
            _ensure(eng, None, cap=_env_cap())
            self._engine = eng
        return self._engine

    def normal_form(self, p_target: Polynomial) -> Polynomial:
        eng = self.engine()
        rem, _ = eng.reduce(eng.from_poly(self.embed_target(p_target)))
        return eng.to_poly(rem)

    def is_source_only(self, p: Polynomial) -> bool:
        k = self.tgt_count
        return all(not any(m[:k]) for m in p._terms)

    def to_source(self, p: Polynomial) -> Polynomial:
        k = self.tgt_count
        return Polynomial(self.rmap.source, {m[k:]: c for m, c in p._terms.items()}, _trusted=True)

    def lift(self, p_target: Polynomial) -> Polynomial:
        """A preimage of p under the map (modulo J); the normal-form-minimal one."""
        nf = self.normal_form(p_target)
        if not self.is_source_only(nf):
            raise LiftingFailed(f"{p_target} is not in the image of the map")
        return self.to_source(nf)

    def in_image(self, p_target: Polynomial) -> bool:
        return self.is_source_only(self.normal_form(p_target))

    def kernel_generators(self) -> list:
        eng = self.engine()
        out = []
        for r in eng.reduced_basis():
            p = eng.to_poly(r)
            if self.is_source_only(p):
                out.append(self.to_source(p))
        return out


_GRAPHS: dict = {}


def graph_ideal(rmap: RingMap) -> GraphIdeal:
    key = (rmap.source, rmap.target, rmap.images, rmap.modulo)
    g = _GRAPHS.get(key)
    if g is None:
        g = GraphIdeal(rmap)
        _GRAPHS[key] = g
    return g


def kernel_of_map(rmap: RingMap, minimize=True) -> Ideal:
    """Generators of {p : f(p) in J} via elimination on the graph ideal."""
    for name, deg, img in zip(rmap.source.names, rmap.source.degrees, rmap.images):
        if not img.is_zero() and (not img.is_homogeneous() or img.degree() != deg):
            raise DegreeMismatch(f"image of {name} is not homogeneous of degree {deg}")
    gens = graph_ideal(rmap).kernel_generators()
    ker = Ideal(rmap.source, gens)
    return minimal_generators(ker) if minimize else ker


def lift_through(rmap: RingMap, p: Polynomial) -> Polynomial:
    return graph_ideal(rmap).lift(p)


def is_surjective(rmap: RingMap) -> bool:
    """Every target variable lies in the image (modulo the map's target ideal)."""
    g = graph_ideal(rmap)
    return all(g.in_image(v) for v in rmap.target.gens())


def minimal_generators(ideal: Ideal) -> Ideal:
    """Drop generators lying in the ideal of the earlier (lower-degree) ones."""
    gens = sorted(ideal.nonzero(), key=lambda g: (g.degree(), len(g), str(g)))
    kept: list = []
    for g in gens:
        if kept and is_member(g, Ideal(ideal.ring, kept), certify=False).member_over_Q:
            continue
        kept.append(g)
    return Ideal(ideal.ring, kept, name=ideal.name)


# ---------------------------------------------------------------------------
# quotients and division


def exact_divide(p: Polynomial, f: Polynomial) -> Polynomial:
    """p / f in the polynomial ring; InexactDivision-style NotDivisible if f does not divide p."""
    if f.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = p.ring
    key = ring.grevlex_key
    lcf, lmf = f.leading_term()
    rest = dict(p._terms)
    quot: dict = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        u = tuple(a - b for a, b in zip(m, lmf))
        if min(u) < 0:
            raise NotDivisible(f"{f} does not divide {p}")
        q = c / lcf
        quot[u] = q
        for mf, cf in f._terms.items():
            mm = tuple(a + b for a, b in zip(mf, u))
            v = rest.get(mm, ZERO) - q * cf
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return Polynomial(ring, quot, _trusted=True)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via elimination of an auxiliary variable t from t*I + (1-t)*J."""
    ring = I.ring
    tname = "_t"
    while tname in ring:
        tname = "_" + tname
    big = GradedRing([(tname, 1)] + list(ring.variables))
    order = MonomialOrder.elimination([tname], list(ring.names))

    def emb(p):
        return Polynomial(big, {(0,) + m: c for m, c in p._terms.items()}, _trusted=True)

    t = big.var(tname)
    gens = [t * emb(g) for g in I.nonzero()] + [(big.one() - t) * emb(g) for g in J.nonzero()]
    eng = Engine(big, order, gens)
    _ensure(eng, None, cap=_env_cap())
    out = []
    for r in eng.reduced_basis():
        p = eng.to_poly(r)
        if all(m[0] == 0 for m in p._terms):
            out.append(Polynomial(ring, {m[1:]: c for m, c in p._terms.items()}, _trusted=True))
    return Ideal(ring, out)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {a : a*f in I}."""
    if f.is_zero():
        return Ideal(I.ring, [I.ring.one()], check=False)
    inter = ideal_intersection(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [exact_divide(g, f) for g in inter.generators])


def is_nonzerodivisor(f: Polynomial, I: Ideal) -> bool:
    """True iff f is a non-zero divisor on ring/I, i.e. (I : f) == I."""
    if f.is_zero():
        return False
    if f.is_constant():
        return True
    quot = ideal_quotient(I, f)
    return ideal_contains(I, quot)


def divide_in_quotient(u: Polynomial, f: Polynomial, I: Ideal) -> Polynomial:
    """w with u ≡ f*w modulo I (normal form of the f-cofactor)."""
    ring = I.ring
    if u.is_zero():
        return ring.zero()
    ext = Ideal(ring, I.generators + (f,))
    rep = is_member(u, ext, certify=True)
    if not rep.member_over_Q:
        raise NotDivisible(f"{u} is not in <I, {f}>; obstruction {rep.remainder}")
    w = rep.certificate.cofactors[-1]
    if I.generators:
        w = _certified_nf(w, I, MonomialOrder.grevlex(), certify=False).remainder if not w.is_zero() else w
    return w
