"""Exact sparse multivariate polynomials over the rationals on weighted graded rings.

Monomials are exponent tuples aligned with the ring's variable order.  The
default monomial order is weighted graded reverse lexicographic: compare
weighted degree first, then the *last* variable with the smaller exponent wins.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    DegreeMismatch,
    ParseError,
    RingMismatch,
    UnknownVariable,
    ZeroDenominator,
)

try:  # gmpy2 is much faster; Fraction is a drop-in fallback
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


def to_rational(x) -> Q:
    """Coerce ints, Fractions, mpq or 'a/b' strings to the exact rational type."""
    if isinstance(x, str):
        num, _, den = x.strip().partition("/")
        if den and int(den) == 0:
            raise ZeroDenominator(f"zero denominator in {x!r}")
        return Q(int(num), int(den)) if den else Q(int(num))
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not supported")
    return Q(x)


def format_rational(c) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring over Q with named variables of positive integer degree."""

    names: tuple
    degrees: tuple

    def __init__(self, variables: Iterable):
        pairs = [(v, 1) if isinstance(v, str) else tuple(v) for v in variables]
        names = tuple(str(n) for n, _ in pairs)
        degrees = tuple(int(d) for _, d in pairs)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n, d in zip(names, degrees):
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
            if d < 1:
                raise ValueError(f"variable {n} must have positive degree, got {d}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    # dataclass(frozen) generates eq/hash from the declared fields only
    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def variables(self):
        return tuple(zip(self.names, self.degrees))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r} (ring has {', '.join(self.names)})") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def monomial_degree(self, mono) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def unit(self, i: int) -> tuple:
        m = [0] * self.nvars
        m[i] = 1
        return tuple(m)

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.unit(self.index(name)): ONE})

    def gens(self) -> list:
        return [Polynomial(self, {self.unit(i): ONE}) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: to_rational(c)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, variables: Iterable) -> "GradedRing":
        """New ring with extra variables appended at the end of the order."""
        return GradedRing(list(self.variables) + [tuple(v) for v in variables])

    def monomials_of_degree(self, d: int) -> list:
        """All exponent vectors of weighted degree d (descending grevlex order)."""
        out = []
        n = self.nvars
        degs = self.degrees

        def rec(i, remaining, acc):
            if i == n:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            for e in range(remaining // degs[i] + 1):
                acc.append(e)
                rec(i + 1, remaining - e * degs[i], acc)
                acc.pop()

        if n == 0:
            return [()] if d == 0 else []
        rec(0, d, [])
        out.sort(key=self.grevlex_key, reverse=True)
        return out

    def grevlex_key(self, mono) -> tuple:
        return (self.monomial_degree(mono), tuple(-e for e in reversed(mono)))

    def __repr__(self):
        inner = ", ".join(f"{n}:{d}" for n, d in self.variables)
        return f"GradedRing({inner})"


class Polynomial:
    """Immutable polynomial: a mapping monomial -> nonzero rational."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for m, c in (terms or {}).items():
                c = to_rational(c)
                if c:
                    m = tuple(int(e) for e in m)
                    if len(m) != ring.nvars or min(m, default=0) < 0:
                        raise ValueError(f"bad monomial {m} for {ring}")
                    clean[m] = clean.get(m, ZERO) + c
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    # ---- basic accessors -------------------------------------------------
    @property
    def terms(self) -> list:
        """(coefficient, monomial) pairs in strictly descending grevlex order."""
        key = self.ring.grevlex_key
        return [(self._terms[m], m) for m in sorted(self._terms, key=key, reverse=True)]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, mono) -> Q:
        return self._terms.get(tuple(mono), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(self.ring.monomial_degree(m) for m in self._terms)

    def degrees(self) -> set:
        return {self.ring.monomial_degree(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def leading_term(self):
        if not self._terms:
            return None
        m = max(self._terms, key=self.ring.grevlex_key)
        return self._terms[m], m

    def variables_used(self) -> set:
        return {self.ring.names[i] for m in self._terms for i, e in enumerate(m) if e}

    def denominators(self) -> set:
        return {c.denominator for c in self._terms.values()}

    # ---- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: c * v for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        get = out.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = get(m, ZERO) + c1 * c2
        out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            raise TypeError("use divide_in_quotient or exact_divide for polynomial division")
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(ONE / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return print_canonical(self)

    __str__ = __repr__

    def homogeneous_part(self, d: int) -> "Polynomial":
        deg = self.ring.monomial_degree
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if deg(m) == d}, _trusted=True)

    def in_ring(self, ring: GradedRing) -> "Polynomial":
        """Re-express in another ring by variable name (missing names must not occur)."""
        if ring == self.ring:
            return self
        pos = {i: ring.index(n) for i, n in enumerate(self.ring.names) if n in ring}
        out = {}
        for m, c in self._terms.items():
            new = [0] * ring.nvars
            for i, e in enumerate(m):
                if e:
                    if i not in pos:
                        raise UnknownVariable(f"variable {self.ring.names[i]} absent from {ring}")
                    if ring.degrees[pos[i]] != self.ring.degrees[i]:
                        raise DegreeMismatch(f"variable {self.ring.names[i]} changes degree")
                    new[pos[i]] = e
            out[tuple(new)] = c
        return Polynomial(ring, out, _trusted=True)


def homogeneous_components(p: Polynomial) -> dict:
    """Split p into homogeneous pieces keyed by weighted degree."""
    parts: dict = {}
    deg = p.ring.monomial_degree
    for m, c in p._terms.items():
        parts.setdefault(deg(m), {})[m] = c
    return {d: Polynomial(p.ring, t, _trusted=True) for d, t in sorted(parts.items())}


# ---------------------------------------------------------------------------
# printing


def format_monomial(ring: GradedRing, mono) -> str:
    parts = []
    for name, e in zip(ring.names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def print_canonical(p: Polynomial) -> str:
    """Deterministic text form; terms in descending grevlex order."""
    if p.is_zero():
        return "0"
    pieces = []
    for i, (c, m) in enumerate(p.terms):
        mono = format_monomial(p.ring, m)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if i == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:  # only trailing whitespace left
            break
        if mt.group(1) is not None:
            toks.append(("int", mt.group(1), mt.start(1)))
        elif mt.group(2) is not None:
            toks.append(("id", mt.group(2), mt.start(2)))
        else:
            ch = mt.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", mt.start(3))
            toks.append(("op", ch, mt.start(3)))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, ch):
        t = self.take()
        if t[0] != "op" or t[1] != ch:
            raise ParseError(f"expected {ch!r}, found {t[1] or 'end of input'!r}", t[2])

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":  # tolerate a leading sign
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            if op[1] == "*":
                acc = acc * self.factor()
                continue
            # extension: division by a natural-number literal, e.g. x^2/2
            d = self.take()
            if d[0] != "int":
                raise ParseError("can only divide by a natural-number literal", d[2])
            if int(d[1]) == 0:
                raise ZeroDenominator(f"zero denominator at col {d[2]}")
            acc = acc.scale(Q(1, int(d[1])))
        return acc

    def factor(self):
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                raise ParseError("exponent must be a natural number", t[2])
            base = base ** int(t[1])
        return base

    def base(self):
        t = self.take()
        if t[0] == "int":
            num = int(t[1])
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "int":
                    raise ParseError("denominator must be a natural number", d[2])
                if int(d[1]) == 0:
                    raise ZeroDenominator(f"zero denominator at col {d[2]}")
                return self.ring.const(Q(num, int(d[1])))
            return self.ring.const(num)
        if t[0] == "id":
            if t[1] not in self.ring:
                raise UnknownVariable(f"unknown variable {t[1]!r} at col {t[2]}")
            return self.ring.var(t[1])
        if t[0] == "op" and t[1] == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if t[0] == "op" and t[1] == "-":  # unary minus inside products, e.g. 2*-x
            return -self.factor()
        raise ParseError(f"unexpected {t[1] or 'end of input'!r}", t[2])


def parse_polynomial(text: str, ring: GradedRing) -> Polynomial:
    """Parse an expression of the documented grammar into a polynomial of `ring`."""
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    result = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected trailing {t[1]!r}", t[2])
    return result


# ---------------------------------------------------------------------------
# ring maps


class RingMap:
    """Degree-preserving substitution source -> target (optionally modulo an ideal of the target)."""

    def __init__(self, source: GradedRing, target: GradedRing, images, modulo=(), name=None):
        self.source = source
        self.target = target
        self.name = name
        if isinstance(images, Mapping):
            missing = [n for n in source.names if n not in images]
            extra = [n for n in images if n not in source]
            if extra:
                raise UnknownVariable(f"map assigns unknown source variables {extra}")
            if missing:
                raise DegreeMismatch(f"map leaves source variables unassigned: {missing}")
            images = [images[n] for n in source.names]
        imgs = []
        for name_, deg, img in zip(source.names, source.degrees, images):
            if isinstance(img, str):
                img = parse_polynomial(img, target)
            elif not isinstance(img, Polynomial):
                img = target.const(img)
            if img.ring != target:
                raise RingMismatch(f"image of {name_} lives in {img.ring}, expected {target}")
            if not img.is_zero() and (not img.is_homogeneous() or img.degree() != deg):
                raise DegreeMismatch(
                    f"image of {name_} (degree {deg}) is {img}, which is not homogeneous of degree {deg}"
                )
            imgs.append(img)
        if len(imgs) != source.nvars:
            raise DegreeMismatch("wrong number of images")
        self.images = tuple(imgs)
        self.modulo = tuple(modulo)

    def image_of(self, name: str) -> Polynomial:
        return self.images[self.source.index(name)]

    def __call__(self, p: Polynomial) -> Polynomial:
        return substitute(p, self)

    def compose(self, other: "RingMap") -> "RingMap":
        """self after other: other.source -> self.target."""
        if other.target != self.source:
            raise RingMismatch("composition of incompatible maps")
        return RingMap(other.source, self.target, [self(img) for img in other.images])

    def restrict(self, ring: GradedRing) -> "RingMap":
        """Restrict to a ring whose variables are a subset of the source's."""
        return RingMap(ring, self.target, {n: self.image_of(n) for n in ring.names}, self.modulo)

    def as_dict(self) -> dict:
        return dict(zip(self.source.names, self.images))

    @classmethod
    def identity(cls, ring: GradedRing) -> "RingMap":
        return cls(ring, ring, ring.gens())

    def __repr__(self):
        body = ", ".join(f"{n} -> {img}" for n, img in zip(self.source.names, self.images))
        return f"RingMap({body})"


def substitute(p: Polynomial, rmap: RingMap) -> Polynomial:
    """Apply a ring homomorphism to p."""
    if p.ring != rmap.source:
        raise RingMismatch(f"polynomial ring {p.ring} is not the map source {rmap.source}")
    target = rmap.target
    powers = [[target.one()] for _ in range(p.ring.nvars)]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * rmap.images[i])
        return cache[e]

    acc: dict = {}
    for m, c in p._terms.items():
        term = None
        for i, e in enumerate(m):
            if e:
                f = power(i, e)
                term = f if term is None else term * f
        if term is None:
            term = target.one()
        for tm, tc in term._terms.items():
            acc[tm] = acc.get(tm, ZERO) + c * tc
    return Polynomial(target, {m: c for m, c in acc.items() if c}, _trusted=True)
