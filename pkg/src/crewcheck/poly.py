"""Polynomials and rational functions over F_2.

A :class:`Poly2` is a bit string (bit i is the coefficient of x^i); a
:class:`RationalFunction` is a coprime pair of them.  Over F_2 every nonzero
polynomial is monic, so the coprime representation is already canonical.

The module also carries the small expression language used to enter curve
equations, a complete factoriser over F_2, evaluation at points of F_{2^n},
pole orders at the places of the projective line and Laurent expansions at
its rational places.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import total_ordering

from .gf2n import (
    FieldElement,
    bit_divmod,
    bit_gcd,
    bit_mod,
    bit_mulmod,
    clmul,
    field_create,
    gf_inv,
    gf_mul,
)


@total_ordering
@dataclass(frozen=True)
class Poly2:
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bit string must be nonnegative")

    @classmethod
    def from_exponents(cls, exps) -> Poly2:
        b = 0
        for e in exps:
            b ^= 1 << e
        return cls(b)

    @property
    def degree(self) -> int | None:
        """Degree, or ``None`` for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else None

    def exponents(self) -> list[int]:
        return [i for i in range(self.bits.bit_length()) if (self.bits >> i) & 1]

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1

    def __bool__(self):
        return self.bits != 0

    def __lt__(self, other: Poly2):
        # lexicographic order: by degree, then by coefficient string from the top
        return self.bits < other.bits

    def __add__(self, other: Poly2) -> Poly2:
        return Poly2(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: Poly2) -> Poly2:
        return Poly2(clmul(self.bits, other.bits))

    def __pow__(self, e: int) -> Poly2:
        r, a = Poly2(1), self
        while e:
            if e & 1:
                r = r * a
            a = a * a
            e >>= 1
        return r

    def __divmod__(self, other: Poly2) -> tuple[Poly2, Poly2]:
        q, r = bit_divmod(self.bits, other.bits)
        return Poly2(q), Poly2(r)

    def __floordiv__(self, other: Poly2) -> Poly2:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly2) -> Poly2:
        if not other:
            raise ZeroDivisionError("reduction modulo the zero polynomial")
        return Poly2(bit_mod(self.bits, other.bits))

    def gcd(self, other: Poly2) -> Poly2:
        return Poly2(bit_gcd(self.bits, other.bits))

    def derivative(self) -> Poly2:
        # d/dx x^i = i x^(i-1); only odd i survive mod 2
        odd = self.bits & int("10" * ((self.bits.bit_length() + 1) // 2), 2) if self.bits else 0
        return Poly2(odd >> 1)

    def sqrt(self) -> Poly2:
        """Square root of a polynomial with only even exponents."""
        out = 0
        for i in self.exponents():
            if i & 1:
                raise ValueError(f"{self} is not a square")
            out |= 1 << (i // 2)
        return Poly2(out)

    def reverse(self, length: int | None = None) -> Poly2:
        """x^length * p(1/x), with length defaulting to deg p."""
        if not self.bits:
            return self
        d = self.degree if length is None else length
        out = 0
        for i in self.exponents():
            out |= 1 << (d - i)
        return Poly2(out)

    def shift_by_one(self) -> Poly2:
        """p(x + 1)."""
        r = Poly2(0)
        for i in reversed(range(self.bits.bit_length())):
            r = r * Poly2(0b11) + Poly2((self.bits >> i) & 1)
        return r

    def valuation(self) -> int:
        """Order of vanishing at x = 0 (requires p != 0)."""
        return (self.bits & -self.bits).bit_length() - 1

    def __call__(self, x: FieldElement) -> FieldElement:
        f = x.field
        r = 0
        for i in reversed(range(self.bits.bit_length())):
            r = f.mul_bits(r, x.bits) ^ ((self.bits >> i) & 1)
        return FieldElement(r, f)

    def __str__(self):
        if not self.bits:
            return "0"
        terms = []
        for i in self.exponents():
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly2({self})"


X = Poly2(0b10)
ONE = Poly2(1)


class _Pole:
    def __repr__(self):
        return "POLE"


POLE = _Pole()


@dataclass(frozen=True)
class RationalFunction:
    num: Poly2
    den: Poly2 = ONE

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = self.num.gcd(self.den) if self.num else self.den
        if not g.is_one():
            object.__setattr__(self, "num", self.num // g)
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, p) -> RationalFunction:
        if isinstance(p, RationalFunction):
            return p
        if isinstance(p, int):
            return cls(Poly2(p & 1))
        return cls(p)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.bits in (0, 1)

    def __add__(self, other) -> RationalFunction:
        other = RationalFunction.of(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __sub__ = __add__
    __radd__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other) -> RationalFunction:
        other = RationalFunction.of(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = RationalFunction.of(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return RationalFunction.of(other) / self

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def wp(self) -> RationalFunction:
        """The Artin-Schreier operator g -> g^2 + g."""
        return self * self + self

    def __call__(self, x: FieldElement):
        return eval_ratfunc(self, x)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"{_wrap(self.num)}/{_wrap(self.den)}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _wrap(p: Poly2) -> str:
    s = str(p)
    return f"({s})" if " + " in s else s


@total_ordering
@dataclass(frozen=True)
class Place:
    """A closed point of the projective line over F_2.

    ``poly`` is the monic irreducible polynomial of a finite place and ``None``
    at infinity.
    """

    poly: Poly2 | None = None

    @classmethod
    def infinity(cls) -> Place:
        return cls(None)

    @classmethod
    def finite(cls, poly: Poly2) -> Place:
        if poly.degree is None or poly.degree < 1:
            raise ValueError("finite place needs a polynomial of positive degree")
        return cls(poly)

    @property
    def kind(self) -> str:
        return "infinity" if self.poly is None else "finite"

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def is_rational(self) -> bool:
        return self.degree == 1

    def _key(self):
        return (1, 0) if self.poly is None else (0, self.poly.bits)

    def __lt__(self, other: Place):
        return self._key() < other._key()

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def __repr__(self):
        return f"Place({self})"


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(\\frac|\\dfrac|\\tfrac)|(\\left|\\right)|([x()\[\]{}^+\-*/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("frac", m.group(2), start))
        elif m.group(3) is None:
            toks.append((m.group(4), m.group(4), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    _OPEN = {"(": ")", "[": "]", "{": "}"}

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def error(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    def parse(self) -> RationalFunction:
        if self.peek()[0] == "end":
            self.error("empty expression")
        r = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return r

    def expr(self) -> RationalFunction:
        if self.peek()[0] in "+-":
            self.take()
        r = self.term()
        while self.peek()[0] in ("+", "-"):
            self.take()
            r = r + self.term()
        return r

    def _starts_atom(self) -> bool:
        return self.peek()[0] in ("num", "x", "frac") or self.peek()[0] in self._OPEN

    def term(self) -> RationalFunction:
        r = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                r = r * self.power()
            elif kind == "/":
                tok = self.take()
                d = self.power()
                if d.is_zero():
                    raise ParseError("division by zero", self.text, tok[2])
                r = r / d
            elif self._starts_atom():
                r = r * self.power()
            else:
                return r

    def power(self) -> RationalFunction:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] == "{":
                self.take()
                e = int(self.take("num")[1])
                self.take("}")
            else:
                e = int(self.take("num")[1])
            base = base ** e
        return base

    def atom(self) -> RationalFunction:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return RationalFunction.of(int(val))
        if kind == "x":
            self.take()
            return RationalFunction(X)
        if kind in self._OPEN:
            self.take()
            r = self.expr()
            self.take(self._OPEN[kind])
            return r
        if kind == "frac":
            self.take()
            self.take("{")
            n = self.expr()
            self.take("}")
            brace = self.take("{")
            d = self.expr()
            self.take("}")
            if d.is_zero():
                raise ParseError("division by zero", self.text, brace[2])
            return n / d
        self.error("expected a number, 'x' or a parenthesised expression"
                   if kind != "end" else "unexpected end of input")


def parse_ratfunc(text: str) -> RationalFunction:
    """Parse an element of F_2(x).

    Accepts sums, products and quotients of integers and powers of ``x``,
    with ``-`` read as ``+`` and integers reduced mod 2.  LaTeX spellings
    (``\\frac{a}{b}``, ``x^{21}``) are accepted too, so the curve equations
    can be pasted from typeset sources.
    """
    return _Parser(text).parse()


# -- factorisation -----------------------------------------------------------

def _squarefree(p: Poly2) -> list[tuple[Poly2, int]]:
    """Squarefree decomposition in characteristic 2: [(s_i, mult_i)]."""
    out: list[tuple[Poly2, int]] = []
    if p.degree == 0:
        return out
    dp = p.derivative()
    if not dp:
        for s, m in _squarefree(p.sqrt()):
            out.append((s, 2 * m))
        return out
    c = p.gcd(dp)
    w = p // c
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        z = w // y
        if not z.is_one():
            out.append((z, i))
        i += 1
        w, c = y, c // y
    if not c.is_one():
        for s, m in _squarefree(c.sqrt()):
            out.append((s, 2 * m))
    return out


def _distinct_degree(p: Poly2) -> list[tuple[Poly2, int]]:
    out = []
    h = X % p if p.degree > 1 else X
    d = 0
    rest = p
    while rest.degree is not None and rest.degree >= 2 * (d + 1):
        d += 1
        h = Poly2(bit_mulmod(h.bits, h.bits, rest.bits))
        g = rest.gcd(h + X)
        if not g.is_one():
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree:
        out.append((rest, rest.degree))
    return out


def _equal_degree(p: Poly2, d: int, rng: random.Random) -> list[Poly2]:
    if p.degree == d:
        return [p]
    n = p.degree
    while True:
        r = Poly2(rng.getrandbits(n)) % p
        if r.degree is None or r.degree < 1:
            continue
        # trace map r + r^2 + ... + r^(2^(d-1)) mod p splits the factors in two
        t, s = r, r
        for _ in range(d - 1):
            s = Poly2(bit_mulmod(s.bits, s.bits, p.bits))
            t = t + s
        g = p.gcd(t)
        if 0 < g.degree < n:
            return _equal_degree(g, d, rng) + _equal_degree(p // g, d, rng)


def factor_f2(p: Poly2, seed: int = 0x5EED) -> list[tuple[Poly2, int]]:
    """Complete factorisation over F_2, sorted lexicographically.

    ``seed`` feeds the equal-degree splitting; the result does not depend on
    it.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    mult: dict[Poly2, int] = {}
    for s, m in _squarefree(p):
        for g, d in _distinct_degree(s):
            for q in _equal_degree(g, d, rng):
                mult[q] = mult.get(q, 0) + m
    return sorted(mult.items())


# -- evaluation and local data -----------------------------------------------

def eval_ratfunc(f: RationalFunction, x: FieldElement):
    """f(x) in the field of x, or :data:`POLE` where the denominator vanishes."""
    d = f.den(x)
    if d.is_zero():
        return POLE
    return gf_mul(f.num(x), gf_inv(d))


def pole_orders(f: RationalFunction) -> dict[Place, int]:
    out: dict[Place, int] = {}
    if f.den.degree:
        for q, m in factor_f2(f.den):
            out[Place.finite(q)] = m
    if f.num and f.num.degree > f.den.degree:
        out[Place.infinity()] = f.num.degree - f.den.degree
    return dict(sorted(out.items()))


def _local_pair(f: RationalFunction, place: Place) -> tuple[Poly2, Poly2, int]:
    """(N, D, shift) with f = t^shift * N(t)/D(t) in the local parameter t."""
    if not place.is_rational():
        raise NotImplementedError(f"Laurent expansion at non-rational place {place}")
    if place.poly is None:
        # x = 1/t
        dn = f.num.degree if f.num else 0
        return f.num.reverse(dn), f.den.reverse(), f.den.degree - dn
    if place.poly.bits == 0b11:
        return f.num.shift_by_one(), f.den.shift_by_one(), 0
    return f.num, f.den, 0


def valuation_at(f: RationalFunction, place: Place) -> int | None:
    """Order of f at a place (negative for poles); ``None`` for f = 0."""
    if f.is_zero():
        return None
    if place.poly is None:
        return f.den.degree - f.num.degree
    v = 0
    for poly, sign in ((f.num, 1), (f.den, -1)):
        while not (poly % place.poly):
            poly = poly // place.poly
            v += sign
    return v


def laurent_coefficients(f: RationalFunction, place: Place, count: int):
    """Leading Laurent data of f at a rational place.

    Returns ``(start, coeffs)``: ``coeffs[k]`` is the coefficient of
    t^(start + k) in the local parameter t (x - a, or 1/x at infinity), and
    ``start`` is the order of f there.  Coefficients are elements of F_2.
    """
    F2 = field_create(1)
    if f.is_zero():
        return 0, [F2.zero] * count
    num, den, shift = _local_pair(f, place)
    vn, vd = num.valuation(), den.valuation()
    num = Poly2(num.bits >> vn)
    den = Poly2(den.bits >> vd)
    # power series num/den mod t^count, den(0) = 1
    mask = (1 << count) - 1
    rem = num.bits & mask
    q = 0
    for k in range(count):
        if (rem >> k) & 1:
            q |= 1 << k
            rem ^= (den.bits << k) & mask
    coeffs = [F2((q >> k) & 1) for k in range(count)]
    return shift + vn - vd, coeffs
