"""Arithmetic in the binary fields F_{2^n}, 1 <= n <= 24.

Elements are stored as little-endian bit strings in the power basis of the
lexicographically least irreducible modulus of degree ``n``, so the
F_2-rational constants 0 and 1 have the same encoding in every field.

Besides scalar arithmetic, each field lazily builds discrete log / antilog
tables that the counting code uses for vectorised evaluation over the whole
field.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
import threading

import numpy as np

MAX_DEGREE = 24


class FieldMismatchError(ValueError):
    pass


# -- bit-polynomial helpers (ints as polynomials over F_2) -------------------

def bit_degree(a: int) -> int:
    """Degree of a bit polynomial; -1 for zero."""
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def bit_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def bit_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def bit_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, bit_mod(a, b)
    return a


def bit_mulmod(a: int, b: int, m: int) -> int:
    return bit_mod(clmul(a, b), m)


def is_irreducible(p: int) -> bool:
    """Ben-Or test: ``p`` has no factor of degree d <= deg(p)/2.

    A factor of degree d divides x^(2^d) - x, so we iterate squarings of x
    modulo p and take gcds.
    """
    n = bit_degree(p)
    if n <= 0:
        return False
    if n == 1:
        return True
    if not p & 1:
        return False
    h = 0b10
    for _ in range(n // 2):
        h = bit_mulmod(h, h, p)
        if bit_gcd(p, h ^ 0b10) != 1:
            return False
    return True


def least_irreducible(n: int) -> int:
    if n == 1:
        return 0b11  # F_2 itself, with t = 1
    for cand in range(1 << n, 1 << (n + 1)):
        if is_irreducible(cand):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- fields and elements -----------------------------------------------------

class BinaryField:
    """The field F_{2^n} with its canonical modulus and trace mask.

    Use :func:`field_create` rather than instantiating directly; it caches one
    instance per degree.
    """

    def __init__(self, n: int):
        if not isinstance(n, int) or not 1 <= n <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {n!r}")
        self.n = n
        self.order = 1 << n
        self.modulus = least_irreducible(n)
        self.trace_mask = 0
        for i in range(n):
            if self._trace_by_squaring(1 << i):
                self.trace_mask |= 1 << i
        assert self.trace_mask, "trace must be surjective"
        self._tables = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"BinaryField(n={self.n}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, BinaryField) and other.n == self.n

    def __hash__(self):
        return hash(("BinaryField", self.n))

    def __reduce__(self):
        return (field_create, (self.n,))

    def __call__(self, bits: int) -> FieldElement:
        return FieldElement(bits, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    @property
    def gen(self) -> FieldElement:
        """The power-basis generator t = x mod modulus."""
        return FieldElement(bit_mod(0b10, self.modulus), self)

    def elements(self):
        for v in range(self.order):
            yield FieldElement(v, self)

    # raw int-level operations, shared with FieldElement and the tables
    def mul_bits(self, a: int, b: int) -> int:
        return bit_mulmod(a, b, self.modulus)

    def pow_bits(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_bits(r, a)
            a = self.mul_bits(a, a)
            e >>= 1
        return r

    def trace_bits(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    def _trace_by_squaring(self, a: int) -> int:
        t, s = 0, a
        for _ in range(self.n):
            t ^= s
            s = self.mul_bits(s, s)
        assert t in (0, 1)
        return t

    # -- bulk tables --------------------------------------------------------

    def primitive_element(self) -> int:
        m = self.order - 1
        if m == 1:
            return 1
        cofactors = [m // p for p in _prime_factors(m)]
        for g in range(2, self.order):
            if all(self.pow_bits(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("unreachable: multiplicative group is cyclic")

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(exp, log)`` for a fixed primitive element g.

        ``exp[k] = g^k`` for 0 <= k < 2^n - 1 and ``log[exp[k]] = k``;
        ``log[0]`` is -1.
        """
        with self._lock:
            if self._tables is None:
                self._tables = self._build_tables()
        return self._tables

    def _build_tables(self):
        m = self.order - 1
        g = self.primitive_element()
        exp = np.empty(m, dtype=np.int64)
        exp[0] = 1
        filled, step = 1, g  # step == g^filled
        while filled < m:
            take = min(filled, m - filled)
            exp[filled:filled + take] = self.mul_const_array(exp[:take], step)
            filled += take
            step = self.mul_bits(step, step)
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(m, dtype=np.int64)
        return exp, log

    def mul_const_array(self, arr: np.ndarray, c: int) -> np.ndarray:
        """Vectorised product of every entry of ``arr`` with the constant ``c``."""
        arr = np.asarray(arr, dtype=np.int64)
        r = np.zeros_like(arr)
        i = 0
        while c >> i:
            if (c >> i) & 1:
                r ^= arr << i
            i += 1
        for k in range(2 * self.n - 2, self.n - 1, -1):
            hit = (r >> k) & 1
            r ^= hit * (self.modulus << (k - self.n))
        return r

    def trace_array(self, arr: np.ndarray) -> np.ndarray:
        masked = np.asarray(arr, dtype=np.int64) & self.trace_mask
        return (np.bitwise_count(masked) & 1).astype(np.int8)


@lru_cache(maxsize=None)
def field_create(n: int) -> BinaryField:
    """The canonical F_{2^n}; one shared instance per degree."""
    return BinaryField(n)


@dataclass(frozen=True)
class FieldElement:
    bits: int
    field: BinaryField = dc_field(repr=False)

    def __post_init__(self):
        if not 0 <= self.bits < self.field.order:
            raise ValueError(f"{self.bits:#x} is not an element of {self.field}")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.bits ^ other.bits, self.field)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        return gf_mul(self, other)

    def __truediv__(self, other):
        return gf_mul(self, gf_inv(other))

    def __pow__(self, e: int):
        if e < 0:
            return gf_inv(self) ** (-e)
        return FieldElement(self.field.pow_bits(self.bits, e), self.field)

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"GF(2^{self.field.n})({self.bits:#x})"

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_one(self) -> bool:
        return self.bits == 1


def gf_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.field.mul_bits(a.bits, b.bits), a.field)


def gf_inv(a: FieldElement) -> FieldElement:
    if a.bits == 0:
        raise ZeroDivisionError("zero has no inverse")
    # extended Euclid on bit polynomials
    r0, r1 = a.field.modulus, a.bits
    s0, s1 = 0, 1
    while r1 != 1:
        q, r = bit_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ clmul(q, s1)
    return FieldElement(bit_mod(s1, a.field.modulus), a.field)


def gf_sqrt(a: FieldElement) -> FieldElement:
    """The unique square root, a^(2^(n-1))."""
    f = a.field
    r = a.bits
    for _ in range(f.n - 1):
        r = f.mul_bits(r, r)
    return FieldElement(r, f)


def trace(a: FieldElement) -> int:
    """Absolute trace to F_2 as 0 or 1."""
    return a.field.trace_bits(a.bits)
