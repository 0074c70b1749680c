"""GF(2^l) arithmetic on integer bit patterns.

Elements are integers in ``[0, 2^l)`` whose binary digits are the
coefficients of a polynomial over GF(2); arithmetic is done modulo a
fixed primitive polynomial of degree ``l``.  Addition is XOR.
Multiplication and inversion go through log/antilog tables built once
at context creation, so both are O(1) and vectorize over numpy arrays.

One polynomial is shipped per supported degree (``l`` = 1..16) so that
outputs are bit-exact reproducible:

    l=1 : x + 1                 l=9  : x^9 + x^4 + 1
    l=2 : x^2 + x + 1           l=10 : x^10 + x^3 + 1
    l=3 : x^3 + x + 1           l=11 : x^11 + x^2 + 1
    l=4 : x^4 + x + 1           l=12 : x^12 + x^6 + x^4 + x + 1
    l=5 : x^5 + x^2 + 1         l=13 : x^13 + x^4 + x^3 + x + 1
    l=6 : x^6 + x + 1           l=14 : x^14 + x^10 + x^6 + x + 1
    l=7 : x^7 + x^3 + 1         l=15 : x^15 + x + 1
    l=8 : x^8 + x^4 + x^3 + x^2 + 1   l=16 : x^16 + x^12 + x^3 + x + 1

All polynomials are primitive, i.e. x (bit pattern 2) generates the
multiplicative group; table construction verifies this and refuses a
modulus that is not.
"""

from __future__ import annotations

import functools

import numpy as np

# Primitive polynomial bit patterns, keyed by extension degree.
MODULI: dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100010001000011,
    15: 0b1000000000000011,
    16: 0b10001000000001011,
}


class Field:
    """Arithmetic context for GF(2^l), ``l`` in 1..16.

    Elements are plain ints.  The context is immutable after creation
    and safe to share between threads; every operation is a pure
    function of its arguments.
    """

    def __init__(self, ell: int) -> None:
        if ell not in MODULI:
            raise ValueError(f"unsupported extension degree {ell}; need 1 <= ell <= 16")
        self.ell = ell
        self.q = 1 << ell
        self.modulus = MODULI[ell]
        self.hex_width = (ell + 3) // 4

        # exp table doubled so mul can skip the mod-(q-1) reduction.
        q = self.q
        exp = np.zeros(2 * (q - 1) if q > 2 else 2, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        gen = 2 if ell > 1 else 1
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        if x != 1:
            raise ValueError(f"modulus {self.modulus:#x} is not primitive for ell={ell}")
        seen = set(int(v) for v in exp[: q - 1])
        if len(seen) != q - 1:
            raise ValueError(f"generator does not reach all of GF(2^{ell})*")
        exp[q - 1 :] = exp[: len(exp) - (q - 1)]
        self.exp = exp
        self.log = log

    def _mul_slow(self, a: int, b: int) -> int:
        """Carry-less multiply mod the context polynomial (table-free)."""
        p = 0
        while b:
            if b & 1:
                p ^= a
            a <<= 1
            if a & self.q:
                a ^= self.modulus
            b >>= 1
        return p

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is outside GF(2^{self.ell})")
        return a

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        """Multiplicative inverse; zero has none."""
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[self.q - 1 - self.log[a]])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a**e with the evaluation convention 0**0 = 1."""
        if e < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if e == 0 else 0
        if self.q == 2:
            return 1
        return int(self.exp[(int(self.log[a]) * e) % (self.q - 1)])

    # Vector versions used on the numpy paths.  Inputs are int arrays
    # of field elements; outputs are fresh int64 arrays.

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
        la = self.log[np.where(nz, a, 1)]
        lb = self.log[np.where(nz, b, 1)]
        out[...] = np.where(nz, self.exp[la + lb], 0)
        return out

    def pow_arr(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if self.q == 2:
            return a.copy()
        nz = a != 0
        la = self.log[np.where(nz, a, 1)]
        return np.where(nz, self.exp[(la * e) % (self.q - 1)], 0)

    def elements(self) -> range:
        return range(self.q)

    def to_hex(self, a: int) -> str:
        """Fixed-width lowercase hex of the bit pattern."""
        self.check(a)
        return format(a, f"0{self.hex_width}x")

    def from_hex(self, text: str) -> int:
        a = int(text, 16)
        return self.check(a)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.ell == self.ell

    def __hash__(self) -> int:
        return hash(("Field", self.ell))

    def __repr__(self) -> str:
        return f"Field(2^{self.ell})"


@functools.lru_cache(maxsize=None)
def field_for(ell: int) -> Field:
    """Shared context per extension degree (table build is not free)."""
    return Field(ell)


def field_of_order(q: int) -> Field:
    """Context for GF(q); q must be a power of two in [2, 2^16]."""
    if q < 2 or q & (q - 1):
        raise ValueError(f"field order {q} is not a power of two")
    return field_for(q.bit_length() - 1)


@functools.total_ordering
class FieldElement:
    """A field element bound to its context.

    Thin wrapper for API boundaries (parsing, CLI, symbolic checks);
    numeric internals work on raw ints through the ``Field`` methods.
    Mixing elements of different contexts raises ``ValueError``.
    """

    __slots__ = ("field", "bits")

    def __init__(self, field: Field, bits: int) -> None:
        self.field = field
        self.bits = field.check(bits)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"context mismatch: {self.field} vs {other.field}")
            return other.bits
        if isinstance(other, int):
            return self.field.check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.bits, b))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.bits, b))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.bits, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.bits))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.bits, b))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.field == self.field and other.bits == self.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self.bits < self._coerce(other)

    def __hash__(self) -> int:
        return hash((self.field.ell, self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def hex(self) -> str:
        return self.field.to_hex(self.bits)

    def __repr__(self) -> str:
        return f"FieldElement({self.field!r}, {self.bits})"
