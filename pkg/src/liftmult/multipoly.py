"""Polynomials over GF(q): sparse in m variables, dense in one.

Carries the machinery the code construction rests on: Hasse
derivatives, vectors of derivative evaluations, restriction of an
m-variate polynomial to a line, and reduction of a univariate
polynomial to its canonical representative under order-s equivalence
(two polynomials are equivalent when all their Hasse derivatives of
order < s agree at every field point).

Derivative vectors are laid out in graded-lex order on the order
vector: total degree ascending, ties broken with the first coordinate
heaviest, e.g. for m=2, s=2 the layout is (0,0), (1,0), (0,1).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .exponents import binom_parity, fold_degree, graded_lex_key
from .gf2e import Field


@functools.lru_cache(maxsize=None)
def derivative_orders(m: int, s: int) -> tuple[tuple[int, ...], ...]:
    """All order vectors with total degree < s, in the documented layout."""
    orders = [i for i in itertools.product(range(s), repeat=m) if sum(i) < s]
    return tuple(sorted(orders, key=graded_lex_key))


def symbol_width(m: int, s: int) -> int:
    return len(derivative_orders(m, s))


class UniPoly:
    """Dense univariate polynomial; ``coeffs[e]`` is the T^e coefficient."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs) -> None:
        self.field = field
        cs = [field.check(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def zero(cls, field: Field) -> "UniPoly":
        return cls(field, [])

    @classmethod
    def monomial(cls, field: Field, degree: int, coeff: int = 1) -> "UniPoly":
        return cls(field, [0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.ell, tuple(self.coeffs)))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        if other.field != self.field:
            raise ValueError("context mismatch")
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for e, c in enumerate(b):
            out[e] ^= c
        return UniPoly(self.field, out)

    def scale(self, c: int) -> "UniPoly":
        mul = self.field.mul
        return UniPoly(self.field, [mul(c, x) for x in self.coeffs])

    def mul(self, other: "UniPoly") -> "UniPoly":
        if not self or not other:
            return UniPoly.zero(self.field)
        fmul = self.field.mul
        out = [0] * (self.degree + other.degree + 1)
        for e1, c1 in enumerate(self.coeffs):
            if c1 == 0:
                continue
            for e2, c2 in enumerate(other.coeffs):
                if c2:
                    out[e1 + e2] ^= fmul(c1, c2)
        return UniPoly(self.field, out)

    def coeff(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = self.field.mul(acc, x) ^ c
        return acc

    def hasse(self, j: int) -> "UniPoly":
        """j-th Hasse derivative: coefficient e maps to C(e, j) mod 2 at e-j."""
        out = [0] * max(0, len(self.coeffs) - j)
        for e, c in enumerate(self.coeffs):
            if c and e >= j and binom_parity(e, j):
                out[e - j] = c
        return UniPoly(self.field, out)

    def eval_hasse(self, x: int, j: int) -> int:
        return self.hasse(j)(x)

    def __repr__(self) -> str:
        return f"UniPoly({self.field!r}, {self.coeffs})"


def reduce_equiv(h: UniPoly, s: int) -> UniPoly:
    """Canonical degree <= qs-1 polynomial equivalent to ``h`` up to order s.

    Repeatedly rewrites T^(qs) as T^s, i.e. slides any exponent at or
    above qs down by qs - s until everything sits below qs.
    """
    q = h.field.q
    qs = q * s
    if h.degree < qs:
        return h
    coeffs = list(h.coeffs)
    for e in range(len(coeffs) - 1, qs - 1, -1):
        c = coeffs[e]
        if c:
            coeffs[e] = 0
            coeffs[e - (qs - s)] ^= c
    return UniPoly(h.field, coeffs)


def equiv_up_to_order(f: UniPoly, g: UniPoly, s: int) -> bool:
    """Whether all Hasse derivatives of order < s agree at every point."""
    return reduce_equiv(f, s) == reduce_equiv(g, s)


@dataclass(frozen=True)
class Line:
    """Parameterized line base + T*direction in F_q^m."""

    base: tuple[int, ...]
    direction: tuple[int, ...]

    def __post_init__(self):
        if len(self.base) != len(self.direction):
            raise ValueError("base/direction dimension mismatch")
        if not any(self.direction):
            raise ValueError("line direction must be nonzero")

    @property
    def m(self) -> int:
        return len(self.base)

    def point(self, field: Field, t: int) -> tuple[int, ...]:
        return tuple(w ^ field.mul(t, v) for w, v in zip(self.base, self.direction))


def canonical_lines(field: Field, m: int):
    """Every geometric line exactly once.

    Normal form: the first nonzero direction coordinate is 1 and the
    base coordinate at that position is 0 (each line has exactly one
    such parameterization), giving q^(m-1)(q^m - 1)/(q - 1) lines.
    """
    q = field.q
    for pivot in range(m):
        free_dir = m - pivot - 1
        for tail in itertools.product(range(q), repeat=free_dir):
            direction = (0,) * pivot + (1,) + tail
            for base_rest in itertools.product(range(q), repeat=m - 1):
                base = base_rest[:pivot] + (0,) + base_rest[pivot:]
                yield Line(base, direction)


class MultiPoly:
    """Sparse m-variate polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("field", "m", "terms")

    def __init__(self, field: Field, m: int, terms=None) -> None:
        self.field = field
        self.m = m
        clean = {}
        for d, c in (terms or {}).items():
            field.check(c)
            if len(d) != m:
                raise ValueError(f"exponent {d} has wrong arity")
            if any(e < 0 for e in d):
                raise ValueError(f"negative exponent in {d}")
            if c:
                clean[tuple(d)] = c
        self.terms = clean

    @classmethod
    def zero(cls, field: Field, m: int) -> "MultiPoly":
        return cls(field, m, {})

    @classmethod
    def monomial(cls, field: Field, d, coeff: int = 1) -> "MultiPoly":
        return cls(field, len(d), {tuple(d): coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and other.field == self.field
            and other.m == self.m
            and other.terms == self.terms
        )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if other.field != self.field or other.m != self.m:
            raise ValueError("context mismatch")
        terms = dict(self.terms)
        for d, c in other.terms.items():
            nc = terms.get(d, 0) ^ c
            if nc:
                terms[d] = nc
            else:
                terms.pop(d, None)
        return MultiPoly(self.field, self.m, terms)

    def scale(self, c: int) -> "MultiPoly":
        mul = self.field.mul
        return MultiPoly(self.field, self.m, {d: mul(c, x) for d, x in self.terms.items()})

    @property
    def degree(self) -> int:
        return max((sum(d) for d in self.terms), default=-1)

    def hasse(self, i) -> "MultiPoly":
        """Derivative of order vector i.

        A term X^d survives exactly when every component of i is
        binary-dominated by the matching component of d (odd binomial),
        landing on X^(d-i) with the same coefficient.
        """
        i = tuple(i)
        out = {}
        for d, c in self.terms.items():
            if all(binom_parity(dj, ij) for dj, ij in zip(d, i)):
                nd = tuple(dj - ij for dj, ij in zip(d, i))
                out[nd] = out.get(nd, 0) ^ c
        return MultiPoly(self.field, self.m, out)

    def __call__(self, x) -> int:
        fld = self.field
        acc = 0
        for d, c in self.terms.items():
            v = c
            for xj, dj in zip(x, d):
                v = fld.mul(v, fld.pow(xj, dj))
            acc ^= v
        return acc

    def restrict(self, line: Line) -> UniPoly:
        return restrict_to_line(self, line)

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, m={self.m}, {self.terms})"


def hasse_derivative(f: MultiPoly, i) -> MultiPoly:
    return f.hasse(i)


def eval_derivatives_below(f: MultiPoly, x, s: int) -> tuple[int, ...]:
    """Vector of f^(i)(x) over all order vectors with deg(i) < s."""
    return tuple(f.hasse(i)(x) for i in derivative_orders(f.m, s))


def restrict_to_line(f: MultiPoly, line: Line) -> UniPoly:
    """Substitute X_j = base_j + direction_j * T and expand.

    Each factor (w + vT)^d expands over the binary-dominated exponents
    of d only (all other binomials are even), so a factor has at most
    2^popcount(d) terms.
    """
    fld = f.field
    if line.m != f.m:
        raise ValueError("line dimension mismatch")
    total = UniPoly.zero(fld)
    for d, c in f.terms.items():
        prod = UniPoly(fld, [c])
        for w, v, dj in zip(line.base, line.direction, d):
            factor = [0] * (dj + 1)
            sub = dj
            while True:  # enumerate i <=_2 dj
                i = dj ^ sub
                factor[i] = fld.mul(fld.pow(w, dj - i), fld.pow(v, i))
                if sub == 0:
                    break
                sub = (sub - 1) & dj
            prod = prod.mul(UniPoly(fld, factor))
            if not prod:
                break
        total = total + prod
    return total


def monomial_line_coeff(field: Field, d, line: Line, k: int, s: int) -> int:
    """Coefficient k of the reduced restriction of X^d, in closed form.

    Sums direction^i * base^(d-i) over dominated i whose folded total
    degree equals k; agrees with restrict + reduce term by term.
    """
    q = field.q
    d = tuple(d)
    acc = 0
    ranges = []
    for dj in d:
        subs = []
        sub = dj
        while True:
            subs.append(dj ^ sub)
            if sub == 0:
                break
            sub = (sub - 1) & dj
        ranges.append(subs)
    for i in itertools.product(*ranges):
        if fold_degree(sum(i), q, s) != k:
            continue
        v = 1
        for ij, dj, aj, bj in zip(i, d, line.direction, line.base):
            v = field.mul(v, field.mul(field.pow(aj, ij), field.pow(bj, dj - ij)))
        acc ^= v
    return acc
