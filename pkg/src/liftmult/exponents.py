"""Bit combinatorics on monomial exponent vectors.

An exponent vector is a plain tuple of ``m`` ints, each in ``Z_qs``
(component context ``(m, q, s)`` is passed explicitly).  This module
owns the binary domination order, binomial parity, the degree fold that
order-s equivalence induces on monomial exponents, and the good/bad
classification that decides which monomials the code keeps.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def dominated_le2(a: int, b: int) -> bool:
    """True iff every binary digit of ``a`` is <= the digit of ``b``."""
    return a & b == a


def binom_parity(n: int, k: int) -> int:
    """C(n, k) mod 2: 1 exactly when the digits of k are dominated by n."""
    if k < 0 or k > n:
        return 0
    return 1 if k & n == k else 0


def fold_degree(a: int, q: int, s: int) -> int:
    """Canonical exponent in ``Z_qs`` with ``T^a`` equivalent to order s.

    Exponents below ``s`` are fixed; anything else lands on the unique
    representative in ``[s, qs)`` of its residue class mod ``qs - s``.
    """
    if a < s:
        return a
    return s + (a - s) % (q * s - s)


def deg_q(d: Iterable[int], q: int) -> int:
    """Sum of ``d_j // q``: the derivative-order budget a vector uses."""
    return sum(c // q for c in d)


def achievable_bitset(d: Iterable[int]) -> int:
    """Bitset of all degrees of vectors dominated by ``d``.

    Subset-sum recurrence over the set bits of every component: choosing
    a dominated vector means choosing a subset of bits per component, so
    the reachable degrees are exactly the subset sums of all bit values.
    """
    bits = 1
    for c in d:
        while c:
            low = c & -c
            bits |= bits << low
            c ^= low
    return bits


def achievable_degrees(d: Iterable[int]) -> set[int]:
    bits = achievable_bitset(d)
    out = set()
    i = 0
    while bits:
        if bits & 1:
            out.add(i)
        bits >>= 1
        i += 1
    return out


def fold_bitset(bits: int, q: int, s: int) -> int:
    """Apply ``fold_degree`` to every member of a degree bitset.

    Degrees < qs keep their position; each higher block of width
    ``qs - s`` folds down onto ``[s, qs)``.
    """
    qs = q * s
    period = qs - s
    out = bits & ((1 << qs) - 1)
    bits >>= period
    window = ((1 << qs) - 1) ^ ((1 << s) - 1)
    while bits >> s:
        out |= bits & window
        bits >>= period
    return out


def max_folded_degree(d: Iterable[int], q: int, s: int) -> int:
    """Largest folded degree achievable from vectors dominated by ``d``."""
    return fold_bitset(achievable_bitset(d), q, s).bit_length() - 1


def is_bad(d: tuple[int, ...], degree_bound: int, q: int, s: int) -> bool:
    """Whether the monomial ``X^d`` restricts to degree >= degree_bound.

    ``X^d`` is bad when some dominated vector has a folded degree in
    ``[degree_bound, qs)``; on every line such a monomial can leave a
    coefficient at or above the bound, so it cannot join the code basis.
    """
    qs = q * s
    if deg_q(d, q) > s - 1:
        raise ValueError(f"{d} is not a type-s vector for s={s}, q={q}")
    if not s <= degree_bound <= qs:
        raise ValueError(f"degree bound {degree_bound} outside [{s}, {qs}]")
    return max_folded_degree(d, q, s) >= degree_bound


def graded_lex_key(d: tuple[int, ...]):
    """Sort key: total degree first, then lexicographic with the first
    coordinate weighted heaviest ((1,0) precedes (0,1))."""
    return (sum(d), tuple(-c for c in d))


def type_s_vectors(m: int, q: int, s: int) -> Iterator[tuple[int, ...]]:
    """All d in Z_qs^m with deg_q(d) <= s-1, in graded-lex order."""
    qs = q * s

    def rec(prefix: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == m:
            yield prefix
            return
        for c in range(qs):
            used = c // q
            if used <= budget:
                yield from rec(prefix + (c,), budget - used)

    yield from sorted(rec((), s - 1), key=graded_lex_key)


def format_vector(d: Iterable[int]) -> str:
    """Comma-separated decimal components, e.g. ``6,1``."""
    return ",".join(str(c) for c in d)


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad exponent vector {text!r}") from exc
