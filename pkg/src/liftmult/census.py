"""Good/bad monomial census, code dimension and rate bounds.

The census classifies every type-s exponent vector (deg_q <= s-1) as
good or bad for a degree bound d = qs - r and reports counts plus the
resulting rate lower bound good / (C(s+m-1, m) q^m).

Two independent routes exist on purpose:

* ``enumerate_good`` walks vectors one by one through the literal
  fold-based badness test (`exponents.is_bad`);
* ``count_bad_dp`` sweeps the whole space through the word-bitset
  kernel, iterating in a two-level split d = hat*q + d' so that whole
  hat blocks provably free of bad vectors are skipped, and using the
  fold-free criterion (raw achievable degree in [qs-r, qs)) whenever
  s >= m makes it equivalent to the fold-based one.

The kernel memoizes one histogram of per-vector maxima per (m, s, q),
so bad counts for every r are tail sums of the same array.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .exponents import achievable_bitset, is_bad, type_s_vectors


def _check_msq(m: int, s: int, q: int) -> None:
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if q < 2 or q & (q - 1):
        raise ValueError(f"q={q} is not a power of two")
    if s < 1 or s & (s - 1):
        raise ValueError(f"s={s} is not a power of two")
    if s > q:
        raise ValueError(f"need s <= q, got s={s}, q={q}")


def _check_params(m: int, s: int, q: int, r: int) -> None:
    _check_msq(m, s, q)
    if not 0 <= r < q:
        raise ValueError(f"need 0 <= r < q, got r={r}")


@dataclass(frozen=True)
class CensusReport:
    m: int
    s: int
    q: int
    r: int
    degree_bound: int
    total_type_s: int
    bad_count: int
    good_count: int
    rate_lower_bound: Fraction

    @property
    def rate_float(self) -> float:
        return float(self.rate_lower_bound)


def total_type_s(m: int, s: int, q: int) -> int:
    return math.comb(s + m - 1, m) * q**m


def enumerate_good(m: int, s: int, q: int, degree_bound: int):
    """All good vectors in graded-lex order, by the literal per-vector test."""
    _check_msq(m, s, q)
    if not s <= degree_bound <= q * s:
        raise ValueError(f"degree bound {degree_bound} outside [{s}, {q * s}]")
    return [d for d in type_s_vectors(m, q, s) if not is_bad(d, degree_bound, q, s)]


@functools.lru_cache(maxsize=None)
def _stat_histogram(m: int, s: int, q: int):
    """Histogram over type-s vectors of the per-vector census statistic.

    Statistic: the largest achievable degree below qs (fold-free mode,
    s >= m) or the largest folded achievable degree (general mode).
    Entry 0 also absorbs hat blocks skipped as provably all-good; those
    vectors can never reach a queried threshold qs - r > (s-1)q.
    """
    use_modfree = s >= m
    hist = np.zeros(q * s, dtype=np.int64)
    kept, init_bits = [], []
    for hat in itertools.product(range(s), repeat=m):
        if sum(hat) > s - 1:
            continue
        if use_modfree and sum(hat) < s - m:
            hist[0] += q**m
            continue
        kept.append(hat)
        init_bits.append(achievable_bitset(tuple(h * q for h in hat)))
    if kept:
        hist += _kernels.stat_histogram_blocks(kept, init_bits, m, q, s, use_modfree)
    hist.setflags(write=False)
    return hist


def count_bad_dp(m: int, s: int, q: int, r: int) -> int:
    """Exact bad count for degree bound qs - r via the kernel sweep."""
    _check_params(m, s, q, r)
    if r == 0:
        return 0
    hist = _stat_histogram(m, s, q)
    return int(hist[q * s - r :].sum())


def census(m: int, s: int, q: int, r: int) -> CensusReport:
    _check_params(m, s, q, r)
    total = total_type_s(m, s, q)
    bad = count_bad_dp(m, s, q, r)
    good = total - bad
    return CensusReport(
        m=m,
        s=s,
        q=q,
        r=r,
        degree_bound=q * s - r,
        total_type_s=total,
        bad_count=bad,
        good_count=good,
        rate_lower_bound=Fraction(good, total),
    )


def multiplicity_monomial_count(m: int, s: int, q: int, r: int) -> int:
    """Monomials of total degree < qs - r with deg_q <= s-1, by direct count.

    This is the dimension of the plain order-s evaluation code with the
    same degree bound; lifting can only add basis monomials.
    """
    _check_params(m, s, q, r)
    bound = q * s - r
    # deg(d) < qs - r already forces deg_q(d) <= s-1, so count all
    # non-negative m-vectors of total degree < bound.
    return math.comb(bound - 1 + m, m)


def csv_rows(reports) -> str:
    lines = ["m,s,q,r,total,bad,good,rate"]
    for rep in reports:
        lines.append(
            f"{rep.m},{rep.s},{rep.q},{rep.r},{rep.total_type_s},"
            f"{rep.bad_count},{rep.good_count},{rep.rate_float:.10g}"
        )
    return "\n".join(lines) + "\n"
