from fractions import Fraction

import pytest

import oracles
from liftmult.census import (
    census,
    count_bad_dp,
    csv_rows,
    enumerate_good,
    multiplicity_monomial_count,
    total_type_s,
)
from liftmult.exponents import graded_lex_key, type_s_vectors
from liftmult.gf2e import field_of_order
from liftmult.multipoly import MultiPoly, canonical_lines, reduce_equiv, restrict_to_line


def brute_bad_count(m, s, q, r):
    bound = q * s - r
    return sum(1 for d in type_s_vectors(m, q, s) if oracles.is_bad_oracle(d, bound, q, s))


def test_enumerate_good_known_monomials():
    good = enumerate_good(2, 2, 4, 7)
    assert (2, 6) in good
    good6 = enumerate_good(2, 2, 4, 6)
    assert (6, 1) not in good6
    assert (3, 4) not in good6
    for q in (4, 8):
        assert len(enumerate_good(1, 1, q, q)) == q  # empty bad range


def test_enumerate_good_sorted_graded_lex():
    good = enumerate_good(2, 2, 4, 6)
    assert good == sorted(good, key=graded_lex_key)


def test_count_bad_dp_examples():
    assert count_bad_dp(2, 1, 4, 1) == brute_bad_count(2, 1, 4, 1)
    assert count_bad_dp(2, 2, 8, 2) == brute_bad_count(2, 2, 8, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("s", [1, 2])
@pytest.mark.parametrize("q", [4, 8])
def test_count_bad_dp_vs_enumeration_grid(m, s, q):
    for r in range(0, q):
        dp = count_bad_dp(m, s, q, r)
        good = len(enumerate_good(m, s, q, q * s - r))
        assert dp + good == total_type_s(m, s, q)


def test_count_bad_s1_independent_bruteforce():
    # s=1 census against a from-scratch enumeration over Z_q^m
    for q in (4, 8):
        for r in range(1, q):
            want = 0
            for d in type_s_vectors(2, q, 1):
                bad = False
                for i in oracles.dominated_vectors(d):
                    di = sum(i)
                    folded = di if di == 0 else 1 + (di - 1) % (q - 1)
                    if folded >= q - r:
                        bad = True
                        break
                want += bad
            assert count_bad_dp(2, 1, q, r) == want


def test_census_report():
    rep = census(2, 1, 4, 1)
    assert rep.total_type_s == 16
    assert rep.bad_count == 9
    assert rep.rate_lower_bound == Fraction(7, 16)
    assert rep.degree_bound == 3

    degenerate = census(2, 2, 4, 0)
    assert degenerate.bad_count == 0
    assert degenerate.rate_lower_bound == 1


def test_census_monotone_in_r():
    for m, s, q in [(2, 1, 8), (2, 2, 8), (3, 2, 4)]:
        goods = [census(m, s, q, r).good_count for r in range(0, q)]
        assert all(a >= b for a, b in zip(goods, goods[1:]))


def test_rate_at_least_multiplicity_fraction():
    rep = census(2, 2, 16, 4)
    mult = multiplicity_monomial_count(2, 2, 16, 4)
    assert rep.good_count >= mult
    assert rep.rate_lower_bound >= Fraction(mult, rep.total_type_s)


def test_multiplicity_monomial_count_is_direct_enumeration():
    for m, s, q, r in [(2, 2, 4, 1), (2, 2, 8, 3), (3, 2, 4, 2)]:
        bound = q * s - r
        direct = sum(
            1
            for d in type_s_vectors(m, q, s)
            if sum(d) < bound
        )
        assert multiplicity_monomial_count(m, s, q, r) == direct


@pytest.mark.parametrize("s,r", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_good_monomials_pass_line_test_q4(s, r):
    q = 4
    fld = field_of_order(q)
    bound = q * s - r
    lines = list(canonical_lines(fld, 2))
    for d in enumerate_good(2, s, q, bound):
        f = MultiPoly.monomial(fld, d)
        for line in lines:
            assert reduce_equiv(restrict_to_line(f, line), s).degree < bound


def test_good_monomials_pass_line_test_sampled_q8_q16():
    import numpy as np

    rng = np.random.default_rng(17)
    for q in (8, 16):
        fld = field_of_order(q)
        s, r = 2, 2
        bound = q * s - r
        good = enumerate_good(2, s, q, bound)
        lines = list(canonical_lines(fld, 2))
        for d in rng.choice(len(good), size=12, replace=False):
            f = MultiPoly.monomial(fld, good[int(d)])
            for li in rng.choice(len(lines), size=10, replace=False):
                assert reduce_equiv(restrict_to_line(f, lines[int(li)]), s).degree < bound


def test_parameter_validation():
    with pytest.raises(ValueError):
        count_bad_dp(2, 3, 4, 1)
    with pytest.raises(ValueError):
        count_bad_dp(2, 1, 6, 1)
    with pytest.raises(ValueError):
        count_bad_dp(2, 8, 4, 1)
    with pytest.raises(ValueError):
        count_bad_dp(2, 1, 4, 4)
    with pytest.raises(ValueError):
        enumerate_good(2, 2, 4, 9)


def test_csv_format():
    text = csv_rows([census(2, 2, 4, 1)])
    lines = text.strip().split("\n")
    assert lines[0] == "m,s,q,r,total,bad,good,rate"
    assert lines[1].startswith("2,2,4,1,48,")
