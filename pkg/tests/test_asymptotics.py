import math

import numpy as np
import pytest

from liftmult.asymptotics import (
    CURVE_KINDS,
    binom_at_least,
    census_eigenvalue,
    curve_csv,
    dominant_eigenvalue,
    eigenvalue_gap,
    eigenvalue_gap_bounds,
    minimized_exponent,
    pir_exponent,
    redundancy_curve,
    transfer_matrix,
)

TABLE = {
    2: 3.0000,
    3: 7.2361,
    4: 15.5436,
    5: 31.7877,
    6: 63.9217,
    7: 127.9763,
    8: 255.9939,
    9: 511.9986,
    10: 1023.9997,
}


def test_transfer_matrix_m2():
    assert transfer_matrix(2).tolist() == [[3, 1], [0, 1]]


def test_transfer_matrix_m3_row1_and_zeros():
    A = transfer_matrix(3)
    assert A[0].tolist() == [7, 1, 0]
    # lower binomial index below zero contributes nothing
    assert A[2, 0] == binom_at_least(3, 5) == 0
    with pytest.raises(ValueError):
        transfer_matrix(1)


def test_dominant_eigenvalue_exact_m2():
    # characteristic polynomial factors as (x-3)(x-1)
    assert abs(dominant_eigenvalue(transfer_matrix(2)) - 3.0) < 1e-9


@pytest.mark.parametrize("m,want", sorted(TABLE.items()))
def test_eigenvalue_table(m, want):
    assert abs(census_eigenvalue(m) - want) < 5e-4


@pytest.mark.parametrize("m", range(2, 13))
def test_power_iteration_vs_dense_solver(m):
    A = transfer_matrix(m)
    want = max(abs(np.linalg.eigvals(A.astype(float))))
    assert abs(census_eigenvalue(m) - want) < 1e-7


@pytest.mark.parametrize("m", range(2, 13))
def test_gap_sandwich_and_strict_bound(m):
    gap = eigenvalue_gap(m)
    lo, hi = eigenvalue_gap_bounds(m)
    assert lo > 0 and hi > 0
    assert lo - 1e-9 <= gap <= hi + 1e-9
    assert census_eigenvalue(m) < 2.0**m


def test_gap_bounds_example_m2_m4():
    lo, hi = eigenvalue_gap_bounds(2)
    assert lo <= 0.41504 + 5e-6 and 0.41504 - 5e-6 <= hi
    lo4, hi4 = eigenvalue_gap_bounds(4)
    assert lo4 <= 4.1747e-2 <= hi4


def test_power_iteration_guards():
    with pytest.raises(ValueError):
        dominant_eigenvalue(transfer_matrix(2), tol=0)
    with pytest.raises(ArithmeticError):
        dominant_eigenvalue(np.zeros((3, 3)))


def test_pir_exponent_examples():
    got = pir_exponent("nonbinary", 0.5, 2)
    want = 0.5 + (math.log2(3) - 1) / 2
    assert abs(got - want) < 1e-9
    assert abs(want - 0.7925) < 5e-5

    got_b = pir_exponent("binary", 0.25, 2)
    want_b = 3 / 4 + (1 + 2 * math.log2(3) - 4) / 2 * 0.25
    assert abs(got_b - want_b) < 1e-9

    # eps -> 0 limit of the lifted family is (m-1)/m
    for m in (2, 3, 5):
        assert abs(pir_exponent("nonbinary", 1e-9, m) - (m - 1) / m) < 1e-6


def test_pir_exponent_baselines():
    m = 3
    lam = math.log2(census_eigenvalue(m))
    assert abs(pir_exponent("mult_nonbinary", 0.5, m) - (2 / 3 + 0.5 / 2)) < 1e-9
    # the s=1 lifted baseline pins its exponent at log2(lam_m)/m
    assert abs(pir_exponent("liftedRS_nonbinary", 0.5, m) - lam / m) < 1e-9
    assert abs(pir_exponent("liftedRS_binary", 0.5, m) - lam / m) < 1e-9


def test_pir_exponent_validation():
    with pytest.raises(ValueError):
        pir_exponent("nonbinary", 0.6, 2)  # eps > (m-1)/m
    with pytest.raises(ValueError):
        pir_exponent("nonbinary", 0.0, 2)
    with pytest.raises(ValueError):
        pir_exponent("bogus", 0.3, 2)
    with pytest.raises(ValueError):
        pir_exponent("nonbinary", 0.3, 1)


def test_minimized_exponent_at_half():
    # m = 2 sits exactly on its admissibility boundary at eps = 0.5 and is included
    want = min(pir_exponent("nonbinary", 0.5, m) for m in range(2, 13))
    assert abs(minimized_exponent("nonbinary", 0.5) - want) < 1e-12
    assert abs(want - pir_exponent("nonbinary", 0.5, 2)) < 1e-12


def test_curve_limits_and_monotonicity():
    grid = [0.001, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
    rows = redundancy_curve(grid)
    by_kind = {k: [row[1][i] for row in rows] for i, k in enumerate(CURVE_KINDS)}
    # lifted non-binary approaches 1/2 as eps -> 0; binary approaches 3/4
    assert abs(by_kind["nonbinary"][0] - 0.5) < 2e-3
    assert abs(by_kind["binary"][0] - 0.75) < 2e-3
    for k in CURVE_KINDS:
        vals = by_kind[k]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:])), k
    # improvement over the plain multiplicity baseline at large eps
    assert by_kind["nonbinary"][7] < by_kind["mult_nonbinary"][7]
    assert by_kind["binary"][7] < by_kind["mult_binary"][7]


def test_curve_csv_shape():
    text = curve_csv([0.25, 0.5])
    lines = text.strip().split("\n")
    assert lines[0] == (
        "eps,exponent_nonbinary,exponent_binary,exponent_mult_nb,"
        "exponent_mult_b,exponent_lrs_nb,exponent_lrs_b"
    )
    assert len(lines) == 3
    assert all(len(row.split(",")) == 7 for row in lines[1:])
