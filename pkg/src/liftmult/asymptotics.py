"""Spectral growth rate of the bad-monomial census and PIR exponents.

The number of bad monomials grows like q**log2(lam_m) in the field
size, where lam_m is the dominant eigenvalue of a small non-negative
transfer matrix built from binomial counts.  This module builds that
matrix, extracts lam_m by power iteration, checks the analytic sandwich
on the gap m - log2(lam_m), and turns lam_m into redundancy exponents
for PIR codes built from the lifted codes and their two classic
baselines (plain order-s evaluation codes and the s=1 lifted codes).
"""

from __future__ import annotations

import math

import numpy as np

CURVE_KINDS = (
    "nonbinary",
    "binary",
    "mult_nonbinary",
    "mult_binary",
    "liftedRS_nonbinary",
    "liftedRS_binary",
)


def binom_at_least(m: int, b: int) -> int:
    """Number of subsets of an m-set with at least b elements."""
    if b <= 0:
        return 1 << m
    return sum(math.comb(m, t) for t in range(b, m + 1))


def transfer_matrix(m: int) -> np.ndarray:
    """m x m census transfer matrix.

    Row j (1-based): first column counts subsets of size >= 2j-1, the
    k-th column (k >= 2) holds C(m, 2j-k); out-of-range binomials are 0.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    A = np.zeros((m, m), dtype=np.int64)
    for j in range(1, m + 1):
        A[j - 1, 0] = binom_at_least(m, 2 * j - 1)
        for k in range(2, m + 1):
            idx = 2 * j - k
            A[j - 1, k - 1] = math.comb(m, idx) if 0 <= idx <= m else 0
    return A


def dominant_eigenvalue(A: np.ndarray, tol: float = 1e-9, max_iter: int = 100_000) -> float:
    """Power iteration with Rayleigh-quotient stopping.

    Deterministic all-ones start; A is non-negative so the iterate keeps
    a positive component along the dominant direction.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.asarray(A, dtype=np.float64)
    x = np.ones(A.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = A @ x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            raise ArithmeticError("iterate fell into the null space")
        lam_new = float(x @ y)
        x = y / ny
        if abs(lam_new - lam) <= tol:
            return lam_new
        lam = lam_new
    raise ArithmeticError(f"power iteration did not converge in {max_iter} steps")


def census_eigenvalue(m: int, tol: float = 1e-9) -> float:
    return dominant_eigenvalue(transfer_matrix(m), tol=tol)


def eigenvalue_gap(m: int, tol: float = 1e-9) -> float:
    """m - log2(lam_m); positive and shrinking as m grows."""
    return m - math.log2(census_eigenvalue(m, tol=tol))


def eigenvalue_gap_bounds(m: int) -> tuple[float, float]:
    """Analytic (lower, upper) bounds on m - log2(lam_m), in bits."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    ceil_log_m = math.ceil(math.log2(m))
    lower = -math.log2(1.0 - 2.0 ** (-m * ceil_log_m)) / ceil_log_m
    upper = -math.log2(1.0 - 2.0**-m)
    return lower, upper


def pir_exponent(kind: str, eps: float, m: int) -> float:
    """Redundancy exponent delta with r(n, n^eps) = O(n^delta).

    ``nonbinary``/``binary`` are the lifted-multiplicity families, the
    ``mult_*`` kinds the plain multiplicity baselines, and the
    ``liftedRS_*`` kinds the s=1 lifted baselines (their exponent is the
    lifted one pinned at eps = (m-1)/m, i.e. log2(lam_m)/m for the
    non-binary case).
    """
    if kind not in CURVE_KINDS:
        raise ValueError(f"unknown exponent kind {kind!r}")
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    # inclusive right end: m = ceil(1/(1-eps)) is the smallest admissible
    # variable count, and it satisfies eps = (m-1)/m exactly on the boundary
    if not 0 < eps <= (m - 1) / m:
        raise ValueError(f"need 0 < eps <= (m-1)/m = {(m - 1) / m:.6f}, got {eps}")
    loglam = math.log2(census_eigenvalue(m))
    if kind == "nonbinary":
        return (m - 1) / m + (1 + loglam - m) * eps / (m - 1)
    if kind == "binary":
        return (2 * m - 1) / (2 * m) + (1 + 2 * loglam - 2 * m) * eps / (2 * m - 2)
    if kind == "mult_nonbinary":
        return (m - 1) / m + eps / (m - 1)
    if kind == "mult_binary":
        return (2 * m - 1) / (2 * m) + eps / (2 * m - 2)
    pinned = (m - 1) / m  # the s=1 construction needs k = n^((m-1)/m)
    if kind == "liftedRS_nonbinary":
        return pinned + (1 + loglam - m) * pinned / (m - 1)
    return (2 * m - 1) / (2 * m) + (1 + 2 * loglam - 2 * m) * pinned / (2 * m - 2)


def minimized_exponent(kind: str, eps: float, m_cap: int = 12) -> float:
    """Best exponent over admissible variable counts m <= m_cap."""
    best = math.inf
    for m in range(2, m_cap + 1):
        if eps > (m - 1) / m:
            continue
        best = min(best, pir_exponent(kind, eps, m))
    if math.isinf(best):
        raise ValueError(f"no admissible m <= {m_cap} for eps={eps}")
    return best


def redundancy_curve(eps_grid, m_cap: int = 12):
    """Rows (eps, exponent per kind) minimized over m for each eps."""
    rows = []
    for eps in eps_grid:
        if not 0 < eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        rows.append((eps, tuple(minimized_exponent(k, eps, m_cap) for k in CURVE_KINDS)))
    return rows


def curve_csv(eps_grid, m_cap: int = 12) -> str:
    header = "eps," + ",".join(
        ("exponent_nonbinary", "exponent_binary", "exponent_mult_nb",
         "exponent_mult_b", "exponent_lrs_nb", "exponent_lrs_b")
    )
    lines = [header]
    for eps, values in redundancy_curve(eps_grid, m_cap):
        lines.append(f"{eps:.6f}," + ",".join(f"{v:.6f}" for v in values))
    return "\n".join(lines) + "\n"
