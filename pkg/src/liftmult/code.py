"""Lifted multiplicity code: basis, encoder, membership, distance.

A code instance is parameterized by (m, s, q, r) with degree bound
d = qs - r.  Codewords have q^m positions indexed by points of F_q^m
(first coordinate most significant); each symbol is the vector of all
Hasse derivative evaluations of order < s at that point, laid out as in
`multipoly.derivative_orders`.  The implemented code is the span of the
good monomials; its membership test asks, polynomial in hand, whether
every line restriction reduces to degree < d.

File formats
------------
Codeword files: header ``LMC m=<m> s=<s> q=<q> r=<r>``, then one line
per position, ``<hex point coords joined by ,> : <hex symbol entries
joined by ,>`` in canonical position/derivative order.  Message files:
one hex field element per line, as many lines as the code dimension.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import _kernels
from .census import enumerate_good
from .exponents import binom_parity
from .gf2e import Field, field_of_order
from .multipoly import (
    MultiPoly,
    canonical_lines,
    derivative_orders,
    symbol_width,
)


@dataclass(frozen=True)
class CodeParams:
    m: int
    s: int
    q: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need m >= 1, got {self.m}")
        for name, v in (("q", self.q), ("s", self.s)):
            if v < 1 or v & (v - 1):
                raise ValueError(f"{name}={v} is not a power of two")
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if self.s > self.q:
            raise ValueError(f"need s <= q, got s={self.s}, q={self.q}")
        if not 1 <= self.r < self.q:
            raise ValueError(f"need 1 <= r < q, got r={self.r}")

    @property
    def degree_bound(self) -> int:
        return self.q * self.s - self.r

    @property
    def length(self) -> int:
        return self.q**self.m

    @property
    def symbol_width(self) -> int:
        return symbol_width(self.m, self.s)

    @property
    def delta_min(self) -> Fraction:
        """Relative-distance lower bound ceil((r-s+1)/s) (q-s)/q^2."""
        lines = max(0, math.ceil((self.r - self.s + 1) / self.s))
        return Fraction(lines * (self.q - self.s), self.q**2)

    def field(self) -> Field:
        return field_of_order(self.q)

    def label(self) -> str:
        return f"[{self.m},{self.s},{self.degree_bound},{self.q}]"


def point_grid(params: CodeParams) -> np.ndarray:
    """(length, m) coordinates of every evaluation point, index order."""
    q, m = params.q, params.m
    idx = np.arange(params.length, dtype=np.int64)
    cols = [(idx >> ((m - 1 - j) * (q.bit_length() - 1))) & (q - 1) for j in range(m)]
    return np.stack(cols, axis=1)


def point_index(params: CodeParams, w) -> int:
    q = params.q
    idx = 0
    for c in w:
        idx = idx * q + c
    return idx


@dataclass
class LiftedCode:
    params: CodeParams
    basis: list
    _tables: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def basis_index(self, d) -> int:
        return self.basis.index(tuple(d))

    def basis_tables(self) -> np.ndarray:
        """(dimension, length, width) evaluations of every basis monomial."""
        if self._tables is None:
            self._tables = _monomial_tables(self.params, self.basis)
        return self._tables


def build_code(params: CodeParams) -> LiftedCode:
    basis = enumerate_good(params.m, params.s, params.q, params.degree_bound)
    return LiftedCode(params=params, basis=list(basis))


def _monomial_tables(params: CodeParams, monomials) -> np.ndarray:
    fld = params.field()
    grid = point_grid(params)
    orders = derivative_orders(params.m, params.s)
    out = np.zeros((len(monomials), params.length, len(orders)), dtype=np.int64)
    for k, d in enumerate(monomials):
        for oi, i in enumerate(orders):
            if not all(binom_parity(dj, ij) for dj, ij in zip(d, i)):
                continue
            col = np.ones(params.length, dtype=np.int64)
            for j in range(params.m):
                col = fld.mul_arr(col, fld.pow_arr(grid[:, j], d[j] - i[j]))
            out[k, :, oi] = col
    return out


@dataclass
class Codeword:
    params: CodeParams
    symbols: np.ndarray  # (length, width) ints

    def __post_init__(self):
        expect = (self.params.length, self.params.symbol_width)
        if self.symbols.shape != expect:
            raise ValueError(f"symbol table shape {self.symbols.shape}, want {expect}")

    def copy(self) -> "Codeword":
        return Codeword(self.params, self.symbols.copy())

    def weight(self) -> int:
        """Positions whose whole derivative vector is nonzero somewhere."""
        return int(np.any(self.symbols != 0, axis=1).sum())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Codeword)
            and other.params == self.params
            and np.array_equal(other.symbols, self.symbols)
        )


def encode(code: LiftedCode, message) -> Codeword:
    """Evaluate the good-monomial combination given by ``message``."""
    params = code.params
    fld = params.field()
    message = list(message)
    if len(message) != code.dimension:
        raise ValueError(f"message length {len(message)} != dimension {code.dimension}")
    for c in message:
        fld.check(c)
    tables = code.basis_tables()
    out = np.zeros((params.length, params.symbol_width), dtype=np.int64)
    for k, c in enumerate(message):
        if c:
            out ^= fld.mul_arr(c, tables[k])
    return Codeword(params, out)


def encode_poly(params: CodeParams, f: MultiPoly) -> Codeword:
    """Evaluation table of an arbitrary polynomial (not only span members)."""
    tables = _monomial_tables(params, sorted(f.terms))
    fld = params.field()
    out = np.zeros((params.length, params.symbol_width), dtype=np.int64)
    for k, d in enumerate(sorted(f.terms)):
        out ^= fld.mul_arr(f.terms[d], tables[k])
    return Codeword(params, out)


# ---------------------------------------------------------------------------
# membership via line interpolation
# ---------------------------------------------------------------------------


def gf_matmul(A: np.ndarray, B: np.ndarray, fld: Field) -> np.ndarray:
    """Matrix product over GF(q) (XOR accumulate)."""
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out ^= fld.mul_arr(A[:, k : k + 1], B[k : k + 1, :])
    return out


@functools.lru_cache(maxsize=None)
def line_eval_matrix(ell: int, s: int, include_zero: bool = True) -> np.ndarray:
    """Rows (t, j), columns e: j-th derivative of T^e at t.

    Row order is t-major (t over all field points, or all nonzero points
    when include_zero is false), j = 0..s-1 minor; e runs 0..qs-1.
    """
    fld = field_of_order(1 << ell)
    q = fld.q
    qs = q * s
    ts = list(range(q)) if include_zero else list(range(1, q))
    M = np.zeros((len(ts) * s, qs), dtype=np.int64)
    for ti, t in enumerate(ts):
        for j in range(s):
            for e in range(qs):
                if e >= j and binom_parity(e, j):
                    M[ti * s + j, e] = fld.pow(t, e - j)
    return M


@functools.lru_cache(maxsize=None)
def line_interp_matrix(ell: int, s: int) -> np.ndarray:
    """Inverse of the full-line evaluation matrix.

    Maps the qs derivative values along a line to the coefficients of
    the unique degree <= qs-1 representative of the restriction.
    """
    fld = field_of_order(1 << ell)
    M = line_eval_matrix(ell, s)
    status, inv = _kernels.row_reduce(M, np.eye(M.shape[0], dtype=np.int64), fld)
    if status != _kernels.STATUS_UNIQUE:
        raise ArithmeticError("line evaluation matrix is singular")
    return inv


def _derivative_tables(params: CodeParams, f: MultiPoly) -> dict:
    """Order vector -> (length,) evaluation array of that derivative of f."""
    fld = params.field()
    grid = point_grid(params)
    tabs = {}
    for i in derivative_orders(params.m, params.s):
        g = f.hasse(i)
        col = np.zeros(params.length, dtype=np.int64)
        for d, c in g.terms.items():
            term = np.full(params.length, c, dtype=np.int64)
            for j in range(params.m):
                if d[j]:
                    term = fld.mul_arr(term, fld.pow_arr(grid[:, j], d[j]))
            col ^= term
        tabs[i] = col
    return tabs


@functools.lru_cache(maxsize=8)
def _line_arrays(params: CodeParams):
    lines = list(canonical_lines(params.field(), params.m))
    W = np.array([ln.base for ln in lines], dtype=np.int64)
    V = np.array([ln.direction for ln in lines], dtype=np.int64)
    return lines, W, V


def _directional_value_matrix(params: CodeParams, tabs, W, V, ts) -> np.ndarray:
    """(n_lines, len(ts)*s) derivative data of f along all lines.

    Entry (line, ti*s + j) is the j-th derivative of the restriction to
    the line at parameter ts[ti], assembled from the multivariate data
    by the direction-weighted sum over order vectors of degree j.
    """
    fld = params.field()
    q, m, s = params.q, params.m, params.s
    n = W.shape[0]
    orders = derivative_orders(m, s)
    vpow = {}
    for i in orders:
        col = np.ones(n, dtype=np.int64)
        for j in range(m):
            if i[j]:
                col = fld.mul_arr(col, fld.pow_arr(V[:, j], i[j]))
        vpow[i] = col
    out = np.zeros((n, len(ts) * s), dtype=np.int64)
    weights = q ** (m - 1 - np.arange(m, dtype=np.int64))
    for ti, t in enumerate(ts):
        pts = W ^ fld.mul_arr(t, V)
        idx = pts @ weights
        for i in orders:
            j = sum(i)
            out[:, ti * s + j] ^= fld.mul_arr(tabs[i][idx], vpow[i])
    return out


def _membership_from_tables(params: CodeParams, tabs) -> bool:
    fld = params.field()
    _, W, V = _line_arrays(params)
    vals = _directional_value_matrix(params, tabs, W, V, ts=list(range(params.q)))
    inv = line_interp_matrix(fld.ell, params.s)
    top_rows = inv[params.degree_bound :, :]
    top = gf_matmul(vals, top_rows.T, fld)
    return not np.any(top)


def membership_test(params: CodeParams, f: MultiPoly) -> bool:
    """Whether every canonical line restriction reduces to degree < d.

    Works on the polynomial's derivative data: the reduced restriction
    on a line is recovered by interpolating the qs derivative values
    along it, so the test checks that the top r interpolated
    coefficients vanish for every line.  Equivalent to reducing
    ``restrict_to_line`` per line, but vectorized across lines.
    """
    if f.m != params.m:
        raise ValueError("polynomial arity does not match code")
    return _membership_from_tables(params, _derivative_tables(params, f))


def membership_test_word(params: CodeParams, word: Codeword) -> bool:
    """Membership check fed by an already-evaluated derivative table.

    Same line criterion as ``membership_test``; the codeword symbols are
    exactly the derivative data the test consumes, which avoids
    re-evaluating the polynomial when a codeword is already in hand.
    """
    orders = derivative_orders(params.m, params.s)
    tabs = {i: word.symbols[:, oi] for oi, i in enumerate(orders)}
    return _membership_from_tables(params, tabs)


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------


def distance_lower_bound(params: CodeParams) -> tuple[int, Fraction]:
    """(absolute, relative) minimum-weight lower bounds.

    For m >= 2 the absolute bound counts, for a nonzero position, the
    lines through it on which the restriction stays nonzero and the
    points those contribute; m = 1 falls back to the bound on roots of
    multiplicity s.
    """
    q, s, r, m = params.q, params.s, params.r, params.m
    if m == 1:
        absolute = q - (q * s - r - 1) // s
        return absolute, Fraction(absolute, q)
    per_line = max(0, math.ceil((r + 1) / s - 1))
    absolute = 1 + per_line * (q - s) * q ** (m - 2)
    return absolute, params.delta_min


def weight_sample(code: LiftedCode, trials: int, seed: int) -> int:
    """Minimum weight over seeded random nonzero messages."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = np.random.default_rng(seed)
    q = code.params.q
    best = None
    for _ in range(trials):
        msg = rng.integers(0, q, size=code.dimension)
        while not msg.any():
            msg = rng.integers(0, q, size=code.dimension)
        wt = encode(code, [int(c) for c in msg]).weight()
        best = wt if best is None else min(best, wt)
    return best


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def write_codeword(path, word: Codeword) -> None:
    params = word.params
    fld = params.field()
    grid = point_grid(params)
    with open(path, "w") as fh:
        fh.write(f"LMC m={params.m} s={params.s} q={params.q} r={params.r}\n")
        for idx in range(params.length):
            coords = ",".join(fld.to_hex(int(c)) for c in grid[idx])
            vals = ",".join(fld.to_hex(int(v)) for v in word.symbols[idx])
            fh.write(f"{coords} : {vals}\n")


def read_codeword(path) -> Codeword:
    with open(path) as fh:
        header = fh.readline().strip()
        parts = header.split()
        if len(parts) != 5 or parts[0] != "LMC":
            raise ValueError(f"bad codeword header {header!r}")
        kv = dict(p.split("=", 1) for p in parts[1:])
        params = CodeParams(m=int(kv["m"]), s=int(kv["s"]), q=int(kv["q"]), r=int(kv["r"]))
        fld = params.field()
        symbols = np.zeros((params.length, params.symbol_width), dtype=np.int64)
        seen = 0
        for line in fh:
            line = line.strip()
            if not line:
                continue
            coords_text, _, vals_text = line.partition(":")
            w = tuple(fld.from_hex(p) for p in coords_text.strip().split(","))
            vals = [fld.from_hex(p) for p in vals_text.strip().split(",")]
            if len(w) != params.m or len(vals) != params.symbol_width:
                raise ValueError(f"bad codeword row {line!r}")
            symbols[point_index(params, w)] = vals
            seen += 1
        if seen != params.length:
            raise ValueError(f"codeword file has {seen} rows, want {params.length}")
    return Codeword(params, symbols)


def write_message(path, fld: Field, message) -> None:
    with open(path, "w") as fh:
        for c in message:
            fh.write(fld.to_hex(c) + "\n")


def read_message(path, fld: Field) -> list:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(fld.from_hex(line))
    return out
