"""Symbol recovery: line decoding, PIR recovery sets, self-correction.

Everything here works with the derivative data observed along lines
through a target point.  A line view carries the q-1 off-target
symbols; from them the directional derivatives of the restriction are
assembled, an errors-and-erasures search recovers the reduced
restriction, and per-order linear systems at T=0 recombine several
decoded lines into the full derivative vector at the target.

The line decoder searches error-position subsets of growing size and
solves the remaining exact linear system; at desk scale the subset
counts are tiny and correctness is what matters.  Its radius is
floor((d_min - 1)/2) with d_min = ceil((r+1)/s) (one more than the
ceiling entering the code-distance bound; see README).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .code import CodeParams, Codeword, line_eval_matrix, point_index
from .gf2e import Field
from .multipoly import UniPoly, derivative_orders

LINE_OK = "ok"
LINE_FAILED = "decode_failed"

STATUS_OK = "ok"
STATUS_LINE_FAILED = "line_decode_failed"
STATUS_SINGULAR = "interpolation_singular"


class InterpolationError(ArithmeticError):
    """Raised when the direction systems at a point are singular."""


def decoding_min_distance(params: CodeParams) -> int:
    return math.ceil((params.r + 1) / params.s)


def decoding_radius(params: CodeParams) -> int:
    return (decoding_min_distance(params) - 1) // 2


@dataclass
class LineView:
    """Off-target symbols along base + T*direction, direction[0] = 1."""

    params: CodeParams
    base: tuple[int, ...]
    direction: tuple[int, ...]
    symbols: np.ndarray  # (q-1, width), row i holds the symbol at t = i+1

    def __post_init__(self):
        if self.direction[0] != 1:
            raise ValueError("line view directions are normalized to lead with 1")
        expect = (self.params.q - 1, self.params.symbol_width)
        if self.symbols.shape != expect:
            raise ValueError(f"line view shape {self.symbols.shape}, want {expect}")

    @property
    def ts(self) -> range:
        return range(1, self.params.q)

    def positions(self) -> list[int]:
        fld = self.params.field()
        out = []
        for t in self.ts:
            pt = tuple(w ^ fld.mul(t, v) for w, v in zip(self.base, self.direction))
            out.append(point_index(self.params, pt))
        return out


def line_view(word: Codeword, base, direction) -> LineView:
    params = word.params
    view = LineView(
        params=params,
        base=tuple(base),
        direction=tuple(direction),
        symbols=np.zeros((params.q - 1, params.symbol_width), dtype=np.int64),
    )
    view.symbols[:] = word.symbols[view.positions()]
    return view


def line_directional_values(view: LineView, j: int) -> np.ndarray:
    """Values of the j-th derivative of the restriction at each t != 0.

    Chain rule for substitution along a line: the j-th univariate
    derivative at t is the sum over order vectors of degree j of the
    multivariate derivative at the point, weighted by direction^i.
    """
    params = view.params
    fld = params.field()
    if not 0 <= j < params.s:
        raise ValueError(f"derivative order {j} outside [0, {params.s})")
    orders = derivative_orders(params.m, params.s)
    out = np.zeros(params.q - 1, dtype=np.int64)
    for oi, i in enumerate(orders):
        if sum(i) != j:
            continue
        vi = 1
        for vj, ij in zip(view.direction, i):
            vi = fld.mul(vi, fld.pow(vj, ij))
        out ^= fld.mul_arr(vi, view.symbols[:, oi])
    return out


def _observed_matrix(view: LineView) -> np.ndarray:
    """(q-1, s) directional derivative values, t-major rows."""
    cols = [line_directional_values(view, j) for j in range(view.params.s)]
    return np.stack(cols, axis=1)


def decode_line(view: LineView, max_errors: int):
    """Reduced degree-< d restriction from noisy line data, or None.

    Tries error supports of size 0..max_errors; for each, solves the
    exact evaluation system on the remaining positions and returns the
    first uniquely consistent polynomial.  Failure (no support gives a
    consistent, fully determined system) returns None rather than a
    guess.
    """
    params = view.params
    fld = params.field()
    s, d = params.s, params.degree_bound
    if max_errors < 0:
        raise ValueError("max_errors must be >= 0")
    obs = _observed_matrix(view).reshape(-1)  # rows (t, j), t-major
    M = line_eval_matrix(fld.ell, s, include_zero=False)[:, :d]
    npos = params.q - 1
    for t_err in range(max_errors + 1):
        for excluded in itertools.combinations(range(npos), t_err):
            keep = np.ones(npos, dtype=bool)
            keep[list(excluded)] = False
            rows = np.repeat(keep, s)
            status, sol = _kernels.row_reduce(M[rows], obs[rows], fld)
            if status == _kernels.STATUS_UNIQUE:
                return UniPoly(fld, [int(c) for c in sol[:, 0]])
    return None


def interpolate_point(params: CodeParams, decoded: dict) -> np.ndarray:
    """Derivative vector at the line base point from decoded restrictions.

    ``decoded`` maps directions (tuples with leading 1) to the reduced
    restriction polynomials of the lines through the common base.  For
    each derivative order j the values at T=0 (the j-th coefficients)
    give one linear equation per direction in the unknowns of order j.
    """
    fld = params.field()
    m, s = params.m, params.s
    orders = derivative_orders(m, s)
    out = np.zeros(len(orders), dtype=np.int64)
    dirs = sorted(decoded)
    for j in range(s):
        unknowns = [i for i in orders if sum(i) == j]
        A = np.zeros((len(dirs), len(unknowns)), dtype=np.int64)
        b = np.zeros(len(dirs), dtype=np.int64)
        for row, v in enumerate(dirs):
            for col, i in enumerate(unknowns):
                val = 1
                for vj, ij in zip(v, i):
                    val = fld.mul(val, fld.pow(vj, ij))
                A[row, col] = val
            b[row] = decoded[v].coeff(j)
        status, sol = _kernels.row_reduce(A, b, fld)
        if status != _kernels.STATUS_UNIQUE:
            raise InterpolationError(f"direction system singular at order {j}")
        for col, i in enumerate(unknowns):
            out[orders.index(i)] = sol[col, 0]
    return out


# ---------------------------------------------------------------------------
# PIR recovery sets
# ---------------------------------------------------------------------------


@dataclass
class RecoverySet:
    label: tuple[int, ...]
    directions: list
    positions: tuple[int, ...]

    def recover(self, word: Codeword, target) -> np.ndarray:
        """Reconstruct the symbol at ``target`` from this set alone."""
        decoded = {}
        for v in self.directions:
            view = line_view(word, target, v)
            h = decode_line(view, max_errors=0)
            if h is None:
                raise InterpolationError(f"erasure decode failed on direction {v}")
            decoded[v] = h
        return interpolate_point(word.params, decoded)


def pir_recovery_sets(params: CodeParams, target) -> list[RecoverySet]:
    """The (q/s)^(m-1) disjoint recovery sets of the availability code.

    Requires r = s (degree bound qs - s).  Field elements split into
    q/s consecutive blocks of size s; a label picks one block per free
    coordinate and the set collects the s^(m-1) lines through the
    target whose direction coordinates stay inside the picked blocks.
    """
    if params.r != params.s:
        raise ValueError(f"recovery sets need r = s, got r={params.r}, s={params.s}")
    if params.m < 2:
        raise ValueError("recovery sets need m >= 2")
    q, s, m = params.q, params.s, params.m
    target = tuple(target)
    fld = params.field()
    blocks = [tuple(range(b * s, (b + 1) * s)) for b in range(q // s)]
    out = []
    for label in itertools.product(range(q // s), repeat=m - 1):
        dirs = [
            (1,) + tail
            for tail in itertools.product(*(blocks[b] for b in label))
        ]
        positions = set()
        for v in dirs:
            for t in range(1, q):
                pt = tuple(w ^ fld.mul(t, vj) for w, vj in zip(target, v))
                positions.add(point_index(params, pt))
        out.append(RecoverySet(label=label, directions=dirs, positions=tuple(sorted(positions))))
    return out


# ---------------------------------------------------------------------------
# local self-correction
# ---------------------------------------------------------------------------


@dataclass
class CorrectionReport:
    target: tuple[int, ...]
    seed: int
    queried: int
    status: str
    line_outcomes: dict
    decoded: np.ndarray | None
    success: bool | None  # None when no ground truth was supplied

    def to_lines(self, fld: Field) -> list[str]:
        rows = [
            "target=" + ",".join(fld.to_hex(c) for c in self.target),
            f"seed={self.seed}",
            f"queries={self.queried}",
            f"status={self.status}",
        ]
        for v in sorted(self.line_outcomes):
            vtxt = ",".join(fld.to_hex(c) for c in v)
            rows.append(f"line[{vtxt}]={self.line_outcomes[v]}")
        if self.decoded is not None:
            rows.append("decoded=" + ",".join(fld.to_hex(int(c)) for c in self.decoded))
        if self.success is not None:
            rows.append(f"success={'yes' if self.success else 'no'}")
        return rows


def self_correct(
    word: Codeword,
    target,
    seed: int,
    truth: Codeword | None = None,
) -> CorrectionReport:
    """Randomized recovery of one symbol from noisy data.

    Samples one size-s subset of F_q per free coordinate (seeded),
    decodes the s^(m-1) lines through the target whose directions range
    over the sampled subcube, and recombines.  Any line-decode failure
    or singular recombination aborts with a failure status; the
    algorithm never guesses.
    """
    params = word.params
    if params.m < 2:
        raise ValueError("self-correction needs m >= 2")
    target = tuple(target)
    fld = params.field()
    rng = np.random.default_rng(seed)
    subsets = [
        tuple(int(x) for x in sorted(rng.choice(params.q, size=params.s, replace=False)))
        for _ in range(params.m - 1)
    ]
    dirs = [(1,) + tail for tail in itertools.product(*subsets)]
    radius = decoding_radius(params)
    queried = len(dirs) * (params.q - 1)
    outcomes = {}
    decoded = {}
    failed = False
    for v in dirs:
        h = decode_line(line_view(word, target, v), max_errors=radius)
        if h is None:
            outcomes[v] = LINE_FAILED
            failed = True
        else:
            outcomes[v] = LINE_OK
            decoded[v] = h
    if failed:
        return CorrectionReport(target, seed, queried, STATUS_LINE_FAILED, outcomes, None,
                                None if truth is None else False)
    try:
        vec = interpolate_point(params, decoded)
    except InterpolationError:
        return CorrectionReport(target, seed, queried, STATUS_SINGULAR, outcomes, None,
                                None if truth is None else False)
    success = None
    if truth is not None:
        success = bool(np.array_equal(vec, truth.symbols[point_index(params, target)]))
    return CorrectionReport(target, seed, queried, STATUS_OK, outcomes, vec, success)


def corrupt(word: Codeword, n_errors: int, seed: int) -> Codeword:
    """Replace n_errors distinct symbols with uniform different ones."""
    params = word.params
    if not 0 <= n_errors <= params.length:
        raise ValueError(f"n_errors {n_errors} outside [0, {params.length}]")
    out = word.copy()
    rng = np.random.default_rng(seed)
    if n_errors == 0:
        return out
    positions = rng.choice(params.length, size=n_errors, replace=False)
    for pos in positions:
        while True:
            sym = rng.integers(0, params.q, size=params.symbol_width)
            if not np.array_equal(sym, out.symbols[pos]):
                break
        out.symbols[pos] = sym
    return out
