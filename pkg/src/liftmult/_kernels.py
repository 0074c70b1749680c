"""Backend-selectable hot kernels.

Two inner loops dominate runtime: the monomial census (a bitset
subset-sum sweep over up to millions of exponent vectors) and Gaussian
elimination over GF(q) (thousands of small solves inside the line
decoder and the Monte Carlo harnesses).  Both ship in two
implementations:

* a numba ``@njit`` version, used when numba imports cleanly;
* a pure-numpy fallback with identical semantics.

``LIFTMULT_BACKEND`` picks the path: ``numba``, ``numpy`` or ``auto``
(the default).  ``auto`` means numba when available.  The selected name
is exposed as ``BACKEND`` and every entry point takes an optional
``backend=`` override so the two paths can be benchmarked against each
other (see benchmarks/bench_kernels.py).

Census kernel
-------------
For an exponent vector d the achievable degrees are the subset sums of
the binary digits of its components; the census statistic is the
largest achievable degree after folding into the canonical range
``[0, qs)`` (identity below ``qs``, period ``qs - s`` above ``s``), or
the largest unfolded degree below ``qs`` when the fold provably cannot
matter.  The fold commutes with the subset-sum recurrence
(``fold(a + v) = fold(fold(a) + v)`` for shifts ``v < qs``), so the
kernel keeps every intermediate bitset folded: a shift by one digit
value followed by one fold of the overflow window.  Bitsets are
little-endian uint64 word arrays of fixed width ``ceil(qs / 64)``.
"""

from __future__ import annotations

import os

import numpy as np

_VALID_BACKENDS = ("auto", "numba", "numpy")


def _pick_backend() -> str:
    env = os.environ.get("LIFTMULT_BACKEND", "auto").lower()
    if env not in _VALID_BACKENDS:
        raise ValueError(
            f"LIFTMULT_BACKEND={env!r}; expected one of {_VALID_BACKENDS}"
        )
    if env == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if env == "numba":
            raise
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

_CHUNK = 1 << 13

# Highest set bit per byte value; -1 for 0.
_BYTE_MSB = np.array([-1] + [v.bit_length() - 1 for v in range(1, 256)], dtype=np.int64)


def _word_masks(lo: int, hi: int, nwords: int) -> np.ndarray:
    """uint64 word masks selecting bit positions in [lo, hi)."""
    out = np.zeros(nwords, dtype=np.uint64)
    full = (1 << 64) - 1
    for k in range(nwords):
        base = 64 * k
        lo_k = max(lo, base)
        hi_k = min(hi, base + 64)
        if lo_k < hi_k:
            mask = ((1 << (hi_k - base)) - 1) ^ ((1 << (lo_k - base)) - 1)
            out[k] = mask & full
    return out


def _int_to_words(value: int, nwords: int) -> np.ndarray:
    out = np.zeros(nwords, dtype=np.uint64)
    k = 0
    while value and k < nwords:
        out[k] = value & ((1 << 64) - 1)
        value >>= 64
        k += 1
    if value:
        raise ValueError("bitset wider than word buffer")
    return out


def _geometry(q: int, s: int):
    """Shared width bookkeeping: folded width FW, scratch width GW.

    Scratch bitsets hold one folded set shifted by at most the top digit
    value qs/2, so they stay below qs + qs/2 bits; GW additionally
    covers the highest word the fold window ever reads.
    """
    qs = q * s
    FW = (qs + 63) // 64
    GW = FW + (qs >> 6) + 2
    return qs, FW, GW


# ---------------------------------------------------------------------------
# census histogram, numpy path
# ---------------------------------------------------------------------------


def _shift_up(a: np.ndarray, v: int, width: int) -> np.ndarray:
    """Row bitsets ``a << v`` widened to ``width`` words; a has any
    number of leading axes."""
    W = a.shape[-1]
    wo, bo = divmod(v, 64)
    out = np.zeros(a.shape[:-1] + (width,), dtype=np.uint64)
    if bo == 0:
        out[..., wo : wo + W] = a
    else:
        out[..., wo : wo + W] = a << bo
        out[..., wo + 1 : wo + W + 1] |= a >> (64 - bo)
    return out


def _shift_down(a: np.ndarray, v: int, nwords: int) -> np.ndarray:
    """Low ``nwords`` words of the row bitsets shifted right by v bits."""
    W = a.shape[-1]
    wo, bo = divmod(v, 64)
    out = np.zeros(a.shape[:-1] + (nwords,), dtype=np.uint64)
    avail = max(0, min(nwords, W - wo))
    if avail == 0:
        return out
    if bo == 0:
        out[..., :avail] = a[..., wo : wo + avail]
    else:
        out[..., :avail] = a[..., wo : wo + avail] >> bo
        hi = min(avail, W - wo - 1)
        if hi > 0:
            out[..., :hi] |= a[..., wo + 1 : wo + 1 + hi] << (64 - bo)
    return out


def _rowwise_msb(f: np.ndarray) -> np.ndarray:
    """Index of the highest set bit per row; rows must be nonzero."""
    FW = f.shape[1]
    nz = f != 0
    top = FW - 1 - np.argmax(nz[:, ::-1], axis=1)
    w = np.take_along_axis(f, top[:, None], axis=1)
    bytes_ = w.view(np.uint8).reshape(f.shape[0], 8)
    per = np.where(bytes_ != 0, _BYTE_MSB[bytes_] + 8 * np.arange(8, dtype=np.int64), -1)
    return 64 * top + per.max(axis=1)


def _fold_or_into(X: np.ndarray, v: int, FW, GW, period, use_modfree, low_mask, win_mask, s):
    """X |= fold(X << v) restricted to [0, qs) for row bitsets X."""
    width = min(GW, (v >> 6) + FW + 2)  # highest word the shift can touch
    G = _shift_up(X, v, width)
    if not use_modfree:
        # folded overflow lands in [s, s+v) only; fold before the low
        # half below masks G in place (they can share word 0)
        dw = min(FW, (s + v + 63) // 64)
        down = _shift_down(G, period, dw)
        down &= win_mask[:dw]
        np.bitwise_or(X[..., :dw], down, out=X[..., :dw])
    wo = v >> 6  # the shift writes no word below this one
    low = G[..., wo:FW]
    low &= low_mask[wo:]
    np.bitwise_or(X[..., wo:], low, out=X[..., wo:])


def _hist_blocks_numpy(blocks, init_bits, m, q, s, use_modfree):
    qs, FW, GW = _geometry(q, s)
    period = qs - s
    logq = q.bit_length() - 1
    low_mask = _word_masks(0, qs, FW)
    win_mask = _word_masks(s, qs, FW)
    hist = np.zeros(qs, dtype=np.int64)
    npoints = q**m
    n = min(_CHUNK, npoints)
    chunk_log = n.bit_length() - 1

    for bi in range(len(blocks)):
        base_words = _int_to_words(init_bits[bi], FW)
        for start in range(0, npoints, n):
            S = np.broadcast_to(base_words, (n, FW)).copy()
            # chunks are aligned power-of-two ranges, so each code bit is
            # either a pure reshape slice (low bits) or constant (high bits)
            for p in range(m * logq):
                v = 1 << (p % logq)
                if p >= chunk_log:
                    if (start >> p) & 1:
                        _fold_or_into(S, v, FW, GW, period, use_modfree,
                                      low_mask, win_mask, s)
                    continue
                sel = S.reshape(-1, 2, 1 << p, FW)[:, 1]
                _fold_or_into(sel, v, FW, GW, period, use_modfree,
                              low_mask, win_mask, s)
            hist += np.bincount(_rowwise_msb(S), minlength=qs)
    return hist


# ---------------------------------------------------------------------------
# census histogram, numba path
# ---------------------------------------------------------------------------

_NUMBA_FNS = None


def _numba_fns():
    global _NUMBA_FNS
    if _NUMBA_FNS is None:
        from numba import njit

        @njit(cache=True)
        def hist_block(hist, base_words, m, logq, q, qs, s, period,
                       use_modfree, FW, GW, low_mask, win_mask):
            npoints = q**m
            down_wo = period >> 6
            down_bo = np.uint64(period & 63)
            down_rem = np.uint64(64) - down_bo
            S = np.zeros(GW + 1, dtype=np.uint64)
            G = np.zeros(GW + 1, dtype=np.uint64)
            for code in range(npoints):
                for k in range(FW):
                    S[k] = base_words[k]
                for j in range(m):
                    comp = (code >> (logq * j)) & (q - 1)
                    while comp:
                        low = comp & (-comp)
                        comp ^= low
                        wo = low >> 6
                        bo = np.uint64(low & 63)
                        # G = S << v, then fold/clip the overflow back in
                        for k in range(GW):
                            G[k] = np.uint64(0)
                        if bo == np.uint64(0):
                            for k in range(FW):
                                G[k + wo] = S[k]
                        else:
                            rem = np.uint64(64) - bo
                            carry = np.uint64(0)
                            for k in range(FW):
                                G[k + wo] = (S[k] << bo) | carry
                                carry = S[k] >> rem
                            G[FW + wo] = carry
                        if use_modfree:
                            for k in range(FW):
                                S[k] |= G[k] & low_mask[k]
                        else:
                            if down_bo == np.uint64(0):
                                for k in range(FW):
                                    S[k] |= (G[k] & low_mask[k]) | (
                                        G[k + down_wo] & win_mask[k]
                                    )
                            else:
                                for k in range(FW):
                                    w = (G[k + down_wo] >> down_bo) | (
                                        G[k + down_wo + 1] << down_rem
                                    )
                                    S[k] |= (G[k] & low_mask[k]) | (w & win_mask[k])
                stat = -1
                for k in range(FW - 1, -1, -1):
                    w = S[k]
                    if w != np.uint64(0):
                        b = 0
                        if w >> np.uint64(32) != np.uint64(0):
                            b += 32
                            w >>= np.uint64(32)
                        if w >> np.uint64(16) != np.uint64(0):
                            b += 16
                            w >>= np.uint64(16)
                        if w >> np.uint64(8) != np.uint64(0):
                            b += 8
                            w >>= np.uint64(8)
                        if w >> np.uint64(4) != np.uint64(0):
                            b += 4
                            w >>= np.uint64(4)
                        if w >> np.uint64(2) != np.uint64(0):
                            b += 2
                            w >>= np.uint64(2)
                        if w >> np.uint64(1) != np.uint64(0):
                            b += 1
                        stat = 64 * k + b
                        break
                hist[stat] += 1

        @njit(cache=True)
        def row_reduce(aug, ncols, exp, log, qm1):
            nrows = aug.shape[0]
            width = aug.shape[1]
            pivcols = np.full(ncols, -1, dtype=np.int64)
            rank = 0
            for col in range(ncols):
                piv = -1
                for r0 in range(rank, nrows):
                    if aug[r0, col] != 0:
                        piv = r0
                        break
                if piv < 0:
                    continue
                if piv != rank:
                    for c0 in range(width):
                        tmp = aug[piv, c0]
                        aug[piv, c0] = aug[rank, c0]
                        aug[rank, c0] = tmp
                pv = aug[rank, col]
                if pv != 1:
                    li = qm1 - log[pv]
                    for c0 in range(col, width):
                        x = aug[rank, c0]
                        if x != 0:
                            aug[rank, c0] = exp[log[x] + li]
                for r0 in range(nrows):
                    f = aug[r0, col]
                    if r0 != rank and f != 0:
                        lf = log[f]
                        for c0 in range(col, width):
                            x = aug[rank, c0]
                            if x != 0:
                                aug[r0, c0] ^= exp[log[x] + lf]
                pivcols[rank] = col
                rank += 1
                if rank == nrows:
                    break
            return rank, pivcols

        _NUMBA_FNS = (hist_block, row_reduce)
    return _NUMBA_FNS


def _hist_blocks_numba(blocks, init_bits, m, q, s, use_modfree):
    hist_block, _ = _numba_fns()
    qs, FW, GW = _geometry(q, s)
    period = qs - s
    logq = q.bit_length() - 1
    low_mask = _word_masks(0, qs, FW)
    win_mask = _word_masks(s, qs, FW)
    hist = np.zeros(qs, dtype=np.int64)
    for bi in range(len(blocks)):
        base_words = _int_to_words(init_bits[bi], FW)
        hist_block(hist, base_words, m, logq, q, qs, s, period,
                   use_modfree, FW, GW, low_mask, win_mask)
    return hist


def stat_histogram_blocks(blocks, init_bits, m, q, s, use_modfree, backend=None):
    """Histogram of max (folded) achievable degrees over hat blocks.

    ``blocks`` is a sequence of m-tuples (the per-coordinate multiples
    of q); ``init_bits`` the matching achievable-degree bitsets of those
    fixed contributions as python ints, already folded (or clipped, in
    fold-free mode) into ``[0, qs)``.  Inner coordinates sweep ``Z_q^m``.
    """
    qs = q * s
    if any(b >> qs for b in init_bits):
        raise ValueError("initial bitsets must live below qs bits")
    be = backend or BACKEND
    if be == "numba":
        return _hist_blocks_numba(blocks, init_bits, m, q, s, use_modfree)
    return _hist_blocks_numpy(blocks, init_bits, m, q, s, use_modfree)


# ---------------------------------------------------------------------------
# linear solves over GF(q)
# ---------------------------------------------------------------------------

STATUS_UNIQUE = 0
STATUS_INCONSISTENT = 1
STATUS_UNDERDETERMINED = 2


def _row_reduce_numpy(aug, ncols, exp, log, qm1):
    nrows, width = aug.shape
    pivcols = np.full(ncols, -1, dtype=np.int64)
    rank = 0
    for col in range(ncols):
        nz = np.nonzero(aug[rank:, col])[0]
        if len(nz) == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            aug[[rank, piv]] = aug[[piv, rank]]
        pv = aug[rank, col]
        if pv != 1:
            li = qm1 - log[pv]
            row = aug[rank]
            nzr = row != 0
            row[nzr] = exp[log[row[nzr]] + li]
        rows = np.nonzero(aug[:, col])[0]
        rows = rows[rows != rank]
        if len(rows):
            lf = log[aug[rows, col]][:, None]
            prow = aug[rank]
            pnz = prow != 0
            upd = np.zeros((len(rows), width), dtype=np.int64)
            upd[:, pnz] = exp[log[prow[pnz]][None, :] + lf]
            aug[rows] ^= upd
        pivcols[rank] = col
        rank += 1
        if rank == nrows:
            break
    return rank, pivcols


def row_reduce(A, B, field, backend=None):
    """Solve ``A X = B`` over GF(q) by full row reduction.

    Returns ``(status, X)`` with status one of STATUS_UNIQUE (X holds
    the unique solution), STATUS_INCONSISTENT (X is None),
    STATUS_UNDERDETERMINED (consistent, rank-deficient; X is a valid
    solution with free variables set to zero).
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if B.ndim == 1:
        B = B[:, None]
    nrows, ncols = A.shape
    aug = np.concatenate([A, B], axis=1)
    be = backend or BACKEND
    if be == "numba":
        _, rr = _numba_fns()
        rank, pivcols = rr(aug, ncols, field.exp, field.log, field.q - 1)
    else:
        rank, pivcols = _row_reduce_numpy(aug, ncols, field.exp, field.log, field.q - 1)
    if np.any(aug[rank:, ncols:]):
        return STATUS_INCONSISTENT, None
    X = np.zeros((ncols, B.shape[1]), dtype=np.int64)
    for i in range(rank):
        X[pivcols[i]] = aug[i, ncols:]
    status = STATUS_UNIQUE if rank == ncols else STATUS_UNDERDETERMINED
    return status, X
