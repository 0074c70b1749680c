"""Command line front end.

Subcommands: census, eigen, curve, build, encode, corrupt, correct,
pir, verify.  Exit codes: 0 success, 1 usage error, 2 validation or
contract failure.  All output is deterministic given flags and seed.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import asymptotics, recovery
from . import code as code_mod
from .census import census as census_report
from .census import count_bad_dp, csv_rows, enumerate_good, total_type_s
from .exponents import format_vector
from .gf2e import field_of_order
from .multipoly import MultiPoly


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        raise UsageError(message)


class ValidationFailure(Exception):
    """Bad parameters or a failed contract; exit code 2."""


def _apply_thread_cap() -> None:
    raw = os.environ.get("LIFTMULT_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise ValidationFailure(f"LIFTMULT_THREADS={raw!r} is not an integer")
    if cap < 0:
        raise ValidationFailure("LIFTMULT_THREADS must be >= 0 (0 = auto)")
    if cap > 0:
        try:
            import numba

            numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))
        except ImportError:
            pass  # numpy fallback is single-threaded already


def _params_from_args(args) -> code_mod.CodeParams:
    try:
        return code_mod.CodeParams(m=args.m, s=args.s, q=args.q, r=args.r)
    except ValueError as exc:
        raise ValidationFailure(str(exc))


def _cmd_census(args, out) -> int:
    try:
        rep = census_report(args.m, args.s, args.q, args.r)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    out.write(csv_rows([rep]))
    return 0


def _cmd_eigen(args, out) -> int:
    if args.m < 2:
        raise ValidationFailure("eigen needs --m >= 2")
    lam = asymptotics.census_eigenvalue(args.m)
    gap = args.m - np.log2(lam)
    out.write(f"m={args.m} lambda={lam:.4f} gap={gap:.5g}\n")
    return 0


def _cmd_curve(args, out) -> int:
    if not (0 < args.eps_min < args.eps_max < 1):
        raise ValidationFailure("need 0 < eps-min < eps-max < 1")
    if args.steps < 2:
        raise ValidationFailure("need at least 2 grid steps")
    grid = [
        args.eps_min + (args.eps_max - args.eps_min) * k / (args.steps - 1)
        for k in range(args.steps)
    ]
    text = asymptotics.curve_csv(grid, m_cap=args.m_cap)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def _cmd_build(args, out) -> int:
    params = _params_from_args(args)
    lifted = code_mod.build_code(params)
    absolute, relative = code_mod.distance_lower_bound(params)
    out.write(
        f"m={params.m} s={params.s} q={params.q} r={params.r} d={params.degree_bound} "
        f"length={params.length} symbol_width={params.symbol_width} "
        f"dimension={lifted.dimension} distance_abs={absolute} distance_rel={relative}\n"
    )
    if args.basis_out:
        with open(args.basis_out, "w") as fh:
            for d in lifted.basis:
                fh.write(format_vector(d) + "\n")
    return 0


def _cmd_encode(args, out) -> int:
    params = _params_from_args(args)
    lifted = code_mod.build_code(params)
    fld = params.field()
    try:
        message = code_mod.read_message(args.message, fld)
    except (OSError, ValueError) as exc:
        raise ValidationFailure(f"cannot read message: {exc}")
    if len(message) != lifted.dimension:
        raise ValidationFailure(
            f"message has {len(message)} symbols, code dimension is {lifted.dimension}"
        )
    word = code_mod.encode(lifted, message)
    code_mod.write_codeword(args.out, word)
    return 0


def _read_codeword(path) -> code_mod.Codeword:
    try:
        return code_mod.read_codeword(path)
    except (OSError, ValueError) as exc:
        raise ValidationFailure(f"cannot read codeword: {exc}")


def _cmd_corrupt(args, out) -> int:
    word = _read_codeword(args.infile)
    try:
        noisy = recovery.corrupt(word, args.errors, args.seed)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    code_mod.write_codeword(args.out, noisy)
    return 0


def _parse_target(params, text) -> tuple[int, ...]:
    fld = params.field()
    try:
        target = tuple(fld.from_hex(p) for p in text.split(","))
    except ValueError as exc:
        raise ValidationFailure(f"bad target {text!r}: {exc}")
    if len(target) != params.m:
        raise ValidationFailure(f"target needs {params.m} coordinates")
    return target


def _cmd_correct(args, out) -> int:
    word = _read_codeword(args.infile)
    params = word.params
    target = _parse_target(params, args.target)
    try:
        noisy = recovery.corrupt(word, args.errors, args.seed)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    report = recovery.self_correct(noisy, target, seed=args.seed, truth=word)
    out.write(f"errors={args.errors}\n")
    for line in report.to_lines(params.field()):
        out.write(line + "\n")
    return 0


def _cmd_pir(args, out) -> int:
    try:
        params = code_mod.CodeParams(m=args.m, s=args.s, q=args.q, r=args.s)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    target = _parse_target(params, args.target)
    try:
        sets = recovery.pir_recovery_sets(params, target)
    except ValueError as exc:
        raise ValidationFailure(str(exc))
    fld = params.field()
    grid = code_mod.point_grid(params)
    for k, rset in enumerate(sets):
        pts = [
            ",".join(fld.to_hex(int(c)) for c in grid[pos]) for pos in rset.positions
        ]
        out.write(f"set {k}: " + " ".join(pts) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify: cross-module invariant suite
# ---------------------------------------------------------------------------

TABLE_EIGENVALUES = {
    2: 3.0000, 3: 7.2361, 4: 15.5436, 5: 31.7877, 6: 63.9217,
    7: 127.9763, 8: 255.9939, 9: 511.9986, 10: 1023.9997,
}


def _verify_checks(seed: int):
    fld4 = field_of_order(4)

    def check_eigen_table():
        for m, want in TABLE_EIGENVALUES.items():
            lam = asymptotics.census_eigenvalue(m)
            if abs(lam - want) > 5e-4:
                return f"lambda_{m}={lam:.6f}, want {want}"
        return None

    def check_gap_sandwich():
        for m in range(2, 13):
            gap = asymptotics.eigenvalue_gap(m)
            lo, hi = asymptotics.eigenvalue_gap_bounds(m)
            if not (lo - 1e-9 <= gap <= hi + 1e-9):
                return f"m={m}: gap {gap} outside [{lo}, {hi}]"
        return None

    def check_census_oracle():
        for m in (1, 2):
            for s in (1, 2):
                for r in range(0, 4):
                    good = len(enumerate_good(m, s, 4, 4 * s - r))
                    total = total_type_s(m, s, 4)
                    dp = count_bad_dp(m, s, 4, r)
                    if total - dp != good:
                        return f"(m={m},s={s},q=4,r={r}): dp bad={dp}, enum good={good}"
        return None

    def check_span_counterexample():
        # Both monomials are bad at degree bound 7, yet their sum is a
        # codeword: the span of good monomials is a proper subcode.
        params = code_mod.CodeParams(m=2, s=2, q=4, r=1)
        m1 = MultiPoly.monomial(fld4, (6, 1))
        m2 = MultiPoly.monomial(fld4, (3, 4))
        if code_mod.membership_test(params, m1):
            return "X1^6 X2 accepted but must fail"
        if not code_mod.membership_test(params, m1 + m2):
            return "X1^6 X2 + X1^3 X2^4 rejected but must pass"
        return None

    def check_lifting_gain():
        params = code_mod.CodeParams(m=2, s=2, q=4, r=1)
        lifted = code_mod.build_code(params)
        if (2, 6) not in lifted.basis:
            return "(2,6) missing from the r=1 basis"
        if not code_mod.membership_test(params, MultiPoly.monomial(fld4, (2, 6))):
            return "X1^2 X2^6 must pass membership at degree bound 7"
        return None

    def check_encode_membership():
        rng = np.random.default_rng(seed)
        for s, r in ((1, 1), (2, 2)):
            params = code_mod.CodeParams(m=2, s=s, q=4, r=r)
            lifted = code_mod.build_code(params)
            for _ in range(5):
                msg = [int(c) for c in rng.integers(0, 4, size=lifted.dimension)]
                f = MultiPoly(fld4, 2, dict(zip(lifted.basis, msg)))
                if not code_mod.membership_test(params, f):
                    return f"span member rejected at s={s}, r={r}"
        return None

    def check_pir_sets():
        rng = np.random.default_rng(seed + 1)
        for q in (4, 8):
            params = code_mod.CodeParams(m=2, s=2, q=q, r=2)
            lifted = code_mod.build_code(params)
            target = (1, 2 % q)
            sets = recovery.pir_recovery_sets(params, target)
            if len(sets) != q // 2:
                return f"q={q}: {len(sets)} sets, want {q // 2}"
            seen = set()
            tgt_idx = code_mod.point_index(params, target)
            for rset in sets:
                if len(rset.positions) != 2 * (q - 1):
                    return f"q={q}: set size {len(rset.positions)}"
                if tgt_idx in rset.positions:
                    return f"q={q}: target inside a recovery set"
                if seen & set(rset.positions):
                    return f"q={q}: recovery sets overlap"
                seen |= set(rset.positions)
            msg = [int(c) for c in rng.integers(0, q, size=lifted.dimension)]
            word = code_mod.encode(lifted, msg)
            want = word.symbols[tgt_idx]
            for rset in sets:
                got = rset.recover(word, target)
                if not np.array_equal(got, want):
                    return f"q={q}: set {rset.label} recovered wrong symbol"
        return None

    def check_self_correct_clean():
        params = code_mod.CodeParams(m=2, s=2, q=4, r=2)
        lifted = code_mod.build_code(params)
        rng = np.random.default_rng(seed + 2)
        msg = [int(c) for c in rng.integers(0, 4, size=lifted.dimension)]
        word = code_mod.encode(lifted, msg)
        grid = code_mod.point_grid(params)
        for idx in range(params.length):
            target = tuple(int(c) for c in grid[idx])
            rep = recovery.self_correct(word, target, seed=seed + idx, truth=word)
            if rep.status != recovery.STATUS_OK or not rep.success:
                return f"clean self-correction failed at {target}"
        return None

    return [
        ("eigen_table", check_eigen_table),
        ("gap_sandwich", check_gap_sandwich),
        ("census_oracle_q4", check_census_oracle),
        ("span_counterexample", check_span_counterexample),
        ("lifting_gain", check_lifting_gain),
        ("encode_membership_q4", check_encode_membership),
        ("pir_disjoint_recovery", check_pir_sets),
        ("self_correct_clean_q4", check_self_correct_clean),
    ]


def _cmd_verify(args, out) -> int:
    failures = 0
    checks = _verify_checks(args.seed)
    out.write(f"verify seed={args.seed}\n")
    for name, fn in checks:
        detail = fn()
        if detail is None:
            out.write(f"PASS {name}\n")
        else:
            out.write(f"FAIL {name}: {detail}\n")
            failures += 1
    out.write(f"verify: {len(checks) - failures}/{len(checks)} checks passed\n")
    return 0 if failures == 0 else 2


# ---------------------------------------------------------------------------


def build_parser() -> Parser:
    parser = Parser(prog="liftmult", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p, with_r=True):
        p.add_argument("--m", type=int, required=True, help="number of variables")
        p.add_argument("--s", type=int, required=True, help="derivative order bound (power of two)")
        p.add_argument("--q", type=int, required=True, help="field size (power of two)")
        if with_r:
            p.add_argument("--r", type=int, required=True, help="degree deficiency, d = qs - r")

    p = sub.add_parser("census", help="good/bad monomial counts as CSV")
    add_params(p)
    p.set_defaults(fn=_cmd_census)

    p = sub.add_parser("eigen", help="census growth eigenvalue and gap")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=_cmd_eigen)

    p = sub.add_parser("curve", help="PIR redundancy exponent curves as CSV")
    p.add_argument("--eps-min", type=float, default=0.02)
    p.add_argument("--eps-max", type=float, default=0.98)
    p.add_argument("--steps", type=int, default=49)
    p.add_argument("--m-cap", type=int, default=12)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.set_defaults(fn=_cmd_curve)

    p = sub.add_parser("build", help="construct a code and report its parameters")
    add_params(p)
    p.add_argument("--basis-out", default=None, help="write basis exponent vectors here")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("encode", help="encode a message file into a codeword file")
    add_params(p)
    p.add_argument("--message", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("corrupt", help="plant symbol errors into a codeword file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--errors", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_corrupt)

    p = sub.add_parser("correct", help="corrupt a codeword, then locally self-correct")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--errors", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", required=True, help="hex coordinates joined by commas")
    p.set_defaults(fn=_cmd_correct)

    p = sub.add_parser("pir", help="print the disjoint recovery sets of a symbol")
    add_params(p, with_r=False)
    p.add_argument("--target", required=True, help="hex coordinates joined by commas")
    p.set_defaults(fn=_cmd_pir)

    p = sub.add_parser("verify", help="run the cross-module invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        _apply_thread_cap()
        return args.fn(args, sys.stdout)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
