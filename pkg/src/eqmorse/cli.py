"""Batch verifier: ``python -m eqmorse <command> ...``.

Exit codes: 0 pass, 1 verified failure, 2 input error.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from .character import DEFAULT_ORDER, DEFAULT_TOL, INF, WindowError
from .fiber_algebra import MAX_N, lambda3_grading_check, su2_commutator_defect
from .geometry import (
    ModelError,
    atiyah_bott_series,
    distance_to_limit,
    min_weight_magnitude,
    strong_series,
    verify_finite_T,
    verify_strong,
    verify_weak,
    weak_bound,
)
from .modelfile import ModelFileError, load_model
from .oscillator import OscillatorSpec, mehler_trace_factor, spectral_trace_factor

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- formatting --------------------------------------------------------------

def fmt_num(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    return f"{x:.12e}"


def fmt_complex(z):
    return f"{z.real:+.15e} {z.imag:+.15e}i"


def fmt_window(c):
    if c.is_finite:
        return "all weights (finite)"
    lo, hi = c.window
    if hi == INF:
        return f"weights >= {int(lo)}"
    return f"weights <= {int(hi)}"


def character_rows(c, label, indent="  "):
    lines = [f"{indent}{label}  window: {fmt_window(c)}"]
    terms = c.terms()
    if not terms:
        lines.append(f"{indent}  (zero)")
    lines += [f"{indent}  ({w}, {fmt_num(m)})" for w, m in terms]
    return lines


def tpoly_rows(P, name):
    lines = []
    for k, c in enumerate(P.coeffs):
        lines += character_rows(c, f"{name}[t^{k}]")
    return lines


# -- commands ----------------------------------------------------------------

def _model(args, need_cohomology):
    try:
        model, coh = load_model(args.model)
    except OSError as exc:
        raise InputError(f"cannot read {args.model}: {exc.strerror}") from None
    except (ModelFileError, ModelError) as exc:
        raise InputError(f"{args.model}: {exc}") from None
    if need_cohomology and coh is None:
        raise InputError(f"{args.model}: no cohomology block")
    return model, coh


def _header(args, model, out):
    out.append(f"model: {args.model}  dim={model.n}  fixed_points={len(model.fixed_points)}")


def cmd_verify(args, out):
    model, coh = _model(args, need_cohomology=True)
    _header(args, model, out)
    if args.weak is not None:
        k = args.weak
        if not 0 <= k <= model.n:
            raise InputError(f"--weak {k} outside 0..{model.n}")
        out.append(f"weak bound  side={args.side}  degree={k}  order={args.order}")
        out += character_rows(weak_bound(model, k, args.side, args.order), f"bound[{k}]")
        out += character_rows(coh.by_degree[k], f"H^{k}")
        v = verify_weak(model, coh, k, args.side, args.order)
        if not v.passed:
            w, h, b = v.witness
            out.append(f"witness: weight {w}: H^{k} has {fmt_num(h)} > bound {fmt_num(b)}")
        out.append(f"verdict: {'PASS' if v.passed else 'FAIL'}")
        return EXIT_PASS if v.passed else EXIT_FAIL
    out.append(f"strong inequality  side={args.side}  order={args.order}")
    out += tpoly_rows(strong_series(model, args.side, args.order), "P")
    v = verify_strong(model, coh, args.side, args.order)
    out.append("division by (1+t):")
    out += character_rows(v.remainder, "remainder")
    out += tpoly_rows(v.Q, "Q")
    out.append(f"divisible: {'yes' if v.divisible else 'no'}")
    if v.divisible and not v.nonneg:
        k, w, val = v.witness
        out.append(f"witness: Q[t^{k}] at weight {w} is {fmt_num(val)}")
    out.append(f"nonnegative: {'yes' if v.nonneg else 'no'}")
    out.append(f"verdict: {'PASS' if v.passed else 'FAIL'}")
    return EXIT_PASS if v.passed else EXIT_FAIL


def cmd_ab(args, out):
    model, coh = _model(args, need_cohomology=False)
    _header(args, model, out)
    series = atiyah_bott_series(model, args.order)
    out.append(f"Atiyah-Bott series  order={args.order}")
    out += character_rows(series, "AB")
    if coh is None:
        out.append("verdict: no cohomology given")
        return EXIT_PASS
    euler = coh.euler_character()
    out += character_rows(euler, "sum (-1)^k H^k")
    diff = series - euler
    if not diff.is_zero:
        w, c = diff.terms()[0]
        out.append(f"witness: weight {w} differs by {fmt_num(c)}")
    out.append(f"verdict: {'PASS' if diff.is_zero else 'FAIL'}")
    return EXIT_PASS if diff.is_zero else EXIT_FAIL


def cmd_heat(args, out):
    try:
        spec = OscillatorSpec(args.lam, args.T, args.theta, form_degree=args.degree)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    closed = mehler_trace_factor(spec).value
    out.append(f"heat trace  lambda={args.lam}  T={args.T!r}  theta={args.theta!r}  degree={args.degree}")
    out.append(f"closed form: {fmt_complex(closed)}")
    if not args.oracle:
        return EXIT_PASS
    oracle = spectral_trace_factor(spec)
    diff = abs(closed - oracle.value)
    out.append(f"spectral:    {fmt_complex(oracle.value)}  (cutoff {spec.cutoff}, tail <= {oracle.tail_bound:.3e})")
    out.append(f"difference:  {diff:.3e}  (tol {args.tol:.1e})")
    ok = diff <= args.tol
    out.append(f"verdict: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_FAIL


def _parse_Ts(text):
    try:
        Ts = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--T: cannot parse {text!r}") from None
    if not Ts or any(not (T > 0 and math.isfinite(T)) for T in Ts):
        raise InputError("--T: need a list of positive values")
    return Ts


def cmd_scan_t(args, out):
    model, coh = _model(args, need_cohomology=False)
    Ts = _parse_Ts(args.T)
    _header(args, model, out)
    lam_min = min_weight_magnitude(model) if model.n else None
    out.append(f"finite-T scan  order={args.order}  lambda_min={lam_min}")
    out.append(f"{'T':>10}  {'distance':>12}  {'min Q_T':>13}  {'divisible':>9}")
    ok = True
    for T in Ts:
        dist = distance_to_limit(model, T, args.order)
        if coh is None:
            out.append(f"{T:>10.4f}  {dist:>12.4e}  {'-':>13}  {'-':>9}")
            continue
        v = verify_finite_T(model, coh, T, args.order, tol=args.tol)
        qmin = min((c for q in v.Q.coeffs for c in q.coeffs), default=0.0)
        ok = ok and v.passed
        out.append(f"{T:>10.4f}  {dist:>12.4e}  {qmin:>13.4e}  {'yes' if v.divisible else 'no':>9}")
    if coh is not None:
        out.append(f"verdict: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_algebra(args, out):
    if not 1 <= args.n <= MAX_N:
        raise InputError(f"--n must be in 1..{MAX_N}")
    defect = su2_commutator_defect(args.n, seed=args.seed)
    graded = lambda3_grading_check(args.n)
    out.append(f"fiber algebra  n={args.n}  seed={args.seed}  dim={4 ** args.n}")
    out.append(f"su(2) commutator defect: {defect:.3e}  (tol {args.tol:.1e})")
    out.append(f"Lambda_3 grading exact: {'yes' if graded else 'no'}")
    ok = defect < args.tol and graded
    out.append(f"verdict: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_FAIL


# -- entry point -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p = _Parser(prog="eqmorse", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="strong or weak inequalities")
    v.add_argument("--model", required=True)
    v.add_argument("--side", choices=("plus", "minus"), default="minus")
    v.add_argument("--weak", type=int)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("ab", parents=[common], help="Atiyah-Bott series")
    a.add_argument("--model", required=True)
    a.set_defaults(func=cmd_ab)

    h = sub.add_parser("heat", parents=[common], help="one-weight oscillator trace")
    h.add_argument("--lambda", dest="lam", type=int, required=True)
    h.add_argument("--T", type=float, required=True)
    h.add_argument("--theta", type=float, required=True)
    h.add_argument("--degree", type=int, choices=(0, 1), default=0)
    h.add_argument("--oracle", action="store_true")
    h.set_defaults(func=cmd_heat)

    s = sub.add_parser("scan-t", parents=[common], help="finite-T deformation scan")
    s.add_argument("--model", required=True)
    s.add_argument("--T", required=True, help="comma-separated list")
    s.set_defaults(func=cmd_scan_t)

    g = sub.add_parser("algebra", parents=[common], help="su(2) and grading checks")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_algebra)
    return p


def main(argv=None, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    out = []
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "order", 0) < 0:
            raise InputError("--order must be >= 0")
        code = args.func(args, out)
    except (InputError, WindowError) as exc:
        stdout.write("\n".join(out + [f"error: {exc}"]) + "\n")
        return EXIT_INPUT
    stdout.write("\n".join(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
