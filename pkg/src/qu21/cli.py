"""Command line surface: basis tables, matrix elements, brackets, checks.

Subcommands:

    basis    enumerate one basis with weights, exact squared norms and
             (U basis) the triangular pattern of each label
    matrix   nonzero matrix elements of one generator in one basis, with
             exact sign / q-power / radicand and a floating value
    weyl     the transformation block at one weight, optionally compared
             against its q-Racah evaluation
    racah    a single q-Racah coefficient from six half-integer arguments
    verify   the full identity-check suite; exit code 1 on any failure

Output is JSON ({"config": ..., "rows": [...]}) or RFC-4180 CSV; both carry
identical string values.  Floating values are printed with round-half-even
at the configured number of significant digits.  Exit codes: 0 success,
1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Context as DecimalContext, Decimal, ROUND_HALF_EVEN
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import QAlgebraError
from .generators import (GENERATORS, basis_action, norm_t_sq, norm_u_sq)
from .qarith import EvalContext
from .repspace import (Signature, Weight, classify, enumerate_t_basis,
                       enumerate_u_basis, gg_from_label, weight_of_t,
                       weight_of_u)
from .verify import Truncation, run_all_checks
from .weylracah import (RacahArgs, qracah, qracah_exact, weyl_block,
                        weyl_via_racah)

DEFAULT_PRECISION = 50


class UsageError(Exception):
    """Bad arguments or domain errors surfaced to the user (exit 2)."""


# ----------------------------------------------------------------------------
# parsing and formatting helpers
# ----------------------------------------------------------------------------


def _parse_sig(text: str) -> Signature:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--sig wants three comma-separated integers, got {text!r}")
    try:
        f1, f2, f3 = (int(p) for p in parts)
    except ValueError:
        raise UsageError(f"--sig components must be integers, got {text!r}")
    return Signature(f1, f2, f3)


def _parse_q(text: str) -> Tuple[Fraction, bool]:
    """(q as an exact Fraction, whether the spelling was decimal)."""
    try:
        if "/" in text:
            return Fraction(text), False
        if "." in text or "e" in text.lower():
            return Fraction(Decimal(text)), True
        return Fraction(int(text)), False
    except (ValueError, ArithmeticError):
        raise UsageError(f"cannot parse q value {text!r}")


def _parse_weight(text: str) -> Weight:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--weight wants three comma-separated integers, got {text!r}")
    try:
        return Weight(*(int(p) for p in parts))
    except ValueError:
        raise UsageError(f"--weight components must be integers, got {text!r}")


def _parse_half_integer(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse half-integer {text!r}")
    if (2 * v).denominator != 1:
        raise UsageError(f"{text!r} is not a half-integer")
    return v


def _mpf_to_fraction(value) -> Fraction:
    sgn, man, exp, _ = value._mpf_
    man, exp = int(man), int(exp)
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError(f"not a finite value: {value!r}")
    return Fraction(-man if sgn else man) * Fraction(2) ** exp


def format_float(value, digits: int) -> str:
    """Deterministic decimal string, round-half-even, significant digits."""
    fr = value if isinstance(value, Fraction) else _mpf_to_fraction(value)
    ctx = DecimalContext(prec=digits, rounding=ROUND_HALF_EVEN)
    return str(ctx.divide(Decimal(fr.numerator), Decimal(fr.denominator)))


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)


# ----------------------------------------------------------------------------
# emitters
# ----------------------------------------------------------------------------


def emit(config: Dict[str, str], rows: List[Dict[str, str]],
         fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"config": config, "rows": rows}, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        keys: List[str] = []
        for row in rows:
            for k in row:
                if k not in keys:
                    keys.append(k)
        writer = csv.DictWriter(out, fieldnames=keys, restval="")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        raise UsageError(f"unknown format {fmt!r}")


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------


def _base_config(args, q: Fraction) -> Dict[str, str]:
    cfg = {"command": args.command, "q": _frac_str(q), "mode": args.mode,
           "precision": str(args.precision)}
    if getattr(args, "sig", None) is not None:
        cfg["sig"] = args.sig
    for name in ("lmax", "smax", "depth"):
        if hasattr(args, name):
            cfg[name] = str(getattr(args, name))
    return cfg


def cmd_basis(args, out) -> int:
    sig = _parse_sig(args.sig)
    q, _ = _parse_q(args.q)
    ctx = EvalContext.exact(q)
    rows: List[Dict[str, str]] = []
    if args.basis == "u":
        for lab in enumerate_u_basis(sig, args.lmax):
            w = weight_of_u(sig, lab)
            rows.append({
                "k": str(lab.k), "ell": str(lab.ell),
                "U": _frac_str(lab.U), "MU": _frac_str(lab.MU),
                "m1": str(w.m1), "m2": str(w.m2), "m3": str(w.m3),
                "norm_sq": _frac_str(norm_u_sq(ctx, sig, lab.k, lab.ell)),
                "pattern": str(gg_from_label(sig, lab)),
            })
    else:
        for lab in enumerate_t_basis(sig, args.smax, args.depth):
            w = weight_of_t(sig, lab)
            rows.append({
                "s": str(lab.s), "p": str(lab.p),
                "T": _frac_str(lab.T), "M": _frac_str(lab.M),
                "m1": str(w.m1), "m2": str(w.m2), "m3": str(w.m3),
                "norm_sq": _frac_str(norm_t_sq(ctx, sig, lab.s, lab.p)),
            })
    cfg = _base_config(args, q)
    cfg["basis"] = args.basis
    cfg["series"] = classify(sig).value
    emit(cfg, rows, args.format, out)
    return 0


def cmd_matrix(args, out) -> int:
    sig = _parse_sig(args.sig)
    q, _ = _parse_q(args.q)
    if args.gen not in GENERATORS:
        raise UsageError(f"unknown generator {args.gen!r}; expected one of "
                         + ", ".join(GENERATORS))
    ectx = EvalContext.exact(q)
    fctx = ectx.as_float(args.precision)
    if args.basis == "u":
        labels = enumerate_u_basis(sig, args.lmax)
    else:
        labels = enumerate_t_basis(sig, args.smax, args.depth)
    rows = []
    for lab in labels:
        for tgt, coeff in basis_action(ectx, sig, args.basis, args.gen, lab):
            rows.append({
                "source": str(lab), "target": str(tgt),
                "sign": str(coeff.sign), "qpower": str(coeff.qpower),
                "radicand": _frac_str(coeff.radicand),
                "value": format_float(coeff.to_float(fctx), args.precision),
            })
    cfg = _base_config(args, q)
    cfg["basis"] = args.basis
    cfg["gen"] = args.gen
    emit(cfg, rows, args.format, out)
    return 0


def cmd_weyl(args, out) -> int:
    sig = _parse_sig(args.sig)
    q, _ = _parse_q(args.q)
    ctx = EvalContext.floating(q, precision=args.precision)
    weight = _parse_weight(args.weight)
    block = weyl_block(ctx, sig, weight)
    rows = []
    digits = args.precision
    for i, ul in enumerate(block.u_labels):
        for j, tl in enumerate(block.t_labels):
            row = {
                "u_label": str(ul), "t_label": str(tl),
                "value": format_float(block.entries[i][j], digits),
            }
            if args.via_racah:
                va = weyl_via_racah(ctx, sig, ul, tl, form="a")
                vb = weyl_via_racah(ctx, sig, ul, tl, form="b")
                diff = max(abs(block.entries[i][j] - va),
                           abs(block.entries[i][j] - vb), abs(va - vb))
                row["racah_form_a"] = format_float(va, digits)
                row["racah_form_b"] = format_float(vb, digits)
                row["difference"] = format_float(diff, 3)
                row["within_tolerance"] = str(
                    float(diff) <= args.tolerance).lower()
            rows.append(row)
    cfg = _base_config(args, q)
    cfg["weight"] = args.weight
    emit(cfg, rows, args.format, out)
    return 0


def cmd_racah(args, out) -> int:
    q, decimal_q = _parse_q(args.q)
    vals = [_parse_half_integer(t) for t in args.args]
    racah_args = RacahArgs(*vals)
    mode = args.mode
    if mode == "exact" and decimal_q:
        raise UsageError("exact mode needs a rational q (use a/b form)")
    row = {k: _frac_str(v) for k, v in
           zip("abedcf", racah_args.as_tuple())}
    if mode == "exact":
        rad = qracah_exact(EvalContext.exact(q), racah_args)
        row["sign"] = str(rad.sign)
        row["qpower"] = str(rad.qpower)
        row["radicand"] = _frac_str(rad.radicand)
        fctx = EvalContext.floating(q, precision=args.precision)
        row["value"] = format_float(rad.to_float(fctx), args.precision)
    else:
        ctx = EvalContext.floating(q, precision=args.precision)
        row["value"] = format_float(qracah(ctx, racah_args), args.precision)
    emit(_base_config(args, q), [row], args.format, out)
    return 0


def cmd_verify(args, out) -> int:
    sig = _parse_sig(args.sig)
    q, decimal_q = _parse_q(args.q)
    if args.mode == "exact" and decimal_q:
        raise UsageError("exact mode needs a rational q (use a/b form)")
    trunc = Truncation(args.lmax, args.smax, args.depth)
    checks = tuple(args.checks.split(",")) if args.checks else None
    try:
        reports = run_all_checks(sig, q, mode=args.mode, truncation=trunc,
                                 tolerance=args.tolerance,
                                 precision=args.precision,
                                 flip_entry=args.flip_entry, checks=checks)
    except ValueError as exc:
        raise UsageError(str(exc))
    all_pass = all(r.passed for r in reports)
    if args.format == "text":
        for r in reports:
            out.write(r.line() + "\n")
        out.write(f"{'all checks passed' if all_pass else 'CHECKS FAILED'}: "
                  f"{sum(r.passed for r in reports)}/{len(reports)}\n")
    else:
        rows = [{
            "check": r.name, "passed": str(r.passed).lower(),
            "max_residual": format_float(_res_fraction(r.max_residual), 12),
            "tolerance": format_float(Fraction(str(r.tolerance)) if r.tolerance
                                      else Fraction(0), 3),
            "location": r.location, "columns": str(r.columns_checked),
            "note": r.note,
        } for r in reports]
        emit(_base_config(args, q), rows, args.format, out)
    return 0 if all_pass else 1


def _res_fraction(x: float) -> Fraction:
    return Fraction(x) if x else Fraction(0)


# ----------------------------------------------------------------------------
# argument wiring
# ----------------------------------------------------------------------------


def _add_common(sp, *, sig=True, trunc=True):
    if sig:
        sp.add_argument("--sig", required=True,
                        help="signature f1,f2,f3 (integers)")
    sp.add_argument("--q", default="1", help="deformation parameter: a/b or decimal")
    sp.add_argument("--mode", choices=("exact", "float"), default="float")
    sp.add_argument("--precision", type=int,
                    default=int(os.environ.get("QU21_PRECISION", DEFAULT_PRECISION)),
                    help="working precision in decimal digits")
    if trunc:
        sp.add_argument("--lmax", type=int, default=6, help="U-basis ell bound")
        sp.add_argument("--smax", type=int, default=6, help="T-basis s bound")
        sp.add_argument("--depth", type=int, default=6, help="T-basis M - T - 1 bound")
    sp.add_argument("--out", default=None, help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qu21",
        description="bases, matrix elements and identity checks for "
                    "lowest-weight representations of the q-deformed u(2,1)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="enumerate one basis with norms")
    _add_common(b)
    b.add_argument("--basis", choices=("u", "t"), default="u")
    b.add_argument("--format", choices=("json", "csv"), default="json")

    m = sub.add_parser("matrix", help="matrix elements of one generator")
    _add_common(m)
    m.add_argument("--gen", required=True, help="generator name A11..A33")
    m.add_argument("--basis", choices=("u", "t"), default="u")
    m.add_argument("--format", choices=("json", "csv"), default="json")

    w = sub.add_parser("weyl", help="transformation block at one weight")
    _add_common(w, trunc=False)
    w.add_argument("--weight", required=True, help="weight m1,m2,m3")
    w.add_argument("--via-racah", action="store_true", dest="via_racah",
                   help="also evaluate through q-Racah coefficients")
    w.add_argument("--tolerance", type=float, default=1e-10)
    w.add_argument("--format", choices=("json", "csv"), default="json")

    r = sub.add_parser("racah", help="one q-Racah coefficient")
    _add_common(r, sig=False, trunc=False)
    r.add_argument("args", nargs=6, metavar="X",
                   help="six half-integers: a b e d c f")
    r.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", help="run the identity-check suite")
    _add_common(v)
    v.add_argument("--tolerance", type=float, default=1e-10)
    v.add_argument("--flip-entry", dest="flip_entry", default=None,
                   help="test hook: flip the sign of one table entry (U1..T8)")
    v.add_argument("--checks", default=None,
                   help="comma-separated subset of checks to run")
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return ap


HANDLERS = {"basis": cmd_basis, "matrix": cmd_matrix, "weyl": cmd_weyl,
            "racah": cmd_racah, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handler = HANDLERS[args.command]
    try:
        if args.out:
            buf = io.StringIO()
            code = handler(args, buf)
            with open(args.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            code = handler(args, sys.stdout)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QAlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
