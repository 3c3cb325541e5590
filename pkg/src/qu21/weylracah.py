"""Transformation brackets between the two reductions and q-Racah coefficients.

The overlap <U|T>_q between a U-basis and a T-basis vector of the same weight
is computed two independent ways:

1. directly, from its closed-form square-root prefactor and single balanced
   q-factorial sum (two printed summation conventions, over n and over
   r = k - n, are both implemented and must agree);
2. through the general q-Racah coefficient U_q(a b e d; c f) under the
   substitution (a, b, c, d, e, f) = (T, j3, j2, U, j1, j) built from the two
   labels, times a dimension factor and phase.

The agreement of the two paths, together with orthogonality of the resulting
weight blocks and the intertwining property against the generator tables, is
what the verify module checks.

Conventions for U_q(a b e d; c f): triangle conditions on (a,b,c), (a,e,f),
(c,d,e), (b,d,f); arguments outside any triangle give 0 by convention, as do
non-half-integer or negative arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import EmptyWeightSpace, InconsistentLabels, WeightMismatch
from .qarith import EvalContext, Scalar, SignedRadical
from .repspace import (
    Signature,
    TBasisLabel,
    UBasisLabel,
    Weight,
    require_t_label,
    require_u_label,
    t_labels_at_weight,
    u_labels_at_weight,
    weight_of_t,
    weight_of_u,
)

# ----------------------------------------------------------------------------
# direct transformation bracket
# ----------------------------------------------------------------------------


def _check_match(sig: Signature, u: UBasisLabel, t: TBasisLabel) -> None:
    require_u_label(sig, u)
    require_t_label(sig, t)
    wu, wt = weight_of_u(sig, u), weight_of_t(sig, t)
    if wu != wt:
        raise WeightMismatch(
            f"labels live at different weights: {u} -> {wu}, {t} -> {wt}")


def weyl_prefactor_sq(ctx: EvalContext, sig: Signature,
                      u: UBasisLabel, t: TBasisLabel) -> Scalar:
    """Square of the positive prefactor of the bracket <U|T>_q."""
    f12, f13, f23 = sig.f1 - sig.f2, sig.f1 - sig.f3, sig.f2 - sig.f3
    k, ell, s, p = u.k, u.ell, t.s, t.p
    x = t.M - t.T - 1
    num = (ctx.qnum(2 * u.U + 1) * ctx.qnum(2 * t.T + 1)
           * ctx.qfact(k) * ctx.qfact(x) * ctx.qfact(u.U + u.MU)
           * ctx.qfact(t.T + t.M)
           * ctx.qfact(f12 - k) * ctx.qfact(f12 + ell + 1)
           * ctx.qfact(f23 + s - 2) * ctx.qfact(f23 + p - 2))
    den = (ctx.qfact(s) * ctx.qfact(p) * ctx.qfact(ell)
           * ctx.qfact(u.U - u.MU) * ctx.qfact(f13 + s - 1)
           * ctx.qfact(f12 - p) * ctx.qfact(f23 + k - 2)
           * ctx.qfact(f13 + ell - 1))
    return num / den


def weyl_sum(ctx: EvalContext, sig: Signature,
             u: UBasisLabel, t: TBasisLabel) -> Scalar:
    """The balanced q-factorial sum of the bracket, indexed by n."""
    f13, f23 = sig.f1 - sig.f3, sig.f2 - sig.f3
    k, ell, s, p = u.k, u.ell, t.s, t.p
    drop = int(u.U - u.MU)
    total = ctx.zero()
    for n in range(0, k + 1):
        sign = -1 if (k + n) % 2 else 1
        term = (ctx.qfact(drop + k - n) * ctx.qfact(ell + k - n)
                * ctx.qfact(f13 + ell + k - n - 1)
                * ctx.qfact_inv(n) * ctx.qfact_inv(k - n)
                * ctx.qfact_inv(int(2 * u.U) + 1 + k - n)
                * ctx.qfact_inv(ell - s + k - n)
                * ctx.qfact_inv(f23 + p + ell + k - n - 1))
        total = total + sign * term
    return total


def weyl_sum_r(ctx: EvalContext, sig: Signature,
               u: UBasisLabel, t: TBasisLabel) -> Scalar:
    """The same sum in its other printed convention, indexed by r."""
    f13, f23 = sig.f1 - sig.f3, sig.f2 - sig.f3
    k, ell, s, p = u.k, u.ell, t.s, t.p
    drop = int(u.U - u.MU)
    total = ctx.zero()
    for r in range(0, k + 1):
        sign = -1 if r % 2 else 1
        term = (ctx.qfact(drop + r) * ctx.qfact(ell + r)
                * ctx.qfact(f13 + ell + r - 1)
                * ctx.qfact_inv(r) * ctx.qfact_inv(int(2 * u.U) + r + 1)
                * ctx.qfact_inv(k - r) * ctx.qfact_inv(ell - s + r)
                * ctx.qfact_inv(f23 + p + ell + r - 1))
        total = total + sign * term
    return total


def weyl_coefficient_exact(ctx: EvalContext, sig: Signature,
                           u: UBasisLabel, t: TBasisLabel,
                           convention: str = "n") -> SignedRadical:
    """<U|T>_q as an exact SignedRadical (requires an exact-mode context)."""
    if not ctx.is_exact():
        raise ValueError("weyl_coefficient_exact requires an exact-mode context")
    _check_match(sig, u, t)
    pref = weyl_prefactor_sq(ctx, sig, u, t)
    total = weyl_sum(ctx, sig, u, t) if convention == "n" else weyl_sum_r(ctx, sig, u, t)
    if total == 0:
        return SignedRadical.zero()
    sign = 1 if total > 0 else -1
    return SignedRadical.make(sign, 0, pref * total * total)


def weyl_coefficient(ctx: EvalContext, sig: Signature,
                     u: UBasisLabel, t: TBasisLabel,
                     convention: str = "n") -> Scalar:
    """<U|T>_q as a context scalar (float contexts; real valued)."""
    if ctx.is_exact():
        raise ValueError("use weyl_coefficient_exact for exact-mode contexts")
    _check_match(sig, u, t)
    pref = weyl_prefactor_sq(ctx, sig, u, t)
    total = weyl_sum(ctx, sig, u, t) if convention == "n" else weyl_sum_r(ctx, sig, u, t)
    return ctx.sqrt(pref) * total


@dataclass(frozen=True)
class WeylBlock:
    """Orthogonal change-of-basis block at one weight.

    rows follow u_labels (ascending U), columns follow t_labels (ascending T);
    entries[i][j] = <u_i | t_j>_q.  At full label range the block is square.
    """

    weight: Weight
    u_labels: Tuple[UBasisLabel, ...]
    t_labels: Tuple[TBasisLabel, ...]
    entries: Tuple[Tuple[Scalar, ...], ...]


def weyl_block(ctx: EvalContext, sig: Signature, weight: Weight) -> WeylBlock:
    """The complete (full-range) block at a weight; EmptyWeightSpace if none."""
    us = u_labels_at_weight(sig, weight)
    ts = t_labels_at_weight(sig, weight)
    if not us or not ts:
        raise EmptyWeightSpace(f"no basis labels at weight {weight} of {sig}")
    entries = tuple(tuple(weyl_coefficient(ctx, sig, u, t) for t in ts)
                    for u in us)
    return WeylBlock(weight, tuple(us), tuple(ts), entries)


# ----------------------------------------------------------------------------
# q-Racah coefficients
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class RacahArgs:
    """Arguments of U_q(a b e d; c f), stored as Fractions.

    In recoupling terms this is the unitary bracket
    <(a b) c, d; e | a, (b d) f; e>: triangles (a,b,c), (c,d,e), (b,d,f),
    (a,e,f).
    """

    a: Fraction
    b: Fraction
    e: Fraction
    d: Fraction
    c: Fraction
    f: Fraction

    @classmethod
    def make(cls, a, b, e, d, c, f) -> "RacahArgs":
        return cls(*(Fraction(x) for x in (a, b, e, d, c, f)))

    def as_tuple(self):
        return (self.a, self.b, self.e, self.d, self.c, self.f)


def _triangle(x: Fraction, y: Fraction, z: Fraction) -> bool:
    """Triangle condition with integer perimeter."""
    if (x + y + z).denominator != 1:
        return False
    return x + y - z >= 0 and x - y + z >= 0 and -x + y + z >= 0


def racah_triangles_ok(args: RacahArgs) -> bool:
    a, b, e, d, c, f = args.as_tuple()
    for x in args.as_tuple():
        if x < 0 or (2 * x).denominator != 1:
            return False
    return (_triangle(a, b, c) and _triangle(a, e, f)
            and _triangle(c, d, e) and _triangle(b, d, f))


def _qracah_parts(ctx: EvalContext, args: RacahArgs):
    """(phase_sign, prefactor_square, sum) of U_q, or None out of triangle."""
    if not racah_triangles_ok(args):
        return None
    a, b, e, d, c, f = args.as_tuple()
    phase = -1 if int(a + d - c - f) % 2 else 1
    pref_num = (ctx.qnum(2 * c + 1) * ctx.qnum(2 * f + 1)
                * ctx.qfact(a + b + c + 1) * ctx.qfact(b + d + f + 1)
                * ctx.qfact(a - b + c) * ctx.qfact(-a + b + c)
                * ctx.qfact(a + e - f) * ctx.qfact(b - d + f)
                * ctx.qfact(-b + d + f) * ctx.qfact(-c + d + e))
    pref_den = (ctx.qfact(a + e + f + 1) * ctx.qfact(c + d + e + 1)
                * ctx.qfact(a + b - c) * ctx.qfact(a - e + f)
                * ctx.qfact(b + d - f) * ctx.qfact(c + d - e)
                * ctx.qfact(c - d + e) * ctx.qfact(-a + e + f))
    n_hi = int(min(-a + b + c, b - d + f))
    total = ctx.zero()
    for n in range(0, n_hi + 1):
        sign = -1 if n % 2 else 1
        term = (ctx.qfact(2 * b - n) * ctx.qfact(b + c - e + f - n)
                * ctx.qfact(b + c + e + f + 1 - n)
                * ctx.qfact_inv(n) * ctx.qfact_inv(-a + b + c - n)
                * ctx.qfact_inv(b - d + f - n) * ctx.qfact_inv(a + b + c + 1 - n)
                * ctx.qfact_inv(b + d + f + 1 - n))
        total = total + sign * term
    return phase, pref_num / pref_den, total


def qracah_exact(ctx: EvalContext, args: RacahArgs) -> SignedRadical:
    """U_q(a b e d; c f) as an exact SignedRadical (exact-mode context)."""
    if not ctx.is_exact():
        raise ValueError("qracah_exact requires an exact-mode context")
    parts = _qracah_parts(ctx, args)
    if parts is None:
        return SignedRadical.zero()
    phase, pref, total = parts
    if total == 0:
        return SignedRadical.zero()
    sign = phase * (1 if total > 0 else -1)
    return SignedRadical.make(sign, 0, pref * total * total)


def qracah(ctx: EvalContext, args: RacahArgs) -> Scalar:
    """U_q(a b e d; c f) as a context scalar; 0 outside the triangles."""
    if ctx.is_exact():
        raise ValueError("exact qracah values are radicals; use qracah_exact")
    parts = _qracah_parts(ctx, args)
    if parts is None:
        return ctx.zero()
    phase, pref, total = parts
    return phase * ctx.sqrt(pref) * total


def racah_args_from_rep(sig: Signature, u: UBasisLabel, t: TBasisLabel) -> RacahArgs:
    """The substitution (a, b, c, d, e, f) = (T, j3, j2, U, j1, j).

    j3 = (ell + k)/2, j2 = (f2 - f3 + p - s + ell + k - 2)/2,
    j1 = (f1 - f3 - p + s - 2)/2, j = (f1 - f2)/2.  Raises WeightMismatch for
    labels at different weights and InconsistentLabels if the resulting
    arguments are not jointly realizable (which cannot happen for matched
    valid labels; the check guards corrupted inputs).
    """
    _check_match(sig, u, t)
    k, ell, s, p = u.k, u.ell, t.s, t.p
    j3 = Fraction(ell + k, 2)
    j2 = Fraction(sig.f2 - sig.f3 + p - s + ell + k - 2, 2)
    j1 = Fraction(sig.f1 - sig.f3 - p + s - 2, 2)
    j = Fraction(sig.f1 - sig.f2, 2)
    args = RacahArgs(t.T, j3, j1, u.U, j2, j)
    if not racah_triangles_ok(args):
        raise InconsistentLabels(f"arguments {args} violate a triangle condition")
    return args


def weyl_via_racah(ctx: EvalContext, sig: Signature,
                   u: UBasisLabel, t: TBasisLabel, form: str = "a") -> Scalar:
    """<U|T>_q computed through the q-Racah coefficient.

    form 'a':  (-1)^s sqrt([2U+1][2T+1] / ([2 j2+1][2 j+1])) U_q(T j3 j1 U; j2 j)
    form 'b':  (-1)^k U_q(j1 j2 j j3; U T)

    Both forms must agree with each other and with weyl_coefficient.
    """
    args = racah_args_from_rep(sig, u, t)
    a, b, e, d, c, f = args.as_tuple()
    if form == "a":
        sign = -1 if t.s % 2 else 1
        ratio = (ctx.qnum(2 * d + 1) * ctx.qnum(2 * a + 1)
                 / (ctx.qnum(2 * c + 1) * ctx.qnum(2 * f + 1)))
        return sign * ctx.sqrt(ratio) * qracah(ctx, args)
    if form == "b":
        sign = -1 if u.k % 2 else 1
        permuted = RacahArgs(e, c, f, b, d, a)
        return sign * qracah(ctx, permuted)
    raise ValueError(f"form must be 'a' or 'b', got {form!r}")
