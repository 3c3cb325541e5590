"""Matrix elements of the nine generators A_ij in both reductions.

Naming: generators are addressed by the strings "A11" ... "A33".  The
diagonal ones act by the plain integer weight components.  A12/A21 form the
compact su_q(2) ladder inside U-multiplets, A23/A32 the noncompact su_q(1,1)
ladder inside T-multiplets.  The remaining four change multiplets; their
matrix elements are table driven: every entry is a record holding the label
shifts, an overall sign, an integer q-power, and the bracket factors of the
radicand, so that the closed forms live in exactly one place.

All matrix elements are returned as SignedRadical coefficients attached to
validated target labels.  A vanishing bracket factor in a numerator silently
drops the term; this is also what keeps boundary labels (k or p at the ends
of their ranges, multiplet bottoms) from producing out-of-range targets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, NamedTuple, Tuple

from .errors import ConstraintViolation
from .qarith import EvalContext, SignedRadical, Scalar, _as_int
from .repspace import (
    Signature,
    TBasisLabel,
    UBasisLabel,
    require_t_label,
    require_u_label,
    t_label,
    u_label,
    weight_of_t,
    weight_of_u,
)

GENERATORS = ("A11", "A12", "A13", "A21", "A22", "A23", "A31", "A32", "A33")

# Weight shift (dm1, dm2, dm3) effected by each generator.
WEIGHT_SHIFTS = {
    "A11": (0, 0, 0),
    "A22": (0, 0, 0),
    "A33": (0, 0, 0),
    "A12": (1, -1, 0),
    "A21": (-1, 1, 0),
    "A23": (0, 1, -1),
    "A32": (0, -1, 1),
    "A13": (1, 0, -1),
    "A31": (-1, 0, 1),
}


class ActionTerm(NamedTuple):
    """One summand of a generator acting on a basis vector."""

    target: object  # UBasisLabel or TBasisLabel
    coeff: SignedRadical


# ----------------------------------------------------------------------------
# norms
# ----------------------------------------------------------------------------

def norm_u_sq(ctx: EvalContext, sig: Signature, k: int, ell: int) -> Scalar:
    """Squared norm N^2(k, ell) of the unnormalized U-basis construction."""
    if not 0 <= k <= sig.f1 - sig.f2:
        raise ConstraintViolation(
            f"0 <= k <= f1 - f2 violated: k = {k}, f1 - f2 = {sig.f1 - sig.f2}")
    if ell < 0:
        raise ConstraintViolation(f"ell >= 0 violated: ell = {ell}")
    f12, f13, f23 = sig.f1 - sig.f2, sig.f1 - sig.f3, sig.f2 - sig.f3
    num = (ctx.qfact(k) * ctx.qfact(ell) * ctx.qfact(f12 - k + ell + 1)
           * ctx.qfact(f12) * ctx.qfact(f23 + k - 2) * ctx.qfact(f13 + ell - 1))
    den = (ctx.qfact(f12 - k) * ctx.qfact(f12 + ell + 1)
           * ctx.qfact(f13 - 1) * ctx.qfact(f23 - 2))
    return num / den


def norm_u_sq_stepwise(ctx: EvalContext, sig: Signature, k: int, ell: int) -> Scalar:
    """N^2(k, ell) built purely from the two one-step recursions.

    Starting from N^2(0, 0) = 1, first raise ell (each step multiplies by
    [ell][f1 - f3 + ell - 1]), then raise k (each step multiplies by
    [k][f1 - f2 - k + 1][f2 - f3 + k - 2] / [f1 - f2 - k + ell + 2]).
    Used as an independent oracle against the closed form.
    """
    f12, f13, f23 = sig.f1 - sig.f2, sig.f1 - sig.f3, sig.f2 - sig.f3
    if not 0 <= k <= f12:
        raise ConstraintViolation(
            f"0 <= k <= f1 - f2 violated: k = {k}, f1 - f2 = {f12}")
    if ell < 0:
        raise ConstraintViolation(f"ell >= 0 violated: ell = {ell}")
    acc = ctx.one()
    for j in range(1, ell + 1):
        acc = acc * ctx.qnum(j) * ctx.qnum(f13 + j - 1)
    for i in range(1, k + 1):
        acc = (acc * ctx.qnum(i) * ctx.qnum(f12 - i + 1) * ctx.qnum(f23 + i - 2)
               / ctx.qnum(f12 - i + ell + 2))
    return acc


def norm_t_sq(ctx: EvalContext, sig: Signature, s: int, p: int) -> Scalar:
    """Squared norm N^2(s, p) of the unnormalized T-basis construction."""
    if not 0 <= p <= sig.f1 - sig.f2:
        raise ConstraintViolation(
            f"0 <= p <= f1 - f2 violated: p = {p}, f1 - f2 = {sig.f1 - sig.f2}")
    if s < 0:
        raise ConstraintViolation(f"s >= 0 violated: s = {s}")
    f12, f13, f23 = sig.f1 - sig.f2, sig.f1 - sig.f3, sig.f2 - sig.f3
    num = (ctx.qfact(s) * ctx.qfact(p) * ctx.qfact(f12)
           * ctx.qfact(f13 + s - 1) * ctx.qfact(f23 + s - 2) * ctx.qfact(f23 + p - 2))
    den = (ctx.qfact(f12 - p) * ctx.qfact(f13 - 1) * ctx.qfact(f23 - 2)
           * ctx.qfact(f23 + p + s - 2))
    return num / den


def norm_t_sq_stepwise(ctx: EvalContext, sig: Signature, s: int, p: int) -> Scalar:
    """N^2(s, p) from one-step ratios of the closed form (cross-check path)."""
    f12, f13, f23 = sig.f1 - sig.f2, sig.f1 - sig.f3, sig.f2 - sig.f3
    if not 0 <= p <= f12:
        raise ConstraintViolation(
            f"0 <= p <= f1 - f2 violated: p = {p}, f1 - f2 = {f12}")
    if s < 0:
        raise ConstraintViolation(f"s >= 0 violated: s = {s}")
    acc = ctx.one()
    for j in range(1, s + 1):
        # ratio N^2(j, 0) / N^2(j - 1, 0)
        acc = acc * ctx.qnum(j) * ctx.qnum(f13 + j - 1)
    for i in range(1, p + 1):
        # ratio N^2(s, i) / N^2(s, i - 1)
        acc = (acc * ctx.qnum(i) * ctx.qnum(f12 - i + 1) * ctx.qnum(f23 + i - 2)
               / ctx.qnum(f23 + i + s - 2))
    return acc


def norm_su2_sq(ctx: EvalContext, U, MU) -> Scalar:
    """Squared norm [2U]! [U - MU]! / [U + MU]! of the su_q(2) ladder state."""
    return (ctx.qfact(_as_int(2 * Fraction(U))) * ctx.qfact(Fraction(U) - Fraction(MU))
            / ctx.qfact(Fraction(U) + Fraction(MU)))


def norm_su11_sq(ctx: EvalContext, T, M) -> Scalar:
    """Squared norm [M - T - 1]! [T + M]! / [2T + 1]! of the su_q(1,1) ladder state."""
    T, M = Fraction(T), Fraction(M)
    return (ctx.qfact(M - T - 1) * ctx.qfact(T + M) / ctx.qfact(2 * T + 1))


# ----------------------------------------------------------------------------
# extremal projectors and the Casimir operator
# ----------------------------------------------------------------------------

def projector_u_coeff(ctx: EvalContext, U, r: int) -> Scalar:
    """Coefficient of A21^r A12^r in the su_q(2) extremal projector at spin U."""
    if r < 0:
        raise ConstraintViolation(f"r >= 0 violated: r = {r}")
    twoU = _as_int(2 * Fraction(U))
    sign = -1 if r % 2 else 1
    return sign * ctx.qfact(twoU + 1) * ctx.qfact_inv(r) * ctx.qfact_inv(twoU + r + 1)


def projector_t_coeff(ctx: EvalContext, T, r: int) -> Scalar:
    """Coefficient of T+^r T-^r in the su_q(1,1) extremal projector at spin T.

    Defined for 0 <= r <= 2T; other r contribute nothing on the subspaces the
    projector is used on, and the coefficient is returned as zero.
    """
    if r < 0:
        raise ConstraintViolation(f"r >= 0 violated: r = {r}")
    twoT = _as_int(2 * Fraction(T))
    if r > twoT:
        return ctx.zero()
    return ctx.qfact(twoT - r) * ctx.qfact_inv(r) / ctx.qfact(twoT)


def casimir_su11_eigenvalue(ctx: EvalContext, T) -> Scalar:
    """Eigenvalue [T + 1/2]^2 of C2 = T- T+ + [T0 + 1/2]^2 on spin T."""
    T = Fraction(T)
    if T < Fraction(-1, 2):
        raise ConstraintViolation(f"T >= -1/2 violated: T = {T}")
    return ctx.qbracket_half_sq(_as_int(2 * T + 1))


# ----------------------------------------------------------------------------
# table driven matrix elements
# ----------------------------------------------------------------------------

class _UEnv(NamedTuple):
    f1: int
    f2: int
    f3: int
    k: int
    ell: int
    twoU: int
    twoMU: int


class _TEnv(NamedTuple):
    f1: int
    f2: int
    f3: int
    s: int
    p: int
    twoT: int
    twoM: int


@dataclass(frozen=True)
class TableEntry:
    """One closed-form matrix element of a multiplet-changing generator.

    (d1, d2) are the shifts of (k, ell) in the U table and of (s, p) in the
    T table.  dtwoJ and dtwoM are the shifts of 2U, 2MU (resp. 2T, 2M), so
    they are +1 or -1.  qexp maps the integer environment to the q-power;
    num/den map it to the bracket arguments of the radicand.  A zero bracket
    in num drops the term before the denominator is ever evaluated.
    """

    eid: str
    gen: str
    d1: int
    d2: int
    dtwoJ: int
    dtwoM: int
    sign: int
    qexp: Callable
    num: Tuple[Callable, ...]
    den: Tuple[Callable, ...]


TABLE_U = (
    TableEntry("U1", "A13", 0, +1, +1, +1, +1,
               lambda e: (e.twoMU - e.twoU) // 2,
               (lambda e: e.ell + 1,
                lambda e: e.f1 - e.f3 + e.ell,
                lambda e: e.twoU + e.k + 2,
                lambda e: (e.twoU + e.twoMU) // 2 + 1),
               (lambda e: e.twoU + 1, lambda e: e.twoU + 2)),
    TableEntry("U2", "A23", 0, +1, +1, -1, +1,
               lambda e: 0,
               (lambda e: e.ell + 1,
                lambda e: e.f1 - e.f3 + e.ell,
                lambda e: e.twoU + e.k + 2,
                lambda e: (e.twoU - e.twoMU) // 2 + 1),
               (lambda e: e.twoU + 1, lambda e: e.twoU + 2)),
    TableEntry("U3", "A13", +1, 0, -1, +1, -1,
               lambda e: (e.twoU + e.twoMU) // 2 + 1,
               (lambda e: e.k + 1,
                lambda e: e.f2 - e.f3 + e.k - 1,
                lambda e: e.twoU - e.ell,
                lambda e: (e.twoU - e.twoMU) // 2),
               (lambda e: e.twoU, lambda e: e.twoU + 1)),
    TableEntry("U4", "A23", +1, 0, -1, -1, +1,
               lambda e: 0,
               (lambda e: e.k + 1,
                lambda e: e.f2 - e.f3 + e.k - 1,
                lambda e: e.twoU - e.ell,
                lambda e: (e.twoU + e.twoMU) // 2),
               (lambda e: e.twoU, lambda e: e.twoU + 1)),
    TableEntry("U5", "A31", 0, -1, -1, -1, -1,
               lambda e: (e.twoU - e.twoMU) // 2,
               (lambda e: e.ell,
                lambda e: e.f1 - e.f3 + e.ell - 1,
                lambda e: e.twoU + e.k + 1,
                lambda e: (e.twoU + e.twoMU) // 2),
               (lambda e: e.twoU, lambda e: e.twoU + 1)),
    TableEntry("U6", "A32", 0, -1, -1, +1, -1,
               lambda e: 0,
               (lambda e: e.ell,
                lambda e: e.f1 - e.f3 + e.ell - 1,
                lambda e: e.twoU + e.k + 1,
                lambda e: (e.twoU - e.twoMU) // 2),
               (lambda e: e.twoU, lambda e: e.twoU + 1)),
    TableEntry("U7", "A31", -1, 0, +1, -1, +1,
               lambda e: -(e.twoU + e.twoMU) // 2 - 1,
               (lambda e: e.k,
                lambda e: e.f2 - e.f3 + e.k - 2,
                lambda e: e.twoU - e.ell + 1,
                lambda e: (e.twoU - e.twoMU) // 2 + 1),
               (lambda e: e.twoU + 1, lambda e: e.twoU + 2)),
    TableEntry("U8", "A32", -1, 0, +1, +1, -1,
               lambda e: 0,
               (lambda e: e.k,
                lambda e: e.f2 - e.f3 + e.k - 2,
                lambda e: e.twoU - e.ell + 1,
                lambda e: (e.twoU + e.twoMU) // 2 + 1),
               (lambda e: e.twoU + 1, lambda e: e.twoU + 2)),
)

TABLE_T = (
    TableEntry("T1", "A12", +1, 0, +1, -1, +1,
               lambda e: 0,
               (lambda e: e.s + 1,
                lambda e: e.f1 - e.f3 + e.s,
                lambda e: e.twoT - e.p + 1,
                lambda e: (e.twoM - e.twoT) // 2 - 1),
               (lambda e: e.twoT + 1, lambda e: e.twoT + 2)),
    TableEntry("T2", "A13", +1, 0, +1, +1, +1,
               lambda e: (e.twoT - e.twoM) // 2 + 1,
               (lambda e: e.s + 1,
                lambda e: e.f1 - e.f3 + e.s,
                lambda e: e.twoT - e.p + 1,
                lambda e: (e.twoT + e.twoM) // 2 + 1),
               (lambda e: e.twoT + 1, lambda e: e.twoT + 2)),
    TableEntry("T3", "A12", 0, -1, -1, -1, +1,
               lambda e: 0,
               (lambda e: e.p,
                lambda e: e.f1 - e.f2 - e.p + 1,
                lambda e: e.twoT - e.s,
                lambda e: (e.twoT + e.twoM) // 2),
               (lambda e: e.twoT, lambda e: e.twoT + 1)),
    TableEntry("T4", "A13", 0, -1, -1, +1, +1,
               lambda e: -(e.twoT + e.twoM) // 2,
               (lambda e: e.p,
                lambda e: e.f1 - e.f2 - e.p + 1,
                lambda e: e.twoT - e.s,
                lambda e: (e.twoM - e.twoT) // 2),
               (lambda e: e.twoT, lambda e: e.twoT + 1)),
    TableEntry("T5", "A21", -1, 0, -1, +1, +1,
               lambda e: 0,
               (lambda e: e.s,
                lambda e: e.f1 - e.f3 + e.s - 1,
                lambda e: e.twoT - e.p,
                lambda e: (e.twoM - e.twoT) // 2),
               (lambda e: e.twoT, lambda e: e.twoT + 1)),
    TableEntry("T6", "A31", -1, 0, -1, -1, -1,
               lambda e: (e.twoM - e.twoT) // 2 - 1,
               (lambda e: e.s,
                lambda e: e.f1 - e.f3 + e.s - 1,
                lambda e: e.twoT - e.p,
                lambda e: (e.twoT + e.twoM) // 2),
               (lambda e: e.twoT, lambda e: e.twoT + 1)),
    TableEntry("T7", "A21", 0, +1, +1, +1, +1,
               lambda e: 0,
               (lambda e: e.p + 1,
                lambda e: e.f1 - e.f2 - e.p,
                lambda e: e.twoT - e.s + 1,
                lambda e: (e.twoT + e.twoM) // 2 + 1),
               (lambda e: e.twoT + 1, lambda e: e.twoT + 2)),
    TableEntry("T8", "A31", 0, +1, +1, -1, -1,
               lambda e: (e.twoT + e.twoM) // 2,
               (lambda e: e.p + 1,
                lambda e: e.f1 - e.f2 - e.p,
                lambda e: e.twoT - e.s + 1,
                lambda e: (e.twoM - e.twoT) // 2 - 1),
               (lambda e: e.twoT + 1, lambda e: e.twoT + 2)),
)


def table_entries(basis: str) -> Tuple[TableEntry, ...]:
    """The raw table rows for basis 'u' or 't' (mainly for tests and fault injection)."""
    if basis == "u":
        return TABLE_U
    if basis == "t":
        return TABLE_T
    raise ValueError(f"basis must be 'u' or 't', got {basis!r}")


def _radical_from_entry(ctx: EvalContext, entry: TableEntry, env, flip_entry=None):
    """Evaluate one table entry on an environment, or None if a bracket vanishes."""
    nums = []
    for factor in entry.num:
        arg = factor(env)
        value = ctx.qnum(arg)
        if value == 0:
            return None
        nums.append(value)
    radicand = nums[0]
    for value in nums[1:]:
        radicand = radicand * value
    for factor in entry.den:
        radicand = radicand / ctx.qnum(factor(env))
    sign = entry.sign
    if flip_entry is not None and entry.eid == flip_entry:
        sign = -sign
    return SignedRadical.make(sign, entry.qexp(env), radicand)


def u_basis_action(ctx: EvalContext, sig: Signature, gen: str, lab: UBasisLabel,
                   flip_entry: str | None = None) -> List[ActionTerm]:
    """Action of a generator on a U-basis vector as a list of weighted targets.

    flip_entry is a fault-injection hook: the named table row has its sign
    flipped, so verification checks can prove they would catch a wrong sign.
    """
    require_u_label(sig, lab)
    w = weight_of_u(sig, lab)
    if gen == "A11":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m1)))]
    if gen == "A22":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m2)))]
    if gen == "A33":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m3)))]
    if gen == "A12":
        # su_q(2) raising inside the multiplet
        rad = ctx.qnum(lab.U - lab.MU) * ctx.qnum(lab.U + lab.MU + 1)
        if rad == 0:
            return []
        return [ActionTerm(UBasisLabel(lab.k, lab.ell, lab.U, lab.MU + 1),
                           SignedRadical.make(1, 0, rad))]
    if gen == "A21":
        rad = ctx.qnum(lab.U + lab.MU) * ctx.qnum(lab.U - lab.MU + 1)
        if rad == 0:
            return []
        return [ActionTerm(UBasisLabel(lab.k, lab.ell, lab.U, lab.MU - 1),
                           SignedRadical.make(1, 0, rad))]
    if gen not in ("A13", "A23", "A31", "A32"):
        raise ValueError(f"unknown generator {gen!r}")
    env = _UEnv(sig.f1, sig.f2, sig.f3, lab.k, lab.ell,
                _as_int(2 * lab.U), _as_int(2 * lab.MU))
    terms = []
    for entry in TABLE_U:
        if entry.gen != gen:
            continue
        coeff = _radical_from_entry(ctx, entry, env, flip_entry)
        if coeff is None:
            continue
        target = u_label(sig, lab.k + entry.d1, lab.ell + entry.d2,
                         lab.MU + Fraction(entry.dtwoM, 2))
        terms.append(ActionTerm(target, coeff))
    terms.sort(key=lambda t: t.target.sort_key())
    return terms


def t_basis_action(ctx: EvalContext, sig: Signature, gen: str, lab: TBasisLabel,
                   flip_entry: str | None = None) -> List[ActionTerm]:
    """Action of a generator on a T-basis vector as a list of weighted targets."""
    require_t_label(sig, lab)
    w = weight_of_t(sig, lab)
    if gen == "A11":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m1)))]
    if gen == "A22":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m2)))]
    if gen == "A33":
        return [ActionTerm(lab, SignedRadical.from_rational(Fraction(w.m3)))]
    if gen == "A23":
        # su_q(1,1) raising T+ inside the multiplet
        rad = ctx.qnum(lab.M - lab.T) * ctx.qnum(lab.T + lab.M + 1)
        if rad == 0:
            return []
        return [ActionTerm(TBasisLabel(lab.s, lab.p, lab.T, lab.M + 1),
                           SignedRadical.make(1, 0, rad))]
    if gen == "A32":
        # su_q(1,1) lowering T- carries the noncompact minus sign
        rad = ctx.qnum(lab.T + lab.M) * ctx.qnum(lab.M - lab.T - 1)
        if rad == 0:
            return []
        return [ActionTerm(TBasisLabel(lab.s, lab.p, lab.T, lab.M - 1),
                           SignedRadical.make(-1, 0, rad))]
    if gen not in ("A12", "A13", "A21", "A31"):
        raise ValueError(f"unknown generator {gen!r}")
    env = _TEnv(sig.f1, sig.f2, sig.f3, lab.s, lab.p,
                _as_int(2 * lab.T), _as_int(2 * lab.M))
    terms = []
    for entry in TABLE_T:
        if entry.gen != gen:
            continue
        coeff = _radical_from_entry(ctx, entry, env, flip_entry)
        if coeff is None:
            continue
        target = t_label(sig, lab.s + entry.d1, lab.p + entry.d2,
                         lab.M + Fraction(entry.dtwoM, 2))
        terms.append(ActionTerm(target, coeff))
    terms.sort(key=lambda t: t.target.sort_key())
    return terms


def basis_action(ctx: EvalContext, sig: Signature, basis: str, gen: str, lab,
                 flip_entry: str | None = None) -> List[ActionTerm]:
    """Dispatch on basis 'u' or 't'."""
    if basis == "u":
        return u_basis_action(ctx, sig, gen, lab, flip_entry)
    if basis == "t":
        return t_basis_action(ctx, sig, gen, lab, flip_entry)
    raise ValueError(f"basis must be 'u' or 't', got {basis!r}")
