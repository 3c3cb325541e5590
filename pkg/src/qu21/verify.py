"""Verification harness over truncated matrix representations.

Builds finite weight-bounded windows onto the infinite-dimensional module as
sparse matrices (one per generator, per basis) and checks every operator
identity the library relies on:

* the noncompact su_q(1,1) triple [T0, T+-] = +-T+-, [T+, T-] = [2 T0];
* conjugation relations tying raising and lowering generators, including the
  two equivalent second-order closures for the conjugate of A13;
* the quadratic Casimir T- T+ + [T0 + 1/2]^2 with eigenvalue [T + 1/2]^2;
* exact equality of closed-form norms against their defining recursions;
* orthogonality of the basis-change blocks at every complete weight;
* the intertwining property: conjugating each generator's U-basis matrix by
  the blocks reproduces its T-basis matrix;
* extremal projector identities on fixed-T0 subspaces.

Truncation discipline: an identity of degree d in the generators is asserted
only on columns whose images under up to d successive generator applications
stay inside the truncation (interior masks, computed for d <= 2).  Checks on
an empty interior pass vacuously and say so in their report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .generators import (
    GENERATORS,
    WEIGHT_SHIFTS,
    basis_action,
    casimir_su11_eigenvalue,
    norm_su11_sq,
    norm_t_sq,
    norm_t_sq_stepwise,
    norm_u_sq,
    norm_u_sq_stepwise,
    projector_t_coeff,
)
from .qarith import EvalContext, Scalar
from .repspace import (
    Signature,
    TBasisLabel,
    UBasisLabel,
    Weight,
    enumerate_t_basis,
    enumerate_u_basis,
    t_labels_at_weight,
    u_labels_at_weight,
    weight_of_t,
    weight_of_u,
)
from .weylracah import WeylBlock, weyl_block

Entries = Dict[Tuple[int, int], Scalar]


@dataclass(frozen=True)
class Truncation:
    """Basis bounds: ell_max for the U basis, s_max and depth for the T basis."""

    ell_max: int
    s_max: int
    depth: int

    def __post_init__(self):
        for name in ("ell_max", "s_max", "depth"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check.

    max_residual is the largest absolute deviation found (0.0 for exact
    checks that hold identically); location describes where it occurred.
    Reports are deterministic given (sig, truncation, q, precision).
    """

    name: str
    passed: bool
    max_residual: float
    tolerance: float
    location: str
    columns_checked: int
    note: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        out = (f"{status:4s}  {self.name:28s} residual {self.max_residual:.3e}"
               f"  tol {self.tolerance:.1e}  cols {self.columns_checked}")
        if not self.passed or self.location:
            out += f"  at {self.location}" if self.location else ""
        if self.note:
            out += f"  [{self.note}]"
        return out


class TruncatedRep:
    """Finite window onto one basis: per-generator sparse matrices.

    matrices[g] maps (row, col) index pairs to scalars; entries whose target
    falls outside the truncation are dropped from the matrix but remembered
    in the interior masks.  interior1[j] means every generator image of
    column j stays inside; interior2[j] additionally requires that of every
    image of an image (two-step words).
    """

    def __init__(self, ctx: EvalContext, sig: Signature, basis: str,
                 truncation: Truncation, flip_entry: Optional[str] = None):
        if basis not in ("u", "t"):
            raise ValueError(f"basis must be 'u' or 't', got {basis!r}")
        self.ctx = ctx
        self.sig = sig
        self.basis = basis
        self.truncation = truncation
        if basis == "u":
            labels = enumerate_u_basis(sig, truncation.ell_max)
            self.weights = tuple(weight_of_u(sig, l) for l in labels)
        else:
            labels = enumerate_t_basis(sig, truncation.s_max, truncation.depth)
            self.weights = tuple(weight_of_t(sig, l) for l in labels)
        self.labels = tuple(labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        self.matrices: Dict[str, Entries] = {}
        n = len(self.labels)
        stays_in = [True] * n
        reach: List[set] = [set() for _ in range(n)]
        use_float = not ctx.is_exact()
        for g in GENERATORS:
            m: Entries = {}
            for j, lab in enumerate(self.labels):
                for tgt, coeff in basis_action(ctx, sig, basis, g, lab,
                                               flip_entry=flip_entry):
                    i = self.index.get(tgt)
                    if i is None:
                        stays_in[j] = False
                    else:
                        reach[j].add(i)
                        m[(i, j)] = coeff.to_float(ctx) if use_float else coeff
            self.matrices[g] = m
        self.interior1 = tuple(stays_in)
        self.interior2 = tuple(
            stays_in[j] and all(stays_in[i] for i in reach[j])
            for j in range(n))

    def diagonal_weight_bracket(self) -> Entries:
        """Diagonal matrix of [m2 - m3] per label (the [2 T0] operator)."""
        return {(j, j): self.ctx.qnum(w.m2 - w.m3)
                for j, w in enumerate(self.weights)}


# ----------------------------------------------------------------------------
# sparse helpers (plain dicts; scalars are context floats)
# ----------------------------------------------------------------------------


def _mat_mul(ctx: EvalContext, a: Entries, b: Entries) -> Entries:
    rows_of_a: Dict[int, List[Tuple[int, Scalar]]] = {}
    for (i, k), v in a.items():
        rows_of_a.setdefault(k, []).append((i, v))
    out: Entries = {}
    for (k, j), bv in b.items():
        for i, av in rows_of_a.get(k, ()):
            key = (i, j)
            cur = out.get(key)
            out[key] = av * bv if cur is None else cur + av * bv
    return out


def _mat_transpose(a: Entries) -> Entries:
    return {(j, i): v for (i, j), v in a.items()}


def _mat_lin(ctx: EvalContext, terms: Sequence[Tuple[Scalar, Entries]]) -> Entries:
    out: Entries = {}
    for c, a in terms:
        for key, v in a.items():
            cur = out.get(key)
            out[key] = c * v if cur is None else cur + c * v
    return out


def _worst(rep: TruncatedRep, entries: Entries,
           columns: Optional[Sequence[bool]] = None) -> Tuple[float, str, int]:
    """(max |entry|, location string, columns considered)."""
    ctx = rep.ctx
    worst = ctx.zero()
    where = ""
    if columns is None:
        ncols = len(rep.labels)
    else:
        ncols = sum(1 for c in columns if c)
    for (i, j), v in sorted(entries.items()):
        if columns is not None and not columns[j]:
            continue
        mag = abs(v)
        if mag > worst:
            worst = mag
            where = f"row={rep.labels[i]} col={rep.labels[j]}"
    return float(worst), where, ncols


def _report(name: str, residual: float, where: str, ncols: int,
            tol: float, note: str = "") -> CheckReport:
    if ncols == 0:
        note = (note + "; " if note else "") + "no coverage"
        return CheckReport(name, True, 0.0, tol, "", 0, note)
    return CheckReport(name, residual <= tol, residual, tol, where, ncols, note)


# ----------------------------------------------------------------------------
# checks
# ----------------------------------------------------------------------------


def check_su11_relations(rep: TruncatedRep, tolerance: float = 1e-10) -> List[CheckReport]:
    """[T0, T+] = T+, [T0, T-] = -T-, [T+, T-] = [2 T0] on the rep."""
    ctx = rep.ctx
    if ctx.is_exact():
        return _check_su11_exact(rep, tolerance)
    half = ctx.from_fraction(Fraction(1, 2))
    t0 = _mat_lin(ctx, [(half, rep.matrices["A22"]),
                        (-half, rep.matrices["A33"])])
    tp, tm = rep.matrices["A23"], rep.matrices["A32"]
    one = ctx.one()
    reports = []
    r1 = _mat_lin(ctx, [(one, _mat_mul(ctx, t0, tp)),
                        (-one, _mat_mul(ctx, tp, t0)), (-one, tp)])
    reports.append(_report(f"su11-raising-{rep.basis}", *_worst(rep, r1), tolerance))
    r2 = _mat_lin(ctx, [(one, _mat_mul(ctx, t0, tm)),
                        (-one, _mat_mul(ctx, tm, t0)), (one, tm)])
    reports.append(_report(f"su11-lowering-{rep.basis}", *_worst(rep, r2), tolerance))
    r3 = _mat_lin(ctx, [(one, _mat_mul(ctx, tp, tm)),
                        (-one, _mat_mul(ctx, tm, tp)),
                        (-one, rep.diagonal_weight_bracket())])
    reports.append(_report(f"su11-commutator-{rep.basis}",
                           *_worst(rep, r3, rep.interior2), tolerance))
    return reports


def _check_su11_exact(rep: TruncatedRep, tolerance: float) -> List[CheckReport]:
    """Exact-mode variant: entries are SignedRadicals, zero must be exact."""
    from .qarith import SignedRadical, radical_sum

    ctx = rep.ctx
    tp, tm = rep.matrices["A23"], rep.matrices["A32"]
    reports = []

    def scan(name, entries, columns):
        bad = ""
        ncols = sum(1 for c in columns if c) if columns else len(rep.labels)
        for (i, j), v in sorted(entries.items()):
            if columns is not None and not columns[j]:
                continue
            if not v.is_zero():
                bad = f"row={rep.labels[i]} col={rep.labels[j]}"
                break
        res = 0.0 if not bad else float(abs(v.to_float(ctx)))
        reports.append(_report(name, res, bad, ncols, tolerance, "exact"))

    def commut_with_t0(mat, shift):
        # [T0, X] - shift*X has entries ((w_i - w_j)/2 - shift) * X_ij with
        # w = m2 - m3; rational multiples of each entry, no radical addition.
        out = {}
        for (i, j), v in mat.items():
            lam_i = Fraction(rep.weights[i].m2 - rep.weights[i].m3, 2)
            lam_j = Fraction(rep.weights[j].m2 - rep.weights[j].m3, 2)
            out[(i, j)] = v * SignedRadical.from_rational(lam_i - lam_j - shift)
        return out

    scan(f"su11-raising-{rep.basis}", commut_with_t0(tp, 1), None)
    scan(f"su11-lowering-{rep.basis}", commut_with_t0(tm, -1), None)

    def radical_mul(a, b):
        rows_of_a = {}
        for (i, k), v in a.items():
            rows_of_a.setdefault(k, []).append((i, v))
        out = {}
        for (k, j), bv in b.items():
            for i, av in rows_of_a.get(k, ()):
                prev = out.get((i, j), SignedRadical.zero())
                out[(i, j)] = radical_sum([prev, av * bv], ctx)
        return out

    r3 = radical_mul(tp, tm)
    for key, v in radical_mul(tm, tp).items():
        r3[key] = radical_sum([r3.get(key, SignedRadical.zero()), -v], ctx)
    for j, w in enumerate(rep.weights):
        bracket = SignedRadical.from_rational(ctx.qnum(w.m2 - w.m3))
        r3[(j, j)] = radical_sum(
            [r3.get((j, j), SignedRadical.zero()), -bracket], ctx)
    scan(f"su11-commutator-{rep.basis}", r3, rep.interior2)
    return reports


def check_hermiticity(rep: TruncatedRep, tolerance: float = 1e-10) -> List[CheckReport]:
    """Conjugation relations between raising and lowering generators.

    First order: transpose(A12) = A21 and transpose(A23) = -A32 hold
    entrywise.  Second order, two equivalent closures for transpose(A13):

        -A31 + (q - 1/q) A21 A32          (first form)
        -q^2 A31 + (q^2 - 1) A32 A21      (second form)

    both checked on two-step interior columns, plus their mutual agreement.
    """
    ctx = rep.ctx
    if ctx.is_exact():
        raise ValueError("hermiticity checks run in floating mode")
    one = ctx.one()
    m = rep.matrices
    reports = []
    h1 = _mat_lin(ctx, [(one, _mat_transpose(m["A12"])), (-one, m["A21"])])
    reports.append(_report(f"herm-compact-{rep.basis}", *_worst(rep, h1), tolerance))
    h2 = _mat_lin(ctx, [(one, _mat_transpose(m["A23"])), (one, m["A32"])])
    reports.append(_report(f"herm-noncompact-{rep.basis}", *_worst(rep, h2),
                           tolerance))
    qq = ctx.qpow(1) - ctx.qpow(-1)
    q2 = ctx.qpow(2)
    a13t = _mat_transpose(m["A13"])
    form1 = _mat_lin(ctx, [(one, a13t), (one, m["A31"]),
                           (-qq, _mat_mul(ctx, m["A21"], m["A32"]))])
    reports.append(_report(f"herm-a13-first-{rep.basis}",
                           *_worst(rep, form1, rep.interior2), tolerance))
    form2 = _mat_lin(ctx, [(one, a13t), (q2, m["A31"]),
                           (-(q2 - one), _mat_mul(ctx, m["A32"], m["A21"]))])
    reports.append(_report(f"herm-a13-second-{rep.basis}",
                           *_worst(rep, form2, rep.interior2), tolerance))
    agree = _mat_lin(ctx, [(one, form1), (-one, form2)])
    reports.append(_report(f"herm-form-agreement-{rep.basis}",
                           *_worst(rep, agree, rep.interior2), tolerance))
    return reports


def check_casimir(rep: TruncatedRep, tolerance: float = 1e-10) -> List[CheckReport]:
    """C2 = T- T+ + [T0 + 1/2]^2 is diagonal with eigenvalue [T + 1/2]^2.

    T-basis rep required (labels carry definite T there).  Checked on
    columns whose raising image stays inside the truncation.  Also reports
    whether distinct T values within one weight space keep distinct
    eigenvalues at this q (degeneracy is reported, not asserted through).
    """
    if rep.basis != "t":
        raise ValueError("check_casimir needs a T-basis rep")
    ctx = rep.ctx
    exact = ctx.is_exact()
    fctx = ctx if not exact else ctx.as_float()
    tp, tm = rep.matrices["A23"], rep.matrices["A32"]
    cols_ok = [True] * len(rep.labels)
    for j, lab in enumerate(rep.labels):
        if int(lab.M - lab.T - 1) >= rep.truncation.depth:
            cols_ok[j] = False
    c2: Entries = {}
    if exact:
        from .qarith import SignedRadical, radical_sum
        rows_tm = {}
        for (i, k), v in tm.items():
            rows_tm.setdefault(k, []).append((i, v))
        prod = {}
        for (k, j), bv in tp.items():
            for i, av in rows_tm.get(k, ()):
                prev = prod.get((i, j), SignedRadical.zero())
                prod[(i, j)] = radical_sum([prev, av * bv], ctx)
        c2 = prod
        for j, lab in enumerate(rep.labels):
            shifted = SignedRadical.from_rational(
                ctx.qbracket_half_sq(int(2 * lab.M) + 1))
            expect = SignedRadical.from_rational(
                casimir_su11_eigenvalue(ctx, lab.T))
            c2[(j, j)] = radical_sum(
                [c2.get((j, j), SignedRadical.zero()), shifted, -expect], ctx)
        bad, res = "", 0.0
        ncols = sum(1 for c in cols_ok if c)
        for (i, j), v in sorted(c2.items()):
            if not cols_ok[j]:
                continue
            if not v.is_zero():
                bad = f"row={rep.labels[i]} col={rep.labels[j]}"
                res = float(abs(v.to_float(ctx)))
                break
        reports = [_report("casimir-eigenvalue", res, bad, ncols, tolerance,
                           "exact")]
    else:
        one = ctx.one()
        c2 = _mat_mul(ctx, tm, tp)
        for j, lab in enumerate(rep.labels):
            shifted = ctx.qbracket_half_sq(int(2 * lab.M) + 1)
            expect = casimir_su11_eigenvalue(ctx, lab.T)
            key = (j, j)
            c2[key] = c2.get(key, ctx.zero()) + shifted - expect
        reports = [_report("casimir-eigenvalue",
                           *_worst(rep, c2, cols_ok), tolerance)]

    # eigenvalue separation per weight space at this q
    sep_note = ""
    by_weight: Dict[Weight, set] = {}
    for lab, w in zip(rep.labels, rep.weights):
        by_weight.setdefault(w, set()).add(lab.T)
    min_gap = None
    for w, ts in sorted(by_weight.items()):
        vals = sorted(ts)
        for i in range(len(vals) - 1):
            a = fctx.qbracket_half_sq(int(2 * vals[i]) + 1)
            b = fctx.qbracket_half_sq(int(2 * vals[i + 1]) + 1)
            gap = abs(b - a)
            if min_gap is None or gap < min_gap:
                min_gap = gap
    if min_gap is not None and float(min_gap) <= tolerance:
        sep_note = "degenerate eigenvalues at this q"
    reports.append(CheckReport(
        "casimir-separation", True, 0.0, tolerance, "", len(by_weight),
        sep_note or f"min eigenvalue gap {float(min_gap or 0):.3e}"))
    return reports


def check_norm_recursions(sig: Signature, q, k_max: Optional[int] = None,
                          ell_max: int = 8, s_max: int = 8) -> CheckReport:
    """Closed-form norms equal their iterated recursions, exactly.

    Runs in exact rational arithmetic (q must be rational).  Covers the U
    table over 0 <= k <= f1-f2, 0 <= ell <= ell_max and the T table over
    0 <= p <= f1-f2, 0 <= s <= s_max.
    """
    ctx = EvalContext.exact(q)
    kmax = sig.f1 - sig.f2 if k_max is None else min(k_max, sig.f1 - sig.f2)
    mismatches = 0
    first = ""
    total = 0
    for k in range(kmax + 1):
        for ell in range(ell_max + 1):
            total += 1
            if norm_u_sq(ctx, sig, k, ell) != norm_u_sq_stepwise(ctx, sig, k, ell):
                mismatches += 1
                if not first:
                    first = f"u-norm k={k} ell={ell}"
    for p in range(kmax + 1):
        for s in range(s_max + 1):
            total += 1
            if norm_t_sq(ctx, sig, s, p) != norm_t_sq_stepwise(ctx, sig, s, p):
                mismatches += 1
                if not first:
                    first = f"t-norm s={s} p={p}"
    return CheckReport("norm-recursions", mismatches == 0,
                       float(mismatches), 0.0, first, total,
                       f"exact at q={q}")


def _complete_blocks(ctx: EvalContext, sig: Signature,
                     truncation: Truncation) -> Dict[Weight, WeylBlock]:
    """All weights whose full label sets fit inside the truncation."""
    weights = sorted({weight_of_u(sig, l)
                      for l in enumerate_u_basis(sig, truncation.ell_max)})
    out: Dict[Weight, WeylBlock] = {}
    for w in weights:
        us = u_labels_at_weight(sig, w)
        ts = t_labels_at_weight(sig, w)
        if not us or not ts:
            continue
        if not all(l.ell <= truncation.ell_max for l in us):
            continue
        if not all(l.s <= truncation.s_max
                   and int(l.M - l.T - 1) <= truncation.depth for l in ts):
            continue
        out[w] = weyl_block(ctx, sig, w)
    return out


def check_weyl_orthogonality(sig: Signature, truncation: Truncation,
                             ctx: EvalContext,
                             tolerance: float = 1e-10) -> CheckReport:
    """max |B^T B - I| and |B B^T - I| over every complete weight block."""
    fctx = ctx if not ctx.is_exact() else ctx.as_float()
    blocks = _complete_blocks(fctx, sig, truncation)
    worst = fctx.zero()
    where = ""
    for w, blk in sorted(blocks.items()):
        n = len(blk.u_labels)
        e = blk.entries
        for i in range(n):
            for j in range(n):
                want = fctx.one() if i == j else fctx.zero()
                col = sum((e[r][i] * e[r][j] for r in range(n)), fctx.zero())
                row = sum((e[i][r] * e[j][r] for r in range(n)), fctx.zero())
                mag = max(abs(col - want), abs(row - want))
                if mag > worst:
                    worst, where = mag, f"weight={w} pair=({i},{j})"
    return _report("weyl-orthogonality", float(worst), where, len(blocks),
                   tolerance)


def check_intertwiner(sig: Signature, truncation: Truncation,
                      ctx: EvalContext, tolerance: float = 1e-10,
                      flip_entry: Optional[str] = None) -> CheckReport:
    """W(target)^T M_U(g) W(source) = M_T(g) on complete block pairs.

    Worst violation is localized as (generator, weight, row, col) where row
    and col are T-basis labels of the target and source weights.
    """
    fctx = ctx if not ctx.is_exact() else ctx.as_float()
    blocks = _complete_blocks(fctx, sig, truncation)
    worst = fctx.zero()
    where = ""
    pairs = 0
    for g in GENERATORS:
        dm = WEIGHT_SHIFTS[g]
        for w, blk in sorted(blocks.items()):
            w2 = Weight(w.m1 + dm[0], w.m2 + dm[1], w.m3 + dm[2])
            blk2 = blocks.get(w2)
            if blk2 is None:
                continue
            pairs += 1
            uidx = {l: i for i, l in enumerate(blk2.u_labels)}
            tidx = {l: i for i, l in enumerate(blk2.t_labels)}
            nu, nu2 = len(blk.u_labels), len(blk2.u_labels)
            nt, nt2 = len(blk.t_labels), len(blk2.t_labels)
            mu = [[fctx.zero()] * nu for _ in range(nu2)]
            for j, lab in enumerate(blk.u_labels):
                for tgt, coeff in basis_action(fctx, sig, "u", g, lab,
                                               flip_entry=flip_entry):
                    mu[uidx[tgt]][j] = coeff.to_float(fctx)
            mt = [[fctx.zero()] * nt for _ in range(nt2)]
            for j, lab in enumerate(blk.t_labels):
                for tgt, coeff in basis_action(fctx, sig, "t", g, lab,
                                               flip_entry=flip_entry):
                    mt[tidx[tgt]][j] = coeff.to_float(fctx)
            # conjugate: blk2.entries^T (nu2 x nt2)^T . mu . blk.entries
            for a in range(nt2):
                for b in range(nt):
                    acc = fctx.zero()
                    for r in range(nu2):
                        if not mu[r]:
                            continue
                        era = blk2.entries[r][a]
                        for c in range(nu):
                            acc += era * mu[r][c] * blk.entries[c][b]
                    mag = abs(acc - mt[a][b])
                    if mag > worst:
                        worst = mag
                        where = (f"generator={g} weight={w} "
                                 f"row={blk2.t_labels[a]} col={blk.t_labels[b]}")
    return _report("intertwiner", float(worst), where, pairs, tolerance)


def check_projector(sig: Signature, t_value, truncation: Truncation,
                    ctx: Optional[EvalContext] = None,
                    tolerance: float = 1e-10) -> List[CheckReport]:
    """Extremal projector identities on the T0 = T+1 subspace.

    P = sum_r c_r T+^r T-^r with c_r = projector_t_coeff.  On the span of
    all truncated T-basis labels with M = T+1 the following are checked:

    * P equals the diagonal picking out spin-T labels (kills T' < T,
      fixes T' = T), hence P^2 = P and P on the (T, T+1) vector is 1;
    * T- P = 0 column by column;
    * P equals the spectral projector onto the Casimir eigenvalue
      [T + 1/2]^2 built independently from C2 by interpolation (skipped
      with a note when eigenvalues degenerate at this q);
    * P T-^x T+^x P = (-1)^x N^2(T, T+1+x) P for 1 <= x <= depth headroom.
    """
    T = Fraction(t_value)
    fctx = (ctx or EvalContext.floating(Fraction(13, 10)))
    if fctx.is_exact():
        fctx = fctx.as_float()
    tol = tolerance
    labels = [l for l in enumerate_t_basis(sig, truncation.s_max, truncation.depth)
              if l.M == T + 1]
    reports: List[CheckReport] = []
    if not labels:
        return [CheckReport("projector", True, 0.0, tol, "", 0,
                            f"T={T}: no coverage")]
    # chains stay inside one (s, p) multiplet: T+ and T- only move M
    def raise_chain(spin, m_start, steps: int):
        """Coefficient of T+^steps from weight m_start, None past the window."""
        coeff = fctx.one()
        m = m_start
        for _ in range(steps):
            if int(m - spin - 1) >= truncation.depth:
                return None
            coeff *= fctx.sqrt(fctx.qnum(m - spin) * fctx.qnum(spin + m + 1))
            m += 1
        return coeff

    def lower_chain(spin, m_start, steps: int):
        """Coefficient of T-^steps from weight m_start (0 at the floor)."""
        coeff = fctx.one()
        m = m_start
        for _ in range(steps):
            if m - spin - 1 == 0:
                return fctx.zero()
            coeff *= -fctx.sqrt(fctx.qnum(spin + m) * fctx.qnum(m - spin - 1))
            m -= 1
        return coeff

    two_t = int(2 * T)

    def p_diag(lab: TBasisLabel):
        """P on |lab>, a scalar: P is diagonal within each multiplet here."""
        total = fctx.zero()
        for r in range(0, two_t + 1):
            c_r = projector_t_coeff(fctx, T, r)
            if c_r == 0:
                continue
            down = lower_chain(lab.T, lab.M, r)
            if down == 0:
                continue
            up = raise_chain(lab.T, lab.M - r, r)
            total += c_r * up * down
        return total

    worst_diag = fctx.zero()
    where_diag = ""
    for lab in labels:
        val = p_diag(lab)
        want = fctx.one() if lab.T == T else fctx.zero()
        mag = abs(val - want)
        if mag > worst_diag:
            worst_diag, where_diag = mag, f"T={T} col={lab}"
    reports.append(_report(f"projector-diagonal-T{T}", float(worst_diag),
                           where_diag, len(labels), tol))

    # T- P = 0: P column is diag scalar, then one lowering step
    worst_low = fctx.zero()
    where_low = ""
    for lab in labels:
        val = p_diag(lab)
        down = lower_chain(lab.T, lab.M, 1)
        mag = abs(val * down)
        if mag > worst_low:
            worst_low, where_low = mag, f"T={T} col={lab}"
    reports.append(_report(f"projector-annihilation-T{T}", float(worst_low),
                           where_low, len(labels), tol))

    # leading coefficient is 1 (r = 0 term)
    c0 = projector_t_coeff(fctx, T, 0)
    reports.append(_report(f"projector-leading-T{T}",
                           float(abs(c0 - fctx.one())), "r=0", 1, tol))

    # spectral projector from C2 by interpolation over distinct T' present
    tprimes = sorted({l.T for l in labels})
    lam = {tp: fctx.qbracket_half_sq(int(2 * tp) + 1)
           for tp in set(tprimes) | {T}}
    degenerate = any(
        abs(lam[a] - lam[b]) <= tol
        for i, a in enumerate(tprimes) for b in tprimes[i + 1:])
    if degenerate:
        reports.append(CheckReport(f"projector-spectral-T{T}", True, 0.0, tol,
                                   "", len(labels),
                                   "degenerate Casimir eigenvalues, skipped"))
    else:
        worst_sp = fctx.zero()
        where_sp = ""
        for lab in labels:
            # C2 acts on |lab> diagonally with eigenvalue lam[lab.T]
            val = fctx.one()
            for tp in tprimes:
                if tp == T:
                    continue
                val *= (lam[lab.T] - lam[tp]) / (lam[T] - lam[tp])
            pval = p_diag(lab)
            mag = abs(pval - val)
            if mag > worst_sp:
                worst_sp, where_sp = mag, f"T={T} col={lab}"
        reports.append(_report(f"projector-spectral-T{T}", float(worst_sp),
                               where_sp, len(labels), tol))

    # P T-^x T+^x P = (-1)^x N^2(T, T+1+x) P on the subspace
    spin_t = [l for l in labels if l.T == T]
    worst_x = fctx.zero()
    where_x = ""
    checked = 0
    for lab in spin_t:
        for x in range(1, truncation.depth + 1):
            up = raise_chain(lab.T, lab.M, x)
            if up is None:
                break
            lhs = lower_chain(lab.T, lab.M + x, x) * up
            sign = -1 if x % 2 else 1
            rhs = sign * norm_su11_sq(fctx, T, T + 1 + x)
            mag = abs(lhs - rhs)
            checked += 1
            if mag > worst_x:
                worst_x, where_x = mag, f"T={T} x={x} col={lab}"
    reports.append(_report(f"projector-power-T{T}", float(worst_x), where_x,
                           checked, tol))
    return reports


DEFAULT_CHECKS = ("su11", "hermiticity", "casimir", "norms",
                  "orthogonality", "intertwiner", "projector")


def run_all_checks(sig: Signature, q, mode: str = "float",
                   truncation: Optional[Truncation] = None,
                   tolerance: float = 1e-10, precision: int = 50,
                   flip_entry: Optional[str] = None,
                   checks: Optional[Sequence[str]] = None,
                   projector_t_cap: Fraction = Fraction(4)) -> List[CheckReport]:
    """Run the whole suite; returns reports in a deterministic order.

    mode 'exact' runs the su11, Casimir and norm checks in exact rational
    arithmetic; matrix checks that need square roots always run in floating
    point at the given precision.
    """
    trunc = truncation or Truncation(6, 6, 6)
    wanted = set(checks or DEFAULT_CHECKS)
    unknown = wanted - set(DEFAULT_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    fctx = EvalContext.floating(q, precision=precision)
    ectx = EvalContext.exact(q) if mode == "exact" else None
    reports: List[CheckReport] = []
    reps = {}
    if wanted & {"su11", "hermiticity", "casimir"}:
        for b in ("u", "t"):
            reps[b] = TruncatedRep(fctx, sig, b, trunc, flip_entry=flip_entry)
        if ectx is not None:
            reps["t-exact"] = TruncatedRep(ectx, sig, "t", trunc,
                                           flip_entry=flip_entry)
    if "su11" in wanted:
        target = reps["t-exact"] if ectx is not None else reps["t"]
        reports += check_su11_relations(target, tolerance)
        reports += check_su11_relations(reps["u"], tolerance)
    if "hermiticity" in wanted:
        reports += check_hermiticity(reps["u"], tolerance)
        reports += check_hermiticity(reps["t"], tolerance)
    if "casimir" in wanted:
        target = reps["t-exact"] if ectx is not None else reps["t"]
        reports += check_casimir(target, tolerance)
    if "norms" in wanted:
        reports.append(check_norm_recursions(sig, q))
    if "orthogonality" in wanted:
        reports.append(check_weyl_orthogonality(sig, trunc, fctx, tolerance))
    if "intertwiner" in wanted:
        reports.append(check_intertwiner(sig, trunc, fctx, tolerance,
                                         flip_entry=flip_entry))
    if "projector" in wanted:
        t_min = Fraction(sig.f2 - sig.f3 - 2, 2)
        t = t_min
        while t <= projector_t_cap:
            reports += check_projector(sig, t, trunc, fctx, tolerance)
            t += Fraction(1, 2)
    return reports
