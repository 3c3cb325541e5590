"""Transformation brackets between the two reduction chains, and q-Racah values."""

import random
from fractions import Fraction

import pytest

from qu21.errors import EmptyWeightSpace, WeightMismatch
from qu21.qarith import EvalContext, SignedRadical
from qu21.repspace import (Signature, Weight, enumerate_u_basis,
                           lowest_t_label, lowest_u_label, match_labels,
                           t_labels_at_weight, u_labels_at_weight, weight_of_t,
                           weight_of_u)
from qu21.weylracah import (RacahArgs, qracah, qracah_exact,
                            racah_args_from_rep, racah_triangles_ok,
                            weyl_block, weyl_coefficient,
                            weyl_coefficient_exact, weyl_via_racah)

from oracles import half_integers, recoupling_exact

SIGS = [Signature(4, 2, -2), Signature(3, 1, -1), Signature(5, 2, -1)]

Q_EXACT = [Fraction(1, 2), Fraction(1), Fraction(13, 10)]


def small_weights(sig, ell_max=2):
    seen = []
    for lab in enumerate_u_basis(sig, ell_max):
        w = weight_of_u(sig, lab)
        if w not in seen:
            seen.append(w)
    return seen


class TestWeylCoefficient:
    def test_weight_mismatch_rejected(self):
        sig = Signature(4, 2, -2)
        ctx = EvalContext.exact(Fraction(13, 10))
        u = lowest_u_label(sig)
        ts = match_labels(sig, enumerate_u_basis(sig, 1)[-1])
        t_other = next(t for t in ts
                       if weight_of_t(sig, t) != weight_of_u(sig, u))
        with pytest.raises(WeightMismatch):
            weyl_coefficient_exact(ctx, sig, u, t_other)

    @pytest.mark.parametrize("sig", SIGS)
    @pytest.mark.parametrize("q", Q_EXACT)
    def test_sum_conventions_agree(self, sig, q):
        ctx = EvalContext.exact(q)
        for w in small_weights(sig):
            for u in u_labels_at_weight(sig, w):
                for t in t_labels_at_weight(sig, w):
                    via_n = weyl_coefficient_exact(ctx, sig, u, t, "n")
                    via_r = weyl_coefficient_exact(ctx, sig, u, t, "r")
                    assert via_n.same_value(via_r, ctx), (u, t)

    @pytest.mark.parametrize("sig", SIGS)
    def test_lowest_bracket_is_plus_one(self, sig):
        ctx = EvalContext.exact(Fraction(9, 10))
        val = weyl_coefficient_exact(ctx, sig, lowest_u_label(sig),
                                     lowest_t_label(sig))
        assert val == SignedRadical.from_rational(Fraction(1))

    def test_exact_and_float_agree(self):
        sig = Signature(3, 1, -1)
        ectx = EvalContext.exact(Fraction(13, 10))
        fctx = EvalContext.floating(Fraction(13, 10), 50)
        for w in small_weights(sig):
            for u in u_labels_at_weight(sig, w):
                for t in t_labels_at_weight(sig, w):
                    exact = weyl_coefficient_exact(ectx, sig, u, t)
                    approx = weyl_coefficient(fctx, sig, u, t)
                    assert abs(exact.to_float(fctx) - approx) < 1e-45

    def test_mode_guards(self):
        sig = Signature(4, 2, -2)
        u, t = lowest_u_label(sig), lowest_t_label(sig)
        with pytest.raises(ValueError):
            weyl_coefficient(EvalContext.exact(Fraction(1)), sig, u, t)
        with pytest.raises(ValueError):
            weyl_coefficient_exact(EvalContext.floating(Fraction(1)), sig, u, t)


class TestWeylBlock:
    @pytest.mark.parametrize("sig", SIGS)
    def test_blocks_are_square_and_orthogonal(self, sig):
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        for w in small_weights(sig):
            block = weyl_block(ctx, sig, w)
            n = len(block.u_labels)
            assert len(block.t_labels) == n
            assert all(len(row) == n for row in block.entries)
            for i in range(n):
                for j in range(n):
                    dot = sum(block.entries[i][m] * block.entries[j][m]
                              for m in range(n))
                    want = 1 if i == j else 0
                    assert abs(dot - want) < 1e-40, (w, i, j)

    def test_empty_weight_raises(self):
        sig = Signature(4, 2, -2)
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        with pytest.raises(EmptyWeightSpace):
            weyl_block(ctx, sig, Weight(99, 0, -99))


class TestRacah:
    def test_all_zero_arguments(self):
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        assert qracah(ctx, RacahArgs.make(0, 0, 0, 0, 0, 0)) == 1

    def test_out_of_triangle_is_zero(self):
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        args = RacahArgs.make(2, Fraction(1, 2), 1, 0, 1, Fraction(1, 2))
        assert not racah_triangles_ok(args)
        assert qracah(ctx, args) == 0
        ectx = EvalContext.exact(Fraction(13, 10))
        assert qracah_exact(ectx, args) == SignedRadical.zero()

    def test_half_integer_parity_rejected(self):
        # (a, b, c) with half-integer perimeter is no triangle at all
        args = RacahArgs.make(Fraction(1, 2), 0, Fraction(1, 2), Fraction(1, 2),
                              0, 0)
        assert not racah_triangles_ok(args)

    def test_classical_anchor(self):
        # U(1 1 1 1; 1 1) = 1/2 at q = 1, a standard tabulated value
        ctx = EvalContext.exact(Fraction(1))
        val = qracah_exact(ctx, RacahArgs.make(1, 1, 1, 1, 1, 1))
        assert val == SignedRadical.from_rational(Fraction(1, 2))

    def test_matches_classical_recoupling(self):
        # brute-force Clebsch-Gordan recoupling at q = 1 on a small grid;
        # the acceptance suite repeats this over the full grid up to 2
        ctx = EvalContext.exact(Fraction(1))
        checked = 0
        for a in half_integers(3):
            for b in half_integers(3):
                for e in half_integers(3):
                    for d in half_integers(3):
                        for c in half_integers(3):
                            for f in half_integers(3):
                                args = RacahArgs(a, b, e, d, c, f)
                                if not racah_triangles_ok(args):
                                    continue
                                got = qracah_exact(ctx, args)
                                want = recoupling_exact(a, b, e, d, c, f)
                                assert got.same_value(want, ctx), args
                                checked += 1
        assert checked > 100

    @pytest.mark.parametrize("q", [Fraction(1), Fraction(13, 10)])
    def test_row_orthogonality(self, q):
        # sum over f of U(a b e d; c f) U(a b e d; c' f) is delta_{c c'}
        ctx = EvalContext.floating(q, 50)
        a, b, d, e = Fraction(1), Fraction(3, 2), Fraction(1), Fraction(3, 2)
        grid = [Fraction(n, 2) for n in range(12)]
        for c in grid:
            for c2 in grid:
                joint = [f for f in grid
                         if racah_triangles_ok(RacahArgs(a, b, e, d, c, f))
                         and racah_triangles_ok(RacahArgs(a, b, e, d, c2, f))]
                if not joint:
                    continue
                total = sum(qracah(ctx, RacahArgs(a, b, e, d, c, f))
                            * qracah(ctx, RacahArgs(a, b, e, d, c2, f))
                            for f in grid)
                want = 1 if c == c2 else 0
                assert abs(total - want) < 1e-40, (c, c2)

    def test_exact_matches_float(self):
        rng = random.Random(7)
        ectx = EvalContext.exact(Fraction(13, 10))
        fctx = EvalContext.floating(Fraction(13, 10), 50)
        grid = [Fraction(n, 2) for n in range(7)]
        checked = 0
        while checked < 40:
            args = RacahArgs(*(rng.choice(grid) for _ in range(6)))
            if not racah_triangles_ok(args):
                continue
            exact = qracah_exact(ectx, args)
            assert abs(exact.to_float(fctx) - qracah(fctx, args)) < 1e-42
            checked += 1

    def test_mode_guards(self):
        args = RacahArgs.make(1, 1, 1, 1, 1, 1)
        with pytest.raises(ValueError):
            qracah(EvalContext.exact(Fraction(1)), args)
        with pytest.raises(ValueError):
            qracah_exact(EvalContext.floating(Fraction(1)), args)


class TestDictionary:
    @pytest.mark.parametrize("sig", SIGS)
    def test_argument_map(self, sig):
        for w in small_weights(sig):
            for u in u_labels_at_weight(sig, w):
                for t in t_labels_at_weight(sig, w):
                    args = racah_args_from_rep(sig, u, t)
                    assert args.a == t.T
                    assert args.d == u.U
                    assert args.b == Fraction(u.ell + u.k, 2)
                    assert args.f == Fraction(sig.f1 - sig.f2, 2)
                    assert racah_triangles_ok(args)

    def test_mismatched_labels_rejected(self):
        sig = Signature(4, 2, -2)
        u = lowest_u_label(sig)
        far = enumerate_u_basis(sig, 2)[-1]
        t = next(t for t in match_labels(sig, far)
                 if weight_of_t(sig, t) != weight_of_u(sig, u))
        with pytest.raises(WeightMismatch):
            racah_args_from_rep(sig, u, t)

    @pytest.mark.parametrize("sig", SIGS)
    @pytest.mark.parametrize("form", ["a", "b"])
    def test_racah_forms_match_direct(self, sig, form):
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        for w in small_weights(sig):
            for u in u_labels_at_weight(sig, w):
                for t in t_labels_at_weight(sig, w):
                    direct = weyl_coefficient(ctx, sig, u, t)
                    via = weyl_via_racah(ctx, sig, u, t, form)
                    assert abs(direct - via) < 1e-40, (u, t)

    def test_unknown_form_rejected(self):
        sig = Signature(4, 2, -2)
        ctx = EvalContext.floating(Fraction(13, 10), 50)
        with pytest.raises(ValueError):
            weyl_via_racah(ctx, sig, lowest_u_label(sig), lowest_t_label(sig),
                           form="c")
