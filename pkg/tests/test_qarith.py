"""Scalar layer: brackets, factorials, contexts, signed radicals."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qu21.errors import NegativeFactorial, RadicalIncompatible
from qu21.qarith import EvalContext, SignedRadical, radical_sum, sqrt_fraction

rationals_q = st.fractions(min_value=Fraction(1, 9), max_value=Fraction(9),
                           max_denominator=40).filter(lambda x: x > 0)


class TestBrackets:
    def test_generic_values(self):
        ctx = EvalContext.exact(Fraction(1, 2))
        assert ctx.qnum(0) == 0
        assert ctx.qnum(1) == 1
        assert ctx.qnum(2) == Fraction(5, 2)
        assert ctx.qnum(3) == Fraction(21, 4)

    def test_classical_branch(self):
        ctx = EvalContext.exact(1)
        assert ctx.is_classical()
        for n in range(-6, 7):
            assert ctx.qnum(n) == n

    @given(q=rationals_q, n=st.integers(-20, 20))
    @settings(max_examples=60, deadline=None)
    def test_inversion_symmetry(self, q, n):
        a = EvalContext.exact(q).qnum(n)
        b = EvalContext.exact(1 / q).qnum(n)
        assert a == b

    @given(q=rationals_q, n=st.integers(-20, 20))
    @settings(max_examples=60, deadline=None)
    def test_antisymmetry(self, q, n):
        ctx = EvalContext.exact(q)
        assert ctx.qnum(-n) == -ctx.qnum(n)

    @given(q=rationals_q, x=st.integers(-8, 8))
    @settings(max_examples=60, deadline=None)
    def test_half_bracket_square_integer_case(self, q, x):
        ctx = EvalContext.exact(q)
        assert ctx.qbracket_half_sq(2 * x) == ctx.qnum(x) ** 2

    def test_half_bracket_square_half_integer(self):
        q = Fraction(4, 9)
        ctx = EvalContext.exact(q)
        # [1/2]^2 = (q - 2 + 1/q) / (q - 1/q)^2 for x = 1/2
        want = (q - 2 + 1 / q) / (q - 1 / q) ** 2
        assert ctx.qbracket_half_sq(1) == want

    def test_half_bracket_square_classical(self):
        ctx = EvalContext.exact(1)
        assert ctx.qbracket_half_sq(3) == Fraction(9, 4)
        assert ctx.qbracket_half_sq(0) == 0


class TestFactorials:
    def test_values(self):
        ctx = EvalContext.exact(Fraction(1, 2))
        assert ctx.qfact(0) == 1
        assert ctx.qfact(1) == 1
        assert ctx.qfact(3) == ctx.qnum(1) * ctx.qnum(2) * ctx.qnum(3)

    def test_negative_raises(self):
        ctx = EvalContext.exact(Fraction(1, 2))
        with pytest.raises(NegativeFactorial):
            ctx.qfact(-1)

    def test_inverse_extends_by_zero(self):
        ctx = EvalContext.exact(Fraction(3, 2))
        assert ctx.qfact_inv(-1) == 0
        assert ctx.qfact_inv(-7) == 0
        assert ctx.qfact_inv(4) == 1 / ctx.qfact(4)

    @given(q=rationals_q, n=st.integers(1, 15))
    @settings(max_examples=40, deadline=None)
    def test_recursion(self, q, n):
        ctx = EvalContext.exact(q)
        assert ctx.qfact(n) == ctx.qnum(n) * ctx.qfact(n - 1)

    def test_fraction_argument(self):
        ctx = EvalContext.exact(Fraction(1, 2))
        assert ctx.qfact(Fraction(4, 1)) == ctx.qfact(4)
        with pytest.raises(TypeError):
            ctx.qnum(Fraction(1, 2)) is not None and ctx.qfact(Fraction(1, 2))


class TestContexts:
    def test_exact_constructor_rejects_bad_q(self):
        with pytest.raises(ValueError):
            EvalContext.exact(0)
        with pytest.raises(ValueError):
            EvalContext.exact(Fraction(-1, 2))

    def test_float_matches_exact(self):
        q = Fraction(13, 10)
        e = EvalContext.exact(q)
        f = EvalContext.floating(q, precision=40)
        for n in range(0, 12):
            exact = e.qfact(n)
            approx = f.qfact(n)
            rel = abs(approx - f.from_fraction(exact)) / abs(approx)
            assert rel < f.from_fraction(Fraction(1, 10 ** 35))

    def test_as_float_keeps_q(self):
        e = EvalContext.exact(Fraction(13, 10))
        f = e.as_float(30)
        assert not f.is_exact()
        assert f.precision == 30
        assert abs(f.qpow(1) - f.from_fraction(Fraction(13, 10))) == 0

    def test_to_float_requires_float_mode(self):
        e = EvalContext.exact(Fraction(2))
        with pytest.raises(ValueError):
            e.to_float(Fraction(1, 3))

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            EvalContext("symbolic", Fraction(1))

    def test_sqrt_exact_only_for_squares(self):
        e = EvalContext.exact(Fraction(1))
        assert e.sqrt(Fraction(9, 4)) == Fraction(3, 2)
        with pytest.raises(ValueError):
            e.sqrt(Fraction(2))


class TestSqrtFraction:
    def test_squares(self):
        assert sqrt_fraction(Fraction(49, 121)) == Fraction(7, 11)
        assert sqrt_fraction(Fraction(0)) == 0

    def test_non_squares(self):
        assert sqrt_fraction(Fraction(2)) is None
        assert sqrt_fraction(Fraction(4, 7)) is None

    @given(st.fractions(min_value=0, max_value=100, max_denominator=50))
    @settings(max_examples=60, deadline=None)
    def test_roundtrip(self, v):
        r = sqrt_fraction(v * v)
        assert r == abs(v)


class TestSignedRadical:
    def test_zero_is_canonical(self):
        z = SignedRadical.zero()
        assert z.sign == 0 and z.radicand == 0 and z.qpower == 0
        assert SignedRadical.make(1, 5, 0) == z
        assert SignedRadical.make(-1, 2, Fraction(0)) == z

    def test_invalid_states_rejected(self):
        with pytest.raises(ValueError):
            SignedRadical(2, 0, Fraction(1))
        with pytest.raises(ValueError):
            SignedRadical(1, 0, Fraction(-1))
        with pytest.raises(ValueError):
            SignedRadical(0, 0, Fraction(3))

    def test_from_rational(self):
        r = SignedRadical.from_rational(Fraction(-3, 4))
        assert r.sign == -1 and r.radicand == Fraction(9, 16)
        assert SignedRadical.from_rational(0).is_zero()

    def test_multiplication_and_negation(self):
        a = SignedRadical.make(1, 2, Fraction(3))
        b = SignedRadical.make(-1, -1, Fraction(5, 2))
        c = a * b
        assert c.sign == -1 and c.qpower == 1 and c.radicand == Fraction(15, 2)
        assert (-c).sign == 1
        assert (a * SignedRadical.zero()).is_zero()

    def test_division(self):
        a = SignedRadical.make(1, 2, Fraction(3))
        b = SignedRadical.make(-1, 1, Fraction(4))
        c = a / b
        assert c.sign == -1 and c.qpower == 1 and c.radicand == Fraction(3, 4)
        with pytest.raises(ZeroDivisionError):
            a / SignedRadical.zero()

    def test_squared_folds_qpower(self):
        ctx = EvalContext.exact(Fraction(2))
        a = SignedRadical.make(-1, 3, Fraction(5))
        assert a.squared(ctx) == Fraction(2) ** 6 * 5

    def test_add_exact_same_class(self):
        ctx = EvalContext.exact(Fraction(1))
        a = SignedRadical.make(1, 0, Fraction(2))
        b = SignedRadical.make(1, 0, Fraction(8))   # sqrt(8) = 2 sqrt(2)
        s = a.add_exact(b, ctx)
        assert s.sign == 1 and s.radicand == Fraction(18)  # 3 sqrt(2)

    def test_add_exact_cancellation(self):
        ctx = EvalContext.exact(Fraction(3, 2))
        a = SignedRadical.make(1, 1, Fraction(2))
        b = SignedRadical.make(-1, -1, Fraction(2) * Fraction(3, 2) ** 4)
        assert a.add_exact(b, ctx).is_zero()

    def test_add_exact_incompatible(self):
        ctx = EvalContext.exact(Fraction(1))
        a = SignedRadical.make(1, 0, Fraction(2))
        b = SignedRadical.make(1, 0, Fraction(3))
        with pytest.raises(RadicalIncompatible):
            a.add_exact(b, ctx)

    def test_same_value(self):
        ctx = EvalContext.exact(Fraction(2))
        a = SignedRadical.make(1, 2, Fraction(3))
        b = SignedRadical.make(1, 0, Fraction(48))  # q^2 sqrt(3) = sqrt(16*3)
        assert a.same_value(b, ctx)
        assert not a.same_value(-b, ctx)

    def test_to_float(self):
        ctx = EvalContext.exact(Fraction(13, 10))
        f = ctx.as_float()
        a = SignedRadical.make(-1, 1, Fraction(9, 4))
        v = a.to_float(f)
        assert abs(v - (-f.qpow(1) * f.from_fraction(Fraction(3, 2)))) == 0

    @given(q=rationals_q,
           s1=st.sampled_from([-1, 1]), w1=st.integers(-3, 3),
           r1=st.fractions(min_value=0, max_value=20, max_denominator=12),
           s2=st.sampled_from([-1, 1]), w2=st.integers(-3, 3),
           r2=st.fractions(min_value=0, max_value=20, max_denominator=12))
    @settings(max_examples=60, deadline=None)
    def test_product_squares_multiply(self, q, s1, w1, r1, s2, w2, r2):
        ctx = EvalContext.exact(q)
        a = SignedRadical.make(s1, w1, r1)
        b = SignedRadical.make(s2, w2, r2)
        assert (a * b).squared(ctx) == a.squared(ctx) * b.squared(ctx)

    @given(q=rationals_q,
           base=st.fractions(min_value=Fraction(1, 6), max_value=6,
                             max_denominator=10),
           c1=st.fractions(min_value=-8, max_value=8, max_denominator=8),
           c2=st.fractions(min_value=-8, max_value=8, max_denominator=8))
    @settings(max_examples=60, deadline=None)
    def test_add_exact_matches_floats(self, q, base, c1, c2):
        # c1 sqrt(base) + c2 sqrt(base) = (c1 + c2) sqrt(base)
        ctx = EvalContext.exact(q)
        a = SignedRadical.from_rational(c1) * SignedRadical.make(1, 0, base)
        b = SignedRadical.from_rational(c2) * SignedRadical.make(1, 0, base)
        s = radical_sum([a, b], ctx)
        want = SignedRadical.from_rational(c1 + c2) * SignedRadical.make(1, 0, base)
        assert s.same_value(want, ctx)
