"""q-number arithmetic over exact rational or arbitrary-precision float backends.

The symmetric q-bracket is used throughout:

    [n] = (q^n - q^-n) / (q - q^-1),      [n]! = [1][2]...[n],  [0]! = 1.

The classical point q = 1 is handled as an explicit limit ([n] -> n), never by
numerically approaching it.  Truncation of all finite sums in this package is
driven by a single mechanism: 1/[n]! evaluates to exactly zero for n < 0
(see :meth:`EvalContext.qfact_inv`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

import mpmath

from .errors import NegativeFactorial, RadicalIncompatible

Scalar = Union[Fraction, mpmath.mpf]

_EXACT = "exact"
_FLOAT = "float"


def _as_int(n) -> int:
    """Coerce an int or integral Fraction to int, rejecting anything else."""
    if isinstance(n, int):
        return n
    if isinstance(n, Fraction) and n.denominator == 1:
        return int(n)
    raise TypeError(f"expected an integer bracket argument, got {n!r}")


def sqrt_fraction(value: Fraction):
    """Exact square root of a nonnegative Fraction, or None if not a square."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class EvalContext:
    """Immutable evaluation backend for all q-arithmetic.

    mode 'exact':  q is a positive rational (Fraction); every operation returns
                   a Fraction and is exact.
    mode 'float':  q is a positive real carried at ``precision`` decimal digits
                   on a private mpmath context, so instances never interfere
                   with each other or with the global mpmath state.

    All operations are pure; the only internal mutation is memoization of
    q-brackets and q-factorials.
    """

    __slots__ = ("mode", "q", "precision", "_mp", "_qnum_memo", "_qfact_memo")

    def __init__(self, mode: str, q, precision: int = 50):
        if mode not in (_EXACT, _FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self.precision = int(precision)
        if mode == _EXACT:
            q = Fraction(q)
            if q <= 0:
                raise ValueError("q must be positive")
            self.q = q
            self._mp = None
        else:
            ctx = mpmath.mp.clone()
            ctx.dps = self.precision
            self._mp = ctx
            if isinstance(q, Fraction):
                qf = ctx.mpf(q.numerator) / ctx.mpf(q.denominator)
            elif isinstance(q, str):
                qf = ctx.mpf(q)
            else:
                qf = ctx.mpf(q)
            if qf <= 0:
                raise ValueError("q must be positive")
            self.q = qf
        self._qnum_memo = {}
        self._qfact_memo = {0: self.one()}

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, q) -> "EvalContext":
        return cls(_EXACT, q)

    @classmethod
    def floating(cls, q, precision: int = 50) -> "EvalContext":
        return cls(_FLOAT, q, precision)

    def as_float(self, precision: int | None = None) -> "EvalContext":
        """A float-mode companion context at the same q."""
        if self.mode == _FLOAT and (precision is None or precision == self.precision):
            return self
        prec = self.precision if precision is None else precision
        return EvalContext(_FLOAT, self.q, prec)

    # -- basic values ------------------------------------------------------

    def is_exact(self) -> bool:
        return self.mode == _EXACT

    def is_classical(self) -> bool:
        """True at the classical point q = 1."""
        return self.q == 1

    def zero(self) -> Scalar:
        return Fraction(0) if self.mode == _EXACT else self._mp.mpf(0)

    def one(self) -> Scalar:
        return Fraction(1) if self.mode == _EXACT else self._mp.mpf(1)

    def from_int(self, n: int) -> Scalar:
        return Fraction(n) if self.mode == _EXACT else self._mp.mpf(n)

    def from_fraction(self, value: Fraction) -> Scalar:
        if self.mode == _EXACT:
            return Fraction(value)
        return self._mp.mpf(value.numerator) / self._mp.mpf(value.denominator)

    def qpow(self, w) -> Scalar:
        """q**w for integer w."""
        w = _as_int(w)
        if self.mode == _EXACT:
            return self.q ** w
        return self._mp.power(self.q, w)

    # -- brackets and factorials --------------------------------------------

    def qnum(self, n) -> Scalar:
        """Symmetric q-bracket [n]; [n] -> n at q = 1, [-n] = -[n]."""
        n = _as_int(n)
        memo = self._qnum_memo
        if n not in memo:
            if self.is_classical():
                memo[n] = self.from_int(n)
            else:
                q = self.q
                memo[n] = (q ** n - q ** (-n)) / (q - q ** -1)
        return memo[n]

    def qfact(self, n) -> Scalar:
        """q-factorial [n]! with [0]! = 1; raises NegativeFactorial for n < 0."""
        n = _as_int(n)
        if n < 0:
            raise NegativeFactorial(f"[{n}]! is undefined")
        memo = self._qfact_memo
        if n not in memo:
            top = max(memo)
            acc = memo[top]
            for m in range(top + 1, n + 1):
                acc = acc * self.qnum(m)
                memo[m] = acc
        return memo[n]

    def qfact_inv(self, n) -> Scalar:
        """1/[n]!, extended by 0 for n < 0.

        This zero extension is what bounds every finite sum in the package;
        summation code never precomputes bounds independently.
        """
        n = _as_int(n)
        if n < 0:
            return self.zero()
        return 1 / self.qfact(n)

    def qbracket_half_sq(self, two_x) -> Scalar:
        """[x]^2 for the half-integer x = two_x / 2.

        Although [x] itself leaves the rational field for half-integer x, its
        square (q^{2x} - 2 + q^{-2x}) / (q - q^-1)^2 does not.
        """
        two_x = _as_int(two_x)
        if self.is_classical():
            if self.mode == _EXACT:
                return Fraction(two_x, 2) ** 2
            return (self.from_int(two_x) / 2) ** 2
        q = self.q
        return (self.qpow(two_x) - 2 + self.qpow(-two_x)) / (q - q ** -1) ** 2

    # -- float helpers -------------------------------------------------------

    def sqrt(self, x) -> Scalar:
        if self.mode == _EXACT:
            root = sqrt_fraction(Fraction(x))
            if root is None:
                raise ValueError(f"{x} has no exact rational square root")
            return root
        return self._mp.sqrt(self.to_float(x))

    def to_float(self, x):
        """Coerce ints, Fractions, or mpf values into this float context."""
        if self.mode == _EXACT:
            raise ValueError("to_float requires a float-mode context")
        if isinstance(x, Fraction):
            return self._mp.mpf(x.numerator) / self._mp.mpf(x.denominator)
        if isinstance(x, int):
            return self._mp.mpf(x)
        return self._mp.mpf(x)

    # -- misc ----------------------------------------------------------------

    def __repr__(self):
        return f"EvalContext(mode={self.mode!r}, q={self.q!r}, precision={self.precision})"


@dataclass(frozen=True)
class SignedRadical:
    """Exact factored value  sign * q^qpower * sqrt(radicand).

    sign is -1, 0, or +1; qpower is an integer; radicand is a nonnegative
    Scalar (a Fraction in exact mode).  sign == 0 if and only if the radicand
    is zero, in which case the canonical form (0, 0, 0) is enforced.  The type
    is closed under multiplication and division but not addition; a restricted
    exact sum is available when radicand ratios are rational squares.
    """

    sign: int
    qpower: int
    radicand: Scalar

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0, or +1, got {self.sign}")
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign == 0 exactly when radicand == 0")

    @classmethod
    def zero(cls) -> "SignedRadical":
        return cls(0, 0, Fraction(0))

    @classmethod
    def make(cls, sign: int, qpower, radicand) -> "SignedRadical":
        """Normalizing constructor: any zero radicand collapses to the zero value."""
        if radicand == 0 or sign == 0:
            return cls.zero()
        return cls(sign, _as_int(qpower), radicand)

    @classmethod
    def from_rational(cls, value: Fraction) -> "SignedRadical":
        value = Fraction(value)
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, 0, value * value)

    def is_zero(self) -> bool:
        return self.sign == 0

    def __mul__(self, other: "SignedRadical") -> "SignedRadical":
        if self.sign == 0 or other.sign == 0:
            return SignedRadical.zero()
        return SignedRadical(self.sign * other.sign,
                             self.qpower + other.qpower,
                             self.radicand * other.radicand)

    def __truediv__(self, other: "SignedRadical") -> "SignedRadical":
        if other.sign == 0:
            raise ZeroDivisionError("division by zero SignedRadical")
        if self.sign == 0:
            return SignedRadical.zero()
        return SignedRadical(self.sign * other.sign,
                             self.qpower - other.qpower,
                             self.radicand / other.radicand)

    def __neg__(self) -> "SignedRadical":
        if self.sign == 0:
            return self
        return SignedRadical(-self.sign, self.qpower, self.radicand)

    def squared(self, ctx: EvalContext) -> Scalar:
        """The exact square q^{2 qpower} * radicand as a context Scalar."""
        if self.sign == 0:
            return ctx.zero()
        return ctx.qpow(2 * self.qpower) * self.radicand

    def same_value(self, other: "SignedRadical", ctx: EvalContext) -> bool:
        """Exact value equality under the given context's q."""
        if self.sign != other.sign:
            return False
        if self.sign == 0:
            return True
        return self.squared(ctx) == other.squared(ctx)

    def add_exact(self, other: "SignedRadical", ctx: EvalContext) -> "SignedRadical":
        """Exact sum, defined only when the radicand ratio is a rational square.

        Requires an exact-mode context (rational q) so that q-powers fold into
        the radicands exactly.  Raises RadicalIncompatible otherwise.
        """
        if not ctx.is_exact():
            raise ValueError("add_exact requires an exact-mode context")
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        rho1 = self.squared(ctx)
        rho2 = other.squared(ctx)
        ratio = sqrt_fraction(rho2 / rho1)
        if ratio is None:
            raise RadicalIncompatible(f"cannot add sqrt({rho1}) and sqrt({rho2}) exactly")
        coeff = self.sign + other.sign * ratio
        if coeff == 0:
            return SignedRadical.zero()
        sign = 1 if coeff > 0 else -1
        return SignedRadical(sign, 0, coeff * coeff * rho1)

    def to_float(self, ctx: EvalContext):
        """Numeric value sign * q^qpower * sqrt(radicand) in a float context."""
        fctx = ctx.as_float()
        if self.sign == 0:
            return fctx.zero()
        return self.sign * fctx.qpow(self.qpower) * fctx.sqrt(self.radicand)


def radical_sum(terms, ctx: EvalContext) -> SignedRadical:
    """Exact sum of SignedRadicals that are pairwise compatible under ctx."""
    acc = SignedRadical.zero()
    for term in terms:
        acc = acc.add_exact(term, ctx)
    return acc
