"""Exact p-adic valuations on the rationals, and the scalar thresholds
lambda(d), hat-lambda(d), gamma(d) expressed as valuations.

Norms never appear as numbers: ``|x| = p**(-val(x))``, so every norm
inequality becomes a comparison of rationals (reversed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


@total_ordering
class _Infinity:
    """Valuation of zero. Larger than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("padic_crit.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INFINITY - INFINITY")
        return self

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ValQ = Union[Fraction, _Infinity]


def is_finite(v: ValQ) -> bool:
    return v is not INFINITY


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp_int(p: int, n: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("vp_int(0) is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PadicContext:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise PreconditionError(f"p must be an integer, got {self.p!r}")
        if self.p >= 10**6:
            raise PreconditionError("p must be below 10**6")
        if not is_prime(self.p):
            raise PreconditionError(f"p={self.p} is not prime")

    def val(self, x) -> ValQ:
        return val(self, x)


def val(ctx: PadicContext, x) -> ValQ:
    """p-adic valuation of a rational number; INFINITY for 0."""
    x = as_fraction(x)
    if x == 0:
        return INFINITY
    return Fraction(vp_int(ctx.p, x.numerator) - vp_int(ctx.p, x.denominator))


def _check_degree(d: int) -> None:
    if d < 2:
        raise PreconditionError(f"degree must be at least 2, got {d}")


def lambda_exponent(ctx: PadicContext, d: int) -> int:
    """V with lambda(d) = p**(-V): the largest v_p(m) for 1 <= m <= d."""
    _check_degree(d)
    v, pk = 0, ctx.p
    while pk <= d:
        v += 1
        pk *= ctx.p
    return v


def hat_lambda_exponent(ctx: PadicContext, d: int) -> int:
    """Vhat with hat-lambda(d) = p**(-Vhat): the largest m * v_p(m) for 1 <= m <= d."""
    _check_degree(d)
    return max(m * vp_int(ctx.p, m) for m in range(1, d + 1))


def gamma_valuation(ctx: PadicContext, d: int) -> Fraction:
    """Valuation of gamma(d): 0 when p > d, else -1/(p-1)."""
    if lambda_exponent(ctx, d) == 0:
        return Fraction(0)
    return Fraction(-1, ctx.p - 1)


@dataclass(frozen=True)
class Thresholds:
    V: int
    Vhat: int
    gammaVal: Fraction


def thresholds(ctx: PadicContext, d: int) -> Thresholds:
    return Thresholds(lambda_exponent(ctx, d), hat_lambda_exponent(ctx, d), gamma_valuation(ctx, d))


@dataclass(frozen=True)
class HypothesisFlags:
    """Which attracting-cycle criteria a multiplier valuation satisfies.

    ``eq156_threshold`` is the bound on v(lambda)/n obtained by applying the
    single-fixed-point criterion to the n-th iterate; ``eq156`` says whether
    it is met.
    """

    thmA: bool
    thmB: bool
    corF_poly: bool
    cor43: bool
    eq156: bool
    eq156_threshold: Fraction


def eq156_threshold(ctx: PadicContext, d: int, n: int) -> Fraction:
    return Fraction(d**n, n) * lambda_exponent(ctx, d**n)


def hypothesis_thresholds(ctx: PadicContext, d: int, n: int, vLambda: ValQ) -> HypothesisFlags:
    """Valuation-level form of the multiplier hypotheses for a cycle of period n.

    A chi < log(bound) condition with chi = -(v(lambda)/n) log p reads
    v(lambda)/n > -log_p(bound). A superattracting cycle (vLambda INFINITY)
    satisfies the |lambda| < lambda(d)^n test but none of the chi > -inf ones.
    """
    if n < 1:
        raise PreconditionError(f"period must be positive, got {n}")
    V = lambda_exponent(ctx, d)
    Vhat = hat_lambda_exponent(ctx, d)
    thmA = vLambda > n * V
    e156 = eq156_threshold(ctx, d, n)
    if vLambda is INFINITY:
        return HypothesisFlags(thmA, False, False, False, False, e156)
    chi = Fraction(vLambda) / n
    if n <= 2 * d - 2:
        thmB = chi > d * V
    else:
        thmB = chi > (1 + Fraction(2 * (d - 1) ** 2, n)) * V
    if n <= d - 1:
        corF = chi > Vhat
    else:
        corF = chi > V + Fraction(d - 1, n) * (Vhat - V)
    if n <= 2 * d - 2:
        cor43 = chi > Vhat
    else:
        cor43 = chi > V + Fraction(2 * d - 2, n) * (Vhat - V)
    return HypothesisFlags(thmA, thmB, corF, cor43, chi > e156, e156)
