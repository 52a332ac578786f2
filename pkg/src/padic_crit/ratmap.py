"""Rational maps F/G over Q: normalization, derivatives, composition,
coordinate changes, Y-resultants and reduction modulo p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, poly_gcd, resultant, interpolate
from .valuation import PadicContext, PreconditionError, as_fraction, val

DEFAULT_ITERATE_CAP = 256


class CapExceeded(RuntimeError):
    """An iterate would exceed the configured degree cap."""


class DegenerateIterate(ValueError):
    """R^n(z) - z vanishes identically."""


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    def __reduce__(self):
        return (_PointAtInfinity, ())


oo = _PointAtInfinity()


@dataclass(frozen=True)
class RatMap:
    """Q = num/den with gcd(num, den) = 1 and den monic.

    Build through :func:`normalize`; the raw constructor does not check.
    """

    num: Poly
    den: Poly

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def fixes_infinity(self) -> bool:
        return self.num.degree > self.den.degree

    def __call__(self, z):
        return eval_map(self, z)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def normalize(F: Poly, G: Poly, allow_constant: bool = False) -> RatMap:
    if G.is_zero():
        raise PreconditionError("denominator is zero")
    g = poly_gcd(F, G)
    if g.degree > 0:
        F, G = F.exact_div(g), G.exact_div(g)
    lc = G.lc
    F, G = F * (1 / lc), G * (1 / lc)
    if not allow_constant and max(F.degree, G.degree) < 1:
        raise PreconditionError("constant map")
    return RatMap(F, G)


def ratmap(num, den=(1,)) -> RatMap:
    """Convenience constructor from coefficient lists (ascending degree)."""
    return normalize(Poly(num), Poly(den))


def eval_map(Q: RatMap, z):
    if z is oo:
        if Q.num.degree > Q.den.degree:
            return oo
        if Q.num.degree == Q.den.degree:
            return Q.num.lc / Q.den.lc
        return Fraction(0)
    z = as_fraction(z)
    g = Q.den(z)
    if g == 0:
        return oo
    return Q.num(z) / g


def wronskian(Q: RatMap) -> Poly:
    """W = F'G - FG'."""
    return Q.num.derivative() * Q.den - Q.num * Q.den.derivative()


def derivative(Q: RatMap) -> RatMap:
    return normalize(wronskian(Q), Q.den * Q.den, allow_constant=True)


def derivative_at(Q: RatMap, z0) -> Fraction:
    z0 = as_fraction(z0)
    g = Q.den(z0)
    if g == 0:
        raise PreconditionError(f"z0={z0} is a pole")
    return wronskian(Q)(z0) / (g * g)


def is_pole(Q: RatMap, z0) -> bool:
    return Q.den(as_fraction(z0)) == 0


def shift(Q: RatMap, z0) -> RatMap:
    """z -> Q(z + z0)."""
    return RatMap(Q.num.shift(z0), Q.den.shift(z0))


def anchor(Q: RatMap, z0) -> RatMap:
    """z -> Q(z + z0) - Q(z0); fixes 0 with the same derivative as Q at z0."""
    z0 = as_fraction(z0)
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")
    w = eval_map(Q, z0)
    F, G = Q.num.shift(z0), Q.den.shift(z0)
    return RatMap(F - G * w, G)


def mobius_inversion_conjugate(Q: RatMap, eta, eta_prime) -> RatMap:
    """w -> eta' / Q(eta / w), i.e. phi' o Q o phi^{-1} with phi(z) = eta/z, phi'(z) = eta'/z."""
    eta, eta_prime = as_fraction(eta), as_fraction(eta_prime)
    if eta == 0 or eta_prime == 0:
        raise PreconditionError("eta and eta' must be nonzero")
    k = Q.degree
    Fr = Q.num.scale_var(eta).reversed(k)
    Gr = Q.den.scale_var(eta).reversed(k)
    return normalize(Gr * eta_prime, Fr)


def compose(Q1: RatMap, Q2: RatMap) -> RatMap:
    """Q1 o Q2 by homogeneous substitution; coprime inputs give a coprime output."""
    k = Q1.degree
    F2, G2 = Q2.num, Q2.den
    fp = [Poly([1])]
    gp = [Poly([1])]
    for _ in range(k):
        fp.append(fp[-1] * F2)
        gp.append(gp[-1] * G2)
    num, den = Poly(), Poly()
    for i in range(k + 1):
        term = fp[i] * gp[k - i]
        if Q1.num[i]:
            num = num + term * Q1.num[i]
        if Q1.den[i]:
            den = den + term * Q1.den[i]
    lc = den.lc
    out = RatMap(num * (1 / lc), den * (1 / lc))
    if out.degree != Q1.degree * Q2.degree:
        raise ArithmeticError("degree not multiplicative; inputs not coprime?")
    return out


def iterate(R: RatMap, n: int, cap: int = DEFAULT_ITERATE_CAP) -> RatMap:
    if n < 1:
        raise PreconditionError("iterate count must be positive")
    if R.degree**n > cap:
        raise CapExceeded(f"deg^n = {R.degree}^{n} exceeds cap {cap}")
    out = R
    for _ in range(n - 1):
        out = compose(R, out)
    return out


def resultant_in_Y(W: Poly, c, F: Poly, G: Poly) -> Poly:
    """S(Y) = lc(W)^k * prod_{W(a)=0} ((Y + c) G(a) - F(a)), k = max(deg F, deg G).

    Its roots are F(a)/G(a) - c over the roots a of W (W coprime to G).
    Computed by evaluating at Y = 0..deg W and interpolating.
    """
    if W.is_zero():
        raise PreconditionError("W is zero")
    c = as_fraction(c)
    k = max(F.degree, G.degree)
    m = W.degree
    if m <= 0:
        return Poly([W.lc**k])
    xs, ys = [], []
    for y in range(m + 1):
        y = Fraction(y)
        H = G * (y + c) - F
        if H.is_zero():
            raise PreconditionError("F = (Y + c) G identically; map is constant")
        ys.append(W.lc ** (k - H.degree) * resultant(W, H))
        xs.append(y)
    return interpolate(xs, ys)


# -- reduction modulo p -----------------------------------------------

def _trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _gcd_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([x % p for x in a]), _trim([x % p for x in b])
    while b:
        r = list(a)
        inv = pow(b[-1], -1, p)
        while len(r) >= len(b):
            q = r[-1] * inv % p
            off = len(r) - len(b)
            for j, bj in enumerate(b):
                r[off + j] = (r[off + j] - q * bj) % p
            _trim(r)
            if not r:
                break
        a, b = b, r
    return a


@dataclass(frozen=True)
class Reduction:
    num: tuple[int, ...]
    den: tuple[int, ...]
    nontrivial: bool        # the reduced map is nonconstant after cancelling common factors
    good_reduction: bool    # reduced pair coprime over F_p and degree preserved


def reduce_mod_p(Q: RatMap, ctx: PadicContext) -> Reduction:
    """Scale num and den jointly to be p-integral with a unit coefficient, then reduce."""
    p = ctx.p
    m = min(val(ctx, c) for c in Q.num.coeffs + Q.den.coeffs if c != 0)
    scale = Fraction(p) ** (-int(m))

    def red(P: Poly) -> list[int]:
        out = []
        for c in P.coeffs:
            c = c * scale
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return _trim(out)

    fn, gn = red(Q.num), red(Q.den)
    if not fn or not gn:
        return Reduction(tuple(fn), tuple(gn), False, False)
    g = _gcd_mod_p(fn, gn, p)
    dg = len(g) - 1
    nontrivial = max(len(fn) - 1 - dg, len(gn) - 1 - dg) >= 1
    good = dg == 0 and max(len(fn), len(gn)) - 1 == Q.degree
    return Reduction(tuple(fn), tuple(gn), nontrivial, good)
