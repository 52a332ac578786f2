"""Critical-value distance spectra and exact checks of the critical-value bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .newton import (
    ValSpectrum,
    count_zeros_in_disk,
    critical_numerator,
    pole_distance,
    r_bullet_distance,
    root_valuations,
)
from .poly import Poly, poly_gcd
from .ratmap import RatMap, derivative_at, eval_map, is_pole, resultant_in_Y, wronskian
from .valuation import (
    INFINITY,
    PadicContext,
    PreconditionError,
    ValQ,
    as_fraction,
    gamma_valuation,
    lambda_exponent,
    val,
)


def critical_value_spectrum(Q: RatMap, ctx: PadicContext, center=0) -> ValSpectrum:
    """Valuations of Q(c) - center over the finite critical points c that are not poles."""
    Wc = critical_numerator(Q)
    if Wc.degree <= 0:
        return ValSpectrum()
    S = resultant_in_Y(Wc, center, Q.num, Q.den)
    return root_valuations(S, ctx)


def critical_distance_spectrum(Q: RatMap, z0, ctx: PadicContext) -> ValSpectrum:
    z0 = as_fraction(z0)
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")
    if Q.degree < 2:
        raise PreconditionError("degree must be at least 2")
    return critical_value_spectrum(Q, ctx, eval_map(Q, z0))


@dataclass(frozen=True)
class CriticalCounts:
    finite: int      # finite critical points that are not poles
    at_poles: int
    at_infinity: int


def critical_point_counts(Q: RatMap) -> CriticalCounts:
    """Split the 2d - 2 critical points (with multiplicity) by location."""
    W = wronskian(Q)
    finite = critical_numerator(Q).degree
    return CriticalCounts(finite, W.degree - finite, 2 * Q.degree - 2 - W.degree)


@dataclass(frozen=True)
class BoundCertificate:
    theorem: str
    lhsVal: Optional[ValQ]
    rhsVal: ValQ
    holds: bool
    equality: bool
    witnessSpectrum: ValSpectrum

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "lhsVal": None if self.lhsVal is None else str(self.lhsVal),
            "rhsVal": str(self.rhsVal),
            "holds": self.holds,
            "equality": self.equality,
            "spectrum": [[str(v), m] for v, m in self.witnessSpectrum],
        }


def _certificate(theorem, spectrum: ValSpectrum, rhs: ValQ, finite_only: bool) -> BoundCertificate:
    pool = spectrum.finite() if finite_only else spectrum
    if not len(pool):
        return BoundCertificate(theorem, None, rhs, False, False, spectrum)
    lhs = pool.max_val()
    holds = lhs >= rhs
    return BoundCertificate(theorem, lhs, rhs, holds, holds and lhs == rhs, spectrum)


def _common_preconditions(Q: RatMap, z0, polynomial_ok: bool):
    if Q.degree < 2:
        raise PreconditionError("degree must be at least 2")
    if not Q.fixes_infinity():
        raise PreconditionError("Q(oo) = oo fails")
    if not polynomial_ok and Q.is_polynomial():
        raise PreconditionError("Q must not be a polynomial for this bound")
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")


def verify_theorem_C(Q: RatMap, z0, ctx: PadicContext) -> BoundCertificate:
    """Some critical value v has |v - Q(z0)| <= lambda(d)^-1 |Q'(z0)| r."""
    z0 = as_fraction(z0)
    _common_preconditions(Q, z0, polynomial_ok=False)
    rhs = val(ctx, derivative_at(Q, z0)) - lambda_exponent(ctx, Q.degree) - pole_distance(Q, z0, ctx)
    return _certificate("C", critical_distance_spectrum(Q, z0, ctx), rhs, finite_only=False)


def verify_theorem_D(Q: RatMap, z0, ctx: PadicContext) -> BoundCertificate:
    """Some critical value v has 0 < |v - Q(z0)| <= lambda(d)^-(d-1) |Q'(z0)| r."""
    z0 = as_fraction(z0)
    _common_preconditions(Q, z0, polynomial_ok=False)
    dq = derivative_at(Q, z0)
    if dq == 0:
        raise PreconditionError("z0 is a critical point")
    d = Q.degree
    rhs = val(ctx, dq) - (d - 1) * lambda_exponent(ctx, d) - pole_distance(Q, z0, ctx)
    return _certificate("D", critical_distance_spectrum(Q, z0, ctx), rhs, finite_only=True)


def verify_corollary_E(Q: RatMap, z0, ctx: PadicContext) -> BoundCertificate:
    """Some critical value v has |v - Q(z0)| <= gamma(d) lambda(d)^-1 |Q'(z0)| r_bullet."""
    z0 = as_fraction(z0)
    _common_preconditions(Q, z0, polynomial_ok=True)
    d = Q.degree
    s_b = r_bullet_distance(Q, z0, ctx)
    rhs = val(ctx, derivative_at(Q, z0)) - lambda_exponent(ctx, d) + gamma_valuation(ctx, d) - s_b
    return _certificate("E", critical_distance_spectrum(Q, z0, ctx), rhs, finite_only=False)


def verify_corollary_F(Q: RatMap, z0, ctx: PadicContext) -> BoundCertificate:
    """Some critical value v has 0 < |v - Q(z0)| <= lambda(d)^-d |Q'(z0)| r_bullet.

    The wmax form with |wmax(Q)| replaced by its lower bound lambda(d).
    """
    z0 = as_fraction(z0)
    _common_preconditions(Q, z0, polynomial_ok=True)
    dq = derivative_at(Q, z0)
    if dq == 0:
        raise PreconditionError("z0 is a critical point")
    d = Q.degree
    s_b = r_bullet_distance(Q, z0, ctx)
    rhs = val(ctx, dq) - d * lambda_exponent(ctx, d) - s_b
    return _certificate("F", critical_distance_spectrum(Q, z0, ctx), rhs, finite_only=True)


VERIFIERS = {
    "C": verify_theorem_C,
    "D": verify_theorem_D,
    "E": verify_corollary_E,
    "F": verify_corollary_F,
}


def critical_points_in_disk(Q: RatMap, z0, ctx: PadicContext, s, closed: bool = True,
                            exclude_zeros: bool = False) -> int:
    """Finite non-pole critical points in the disk of log-radius s around z0.

    With ``exclude_zeros`` the critical points where Q takes the value Q(z0)
    are left out.
    """
    z0 = as_fraction(z0)
    F, G = Q.num.shift(z0), Q.den.shift(z0)
    Wc = critical_numerator(RatMap(F, G))
    if exclude_zeros:
        w = eval_map(Q, z0)
        N = F - G * w
        while True:
            g = poly_gcd(Wc, N)
            if g.degree <= 0:
                break
            Wc = Wc.exact_div(g)
    if Wc.degree <= 0:
        return 0
    return count_zeros_in_disk(Wc, ctx, s, closed)


@dataclass(frozen=True)
class EscapeReport:
    """Escape radius and the fate of each class of critical values.

    ``entries`` lists (valuation of P(c), multiplicity, escapes) for the
    critical points c that are not fixed.
    """

    s_esc: Fraction
    fixed_critical: int
    entries: tuple[tuple[ValQ, int, bool], ...]

    @property
    def all_escape(self) -> bool:
        return all(e for _, _, e in self.entries)

    def to_dict(self) -> dict:
        return {
            "s_esc": str(self.s_esc),
            "fixed_critical": self.fixed_critical,
            "entries": [[str(v), m, e] for v, m, e in self.entries],
            "all_escape": self.all_escape,
        }


def escape_certificate(P: Poly, ctx: PadicContext) -> EscapeReport:
    """Certify divergence to oo for critical orbits of a polynomial.

    Beyond log-radius s_esc every root of P is inside and
    |a_d| |z|^(d-1) > 1, so |P(z)| = |a_d||z|^d > |z| and the orbit grows
    without bound. Fixed critical points are counted separately.
    """
    if isinstance(P, RatMap):
        if not P.is_polynomial():
            raise PreconditionError("escape certificate needs a polynomial")
        P = P.num * (1 / P.den.lc)
    d = P.degree
    if d < 2:
        raise PreconditionError("degree must be at least 2")
    roots = [v for v, _ in root_valuations(P, ctx) if v is not INFINITY]
    s_esc = val(ctx, P.lc) / (d - 1)
    if roots:
        s_esc = max(s_esc, -min(roots))
    W = P.derivative()
    fixed_poly = P - Poly.z()
    fixed = 0
    while True:
        g = poly_gcd(W, fixed_poly)
        if g.degree <= 0:
            break
        fixed += g.degree
        W = W.exact_div(g)
    entries = []
    if W.degree > 0:
        S = resultant_in_Y(W, 0, P, Poly([1]))
        for v, m in root_valuations(S, ctx):
            entries.append((v, m, v is not INFINITY and -v > s_esc))
    return EscapeReport(s_esc, fixed, tuple(entries))
