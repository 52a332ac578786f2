"""Periodic points, exact-period factors and cycle multiplier valuations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .newton import ValSpectrum, root_valuations
from .poly import Poly, poly_gcd
from .ratmap import DEFAULT_ITERATE_CAP, DegenerateIterate, RatMap, derivative, iterate, resultant_in_Y
from .valuation import INFINITY, HypothesisFlags, PadicContext, PreconditionError, ValQ, hypothesis_thresholds, vp_int


class CycleGroupingError(ArithmeticError):
    """Multiplier multiplicities are not divisible by the period."""

    def __init__(self, msg, raw: ValSpectrum):
        super().__init__(msg)
        self.raw = raw


def divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


def mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def periodic_polynomial(R: RatMap, n: int, ctx: PadicContext = None, cap: int = DEFAULT_ITERATE_CAP) -> Poly:
    """Numerator of R^n(z) - z."""
    Rn = iterate(R, n, cap)
    P = Rn.num - Rn.den * Poly.z()
    if P.is_zero():
        raise DegenerateIterate(f"R^{n} is the identity")
    return P


def exact_period_factor(R: RatMap, n: int, ctx: PadicContext = None, cap: int = DEFAULT_ITERATE_CAP) -> Poly:
    """periodic_polynomial(R, n) with the roots of every proper-divisor period removed."""
    P = periodic_polynomial(R, n, ctx, cap)
    for m in divisors(n)[:-1]:
        Pm = periodic_polynomial(R, m, ctx, cap)
        while True:
            g = poly_gcd(P, Pm)
            if g.degree <= 0:
                break
            P = P.exact_div(g)
    return P


def raw_multiplier_spectrum(R: RatMap, n: int, ctx: PadicContext, cap: int = DEFAULT_ITERATE_CAP) -> ValSpectrum:
    """Valuations of (R^n)'(zeta) over the roots zeta of the exact-period factor, one per point."""
    Phi = exact_period_factor(R, n, ctx, cap)
    if Phi.degree < 1:
        raise PreconditionError(f"no points of exact period {n}")
    D = derivative(iterate(R, n, cap))
    A, B = D.num, D.den
    if poly_gcd(Phi, B).degree > 0:
        raise PreconditionError("a periodic point is a pole of the derivative; conjugate first")
    # only the roots of S matter, so A and B may be reduced modulo Phi
    S = resultant_in_Y(Phi, 0, A % Phi, B % Phi)
    return root_valuations(S, ctx)


def multiplier_spectrum(R: RatMap, n: int, ctx: PadicContext, cap: int = DEFAULT_ITERATE_CAP) -> ValSpectrum:
    """Multiplier valuations with multiplicity counted per cycle."""
    raw = raw_multiplier_spectrum(R, n, ctx, cap)
    if any(m % n for _, m in raw):
        raise CycleGroupingError(f"multiplicities {raw} not divisible by period {n}", raw)
    return ValSpectrum(tuple((v, m // n) for v, m in raw))


def classify(v: ValQ) -> str:
    if v is INFINITY:
        return "superattracting"
    if v > 0:
        return "attracting"
    if v == 0:
        return "indifferent"
    return "repelling"


@dataclass(frozen=True)
class CycleEntry:
    vLambda: ValQ
    cycles: int
    attracting: bool
    kind: str
    chiVal: ValQ            # v(lambda)/n; chi = -chiVal * log p
    flags: HypothesisFlags


@dataclass(frozen=True)
class CycleReport:
    period: int
    exactPeriodFactor: Poly
    pointCount: int
    multiplierSpectrum: ValSpectrum
    entries: tuple[CycleEntry, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "exactPeriodFactor": [str(c) for c in self.exactPeriodFactor.coeffs],
            "pointCount": self.pointCount,
            "multiplierSpectrum": [[str(v), m] for v, m in self.multiplierSpectrum],
            "entries": [
                {
                    "vLambda": str(e.vLambda),
                    "cycles": e.cycles,
                    "attracting": e.attracting,
                    "kind": e.kind,
                    "chiVal": str(e.chiVal),
                    "thmA": e.flags.thmA,
                    "thmB": e.flags.thmB,
                    "corF_poly": e.flags.corF_poly,
                    "cor43": e.flags.cor43,
                    "eq156": e.flags.eq156,
                    "eq156_threshold": str(e.flags.eq156_threshold),
                }
                for e in self.entries
            ],
        }


def attracting_report(R: RatMap, n: int, ctx: PadicContext, cap: int = DEFAULT_ITERATE_CAP) -> CycleReport:
    Phi = exact_period_factor(R, n, ctx, cap)
    spec = multiplier_spectrum(R, n, ctx, cap)
    entries = []
    for v, m in spec:
        chi = v if v is INFINITY else Fraction(v) / n
        entries.append(CycleEntry(v, m, v > 0, classify(v), chi,
                                  hypothesis_thresholds(ctx, R.degree, n, v)))
    return CycleReport(n, Phi, Phi.degree, spec, tuple(entries))


@dataclass(frozen=True)
class PowerMapCycles:
    points: int
    cycles: int
    vLambda: int


def power_map_cycles(ctx: PadicContext, d: int, n: int) -> PowerMapCycles:
    """Closed form for z^d: cycles of exact period n in K^* and their multiplier valuation."""
    if d < 2 or n < 1:
        raise PreconditionError("need d >= 2 and n >= 1")
    points = sum(mobius(n // m) * (d**m - 1) for m in divisors(n))
    return PowerMapCycles(points, points // n, n * vp_int(ctx.p, d))
