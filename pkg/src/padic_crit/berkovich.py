"""Piecewise-linear profiles along the path from x(p**sLo) to infinity.

The variable s is log_p of the disk radius; every profile is in log_p
units, so all values, breakpoints and slopes stay rational.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .newton import build, count_zeros_in_disk, root_valuations, sup_valuation
from .poly import Poly
from .ratmap import RatMap, wronskian
from .valuation import PadicContext, PreconditionError, as_fraction


class InvariantViolation(AssertionError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function on [lo, hi].

    ``slopes[k]`` holds on the k-th piece; pieces are separated by
    ``breakpoints`` (strictly inside the domain).
    """

    lo: Fraction
    hi: Fraction
    breakpoints: tuple[Fraction, ...]
    slopes: tuple[Fraction, ...]
    value_lo: Fraction

    def __post_init__(self):
        if len(self.slopes) != len(self.breakpoints) + 1:
            raise ValueError("need one slope per piece")

    def _piece(self, s: Fraction) -> int:
        return bisect_right(self.breakpoints, s)

    def __call__(self, s) -> Fraction:
        s = as_fraction(s)
        if not self.lo <= s <= self.hi:
            raise ValueError(f"s={s} outside [{self.lo}, {self.hi}]")
        v, x = self.value_lo, self.lo
        for b, m in zip(self.breakpoints, self.slopes):
            if s <= b:
                return v + m * (s - x)
            v += m * (b - x)
            x = b
        return v + self.slopes[-1] * (s - x)

    def right_slope(self, s) -> Fraction:
        s = as_fraction(s)
        if not self.lo <= s < self.hi:
            raise ValueError(f"right derivative needs lo <= s < hi, got {s}")
        return self.slopes[self._piece(s)]

    def nodes(self) -> list[Fraction]:
        return [self.lo, *self.breakpoints, self.hi]

    def min_value(self) -> Fraction:
        return min(self(x) for x in self.nodes())

    def combine(self, other: "PLFunction", a=1, b=1) -> "PLFunction":
        """a*self + b*other on a common domain."""
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("domains differ")
        bps = sorted(set(self.breakpoints) | set(other.breakpoints))
        mids = _midpoints(self.lo, self.hi, bps)
        slopes = [a * self.slopes[self._piece(m)] + b * other.slopes[other._piece(m)] for m in mids]
        return _simplify(self.lo, self.hi, bps, slopes, a * self.value_lo + b * other.value_lo)

    def __add__(self, other):
        return self.combine(other)

    def __sub__(self, other):
        return self.combine(other, 1, -1)

    def scale(self, a) -> "PLFunction":
        a = as_fraction(a)
        return PLFunction(self.lo, self.hi, self.breakpoints, tuple(a * m for m in self.slopes), a * self.value_lo)

    def add_linear(self, slope, intercept=0) -> "PLFunction":
        """self(s) + slope*s + intercept."""
        slope, intercept = as_fraction(slope), as_fraction(intercept)
        return PLFunction(self.lo, self.hi, self.breakpoints, tuple(m + slope for m in self.slopes),
                          self.value_lo + slope * self.lo + intercept)

    def to_dict(self) -> dict:
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "breakpoints": [str(b) for b in self.breakpoints],
            "slopes": [str(m) for m in self.slopes],
            "values": [str(self(x)) for x in self.nodes()],
        }


def _midpoints(lo, hi, bps):
    edges = [lo, *bps, hi]
    return [(x + y) / 2 for x, y in zip(edges, edges[1:])]


def _simplify(lo, hi, bps, slopes, v0) -> PLFunction:
    keep_b, keep_m = [], [slopes[0]]
    for b, m in zip(bps, slopes[1:]):
        if m != keep_m[-1]:
            keep_b.append(b)
            keep_m.append(m)
    return PLFunction(lo, hi, tuple(keep_b), tuple(keep_m), v0)


def _check_interval(sLo, sHi, allow_point=False):
    sLo, sHi = as_fraction(sLo), as_fraction(sHi)
    if sLo > sHi or (sLo == sHi and not allow_point):
        raise PreconditionError("need sLo < sHi")
    return sLo, sHi


def log_norm_profile(P: Poly, ctx: PadicContext, sLo, sHi) -> PLFunction:
    """s -> log_p |P(x(p**s))| = max_i (i*s - val(a_i)), read off the Newton polygon.

    Breakpoints are the edge slopes of the polygon; on each piece the slope
    is the index of the active vertex.
    """
    sLo, sHi = _check_interval(sLo, sHi)
    if P.is_zero():
        raise PreconditionError("log-norm of the zero polynomial")
    np_ = build(P, ctx)
    verts = np_.vertices
    edge_slopes = [sl for sl, _ in np_.segments()]
    # vertex k is active for s between edge_slopes[k-1] and edge_slopes[k]
    k = sum(1 for e in edge_slopes if e <= sLo)
    bps, slopes = [], [Fraction(verts[k][0])]
    for e in edge_slopes[k:]:
        if e >= sHi:
            break
        k += 1
        bps.append(e)
        slopes.append(Fraction(verts[k][0]))
    return PLFunction(sLo, sHi, tuple(bps), tuple(slopes), -sup_valuation(P, ctx, sLo))


def hypothesis_check(Q: RatMap, ctx: PadicContext, sLo, sHi) -> bool:
    """Sufficient condition for the image of x(p**s), sLo <= s <= sHi, to lie on ]0, oo[.

    F(0) = 0 and no pole in the closed disk of log-radius sHi.
    """
    _check_interval(sLo, sHi, allow_point=True)
    if Q.num[0] != 0:
        return False
    if Q.den.degree > 0 and count_zeros_in_disk(Q.den, ctx, sHi, closed=True) > 0:
        return False
    return True


def _require(Q, ctx, sLo, sHi):
    if not hypothesis_check(Q, ctx, sLo, sHi):
        raise PreconditionError("segment not certified: need F(0) = 0 and no pole in the disk")


def G_profile(Q: RatMap, ctx: PadicContext, d, sLo, sHi) -> PLFunction:
    """Distorted log-size along the segment:

    g(s) = (d+1) log|Q| - d (log|Q'| + s), with |Q'| = |W|/|G|^2 at x(p**s).
    """
    d = as_fraction(d)
    sLo, sHi = _check_interval(sLo, sHi)
    _require(Q, ctx, sLo, sHi)
    LF = log_norm_profile(Q.num, ctx, sLo, sHi)
    LG = log_norm_profile(Q.den, ctx, sLo, sHi)
    LW = log_norm_profile(wronskian(Q), ctx, sLo, sHi)
    logQ = LF - LG
    logdQ = LW.combine(LG, 1, -2)
    return logQ.combine(logdQ, d + 1, -d).add_linear(-d)


def counting_partial_G(Q: RatMap, ctx: PadicContext, d, s) -> Fraction:
    """(d+1)(Z - P)(Q, B) - d((Z - P)(Q', B) + 1) over the closed disk B of log-radius s."""
    d, s = as_fraction(d), as_fraction(s)
    F, G, W = Q.num, Q.den, wronskian(Q)
    ZF = count_zeros_in_disk(F, ctx, s)
    PG = count_zeros_in_disk(G, ctx, s) if G.degree > 0 else 0
    ZW = count_zeros_in_disk(W, ctx, s)
    return (d + 1) * (ZF - PG) - d * (ZW - 2 * PG + 1)


def partial_G(Q: RatMap, ctx: PadicContext, d, s) -> tuple[Fraction, Fraction]:
    """Right derivative of G_d at x(p**s), by hull slopes and by zero/pole counting."""
    s = as_fraction(s)
    _require(Q, ctx, s, s)
    step = Fraction(1)
    if Q.den.degree > 0:
        gap = -root_valuations(Q.den, ctx).max_val() - s
        step = min(step, gap / 2)
    slope = G_profile(Q, ctx, d, s, s + step).right_slope(s)
    count = counting_partial_G(Q, ctx, d, s)
    if slope != count:
        raise InvariantViolation(f"dG mismatch at s={s}: hull {slope} vs counting {count}")
    return slope, count


def chart_limit(Q: RatMap, ctx: PadicContext) -> Fraction:
    """Largest s with |Q(x(p**s))| <= 1, assuming F(0) = 0 and no poles up to there.

    Under that assumption log|Q| is strictly increasing, so this is where it crosses 0.
    """
    lo, hi = Fraction(-1), Fraction(1)
    while True:
        g = (log_norm_profile(Q.num, ctx, lo, hi) - log_norm_profile(Q.den, ctx, lo, hi))
        if g(lo) > 0:
            lo -= (hi - lo)
            continue
        if g(hi) < 0:
            hi += (hi - lo)
            continue
        break
    x, v = lo, g.value_lo
    edges = [*g.breakpoints, hi]
    for b, m in zip(edges, g.slopes):
        nv = v + m * (b - x)
        if nv >= 0:
            return x - v / m
        x, v = b, nv
    return hi


def wf_profile(Q: RatMap, ctx: PadicContext, sLo, sHi) -> PLFunction:
    """w(s) = log|Q| - log|Q'| - s on a segment where both x(p**s) and its image lie in the unit disk."""
    sLo, sHi = _check_interval(sLo, sHi)
    _require(Q, ctx, sLo, sHi)
    if sHi > 0:
        raise PreconditionError("segment leaves the closed unit disk")
    LF = log_norm_profile(Q.num, ctx, sLo, sHi)
    LG = log_norm_profile(Q.den, ctx, sLo, sHi)
    LW = log_norm_profile(wronskian(Q), ctx, sLo, sHi)
    logQ = LF - LG
    if max(logQ(x) for x in logQ.nodes()) > 0:
        raise PreconditionError("image leaves the closed unit disk")
    return logQ - LW.combine(LG, 1, -2) + PLFunction(sLo, sHi, (), (Fraction(-1),), -sLo)
