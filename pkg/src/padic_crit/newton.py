"""Newton polygons over Q_p and what they say about roots in disks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .poly import Poly, strip_common
from .ratmap import RatMap, anchor, is_pole, wronskian
from .valuation import INFINITY, PadicContext, PreconditionError, ValQ, as_fraction, val


@dataclass(frozen=True)
class NewtonPolygon:
    ordZero: int
    vertices: tuple[tuple[int, Fraction], ...]

    @property
    def degree(self) -> int:
        return self.vertices[-1][0]

    def segments(self) -> list[tuple[Fraction, int]]:
        """(slope, horizontal length) for each edge, left to right."""
        out = []
        for (i1, v1), (i2, v2) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(v2 - v1, i2 - i1), i2 - i1))
        return out


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def build(P: Poly, ctx: PadicContext) -> NewtonPolygon:
    if P.is_zero():
        raise PreconditionError("Newton polygon of the zero polynomial")
    pts = [(i, val(ctx, c)) for i, c in enumerate(P.coeffs) if c != 0]
    return NewtonPolygon(pts[0][0], tuple(_lower_hull(pts)))


@dataclass(frozen=True)
class ValSpectrum:
    """Multiset of valuations, stored as (valuation, multiplicity) in increasing order."""

    entries: tuple[tuple[ValQ, int], ...] = ()

    @classmethod
    def from_counter(cls, counts) -> "ValSpectrum":
        items = [(v, m) for v, m in counts.items() if m > 0]
        items.sort(key=lambda e: (e[0] is INFINITY, e[0] if e[0] is not INFINITY else 0))
        return cls(tuple(items))

    @classmethod
    def from_values(cls, values) -> "ValSpectrum":
        return cls.from_counter(Counter(values))

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict:
        return dict(self.entries)

    def max_val(self) -> ValQ:
        return self.entries[-1][0]

    def finite(self) -> "ValSpectrum":
        return ValSpectrum(tuple(e for e in self.entries if e[0] is not INFINITY))

    def count_at_least(self, threshold, strict: bool = False) -> int:
        if strict:
            return sum(m for v, m in self.entries if v > threshold)
        return sum(m for v, m in self.entries if v >= threshold)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "{" + ", ".join(f"{v} x{m}" for v, m in self.entries) + "}"


def root_valuations(P: Poly, ctx: PadicContext) -> ValSpectrum:
    """Valuations of the roots of P in C_p; the root 0 is reported at INFINITY."""
    np_ = build(P, ctx)
    counts: Counter = Counter()
    if np_.ordZero:
        counts[INFINITY] += np_.ordZero
    for slope, length in np_.segments():
        counts[-slope] += length
    return ValSpectrum.from_counter(counts)


def count_zeros_in_disk(P: Poly, ctx: PadicContext, s, closed: bool = True) -> int:
    """Roots of P in the disk |z| <= p**s (closed) or |z| < p**s (open)."""
    s = as_fraction(s)
    return root_valuations(P, ctx).count_at_least(-s, strict=not closed)


def _max_finite(values) -> Optional[Fraction]:
    fin = [v for v in values if v is not INFINITY]
    return max(fin) if fin else None


def pole_distance(Q: RatMap, z0, ctx: PadicContext) -> Fraction:
    """log_p of the distance from z0 to the nearest pole."""
    z0 = as_fraction(z0)
    if Q.is_polynomial():
        raise PreconditionError("no poles: map is a polynomial")
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")
    spec = root_valuations(Q.den.shift(z0), ctx)
    return -spec.max_val()


def r_bullet_distance(Q: RatMap, z0, ctx: PadicContext) -> Fraction:
    """log_p of the distance from z0 to the nearest pole or other preimage of Q(z0)."""
    A = anchor(Q, z0)
    vals = []
    if A.den.degree > 0:
        vals += [v for v, _ in root_valuations(A.den, ctx)]
    N = A.num.strip_zero_root()
    if N.degree > 0:
        vals += [v for v, _ in root_valuations(N, ctx)]
    m = _max_finite(vals)
    if m is None:
        raise PreconditionError("Q(z) = Q(z0) has no solution besides z0 and Q has no poles")
    return -m


def sup_valuation(P: Poly, ctx: PadicContext, s) -> ValQ:
    """Valuation of the sup-norm of P on |z| <= p**s: min_i val(a_i) - i*s."""
    s = as_fraction(s)
    if P.is_zero():
        return INFINITY
    return min(val(ctx, c) - i * s for i, c in enumerate(P.coeffs) if c != 0)


# -- power series -------------------------------------------------------

def _series(F: Poly, G: Poly) -> Iterator[Fraction]:
    """Taylor coefficients of F/G at 0 (G(0) != 0)."""
    g0 = G[0]
    gs = G.coeffs
    prev: list[Fraction] = []
    n = 0
    while True:
        acc = F[n]
        for k in range(1, min(n, len(gs) - 1) + 1):
            acc -= gs[k] * prev[n - k]
        a = acc / g0
        prev.append(a)
        yield a
        n += 1


@dataclass(frozen=True)
class SeriesExpansion:
    """Coefficients a_0..a_N of Q(z + z0) with a certificate for the tail.

    When ``exact`` is false every later coefficient satisfies
    ``val(a_n) >= M_v + n * s_star``.
    """

    coeffs: tuple[Fraction, ...]
    exact: bool
    s_star: Optional[Fraction] = None
    M_v: Optional[Fraction] = None

    def tail_bound(self, n: int) -> Optional[Fraction]:
        if self.exact:
            return None
        return self.M_v + n * self.s_star


def _tail_constant(F: Poly, G: Poly, ctx: PadicContext, s_star: Fraction) -> Fraction:
    # sup of F/G on the closed disk of log-radius s_star; G has no roots there
    return sup_valuation(F, ctx, s_star) - sup_valuation(G, ctx, s_star)


def series_expand(Q: RatMap, z0, ctx: PadicContext, N: int, s_star=None) -> SeriesExpansion:
    z0 = as_fraction(z0)
    if N < 1:
        raise PreconditionError("N must be at least 1")
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")
    F, G = Q.num.shift(z0), Q.den.shift(z0)
    gen = _series(F, G)
    coeffs = tuple(next(gen) for _ in range(N + 1))
    if Q.is_polynomial():
        return SeriesExpansion(coeffs, True)
    s_r = pole_distance(Q, z0, ctx)
    s_star = s_r - Fraction(1, 2) if s_star is None else as_fraction(s_star)
    if s_star >= s_r:
        raise PreconditionError("tail radius must be below the pole distance")
    return SeriesExpansion(coeffs, False, s_star, _tail_constant(F, G, ctx, s_star))


def disk_degree(Q: RatMap, z0, ctx: PadicContext, s, closed: bool = True) -> int:
    """Weierstrass degree of Q on the disk of log-radius s around z0.

    Read off the anchored series: the largest index attaining
    min_n val(a_n) - n*s (closed disk), or the smallest such index, which is
    the largest one just below s (open disk).
    """
    z0, s = as_fraction(z0), as_fraction(s)
    if is_pole(Q, z0):
        raise PreconditionError(f"z0={z0} is a pole")
    F, G = Q.num.shift(z0), Q.den.shift(z0)
    if Q.is_polynomial():
        terms = [(val(ctx, c) - n * s, n) for n, c in enumerate(F.coeffs) if n >= 1 and c != 0]
        m = min(t for t, _ in terms)
        hits = [n for t, n in terms if t == m]
        return max(hits) if closed else min(hits)
    s_r = pole_distance(Q, z0, ctx)
    if s > s_r or (closed and s == s_r):
        raise PreconditionError("pole in disk")
    if s == s_r:
        # open disk touching a pole: count zeros of the anchored numerator
        return count_zeros_in_disk(anchor(Q, z0).num, ctx, s, closed=False)
    s_star = (s + s_r) / 2
    M_v = _tail_constant(F, G, ctx, s_star)
    gen = _series(F, G)
    next(gen)
    best: Optional[Fraction] = None
    hits: list[int] = []
    n = 0
    for a in gen:
        n += 1
        if a != 0:
            t = val(ctx, a) - n * s
            if best is None or t < best:
                best, hits = t, [n]
            elif t == best:
                hits.append(n)
        # every later term is at least M_v + m (s_star - s) for m > n
        if best is not None and M_v + (n + 1) * (s_star - s) > best:
            break
    return max(hits) if closed else min(hits)


def critical_numerator(Q: RatMap) -> Poly:
    """Wronskian with every root shared with the denominator removed."""
    return strip_common(wronskian(Q), Q.den)


UNIVALENT = "certified_univalent"
NOT_UNIVALENT = "certified_not"
UNKNOWN = "unknown"


def univalence_certificate(Q: RatMap, z0, ctx: PadicContext, s) -> str:
    """Three-valued injectivity verdict for Q on the closed disk |z - z0| <= p**s."""
    z0, s = as_fraction(z0), as_fraction(s)
    A = anchor(Q, z0)
    Wc = critical_numerator(RatMap(Q.num.shift(z0), Q.den.shift(z0)))
    crit = root_valuations(Wc, ctx) if Wc.degree > 0 else ValSpectrum()
    poles = root_valuations(A.den, ctx) if A.den.degree > 0 else ValSpectrum()
    if count_zeros_in_disk(A.num, ctx, s) >= 2 or crit.count_at_least(-s) >= 1:
        return NOT_UNIVALENT
    if poles.count_at_least(-s) >= 1:
        return UNKNOWN
    events = [v for v, _ in crit] + [v for v, _ in poles]
    if not events:
        return UNIVALENT
    t = -max(events)
    d = count_zeros_in_disk(A.num, ctx, t, closed=False)
    if d % ctx.p:
        return UNIVALENT
    if s < t - Fraction(1, ctx.p - 1):
        return UNIVALENT
    return UNKNOWN
