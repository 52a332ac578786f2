"""Seeded random instances for the bound verifiers and the profile identities.

Randomness comes from a 64-bit linear congruential generator with the
MMIX constants (a = 6364136223846793005, c = 1442695040888963407, m = 2**64),
so any implementation reproduces the same trials from the same seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .berkovich import (
    InvariantViolation,
    hypothesis_check,
    log_norm_profile,
    partial_G,
    wf_profile,
)
from .critical import VERIFIERS, BoundCertificate
from .newton import root_valuations
from .poly import Poly
from .ratmap import RatMap, normalize, is_pole, derivative_at, wronskian
from .valuation import INFINITY, PadicContext, PreconditionError

LCG_A = 6364136223846793005
LCG_C = 1442695040888963407
MASK64 = (1 << 64) - 1

COEFF_BOUND = 20
DEFAULT_PRIMES = (2, 3, 5)


class Lcg64:
    """x <- a*x + c mod 2**64; draws use the high 32 bits."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next32(self) -> int:
        self.state = (LCG_A * self.state + LCG_C) & MASK64
        return self.state >> 32

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] by multiply-shift."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + ((self.next32() * (hi - lo + 1)) >> 32)

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]

    def rational(self, bound: int = COEFF_BOUND, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(self.randint(-bound, bound), self.randint(1, bound))
            if x or not nonzero:
                return x


def _poly(rng: Lcg64, deg: int, zero_const: bool = False) -> Poly:
    cs = [rng.rational() for _ in range(deg)] + [rng.rational(nonzero=True)]
    if zero_const:
        cs[0] = Fraction(0)
    return Poly(cs)


@dataclass(frozen=True)
class MapInstance:
    ctx: PadicContext
    map: RatMap
    z0: Fraction

    def to_spec(self) -> dict:
        return {
            "p": self.ctx.p,
            "num": [str(c) for c in self.map.num.coeffs],
            "den": [str(c) for c in self.map.den.coeffs],
            "z0": str(self.z0),
        }


def random_map(rng: Lcg64, p_set=DEFAULT_PRIMES, max_deg: int = 4, polynomial_ok: bool = True) -> RatMap:
    """A map of degree 2..max_deg with Q(oo) = oo; rational unless a polynomial is drawn."""
    while True:
        d = rng.randint(2, max_deg)
        e = rng.randint(0 if polynomial_ok else 1, d - 1)
        try:
            Q = normalize(_poly(rng, d), _poly(rng, e))
        except PreconditionError:
            continue
        if Q.degree == d and Q.fixes_infinity() and (polynomial_ok or not Q.is_polynomial()):
            return Q


def theorem_instance(rng: Lcg64, theorem: str, p_set=DEFAULT_PRIMES, max_deg: int = 4) -> MapInstance:
    """Draw until the verifier's preconditions hold."""
    polynomial_ok = theorem in ("E", "F")
    while True:
        ctx = PadicContext(rng.choice(p_set))
        Q = random_map(rng, p_set, max_deg, polynomial_ok)
        z0 = rng.rational()
        if is_pole(Q, z0):
            continue
        if theorem in ("D", "F") and derivative_at(Q, z0) == 0:
            continue
        try:
            VERIFIERS[theorem](Q, z0, ctx)
        except PreconditionError:
            continue
        return MapInstance(ctx, Q, z0)


@dataclass
class TheoremFuzzResult:
    theorem: str
    trials: int
    held: int = 0
    equalities: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.held == self.trials

    def summary(self) -> str:
        return f"{self.held}/{self.trials} hold"


def fuzz_theorem(theorem: str, trials: int, seed: int, p_set=DEFAULT_PRIMES, max_deg: int = 4) -> TheoremFuzzResult:
    if theorem not in VERIFIERS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = Lcg64(seed)
    res = TheoremFuzzResult(theorem, trials)
    for _ in range(trials):
        inst = theorem_instance(rng, theorem, p_set, max_deg)
        cert: BoundCertificate = VERIFIERS[theorem](inst.map, inst.z0, inst.ctx)
        if cert.holds:
            res.held += 1
            res.equalities += cert.equality
        else:
            res.failures.append((inst, cert))
    return res


# -- profile identities ------------------------------------------------------

@dataclass(frozen=True)
class SegmentInstance:
    ctx: PadicContext
    map: RatMap
    sLo: Fraction
    sHi: Fraction

    def to_spec(self) -> dict:
        return {
            "p": self.ctx.p,
            "num": [str(c) for c in self.map.num.coeffs],
            "den": [str(c) for c in self.map.den.coeffs],
            "sLo": str(self.sLo),
            "sHi": str(self.sHi),
        }


def _scaled_poly(rng: Lcg64, p: int, deg: int, zero_const: bool = False) -> Poly:
    """Random coefficients times random powers of p, so the Newton polygon has several edges."""
    cs = [c * Fraction(p) ** rng.randint(-5, 5) for c in _poly(rng, deg, zero_const).coeffs]
    return Poly(cs)


def _far_poles(rng: Lcg64, p: int, e: int) -> Poly:
    """prod (1 - u_i p**k_i z) with k_i in 4..6: poles of radius p**4 or more."""
    G = Poly([1])
    for _ in range(e):
        G = G * Poly([1, -rng.rational(nonzero=True) * Fraction(p) ** rng.randint(4, 6)])
    return G


def segment_instance(rng: Lcg64, p_set=DEFAULT_PRIMES, max_deg: int = 5) -> SegmentInstance:
    """A map with F(0) = 0 and a segment of log-radii ending below the nearest pole.

    The segment is stretched to cover the radii of the zeros of F and W
    that lie below its top.
    """
    while True:
        ctx = PadicContext(rng.choice(p_set))
        d = rng.randint(2, max_deg)
        e = rng.randint(0, d)
        if rng.randint(0, 1):
            F = _scaled_poly(rng, ctx.p, d if rng.randint(0, 3) else rng.randint(1, d), zero_const=True)
        else:
            # z * prod (z - u_i p**k_i): zeros at prescribed radii
            F = Poly.z()
            for _ in range(rng.randint(1, d - 1)):
                F = F * Poly([-rng.rational(nonzero=True) * Fraction(ctx.p) ** rng.randint(-3, 3), 1])
        try:
            Q = normalize(F, _far_poles(rng, ctx.p, e))
        except PreconditionError:
            continue
        if Q.degree < 2 or Q.num[0] != 0:
            continue
        radii = [-v for P in (Q.num, wronskian(Q)) if P.degree > 0
                 for v, _ in root_valuations(P, ctx) if v is not INFINITY]
        if Q.den.degree > 0:
            top = -root_valuations(Q.den, ctx).max_val() - Fraction(rng.randint(1, 4), 2)
        else:
            top = max(radii + [Fraction(0)]) + Fraction(rng.randint(1, 4), 2)
        sLo = min([r for r in radii if r < top] + [top - 2]) - rng.randint(1, 2)
        if hypothesis_check(Q, ctx, sLo, top):
            return SegmentInstance(ctx, Q, sLo, top)


def _component_breakpoints(inst: SegmentInstance) -> list[Fraction]:
    """Every s in [sLo, sHi) where log|F|, log|G| or log|W| bends."""
    out = set()
    for P in (inst.map.num, inst.map.den, wronskian(inst.map)):
        if P.degree > 0:
            out.update(log_norm_profile(P, inst.ctx, inst.sLo, inst.sHi).breakpoints)
    return sorted(out)


def d_params(Q: RatMap) -> tuple[int, int, int]:
    d = Q.degree
    return (1, d - 1, -d)


def chart_end(Q: RatMap, ctx: PadicContext, sLo, sHi) -> Optional[Fraction]:
    """Largest s in [sLo, min(sHi, 0)] with log|Q| <= 0 up to s, or None."""
    top = min(sHi, Fraction(0))
    if top <= sLo:
        return None
    g = log_norm_profile(Q.num, ctx, sLo, top) - log_norm_profile(Q.den, ctx, sLo, top)
    if g.value_lo > 0:
        return None
    x, v = g.lo, g.value_lo
    for b, m in zip([*g.breakpoints, top], g.slopes):
        nv = v + m * (b - x)
        if nv > 0:
            return x - v / m
        x, v = b, nv
    return top


@dataclass
class IdentityResult:
    instances: int = 0
    checks: int = 0
    breakpoints: int = 0
    wf_segments: int = 0
    mismatches: list = field(default_factory=list)
    wf_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.wf_violations

    def summary(self) -> str:
        if self.ok:
            return "all ∂G_d identities hold"
        return f"{len(self.mismatches)} ∂G_d mismatches, {len(self.wf_violations)} wf violations"


def fuzz_identities(trials: int, seed: int, p_set=DEFAULT_PRIMES, max_deg: int = 5,
                    random_points: int = 2) -> IdentityResult:
    """Compare hull slopes of G_d with zero/pole counts, and check wf >= 0."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = Lcg64(seed)
    res = IdentityResult()
    for _ in range(trials):
        inst = segment_instance(rng, p_set, max_deg)
        res.instances += 1
        bps = _component_breakpoints(inst)
        res.breakpoints += len(bps)
        width = inst.sHi - inst.sLo
        pts = list(bps) + [inst.sLo + width * Fraction(rng.randint(0, 999), 1000) for _ in range(random_points)]
        for dp in d_params(inst.map):
            for s in pts:
                res.checks += 1
                try:
                    partial_G(inst.map, inst.ctx, dp, s)
                except InvariantViolation as exc:
                    res.mismatches.append((inst, dp, s, str(exc)))
        end = chart_end(inst.map, inst.ctx, inst.sLo, inst.sHi)
        if end is not None and end > inst.sLo:
            w = wf_profile(inst.map, inst.ctx, inst.sLo, end)
            res.wf_segments += 1
            if w.min_value() < 0:
                res.wf_violations.append((inst, w))
    return res
