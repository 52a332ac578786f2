"""The extremal families P0, Q0, Q1, Q2 and automated checks of their sharpness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .critical import (
    critical_distance_spectrum,
    escape_certificate,
    verify_corollary_E,
    verify_theorem_C,
)
from .cycles import exact_period_factor, multiplier_spectrum
from .newton import r_bullet_distance, root_valuations
from .poly import Poly
from .ratmap import RatMap, derivative_at, eval_map, normalize, oo, reduce_mod_p, wronskian
from .valuation import PadicContext, PreconditionError, as_fraction, lambda_exponent, val, vp_int

FAMILIES = ("P0", "Q0", "Q1", "Q2")


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    ctx: PadicContext
    params: dict
    map: RatMap


def _is_power_of(p: int, d: int) -> bool:
    while d % p == 0:
        d //= p
    return d == 1


def make_P0(ctx: PadicContext, d: int) -> FamilyInstance:
    p = ctx.p
    if d < 2:
        raise PreconditionError("d must be at least 2")
    if p > d:
        raise PreconditionError(f"P0 needs lambda(d) < 1, i.e. p <= d (got p={p}, d={d})")
    z = Poly.z()
    if d % p == 0 and d % (p * p):
        P = z**d
    else:
        P = z**p - z**d * p**d
    return FamilyInstance("P0", ctx, {"d": d}, normalize(P, Poly([1])))


def default_q(ctx: PadicContext, d: int) -> int:
    V = lambda_exponent(ctx, d)
    return next(q for q in range(1, d) if vp_int(ctx.p, q) == V)


def make_Q0(ctx: PadicContext, d: int, q: Optional[int] = None, eps=None) -> FamilyInstance:
    p = ctx.p
    if d < 2:
        raise PreconditionError("d must be at least 2")
    if _is_power_of(p, d):
        raise PreconditionError(f"d={d} is a power of p={p}")
    V = lambda_exponent(ctx, d)
    if q is None:
        q = default_q(ctx, d)
    if not 1 <= q <= d - 1:
        raise PreconditionError(f"q={q} must lie in 1..d-1")
    if vp_int(p, q) != V:
        raise PreconditionError(f"|q| must equal lambda(d): v_p(q)={vp_int(p, q)} but V={V}")
    bound = vp_int(p, q) - vp_int(p, d)
    if eps is None:
        eps = Fraction(p) ** (bound + 1)
    eps = as_fraction(eps)
    if eps == 0:
        raise PreconditionError("eps must be nonzero")
    if not val(ctx, eps) > bound:
        raise PreconditionError(f"|eps| < |q/d| fails: v(eps)={val(ctx, eps)} not > {bound}")
    num = Poly([1 + eps, -eps]) ** d
    Q = normalize(num, Poly.monomial(1, q))
    return FamilyInstance("Q0", ctx, {"d": d, "q": q, "eps": eps}, Q)


def make_Q1(ctx: PadicContext, d: int) -> FamilyInstance:
    if not 2 <= d <= ctx.p:
        raise PreconditionError(f"Q1 needs 2 <= d <= p (got d={d}, p={ctx.p})")
    Q = normalize(Poly.z() - Poly.monomial(1, d), Poly([1]))
    return FamilyInstance("Q1", ctx, {"d": d}, Q)


def q2_q(ctx: PadicContext, d: int) -> int:
    V = lambda_exponent(ctx, d)
    return max(q for q in range(ctx.p, d + 1) if vp_int(ctx.p, q) == V)


def _q2_alpha_ok(ctx: PadicContext, d: int, q: int, alpha: Fraction) -> Optional[str]:
    """None if alpha is admissible, else the reason it is not."""
    p = ctx.p
    if val(ctx, alpha) != 0:
        return f"|alpha| must be 1, got v(alpha)={val(ctx, alpha)}"
    if vp_int(p, q) != 1:
        return None
    m = q // p
    mt = m % p
    at = alpha.numerator * pow(alpha.denominator, -1, p) % p
    if q == p and at == 1:
        return "alpha = 1 mod p cancels the z^p term (q = p)"
    if mt == 1:
        return None  # 1 + 0*zeta^(p-1) has no roots
    if mt == 2:
        # every zeta0 in F_p^* is a root; zeta0^(q-p) = zeta0^(m-1) over F_p
        for z0 in range(1, p):
            if at * pow(z0, m - 1, p) % p == mt:
                return f"residue condition fails at zeta0={z0}"
        return None
    return (f"residue condition needs the roots of 1 + (1 - {mt}) zeta^{p - 1}, "
            f"which lie outside F_{p}")


def make_Q2(ctx: PadicContext, d: int, alpha=None) -> FamilyInstance:
    p = ctx.p
    if d <= p:
        raise PreconditionError(f"Q2 needs d > p (got d={d}, p={p})")
    q = q2_q(ctx, d)
    if alpha is None:
        reasons = {}
        for a in range(1, p):
            r = _q2_alpha_ok(ctx, d, q, Fraction(a))
            if r is None:
                alpha = Fraction(a)
                break
            reasons[a] = r
        else:
            raise PreconditionError(f"no admissible alpha in 1..{p - 1}: {reasons}")
    alpha = as_fraction(alpha)
    reason = _q2_alpha_ok(ctx, d, q, alpha)
    if reason:
        raise PreconditionError(reason)
    z = Poly.z()
    P = z + Poly.monomial(Fraction(1, p), p)
    if d == q:
        P = P - Poly.monomial(alpha / d, d)
    else:
        P = P - Poly.monomial(alpha / q, q) + Poly.monomial(p, d)
    if P.degree != d or P[1] != 1:
        raise PreconditionError("coefficients cancel: degree or Q'(0) = 1 lost")
    return FamilyInstance("Q2", ctx, {"d": d, "q": q, "alpha": alpha}, normalize(P, Poly([1])))


def make(ctx: PadicContext, family: str, d: int, q=None, eps=None, alpha=None) -> FamilyInstance:
    fam = family.upper()
    if fam == "P1":
        raise PreconditionError("characteristic-p family out of scope")
    if fam == "P0":
        return make_P0(ctx, d)
    if fam == "Q0":
        return make_Q0(ctx, d, q, eps)
    if fam == "Q1":
        return make_Q1(ctx, d)
    if fam == "Q2":
        return make_Q2(ctx, d, alpha)
    raise PreconditionError(f"unknown family {family!r}")


# -- sharpness -----------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_fmt(e) for e in x) + ")"
    if isinstance(x, dict):
        return "{" + ", ".join(f"{_fmt(k)}: {_fmt(v)}" for k, v in x.items()) + "}"
    return str(x)


@dataclass
class Check:
    name: str
    expected: str
    actual: str
    passed: bool


@dataclass
class SharpnessReport:
    instance: FamilyInstance
    checks: list[Check] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name, expected, actual, passed=None):
        if passed is None:
            passed = expected == actual
        self.checks.append(Check(name, _fmt(expected), _fmt(actual), bool(passed)))

    def to_dict(self) -> dict:
        return {
            "family": self.instance.family,
            "p": self.instance.ctx.p,
            "params": {k: str(v) for k, v in self.instance.params.items()},
            "map": str(self.instance.map),
            "checks": [vars(c) for c in self.checks],
            "notes": {k: str(v) for k, v in self.notes.items()},
            "passed": self.passed,
        }


def _sharp_Q0(inst: FamilyInstance, rep: SharpnessReport):
    ctx, Q = inst.ctx, inst.map
    d, q, eps = inst.params["d"], inst.params["q"], inst.params["eps"]
    V = lambda_exponent(ctx, d)
    rep.check("Q0(oo) = oo", oo, eval_map(Q, oo))
    rep.check("only finite pole is 0", Poly.monomial(1, q), Q.den)
    rep.check("Q0(1) = 1", 1, eval_map(Q, 1))
    dq = derivative_at(Q, 1)
    rep.check("Q0'(1) = -(q + eps d)", -(q + eps * d), dq)
    rep.check("v(Q0'(1)) = V(d)", V, val(ctx, dq))
    W = wronskian(Q)
    c1 = 1 + 1 / eps
    rep.check("1 + 1/eps is critical", 0, W(c1))
    rep.check("Q0(1 + 1/eps) = 0", 0, eval_map(Q, c1))
    c0 = -Fraction(q) * (1 + eps) / (eps * (d - q))
    rep.check("c0 is critical", 0, W(c0))
    rep.check("|c0| > 1", "v < 0", val(ctx, c0), val(ctx, c0) < 0)
    rep.check("|1 + eps - eps c0| = 1", 0, val(ctx, 1 + eps - eps * c0))
    vq0c0 = val(ctx, eval_map(Q, c0))
    rep.notes["v(Q0(c0)) computed"] = vq0c0
    rep.notes["|Q0(c0)| > 1 as printed (v < 0)"] = vq0c0 < 0
    rep.check("|Q0(c0) - 1| = 1", 0, val(ctx, eval_map(Q, c0) - 1))
    cert = verify_theorem_C(Q, 1, ctx)
    rep.check("bound C holds at z0 = 1", True, cert.holds)
    rep.check("bound C equality at z0 = 1", True, cert.equality)
    rep.check("bound C lhs = rhs = 0", (0, 0), (cert.lhsVal, cert.rhsVal))


def _sharp_Q1(inst: FamilyInstance, rep: SharpnessReport):
    ctx, Q = inst.ctx, inst.map
    d = inst.params["d"]
    vd = vp_int(ctx.p, d)
    rep.check("lambda(d) = |d|", vd, lambda_exponent(ctx, d))
    rep.check("|Q1'(0)| = 1", 0, val(ctx, derivative_at(Q, 0)))
    rep.check("nonzero zeros have norm 1", 0, -r_bullet_distance(Q, 0, ctx))
    spec = critical_distance_spectrum(Q, 0, ctx)
    target = -Fraction(d, d - 1) * vd
    rep.check("|Q1(c)| = |d|^(-d/(d-1)) for every c", ((target, d - 1),), spec.entries)
    cert = verify_corollary_E(Q, 0, ctx)
    rep.check("bound E holds at z0 = 0", True, cert.holds)
    rep.check("bound E equality at z0 = 0", True, cert.equality)


def _sharp_Q2(inst: FamilyInstance, rep: SharpnessReport):
    ctx, Q = inst.ctx, inst.map
    p = ctx.p
    d, q = inst.params["d"], inst.params["q"]
    vq = vp_int(p, q)
    rep.check("|Q2'(0)| = 1", 0, val(ctx, derivative_at(Q, 0)))
    zeros = root_valuations(Q.num.strip_zero_root(), ctx)
    small = Fraction(1, p - 1)
    rep.check(f"{p - 1} zeros of norm |p|^(1/(p-1))", p - 1, zeros.as_dict().get(small, 0))
    rep.check("other nonzero zeros are larger", True,
              all(v < small for v, _ in zeros if v != small))
    crit = root_valuations(Q.num.derivative(), ctx)
    expect = {Fraction(0): q - 1}
    if d > q:
        expect[-Fraction(vp_int(p, d) + 1, d - q)] = d - q
    rep.check("critical point norms", expect, crit.as_dict())
    spec = critical_distance_spectrum(Q, 0, ctx)
    rep.check("|Q2(c)| = |q|^-1 on the q-1 unit critical points", q - 1, spec.as_dict().get(Fraction(-vq), 0))
    rep.check("closest critical value at |q|^-1", -vq, spec.max_val())
    if d > q:
        vc = -Fraction(vp_int(p, d) + 1, d - q)
        big = -vq + q * vc
        rep.check("|Q2(c')| = |q|^-1 |c'|^q", d - q, spec.as_dict().get(big, 0))
    cert = verify_corollary_E(Q, 0, ctx)
    rep.check("bound E holds at z0 = 0", True, cert.holds)
    rep.check("bound E equality at z0 = 0", True, cert.equality)


def _sharp_P0(inst: FamilyInstance, rep: SharpnessReport, max_period: int = 2):
    ctx, Pm = inst.ctx, inst.map
    p, d = ctx.p, inst.params["d"]
    red = reduce_mod_p(Pm, ctx)
    pure_power = d % p == 0 and d % (p * p) != 0
    k = d if pure_power else p
    rep.check("reduction is zeta^%d" % k, tuple([0] * k + [1]), red.num)
    esc = escape_certificate(Pm.num, ctx)
    rep.notes["s_esc"] = esc.s_esc
    rep.check("critical point 0 is fixed", True, esc.fixed_critical >= 1)
    if not pure_power:
        vc = -Fraction(vp_int(p, d) + d - 1, d - p)
        crit = root_valuations(Pm.num.derivative().strip_zero_root(), ctx)
        rep.check("nonzero critical points: d p^(d-1) c^(d-p) = 1", {vc: d - p}, crit.as_dict())
        bound = p * vc  # valuation of |c|^p = |d p^(d-1)|^(-p/(d-p))
        vals = {v: m for v, m, _ in esc.entries}
        rep.check("|P0(c)| >= |c|^p", True, all(v <= bound for v in vals))
        if d % p:
            rep.check("|P0(c)| = |d p^(d-1)|^(-p/(d-p))", {bound: d - p}, vals)
        rep.check("escape certified for nonzero critical points", True, esc.all_escape and bool(esc.entries))
    else:
        rep.check("no critical point besides 0", [], list(esc.entries))
    for n in range(1, max_period + 1):
        Phi = exact_period_factor(Pm, n, ctx)
        unit_points = root_valuations(Phi, ctx).as_dict().get(Fraction(0), 0)
        spec = multiplier_spectrum(Pm, n, ctx)
        rep.check(f"period {n}: unit-sphere points carry multiplier |p|^{n}",
                  unit_points, n * spec.as_dict().get(Fraction(n), 0), unit_points > 0 and
                  unit_points == n * spec.as_dict().get(Fraction(n), 0))


def verify_sharpness(inst: FamilyInstance) -> SharpnessReport:
    rep = SharpnessReport(inst)
    {"P0": _sharp_P0, "Q0": _sharp_Q0, "Q1": _sharp_Q1, "Q2": _sharp_Q2}[inst.family](inst, rep)
    return rep
