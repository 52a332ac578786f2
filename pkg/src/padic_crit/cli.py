"""Command-line front end.

Exit codes: 0 ok or bound holds, 1 property violated, 2 parse or validation
error, 3 precondition failed, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional

from .berkovich import G_profile, InvariantViolation, hypothesis_check, partial_G, wf_profile
from .critical import VERIFIERS
from .cycles import CycleGroupingError, attracting_report
from .families import make, verify_sharpness
from .fuzz import DEFAULT_PRIMES, chart_end, fuzz_identities, fuzz_theorem
from .newton import build, root_valuations
from .poly import Poly
from .ratmap import DEFAULT_ITERATE_CAP, CapExceeded, DegenerateIterate, RatMap, normalize, wronskian
from .valuation import INFINITY, PadicContext, PreconditionError, is_prime

EXIT_OK, EXIT_VIOLATED, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3, 4


class SpecError(ValueError):
    """Malformed or invalid input; exit code 2."""


# -- formatting --------------------------------------------------------------

def fmt_val(v) -> str:
    return "INFINITY" if v is INFINITY else str(v)


def fmt_norm(p: int, v) -> str:
    """|x| = p^(-v), kept symbolic."""
    if v is INFINITY:
        return "0"
    return f"{p}^({-v})"


def fmt_spectrum(spec) -> list:
    return [[fmt_val(v), m] for v, m in spec]


def _emit(obj, as_json: bool, lines: list[str]):
    if as_json:
        print(json.dumps(obj, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


# -- input -------------------------------------------------------------------

def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SpecError(f"{where}: expected a rational string, got {x!r}")
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"{where}: not a rational number: {x!r}") from None


def _coeffs(xs, field: str) -> list[Fraction]:
    if not isinstance(xs, list) or not xs:
        raise SpecError(f"field '{field}': expected a non-empty list of rational strings")
    return [_rational(x, f"field '{field}'[{i}]") for i, x in enumerate(xs)]


def parse_spec(data: dict) -> tuple[PadicContext, RatMap, Optional[Fraction]]:
    if not isinstance(data, dict):
        raise SpecError("map spec must be a JSON object")
    for key in ("p", "num"):
        if key not in data:
            raise SpecError(f"missing field '{key}'")
    p = data["p"]
    if isinstance(p, bool) or not isinstance(p, int):
        raise SpecError(f"field 'p': expected an integer, got {p!r}")
    if not is_prime(p) or p >= 10**6:
        raise SpecError(f"field 'p': {p} is not a prime below 10**6")
    num = _coeffs(data["num"], "num")
    den = _coeffs(data.get("den", ["1"]), "den")
    try:
        Q = normalize(Poly(num), Poly(den))
    except PreconditionError as exc:
        raise SpecError(f"map: {exc}") from None
    z0 = _rational(data["z0"], "field 'z0'") if data.get("z0") is not None else None
    return PadicContext(p), Q, z0


def load_spec(args) -> tuple[PadicContext, RatMap, Optional[Fraction]]:
    if args.spec:
        if args.spec.lstrip().startswith("{"):
            text, where = args.spec, "<inline>"
        else:
            where = args.spec
            try:
                with open(args.spec, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise SpecError(f"{where}: {exc.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    else:
        if args.p is None or args.num is None:
            raise SpecError("give a JSON map spec or both --p and --num")
        data = {"p": args.p, "num": args.num.split(","),
                "den": args.den.split(",") if args.den else ["1"]}
    if getattr(args, "z0", None) is not None:
        data["z0"] = args.z0
    return parse_spec(data)


def _require_degree(Q: RatMap):
    if Q.degree < 2:
        raise SpecError(f"map has degree {Q.degree}; degree at least 2 required")


# -- commands ----------------------------------------------------------------

def cmd_newton(args) -> int:
    ctx, Q, _ = load_spec(args)
    _require_degree(Q)
    parts = [("num", Q.num), ("den", Q.den), ("wronskian", wronskian(Q))]
    out, lines = {"p": ctx.p, "map": str(Q)}, [f"p = {ctx.p}", f"Q = {Q}"]
    for name, P in parts:
        if P.degree < 1:
            out[name] = None
            lines.append(f"{name}: constant")
            continue
        np_ = build(P, ctx)
        spec = root_valuations(P, ctx)
        out[name] = {
            "coeffs": [str(c) for c in P.coeffs],
            "ordZero": np_.ordZero,
            "vertices": [[i, str(v)] for i, v in np_.vertices],
            "spectrum": fmt_spectrum(spec),
        }
        lines.append(f"{name}: vertices {' '.join(f'({i}, {v})' for i, v in np_.vertices)}")
        lines.append(f"  root valuations {spec}")
        lines.append("  root norms " + ", ".join(f"{fmt_norm(ctx.p, v)} x{m}" for v, m in spec))
    _emit(out, args.json, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx, Q, z0 = load_spec(args)
    if z0 is None:
        raise SpecError("z0 required (field 'z0' or --z0)")
    cert = VERIFIERS[args.theorem](Q, z0, ctx)
    out = cert.to_dict()
    lines = [
        f"theorem {cert.theorem} at z0 = {z0}, p = {ctx.p}",
        f"  critical-value distances {cert.witnessSpectrum}",
        f"  lhs valuation {fmt_val(cert.lhsVal) if cert.lhsVal is not None else 'none'}",
        f"  rhs valuation {cert.rhsVal}  (bound {fmt_norm(ctx.p, cert.rhsVal)})",
        f"  holds {str(cert.holds).lower()}, equality {str(cert.equality).lower()}",
    ]
    _emit(out, args.json, lines)
    return EXIT_OK if cert.holds else EXIT_VIOLATED


def cmd_cycles(args) -> int:
    ctx, Q, _ = load_spec(args)
    _require_degree(Q)
    if args.period < 1:
        raise SpecError("--period must be positive")
    try:
        rep = attracting_report(Q, args.period, ctx, args.cap)
    except DegenerateIterate as exc:
        raise PreconditionError(str(exc)) from None
    lines = [f"period {rep.period}: {rep.pointCount} points, multiplier valuations {rep.multiplierSpectrum}"]
    for e in rep.entries:
        lines.append(f"  v(lambda) = {fmt_val(e.vLambda)} x{e.cycles} cycles  {e.kind}  "
                     f"thmA={e.flags.thmA} thmB={e.flags.thmB} corF={e.flags.corF_poly} "
                     f"cor43={e.flags.cor43} eq156={e.flags.eq156}")
    _emit(rep.to_dict(), args.json, lines)
    return EXIT_OK


def cmd_examples(args) -> int:
    ctx = PadicContext(args.p) if is_prime(args.p) else None
    if ctx is None:
        raise SpecError(f"--p {args.p} is not prime")
    kw = {}
    for name in ("q", "eps", "alpha"):
        v = getattr(args, name)
        if v is not None:
            kw[name] = int(v) if name == "q" else _rational(v, f"--{name}")
    inst = make(ctx, args.family, args.d, **kw)
    rep = verify_sharpness(inst)
    lines = [f"{inst.family} p={ctx.p} " + " ".join(f"{k}={v}" for k, v in inst.params.items()),
             f"  map {inst.map}"]
    for c in rep.checks:
        lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.name}: expected {c.expected}, got {c.actual}")
    for k, v in rep.notes.items():
        lines.append(f"  note  {k}: {v}")
    _emit(rep.to_dict(), args.json, lines)
    return EXIT_OK if rep.passed else EXIT_VIOLATED


def cmd_profile(args) -> int:
    ctx, Q, _ = load_spec(args)
    sLo, sHi = _rational(args.s_lo, "--s-lo"), _rational(args.s_hi, "--s-hi")
    dp = _rational(args.d_param, "--d-param")
    if sLo >= sHi:
        raise SpecError("need --s-lo < --s-hi")
    if not hypothesis_check(Q, ctx, sLo, sHi):
        raise PreconditionError("segment not certified: need F(0) = 0 and no pole in the disk")
    g = G_profile(Q, ctx, dp, sLo, sHi)
    checks = []
    for s in [sLo, *g.breakpoints]:
        slope, count = partial_G(Q, ctx, dp, s)
        checks.append({"s": str(s), "hull": str(slope), "counting": str(count)})
    out = {"p": ctx.p, "map": str(Q), "d": str(dp), "G": g.to_dict(), "dG": checks}
    lines = [f"G_{dp} on [{sLo}, {sHi}]: breakpoints {[str(b) for b in g.breakpoints]}, "
             f"slopes {' -> '.join(str(m) for m in g.slopes)}"]
    lines += [f"  dG at {c['s']}: hull {c['hull']}, counting {c['counting']}" for c in checks]
    end = chart_end(Q, ctx, sLo, sHi)
    if end is not None and end > sLo:
        w = wf_profile(Q, ctx, sLo, end)
        out["wf"] = w.to_dict()
        lines.append(f"wf on [{sLo}, {end}]: breakpoints {[str(b) for b in w.breakpoints]}, "
                     f"values {[str(w(x)) for x in w.nodes()]}")
    else:
        out["wf"] = None
        lines.append("wf: segment not inside the unit-disk chart")
    _emit(out, args.json, lines)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    if args.trials < 1:
        raise SpecError("--trials must be positive")
    try:
        p_set = tuple(int(x) for x in args.p_set.split(","))
    except ValueError:
        raise SpecError(f"--p-set: bad list {args.p_set!r}") from None
    if not p_set or not all(is_prime(p) for p in p_set):
        raise SpecError(f"--p-set: every entry must be prime, got {args.p_set!r}")
    if args.theorem == "lemma21":
        max_deg = args.max_deg or 5
        res = fuzz_identities(args.trials, args.seed, p_set, max_deg)
        out = {"theorem": "lemma21", "trials": res.instances, "checks": res.checks,
               "breakpoints": res.breakpoints, "wfSegments": res.wf_segments,
               "mismatches": [{"spec": i.to_spec(), "d": str(d), "s": str(s), "error": e}
                              for i, d, s, e in res.mismatches],
               "wfViolations": [i.to_spec() for i, _ in res.wf_violations],
               "summary": res.summary()}
        lines = [res.summary(), f"  {res.instances} instances, {res.breakpoints} breakpoints, "
                 f"{res.checks} checks, {res.wf_segments} wf segments"]
        lines += [f"  MISMATCH {json.dumps(m['spec'])} d={m['d']} s={m['s']}" for m in out["mismatches"]]
        lines += [f"  WF<0 {json.dumps(s)}" for s in out["wfViolations"]]
        ok = res.ok
    else:
        max_deg = args.max_deg or 4
        if max_deg < 2:
            raise SpecError("--max-deg must be at least 2")
        res = fuzz_theorem(args.theorem, args.trials, args.seed, p_set, max_deg)
        out = {"theorem": args.theorem, "trials": res.trials, "held": res.held,
               "equalities": res.equalities,
               "failures": [{"spec": i.to_spec(), "certificate": c.to_dict()} for i, c in res.failures],
               "summary": res.summary()}
        lines = [res.summary(), f"  equality attained {res.equalities} times"]
        lines += [f"  VIOLATED {json.dumps(f['spec'])}" for f in out["failures"]]
        ok = res.ok
    _emit(out, args.json, lines)
    return EXIT_OK if ok else EXIT_VIOLATED


# -- parser ------------------------------------------------------------------

def _add_spec_args(sp):
    sp.add_argument("spec", nargs="?", help="MapSpec JSON file, or an inline JSON object")
    sp.add_argument("--p", type=int, help="prime (with --num/--den instead of a spec)")
    sp.add_argument("--num", help="numerator coefficients, ascending, comma separated")
    sp.add_argument("--den", help="denominator coefficients, ascending, comma separated")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values like -1/2 through as arguments rather than options
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="padic-crit", description="Exact p-adic critical-value and cycle computations.")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("newton", help="Newton polygons and root valuations of num, den and the Wronskian")
    _add_spec_args(sp)
    sp.set_defaults(func=cmd_newton)

    sp = sub.add_parser("verify", help="check a critical-value bound at z0")
    _add_spec_args(sp)
    sp.add_argument("--theorem", choices=sorted(VERIFIERS), required=True)
    sp.add_argument("--z0")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cycles", help="multiplier valuations of cycles of exact period n")
    _add_spec_args(sp)
    sp.add_argument("--period", type=int, required=True)
    sp.add_argument("--cap", type=int, default=DEFAULT_ITERATE_CAP, help="maximum degree of the iterate")
    sp.set_defaults(func=cmd_cycles)

    sp = sub.add_parser("examples", help="build an extremal family member and check its sharpness")
    sp.add_argument("--family", required=True, type=str.lower, choices=["p0", "p1", "q0", "q1", "q2"])
    sp.add_argument("--p", type=int, required=False, default=None)
    sp.add_argument("--d", type=int, required=False, default=None)
    sp.add_argument("--q")
    sp.add_argument("--eps")
    sp.add_argument("--alpha")
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("profile", help="G_d and wf profiles along [x(p^sLo), x(p^sHi)]")
    _add_spec_args(sp)
    sp.add_argument("--d-param", default="1")
    sp.add_argument("--s-lo", required=True)
    sp.add_argument("--s-hi", required=True)
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("fuzz", help="seeded random checks of the bounds or the dG identity")
    sp.add_argument("--theorem", required=True, choices=["C", "D", "E", "F", "lemma21"])
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--p-set", default=",".join(map(str, DEFAULT_PRIMES)))
    sp.add_argument("--max-deg", type=int)
    sp.set_defaults(func=cmd_fuzz)

    for name, s in sub.choices.items():
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="emit JSON instead of a table")
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        if args.command == "examples":
            if args.family == "p1":
                raise PreconditionError("characteristic-p family out of scope")
            if args.p is None or args.d is None:
                raise SpecError("--p and --d are required")
        return args.func(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, CycleGroupingError) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvariantViolation as exc:
        print(f"violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATED


if __name__ == "__main__":
    sys.exit(main())
