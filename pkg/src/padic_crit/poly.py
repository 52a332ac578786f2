"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .valuation import as_fraction

ZERO_DEGREE = -1  # degree reported for the zero polynomial


class Poly:
    """Immutable polynomial; ``coeffs[i]`` multiplies ``z**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        # cs already Fractions; strip trailing zeros in place
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def z(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def ord_zero(self) -> int:
        """Multiplicity of 0 as a root."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("zero polynomial")

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Poly":
        return x if isinstance(x, Poly) else Poly([x])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly._raw([c * a for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(), self
        inv = 1 / other.lc
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] * inv
            quo[k] = q
            if q:
                for j in range(db + 1):
                    rem[k + j] -= q * bc[j]
        return Poly._raw(quo), Poly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # -- calculus and substitution ------------------------------------

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(z))."""
        return self(inner)

    def shift(self, z0) -> "Poly":
        """self(z + z0) by repeated synthetic division (Taylor shift)."""
        z0 = as_fraction(z0)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += z0 * cs[j + 1]
        return Poly._raw(cs)

    def reversed(self, k: int) -> "Poly":
        """z**k * self(1/z) for k >= degree."""
        if k < self.degree:
            raise ValueError("k below degree")
        cs = list(self.coeffs) + [Fraction(0)] * (k + 1 - len(self.coeffs))
        return Poly._raw(cs[::-1])

    def scale_var(self, a) -> "Poly":
        """self(a z)."""
        a = as_fraction(a)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return Poly._raw(out)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def strip_zero_root(self) -> "Poly":
        k = self.ord_zero()
        return Poly._raw(list(self.coeffs[k:]))

    # -- integer content ------------------------------------------------

    def integerize(self) -> tuple[list[int], Fraction]:
        """Return (integer coeffs, scale) with self == scale * Poly(ints), gcd(ints) = 1."""
        if self.is_zero():
            return [], Fraction(1)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        ints = [c // g for c in ints]
        return ints, Fraction(g, den)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            # keep coefficient growth in check
            ib, _ = b.integerize()
            b = Poly(ib)
    return a.monic()


def strip_common(a: Poly, b: Poly) -> Poly:
    """Remove from a every root it shares with b, with full multiplicity."""
    while True:
        g = poly_gcd(a, b)
        if g.degree <= 0:
            return a
        a = a.exact_div(g)


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder lc(b)**(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b)
    for _ in range(delta + 1):
        if len(r) - 1 < db:
            r = [lb * c for c in r]
            continue
        lr = r[-1]
        r = [lb * c for c in r]
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _resultant_int(a: list[int], b: list[int]) -> int:
    """Subresultant PRS resultant of two nonzero integer polynomials."""
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    s = 1
    if da < db:
        a, b = b, a
        da, db = db, da
        if da % 2 and db % 2:
            s = -1
    g = h = Fraction(1)
    while True:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem(a, b)
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [int(Fraction(c) / div) for c in r]
        da, db = len(a) - 1, len(b) - 1
        g = Fraction(a[-1])
        h = h ** (1 - delta) * g**delta
        if db == 0:
            h = h ** (1 - da) * Fraction(b[-1]) ** da
            return s * int(h)


def resultant(a: Poly, b: Poly) -> Fraction:
    """Res(a, b) = lc(a)**deg(b) * prod b(alpha) over the roots alpha of a."""
    if a.is_zero() or b.is_zero():
        raise ValueError("resultant of the zero polynomial")
    ia, sa = a.integerize()
    ib, sb = b.integerize()
    return Fraction(_resultant_int(ia, ib)) * sa**b.degree * sb**a.degree


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Exact Newton-form interpolation through (xs[i], ys[i])."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = Poly([coef[-1]])
    for i in range(n - 2, -1, -1):
        out = out * Poly([-xs[i], 1]) + coef[i]
    return out
