"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction


def sylvester_resultant(a: list, b: list) -> Fraction:
    """Determinant of the Sylvester matrix (ascending coefficient lists), by Gaussian elimination."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return Fraction(1)
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            f = rows[r][col] / rows[col][col]
            if f:
                for k in range(col, size):
                    rows[r][k] -= f * rows[col][k]
    return det


def vp(p: int, n: int) -> int:
    if n == 0:
        return 10**9
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def eval_int(cs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def hensel_roots(cs: list[int], p: int, N: int) -> list[int]:
    """Residues a mod p**N that are Hensel-certified representatives of p-adic roots.

    a qualifies when v(P(a)) > 2 v(P'(a)) and v(P(a)) - v(P'(a)) >= N: then
    Hensel's lemma gives a unique root congruent to a mod p**N.
    """
    dcs = [i * c for i, c in enumerate(cs)][1:]
    out = []
    for a in range(p**N):
        vP = vp(p, eval_int(cs, a))
        e = vp(p, eval_int(dcs, a))
        if vP > 2 * e and vP - e >= N:
            out.append(a)
    return out


def hensel_instances(n: int, seed: int):
    """Monic integer polynomials with simple roots in Z_p, perturbed off the rationals.

    Returns (ctx, coefficients, certified residues mod p**6); only instances
    where every root is Hensel-certified are kept.
    """
    from padic_crit.fuzz import Lcg64
    from padic_crit.poly import Poly
    from padic_crit.valuation import PadicContext

    rng = Lcg64(seed)
    out = []
    while len(out) < n:
        p = rng.choice((2, 3, 5))
        roots = [rng.randint(1, p - 1 if p > 2 else 1) * p ** rng.randint(0, 4) + rng.randint(0, 3) * p**5
                 for _ in range(rng.randint(1, 4))]
        P = Poly.from_roots(roots)
        noise = [rng.randint(-3, 3) * p**8 for _ in range(P.degree)]
        cs = [int(c) + (noise[i] if i < len(noise) else 0) for i, c in enumerate(P.coeffs)]
        found = hensel_roots(cs, p, 6)
        if len(found) == P.degree:
            out.append((PadicContext(p), cs, found))
    return out
