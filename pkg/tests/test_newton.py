from collections import Counter
from fractions import Fraction

import pytest

from padic_crit.families import make_Q0, make_Q2
from padic_crit.fuzz import Lcg64, random_map
from padic_crit.newton import (
    NOT_UNIVALENT,
    UNIVALENT,
    build,
    count_zeros_in_disk,
    disk_degree,
    pole_distance,
    r_bullet_distance,
    root_valuations,
    series_expand,
    sup_valuation,
    univalence_certificate,
)
from padic_crit.poly import Poly
from padic_crit.ratmap import anchor, derivative_at, is_pole, ratmap
from padic_crit.valuation import INFINITY, PadicContext, PreconditionError, val

from oracles import hensel_instances

P2, P3, P5 = PadicContext(2), PadicContext(3), PadicContext(5)
Q1 = ratmap([0, 1, 0, -1])
Q2 = make_Q2(P2, 5, 1).map
Q0 = make_Q0(P3, 5, 3, 9).map
F = Fraction


def test_build_examples():
    np_ = build(Poly([0, -3, 0, 1]), P3)
    assert np_.ordZero == 1 and np_.vertices == ((1, 1), (3, 0))
    cof = Poly([1, F(1, 2), 0, F(-1, 4), 2])
    assert build(cof, P2).vertices == ((0, 0), (1, -1), (3, -2), (4, 1))
    np_ = build(Poly([0, 1, 0, -1]), P3)
    assert np_.ordZero == 1 and np_.vertices == ((1, 0), (3, 0))
    with pytest.raises(PreconditionError):
        build(Poly([]), P3)


def test_hull_invariants():
    rng = Lcg64(3)
    for _ in range(100):
        P = Poly([rng.rational() * F(rng.choice((2, 3, 5))) ** rng.randint(-3, 3) for _ in range(7)]
                 + [rng.rational(nonzero=True)])
        ctx = rng.choice((P2, P3, P5))
        np_ = build(P, ctx)
        slopes = [s for s, _ in np_.segments()]
        assert slopes == sorted(set(slopes))
        assert np_.vertices[0][0] == np_.ordZero and np_.vertices[-1][0] == P.degree
        assert np_.ordZero + sum(l for _, l in np_.segments()) == P.degree
        # every coefficient point lies on or above the hull
        for i, c in enumerate(P.coeffs):
            if c == 0 or i < np_.ordZero:
                continue
            for (i1, v1), (i2, v2) in zip(np_.vertices, np_.vertices[1:]):
                if i1 <= i <= i2:
                    assert val(ctx, c) >= v1 + (v2 - v1) * F(i - i1, i2 - i1)


def test_root_valuation_examples():
    assert root_valuations(Poly([0, -3, 0, 1]), P3).as_dict() == {INFINITY: 1, F(1, 2): 2}
    cof = Poly([1, F(1, 2), 0, F(-1, 4), 2])
    assert root_valuations(cof, P2).as_dict() == {F(1): 1, F(1, 2): 2, F(-3): 1}
    assert root_valuations(Poly([1, 0, -3]), P3).as_dict() == {F(-1, 2): 2}


def test_root_valuations_match_constructed_roots():
    rng = Lcg64(300)
    for _ in range(300):
        ctx = rng.choice((P2, P3, P5))
        roots = [rng.rational() * F(ctx.p) ** rng.randint(-3, 3) for _ in range(rng.randint(1, 8))]
        P = Poly.from_roots(roots, lead=rng.rational(nonzero=True))
        expected = Counter(val(ctx, r) for r in roots)
        assert root_valuations(P, ctx).as_dict() == dict(expected)


def test_disk_count_examples():
    P = Poly([0, -3, 1])
    assert count_zeros_in_disk(P, P3, -1, closed=True) == 2
    assert count_zeros_in_disk(P, P3, -1, closed=False) == 1
    assert count_zeros_in_disk(Poly([1, 0, -3]), P3, 0) == 0


def test_disk_counts_match_hensel_search():
    for ctx, cs, found in hensel_instances(50, 77):
        P = Poly(cs)
        for k in range(0, 6):
            expected = sum(1 for a in found if a % ctx.p**k == 0)
            assert count_zeros_in_disk(P, ctx, -k, closed=True) == expected


def test_disk_count_monotone_and_total():
    rng = Lcg64(9)
    for _ in range(50):
        P = Poly([rng.rational() for _ in range(5)] + [1])
        counts = [count_zeros_in_disk(P, P3, F(s, 2)) for s in range(-20, 21)]
        assert counts == sorted(counts)
        assert count_zeros_in_disk(P, P3, 10**6) == P.degree


def test_sup_valuation_examples():
    P = Poly([0, -3, 1])
    assert sup_valuation(P, P3, 0) == 0
    assert sup_valuation(P, P3, -2) == 3
    assert sup_valuation(Poly([3]), P3, 17) == 1


def test_pole_distance_examples():
    assert pole_distance(Q0, 1, P3) == 0
    assert pole_distance(ratmap([1], [-3, 1]), 0, P3) == -1
    assert pole_distance(ratmap([1], [-3, 0, 1]), 0, P3) == F(-1, 2)
    with pytest.raises(PreconditionError, match="no poles"):
        pole_distance(Q1, 0, P3)


def test_r_bullet_examples():
    assert r_bullet_distance(Q1, 0, P3) == 0
    assert r_bullet_distance(Q2, 0, P2) == -1
    assert r_bullet_distance(ratmap([1], [0, 1]), 1, P3) == 0


def test_series_examples():
    s = series_expand(Q1, 0, P3, 3)
    assert s.coeffs == (0, 1, 0, -1) and s.exact
    g = series_expand(ratmap([1], [1, -1]), 0, P5, 2)
    assert g.coeffs == (1, 1, 1) and not g.exact
    assert g.tail_bound(10) <= 0
    s = series_expand(Q0, 1, P3, 1)
    assert s.coeffs == (1, -48)


def test_series_tail_certificate_is_sound():
    rng = Lcg64(100)
    done = 0
    while done < 100:
        Q = random_map(rng, max_deg=3, polynomial_ok=False)
        ctx = rng.choice((P2, P3, P5))
        z0 = rng.rational()
        if is_pole(Q, z0):
            continue
        N = 4
        long = series_expand(Q, z0, ctx, N + 10)
        cert = series_expand(Q, z0, ctx, N)
        for n in range(N + 1, N + 11):
            a = long.coeffs[n]
            if a != 0:
                assert val(ctx, a) >= cert.tail_bound(n)
        done += 1


def test_disk_degree_examples():
    assert disk_degree(Q1, 0, P3, 0) == 3
    assert disk_degree(Q1, 0, P3, -1) == 1
    # coefficient valuations of Q2 are (-, 0, -1, oo, -2, 1): the minimum at s = 0 is at n = 4
    assert disk_degree(Q2, 0, P2, 0) == 4
    with pytest.raises(PreconditionError):
        disk_degree(Q0, 1, P3, 0, closed=True)


def test_disk_degree_monotone_and_starts_at_one():
    rng = Lcg64(12)
    for _ in range(40):
        Q = random_map(rng, max_deg=3, polynomial_ok=False)
        ctx = rng.choice((P2, P3, P5))
        z0 = rng.rational()
        if is_pole(Q, z0):
            continue
        s_r = pole_distance(Q, z0, ctx)
        radii = [s_r - F(k, 4) for k in range(1, 40)][::-1]
        degs = [disk_degree(Q, z0, ctx, s) for s in radii]
        assert degs == sorted(degs)
        if derivative_at(Q, z0) != 0:
            assert disk_degree(Q, z0, ctx, s_r - 40) == 1


def test_univalence_examples():
    assert univalence_certificate(Q1, 0, P3, -1) == UNIVALENT
    assert univalence_certificate(Q1, 0, P3, 0) == NOT_UNIVALENT
    # 0 is a critical point of z^2, so no disk around it is univalent
    assert univalence_certificate(ratmap([0, 0, 1]), 0, P3, 0) == NOT_UNIVALENT
    assert univalence_certificate(ratmap([0, 0, 1]), 1, P3, -1) == UNIVALENT


def test_disk_degree_equals_preimage_count():
    # on a pole-free disk the degree is the number of solutions of Q(z) = Q(z0) in it
    rng = Lcg64(13)
    done = 0
    while done < 60:
        Q = random_map(rng, max_deg=4, polynomial_ok=bool(rng.randint(0, 1)))
        ctx = rng.choice((P2, P3, P5))
        z0 = rng.rational()
        if is_pole(Q, z0):
            continue
        N = anchor(Q, z0).num
        top = pole_distance(Q, z0, ctx) if not Q.is_polynomial() else F(6)
        for k in range(1, 25):
            s = top - F(k, 3)
            assert disk_degree(Q, z0, ctx, s, closed=True) == count_zeros_in_disk(N, ctx, s, closed=True)
            assert disk_degree(Q, z0, ctx, s, closed=False) == count_zeros_in_disk(N, ctx, s, closed=False)
        done += 1
