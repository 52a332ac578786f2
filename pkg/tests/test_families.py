from fractions import Fraction as F

import pytest

from padic_crit.families import (
    make,
    make_P0,
    make_Q0,
    make_Q1,
    make_Q2,
    verify_sharpness,
)
from padic_crit.newton import critical_numerator, root_valuations
from padic_crit.poly import Poly
from padic_crit.ratmap import ratmap
from padic_crit.valuation import PadicContext, PreconditionError, vp_int

P2, P3, P5, P7 = (PadicContext(p) for p in (2, 3, 5, 7))


def test_P0_constructor():
    assert make_P0(P2, 2).map == ratmap([0, 0, 1])
    assert make_P0(P3, 5).map == ratmap([0, 0, 0, 1, 0, -243])
    assert make_P0(P3, 3).map == ratmap([0, 0, 0, 1])
    # p <= d is what makes lambda(d) < 1; p = 5 > d = 3 is out of range
    with pytest.raises(PreconditionError):
        make_P0(P5, 3)
    assert make_P0(P2, 4).map == ratmap([0, 0, 1, 0, -16])


def test_Q0_constructor():
    Q = make_Q0(P3, 5, 3, 9).map
    assert Q.num == Poly([10, -9]) ** 5 and Q.den == Poly.monomial(1, 3)
    with pytest.raises(PreconditionError, match="power of p"):
        make_Q0(P3, 9)
    with pytest.raises(PreconditionError, match="eps"):
        make_Q0(P3, 5, 3, 3)
    with pytest.raises(PreconditionError):
        make_Q0(P3, 5, 2, 9)      # v(2) != V(5)
    assert make_Q0(P3, 5).params["eps"] == 9


def test_Q1_constructor():
    assert make_Q1(P3, 3).map == ratmap([0, 1, 0, -1])
    assert make_Q1(P5, 3).map == ratmap([0, 1, 0, -1])
    with pytest.raises(PreconditionError):
        make_Q1(P2, 3)


def test_Q2_constructor():
    inst = make_Q2(P2, 5, 1)
    assert inst.params["q"] == 4
    assert inst.map == ratmap([0, 1, F(1, 2), 0, F(-1, 4), 2])
    with pytest.raises(PreconditionError):
        make_Q2(P2, 3, 1)
    with pytest.raises(PreconditionError):
        make_Q2(P2, 3)
    # q = p = 3: alpha = 1 cancels the z^3 term, so the default moves to alpha = 2
    with pytest.raises(PreconditionError, match="cancels"):
        make_Q2(P3, 4, 1)
    inst = make_Q2(P3, 4)
    assert inst.params["alpha"] == 2
    assert inst.map == ratmap([0, 1, 0, F(-1, 3), 3])
    with pytest.raises(PreconditionError):
        make_Q2(P3, 4, 3)        # not a unit


def test_make_dispatch():
    assert make(P3, "q1", 3).family == "Q1"
    with pytest.raises(PreconditionError, match="out of scope"):
        make(P3, "P1", 3)
    with pytest.raises(PreconditionError):
        make(P3, "Q9", 3)


INVARIANT_INSTANCES = (
    [("Q0", PadicContext(p), d, q) for p, d, q in ((3, 5, 3), (5, 7, 5), (2, 3, 2))]
    + [("Q1", PadicContext(p), d, None) for p, d in ((3, 3), (5, 5), (7, 3))]
    + [("Q2", PadicContext(p), d, None) for p, d in ((2, 5), (3, 10))]
    + [("P0", PadicContext(p), d, None) for p, d in ((2, 2), (3, 3), (3, 5))]
)


@pytest.mark.parametrize("fam,ctx,d,q", INVARIANT_INSTANCES,
                         ids=[f"{f}-p{c.p}-d{d}" for f, c, d, _ in INVARIANT_INSTANCES])
def test_sharpness(fam, ctx, d, q):
    rep = verify_sharpness(make(ctx, fam, d, q=q))
    assert rep.passed, [c for c in rep.checks if not c.passed]
    assert rep.checks


def test_Q0_minimal_eps():
    for p, d, q in ((3, 5, 3), (5, 7, 5), (2, 3, 2)):
        ctx = PadicContext(p)
        inst = make_Q0(ctx, d, q)
        assert inst.params["eps"] == F(p) ** (vp_int(p, q) - vp_int(p, d) + 1)


def test_sharpness_examples():
    rep = verify_sharpness(make_Q1(P3, 3))
    assert rep.passed
    rep = verify_sharpness(make_P0(P3, 5))
    assert rep.passed
    rep = verify_sharpness(make_Q0(P3, 5, 3, 9))
    assert rep.passed
    assert rep.to_dict()["passed"] is True


@pytest.mark.parametrize("p,d", [(2, 5), (3, 10)])
def test_Q2_derivative_polygon(p, d):
    ctx = PadicContext(p)
    inst = make_Q2(ctx, d)
    q = inst.params["q"]
    roots = root_valuations(critical_numerator(inst.map), ctx).as_dict()
    assert roots == {F(0): q - 1, F(-vp_int(p, d * p), d - q): d - q}
