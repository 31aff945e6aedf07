import pytest

from kuranishi.funring import ChartPoly, TorusFn, derivative, fn_mul, restrict_chart, torus_zero_freq
from kuranishi.forms import VForm, chart, torus, type_project, wedge
from kuranishi.generators import all_bidegrees, rand_fkey, rand_form, rand_scalar

from .helpers import seeded


def test_torus_character_derivatives():
    f = TorusFn.from_kl((1, 0), (0, 1))
    assert f.render() == "E[i,1;i,-1]"
    assert derivative(f, 1, "holo").render() == "i*E[i,1;i,-1]"
    assert derivative(f, 1, "anti").render() == "i*E[i,1;i,-1]"


def test_characters_multiply_by_adding_frequencies():
    f = TorusFn.from_kl((1, 0), (0, 1))
    g = TorusFn.from_kl((-1, 0), (0, -1))
    assert fn_mul(f, g) == TorusFn.constant(2)
    assert torus_zero_freq(f + TorusFn.constant(2, 3)) == 3


def test_chart_polynomials():
    v1 = ChartPoly.coordinate(2, 1)
    vb1 = ChartPoly.coordinate(2, 1, True)
    assert (v1 * vb1).render() == "v1*vb1"
    assert derivative(v1 * v1 * vb1, 1, "holo").render() == "2*v1*vb1"
    assert not derivative(v1, 1, "anti")
    v2 = ChartPoly.coordinate(2, 2)
    assert restrict_chart(v1 * v2 + v2, [1]) == ChartPoly.coordinate(1, 1)


def rand_function(g, rng, terms=3):
    cls = ChartPoly if g.kind == "chart" else TorusFn
    out = cls(g.n)
    for _ in range(terms):
        out = out + cls(g.n, {rand_fkey(g, rng): rand_scalar(rng)})
    return out


@pytest.mark.parametrize("kind", ["chart", "torus"])
def test_leibniz_on_functions(kind):
    rng = seeded(3)
    g = chart(2, 1, 3) if kind == "chart" else torus(2, 1, 3)
    for _ in range(30):
        fa, fb = rand_function(g, rng), rand_function(g, rng)
        for j in (1, 2):
            for part in ("holo", "anti"):
                lhs = derivative(fn_mul(fa, fb), j, part)
                rhs = fn_mul(derivative(fa, j, part), fb) + fn_mul(fa, derivative(fb, j, part))
                assert lhs == rhs


def test_wedge_signs_and_rendering():
    g = torus(2, 1, 4)
    om = VForm.dv(g, 1) ^ VForm.dv(g, 2)
    assert om.render() == "dv12"
    assert wedge(VForm.dvb(g, 2), VForm.dv(g, 1)).render() == "-dv1^dvb2"
    assert not VForm.dv(g, 1) ^ VForm.dv(g, 1)
    xi = (VForm.t(g) ^ VForm.dvb(g, 1)).with_value(2)
    assert xi.render() == "t*dvb1⊗d/dv2"


def test_restriction_keeps_ambient_labels():
    g = torus(2, 1, 4)
    w = (VForm.dv(g, 1) ^ VForm.dv(g, 2)) + (VForm.dv(g, 1) ^ VForm.dvb(g, 1))
    assert w.restrict_subtorus((1,)).render() == "dv1^dvb1"


def test_truncation_drops_high_t_orders():
    g = torus(1, 1, 2)
    t = VForm.t(g)
    assert not t * t * t
    assert (t * t).t_orders() == [2]


@pytest.mark.parametrize("kind", ["chart", "torus"])
def test_wedge_is_graded_commutative_and_type_additive(kind):
    rng = seeded(11)
    g = chart(3, 1, 3) if kind == "chart" else torus(3, 1, 3)
    bids = all_bidegrees(3)
    for _ in range(40):
        a = rand_form(g, rng, bids, tmax=1, terms=3)
        b = rand_form(g, rng, bids, tmax=1, terms=3)
        lhs = a ^ b
        rhs = VForm.zero(g)
        for (p, q) in a.bidegrees():
            for (r, s) in b.bidegrees():
                sgn = -1 if ((p + q) * (r + s)) % 2 else 1
                rhs = rhs + (type_project(b, r, s) ^ type_project(a, p, q)).scale(sgn)
        assert lhs == rhs
        for (p, q) in lhs.bidegrees():
            assert any(p == p1 + p2 and q == q1 + q2 for (p1, q1) in a.bidegrees() for (p2, q2) in b.bidegrees())
