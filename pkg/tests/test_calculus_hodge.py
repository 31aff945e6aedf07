import pytest

from kuranishi.calculus import (
    IDENTITY_NAMES,
    Ops,
    bracket,
    check_identity,
    contract,
    d,
    dbar,
    delo,
    exp_contract,
    lie,
)
from kuranishi.errors import Obstructed
from kuranishi.forms import VForm, chart, torus
from kuranishi.generators import all_bidegrees, rand_form, rand_xi
from kuranishi.hodge import (
    dbar_homotopy,
    harmonic_projection,
    hodge_decompose,
    partial_homotopy,
    solve_dbar,
)
from kuranishi.funring import TorusFn

from .helpers import omega_std, seeded, xi_a


def test_contraction_and_lie_on_shear():
    g = torus(2, 1, 4)
    xi, om = xi_a(g), omega_std(g)
    assert contract(xi, om).render() == "t*dv1^dvb1"
    assert not bracket(xi, xi)
    assert not lie(xi, om, "holo")


def test_exterior_derivative_splits():
    rng = seeded(5)
    for g in (chart(2, 1, 3), torus(2, 1, 3)):
        for _ in range(20):
            w = rand_form(g, rng, all_bidegrees(2), tmax=1, terms=4)
            assert d(w) == delo(w) + dbar(w)
            assert not d(d(w)) and not dbar(dbar(w)) and not delo(delo(w))


@pytest.mark.parametrize("kind", ["chart", "torus"])
def test_bracket_graded_symmetry(kind):
    rng = seeded(7)
    g = chart(2, 1, 3) if kind == "chart" else torus(2, 1, 3)
    for _ in range(30):
        k1, k2 = rng.choice((0, 1, 2)), rng.choice((0, 1, 2))
        a = rand_xi(g, rng, k=k1, tmax=1, terms=3)
        b = rand_xi(g, rng, k=k2, tmax=1, terms=3)
        sign = -1 if (k1 * k2) % 2 == 0 else 1
        assert bracket(a, b) == bracket(b, a).scale(sign)


def test_holomorphic_lie_raises_antiholomorphic_degree():
    rng = seeded(9)
    g = torus(3, 1, 3)
    for _ in range(30):
        xi = rand_xi(g, rng, k=1, tmax=1, terms=3)
        p, q = rng.randint(0, 3), rng.randint(0, 2)
        w = rand_form(g, rng, [(p, q)], tmax=1, terms=3)
        assert set(lie(xi, w, "holo").bidegrees()) <= {(p, q + 1)}
        assert set(lie(xi, w, "anti").bidegrees()) <= {(p - 1, q + 2)}


def test_exp_contract_is_finite_sum():
    g = torus(2, 1, 4)
    xi, om = xi_a(g), omega_std(g)
    assert exp_contract(xi, om) == om + contract(xi, om)


def test_identity_suite_small_sample():
    from kuranishi.cli.fuzz import case_inputs, case_rng

    for name in IDENTITY_NAMES:
        if name == "I-kodd":
            continue
        for kind in ("chart", "torus"):
            for i in range(10):
                _, inputs = case_inputs(name, kind, case_rng(0, name, kind, i))
                assert check_identity(name, inputs).holds, (name, kind, i)


def test_sign_flipped_bracket_is_detected():
    from kuranishi.cli.fuzz import fuzz_identities

    ops = Ops(bracket=lambda a, b: -bracket(a, b))
    report = fuzz_identities(2, 15, ops=ops, names=["I-2.7.7"])
    assert not report["allPassed"]


def test_hodge_examples():
    g = torus(2, 1, 4)
    fn = VForm.function(g, TorusFn.from_kl((1, 0), (0, 0)))
    om = omega_std(g)
    assert dbar(fn).render() == "i*E[i,0;i,0]*dvb1"
    assert harmonic_projection(fn + om) == om
    y = dbar(fn ^ VForm.dv(g, 1))
    assert y.render() == "-i*E[i,0;i,0]*dv1^dvb1"
    assert solve_dbar(y).render() == "E[i,0;i,0]*dv1"
    with pytest.raises(Obstructed):
        solve_dbar(VForm.dvb(g, 1))


def test_hodge_decomposition_reconstructs():
    rng = seeded(13)
    g = torus(2, 1, 3)
    for _ in range(30):
        w = rand_form(g, rng, all_bidegrees(2), tmax=1, terms=5)
        h = hodge_decompose(w)
        assert h.reconstruct() == w
        assert w == harmonic_projection(w) + dbar(dbar_homotopy(w)) + dbar_homotopy(dbar(w))
        assert w == harmonic_projection(w) + delo(partial_homotopy(w)) + partial_homotopy(delo(w))
        assert not harmonic_projection(dbar(w)) and not harmonic_projection(delo(w))
