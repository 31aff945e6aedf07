"""Acceptance suite: twelve criteria, all exact.

Each test is tagged with its criterion; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""

import json
from fractions import Fraction

import pytest

from kuranishi.calculus import (
    IDENTITY_NAMES,
    bracket,
    check_identity,
    dbar,
    delo,
    exp_lie,
    lie,
)
from kuranishi.cli import fuzz_identities
from kuranishi.cli.main import main
from kuranishi.deformation import (
    _coordinate,
    conjugation_defects,
    dbar_xi_operator,
    extend_class,
    frame_integrability_oracle,
    gauge_flow_defect,
    gauge_transform,
    is_integrable_mod,
    local_gauge_to_kuranishi,
    mc_residual,
    mc_solve,
    obstruction_class,
    theorem41_certificate,
)
from kuranishi.forms import Geometry, VForm, chart, torus
from kuranishi.generators import (
    rand_form,
    rand_geometry,
    rand_scalar_form,
    rand_tangent_cocycle,
    rand_vector_field,
    rand_xi,
)
from kuranishi.hodge import dbar_homotopy, harmonic_projection, partial_homotopy
from kuranishi.submanifold import (
    Subtorus,
    coboundary,
    pair_obstruction_cocycle,
    theorem43_certificate,
    theorem52_cochain_check,
    vanishing_class_basis,
)
from kuranishi.errors import NotIntegrableMod, NotSubmanifoldDeformation, PreconditionFailed

from .helpers import (
    ideal,
    integrable_mod,
    integrable_xi,
    omega_std,
    seeded,
    truncate_below,
    xi_a,
    y_tangent_xi,
)

HALF = Fraction(1, 2)
criterion = pytest.mark.criterion


# 1 -------------------------------------------------------------------------

@criterion(1, "identity suite, 200 seeded cases per identity and geometry")
def test_identity_suite_fuzz():
    report = fuzz_identities(seed=1, count=200)
    assert report["counterexamples"] == []
    for name in IDENTITY_NAMES:
        for kind in ("chart", "torus"):
            stats = report["identities"][name][kind]
            assert stats == {"passed": 200, "failed": 0, "nonvacuous": stats["nonvacuous"]}
            # the suite must exercise the identity, not compare zeros
            assert stats["nonvacuous"] >= 20, (name, kind, stats)


@criterion(1, "identity suite, 200 seeded cases per identity and geometry")
def test_graded_commutator_on_0q_inputs_with_degree_two_xi():
    rng = seeded(11)
    nonzero = 0
    for i in range(100):
        kind = "chart" if i % 2 else "torus"
        g = Geometry(kind, rng.choice((2, 3)), 1, 4)
        xi = rand_xi(g, rng, k=2, tmax=2)
        w = rand_form(g, rng, [(0, q) for q in range(g.n - 1)], tmax=2)
        r = check_identity("I-kodd", {"xi": xi, "omega": w})
        assert r.holds
        nonzero += bool(r.lhs)
    assert nonzero >= 20


# 2 -------------------------------------------------------------------------

@criterion(2, "operator square law for the deformed Dolbeault operator")
def test_operator_square():
    rng = seeded(2)
    nonzero = 0
    for _ in range(100):
        g = rand_geometry(rng)
        xi = rand_xi(g, rng, tmax=2)
        w = rand_scalar_form(g, rng)
        lhs = dbar_xi_operator(xi, dbar_xi_operator(xi, w))
        rhs = -(lie(dbar(xi), w) - lie(bracket(xi, xi), w).scale(HALF))
        assert lhs == rhs
        nonzero += bool(lhs)
    assert nonzero >= 15


# 3 -------------------------------------------------------------------------

@criterion(3, "conjugation by e^<xi|> and the commutator identity for integrable xi")
def test_conjugation():
    rng = seeded(3)
    nonzero = 0
    for i in range(100):
        if i % 2:
            g = Geometry("torus", rng.choice((1, 2, 3)), rng.choice((1, 2)), 4)
            xi = integrable_xi(g, rng)
        else:
            g = Geometry("chart", rng.choice((1, 2, 3)), rng.choice((1, 2)), rng.randint(2, 4))
            xi = local_gauge_to_kuranishi(rand_vector_field(g, rng, terms=3)).xi
        assert not mc_residual(xi)
        w = rand_scalar_form(g, rng)
        d1, d2 = conjugation_defects(xi, w)
        assert not d1 and not d2
        nonzero += bool(dbar(w) - lie(xi, w, "holo"))
    assert nonzero >= 50


# 4 -------------------------------------------------------------------------

@criterion(4, "gauge flow equation and gauge covariance")
def test_gauge_flow_equation():
    rng = seeded(4)
    for _ in range(100):
        g = rand_geometry(rng)
        xi = rand_xi(g, rng, tmax=2)
        alpha = rand_vector_field(g, rng, terms=3)
        assert gauge_flow_defect(xi, alpha).is_zero()
        assert gauge_transform(xi, alpha, 0) == xi


@criterion(4, "gauge flow equation and gauge covariance")
def test_gauge_covariance_mod_ideal():
    rng = seeded(40)
    exact = 0
    for _ in range(50):
        g = Geometry("torus", rng.choice((1, 2, 3)), 1, 4)
        k = rng.choice((2, 3, 4))
        A = ideal(k)
        xi = integrable_mod(g, rng, k)
        assert is_integrable_mod(xi, A)
        exact += not mc_residual(xi)
        alpha = rand_vector_field(g, rng, terms=3)
        moved = gauge_transform(xi, alpha, 1)
        assert is_integrable_mod(moved, A)
    assert exact < 50


# 5 -------------------------------------------------------------------------

@criterion(5, "local gauge extraction")
def test_local_gauge_closed_form():
    for N in (2, 3, 4, 5):
        g = chart(1, 1, N)
        beta = (VForm.t(g) ^ VForm.term(g, 1, f=(0, 1))).with_value(1)
        expected = -(VForm.t(g) ^ VForm.dvb(g, 1)).with_value(1)
        assert local_gauge_to_kuranishi(beta).xi == expected


@criterion(5, "local gauge extraction")
def test_local_gauge_random():
    rng = seeded(5)
    nonzero = 0
    for _ in range(50):
        g = Geometry("chart", rng.choice((1, 2, 3)), rng.choice((1, 2)), rng.randint(2, 4))
        beta = rand_vector_field(g, rng, terms=3)
        xi = local_gauge_to_kuranishi(beta).xi
        assert not mc_residual(xi)
        for l in range(1, g.n + 1):
            assert not dbar_xi_operator(xi, exp_lie(-beta, _coordinate(g, l)))
        nonzero += bool(xi)
    assert nonzero >= 25


# 6 -------------------------------------------------------------------------

@criterion(6, "frame-commutator oracle agrees with the Maurer-Cartan residual")
def test_oracle_equivalence():
    g = torus(2, 1, 4)
    # calibration: a single character with beta_2 != 0
    cal = (VForm.t(g) ^ VForm.term(g, 1, f=(0, 1, 0, 0)) ^ VForm.dvb(g, 1)).with_value(1)
    res = mc_residual(cal)
    orc = frame_integrability_oracle(cal)
    assert res and orc
    (key, c_res), = res.terms.items()
    c = orc.terms[key] / c_res
    assert orc == res.scale(c)
    rng = seeded(6)
    zero = nonzero = 0
    for i in range(100):
        if i % 4 == 0:
            gg = Geometry("torus", rng.choice((1, 2, 3)), 1, 4)
            xi = integrable_xi(gg, rng)
        else:
            gg = rand_geometry(rng)
            xi = rand_xi(gg, rng, tmax=2)
        r = mc_residual(xi)
        o = frame_integrability_oracle(xi)
        assert (not o) == (not r)
        assert o == r.scale(c)
        zero += not r
        nonzero += bool(r)
    assert zero >= 25 and nonzero >= 25


# 7 -------------------------------------------------------------------------

@criterion(7, "torus Hodge homotopies are exact")
def test_hodge_homotopies():
    rng = seeded(7)
    for _ in range(100):
        g = Geometry("torus", rng.choice((1, 2, 3)), rng.choice((1, 2)), 4)
        w = rand_form(g, rng, [(p, q) for p in range(g.n + 1) for q in range(g.n + 1)], vector=rng.random() < 0.3)
        h = harmonic_projection(w)
        assert dbar(dbar_homotopy(w)) + dbar_homotopy(dbar(w)) + h == w
        assert delo(partial_homotopy(w)) + partial_homotopy(delo(w)) + h == w


@criterion(7, "torus Hodge homotopies are exact")
def test_harmonic_projection_kills_images():
    rng = seeded(70)
    nonzero = 0
    for _ in range(100):
        g = Geometry("torus", rng.choice((1, 2, 3)), 1, 4)
        w = rand_form(g, rng, [(p, q) for p in range(g.n + 1) for q in range(g.n + 1)])
        assert not harmonic_projection(dbar(w))
        assert not harmonic_projection(delo(w))
        nonzero += bool(dbar(w)) and bool(delo(w))
    assert nonzero >= 50


# 8 -------------------------------------------------------------------------

@criterion(8, "unobstructedness through order 5 on the 2-torus")
def test_unobstructed_through_order_five():
    rng = seeded(8)
    g = torus(2, 1, 5)
    corrected = 0
    for _ in range(20):
        xi1 = rand_tangent_cocycle(g, rng)
        assert harmonic_projection(xi1) and xi1 != harmonic_projection(xi1)
        xi, report = mc_solve(xi1, order=5)
        assert report.solved_to == 5
        assert [sum(m) for m, _ in report.entries] == [2, 3, 4, 5]
        assert report.is_zero()
        assert not mc_residual(xi)
        corrected += bool(xi.xi.t_part(2)) and bool(xi.xi.t_part(3))
    assert corrected >= 10


# 9 -------------------------------------------------------------------------

def _harmonic_basis(g, p, q):
    from itertools import combinations

    idx = range(1, g.n + 1)
    return [VForm.term(g, 1, I=I, J=J) for I in combinations(idx, p) for J in combinations(idx, q)]


@criterion(9, "pairing certificate for data integrable mod <t^3>")
def test_pairing_certificate():
    rng = seeded(9)
    g = torus(2, 1, 4)
    A = ideal(3)
    exact = 0
    for _ in range(20):
        xi = integrable_mod(g, rng, 3)
        exact += not mc_residual(xi)
        for p, q in ((1, 0), (2, 0), (1, 1)):
            for w0 in _harmonic_basis(g, p, q):
                cert = theorem41_certificate(xi, w0, A)
                assert cert.holds, (xi.render(), w0.render(), cert.failures())
                assert cert.lhs == cert.rhs
                assert cert.pairing.is_zero()
    assert exact < 20


@criterion(9, "pairing certificate for data integrable mod <t^3>")
def test_pairing_certificate_detects_fault_injection():
    rng = seeded(90)
    g = torus(2, 1, 4)
    A = ideal(3)
    for _ in range(10):
        xi = truncate_below(integrable_xi(g, rng), 3)
        # a t^2 term with nonconstant coefficient breaks integrability mod <t^3>
        fault = rand_xi(g, rng, tmin=2, tmax=2, terms=1)
        while not dbar(fault):
            fault = rand_xi(g, rng, tmin=2, tmax=2, terms=1)
        cert = theorem41_certificate(xi + fault, omega_std(g), A)
        assert not cert.holds
        assert cert.witness
        assert "integrable_mod_A" in cert.failures()
    # a harmonic residual injected into the class computation is reported as is
    synthetic = (VForm.t(g, power=2) ^ VForm.dvb(g, 1) ^ VForm.dvb(g, 2)).with_value(1).scale(3)
    report = obstruction_class(xi_a(g), ideal(2), inject=synthetic)
    assert report.entries == [((2,), synthetic)]


# 10 ------------------------------------------------------------------------

@criterion(10, "submanifold pairing certificate: positive family and shear fixture")
def test_subtorus_pairing_positive_family():
    rng = seeded(10)
    seen = 0
    for _ in range(20):
        n = rng.choice((2, 3))
        g = Geometry("torus", n, 1, 4)
        Y = Subtorus(g, [1])
        tan = y_tangent_xi(g, rng)
        # exact normal part: t^k delbar(g d/dv2) with g a character of v1
        k = rng.choice((1, 2))
        char = tuple(rng.choice((-1, 1)) if p == 0 else 0 for p in range(2 * n))
        exact = dbar(VForm.term(g, 1, f=char, t=(k,)).with_value(2))
        for xi, A in ((tan, ideal(rng.choice((1, 2)))), (exact, ideal(k))):
            for r in (1, 2):
                for w0 in vanishing_class_basis(Y, r):
                    cert = theorem43_certificate(xi, Y, w0, A)
                    assert cert.hypothesis_holds, (xi.render(), w0.render(), cert.to_json())
                    assert not cert.pairing_class
                    seen += 1
    assert seen >= 100


@criterion(10, "submanifold pairing certificate: positive family and shear fixture")
def test_subtorus_pairing_shear_fixture():
    g = torus(2, 1, 4)
    cert = theorem43_certificate(xi_a(g), [1], omega_std(g), ideal(1))
    assert cert.hypothesis_holds is False
    expected = VForm.t(g) ^ VForm.dv(g, 1) ^ VForm.dvb(g, 1)
    assert cert.pairing_class == expected


@criterion(10, "submanifold pairing certificate: positive family and shear fixture")
def test_subtorus_pairing_contract_on_solver_data():
    rng = seeded(100)
    holds = 0
    for _ in range(40):
        n = rng.choice((2, 3))
        g = Geometry("torus", n, 1, 4)
        xi = integrable_xi(g, rng, only={1} if rng.random() < 0.5 else None)
        Y = Subtorus(g, sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1))))
        A = ideal(rng.choice((1, 2)))
        r = rng.choice((1, 2))
        w0 = rng.choice(vanishing_class_basis(Y, r))
        try:
            cert = theorem43_certificate(xi, Y, w0, A)
        except NotSubmanifoldDeformation:
            continue
        assert cert.consistent
        holds += cert.hypothesis_holds
    assert holds >= 5


# 11 ------------------------------------------------------------------------

def _admissible_inputs(rng, wanted):
    out = []
    attempts = 0
    while len(out) < wanted:
        attempts += 1
        assert attempts < 50 * wanted
        n = rng.choice((2, 3))
        g = Geometry("torus", n, 1, 4)
        Y = Subtorus(g, [1])
        xi = y_tangent_xi(g, rng)
        A = ideal(rng.choice((2, 3)))
        basis = vanishing_class_basis(Y, rng.randint(1, 2))
        # classes containing dv1 pair with the d/dv1-valued data and get corrected
        moving = [b for b in basis if any(k[0][:1] == (1,) for k in b.terms)]
        w0 = rng.choice(moving if moving and rng.random() < 0.7 else basis)
        try:
            eps = pair_obstruction_cocycle(xi, Y, A).epsilon
            w = extend_class(xi, w0, A)
            result = theorem52_cochain_check(xi, eps, w0, w, A, Y)
        except (PreconditionFailed, NotSubmanifoldDeformation, NotIntegrableMod):
            continue
        out.append((xi, eps, w0, w, A, Y, result))
    return out


@criterion(11, "pair-obstruction cochain checks")
def test_cochain_chain_admissible_inputs():
    rng = seeded(11)
    cases = _admissible_inputs(rng, 20)
    nontrivial = 0
    for xi, eps, w0, w, A, Y, result in cases:
        assert result.holds, result.checks
        nontrivial += bool(xi - eps) and w != w0
    assert nontrivial >= 5


@criterion(11, "pair-obstruction cochain checks")
def test_cochain_chain_fixture():
    g = torus(2, 1, 4)
    w0 = VForm.dv(g, 2) ^ VForm.dvb(g, 2)
    assert theorem52_cochain_check(xi_a(g), xi_a(g), w0, w0, ideal(1), [1]).holds


@criterion(11, "pair-obstruction cochain checks")
def test_coboundary_squares_to_zero():
    rng = seeded(111)
    nonzero = 0
    for _ in range(50):
        n = rng.choice((2, 3))
        g = Geometry("torus", n, 1, 4)
        Y = Subtorus(g, sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1))))
        q = rng.randint(0, 1)
        alpha = Y.split(Y.restrict(rand_form(g, rng, [(0, q)], vector=True)))[1]
        beta = rand_form(g, rng, [(0, q + 1)], vector=True)
        a1, b1 = coboundary(alpha, beta, Y)
        a2, b2 = coboundary(a1, b1, Y)
        assert not a2 and not b2
        nonzero += bool(a1) or bool(b1)
    assert nonzero >= 25


@criterion(11, "pair-obstruction cochain checks")
def test_pair_cocycle_values_tangent_along_subtorus():
    rng = seeded(112)
    runs = 0
    for _ in range(40):
        n = rng.choice((2, 3))
        g = Geometry("torus", n, 1, 4)
        Y = Subtorus(g, sorted(rng.sample(range(1, n + 1), rng.randint(1, n - 1))))
        k = rng.choice((1, 2, 3))
        xi = integrable_mod(g, rng, k) if rng.random() < 0.5 else integrable_xi(g, rng)
        try:
            pc = pair_obstruction_cocycle(xi, Y, ideal(k))
        except NotSubmanifoldDeformation:
            continue
        assert pc.in_tangent_subsheaf
        runs += 1
    for xi, eps, w0, w, A, Y, _ in _admissible_inputs(seeded(113), 10):
        assert pair_obstruction_cocycle(xi, Y, A).in_tangent_subsheaf
        runs += 1
    assert runs >= 25


# 12 ------------------------------------------------------------------------

@criterion(12, "identical scenario and seed give byte-identical JSON")
@pytest.mark.parametrize(
    "doc",
    [
        {"command": "identities", "seed": 42, "count": 15},
        {"command": "pairing41", "ideal": "t^3", "definitions": {"xi": "t*dvb(1)@d(2) + t^2*E[i,0;i,0]*dvb(1)@d(1)"}},
        {"command": "mc-solve", "params": {"m": 1, "N": 5}},
        {"command": "pairing43"},
    ],
)
def test_determinism(tmp_path, doc):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    outs = []
    for run in range(2):
        out = tmp_path / f"out{run}.json"
        code = main(["--scenario", str(path), "--json", str(out)])
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    json.loads(outs[0])
