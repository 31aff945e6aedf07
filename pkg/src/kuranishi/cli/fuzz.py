"""Seeded fuzzing of the calculus identity suite.

Every case draws from its own generator seeded by (seed, identity, geometry,
case index), so reports do not depend on evaluation order and any single
case can be regenerated.
"""

import random

from ..calculus import DEGREE_ONE, IDENTITY_NAMES, check_identity
from ..forms import Geometry
from ..funring import CHART, TORUS
from ..generators import rand_form, rand_scalar_form, rand_xi
from .parser import parse_expression

DEFAULT_BOUNDS = {"n_max": 3, "N_max": 4, "terms_max": 5}
GEOMETRIES = (CHART, TORUS)

# identities where a mixed-degree first argument exercises the graded form
_MIXED = ("I-2.7.4", "I-2.7.7", "I-48.5")


def _bounds(bounds):
    b = dict(DEFAULT_BOUNDS)
    b.update(bounds or {})
    if not (1 <= b["n_max"] <= 3 and 3 <= b["N_max"] <= 4 and 1 <= b["terms_max"] <= 5):
        raise ValueError("fuzz bounds: n_max in 1..3, N_max in 3..4, terms_max in 1..5")
    return b


def case_rng(seed, name, kind, index):
    return random.Random(f"{seed}:{name}:{kind}:{index}")


def case_inputs(name, kind, rng, bounds=None):
    """Geometry and inputs for one identity case."""
    b = _bounds(bounds)
    n = rng.choice([k for k in (1, 2, 2, 3, 3) if k <= b["n_max"]])
    g = Geometry(kind, n, rng.choice((1, 1, 2)), rng.randint(3, b["N_max"]))
    tm = b["terms_max"]

    def terms():
        return rng.randint(1, tm)

    k = 1 if name in DEGREE_ONE else rng.choice((1, 2))
    xi = rand_xi(g, rng, k=min(k, n), tmax=1, terms=terms())
    k2 = 1 if name in DEGREE_ONE else rng.choice((0, 1, 2))
    xi2 = rand_xi(g, rng, k=min(k2, n), tmax=2, terms=terms())
    if name in _MIXED and n >= 2 and rng.random() < 0.3:
        xi = xi + rand_xi(g, rng, k=2, terms=min(2, tm), tmax=1)
    p_min = 2 if name == "I-2.7.00" and n >= 2 and rng.random() < 0.5 else 1
    bidegrees = [(p, q) for p in range(p_min, n + 1) for q in range(n + 1)]
    omega = rand_form(g, rng, bidegrees, tmax=1, terms=terms())
    eta = rand_scalar_form(g, rng, terms=rng.randint(1, min(3, tm)))
    return g, {"xi": xi, "xi2": xi2, "omega": omega, "eta": eta}


def _geom_json(g):
    return {"kind": g.kind, "n": g.n, "m": g.m, "N": g.N}


def fuzz_identities(seed, count, bounds=None, ops=None, names=None):
    """Run every identity on ``count`` cases per geometry; report pass counts and counterexamples."""
    names = list(names or IDENTITY_NAMES)
    per = {}
    counterexamples = []
    for name in names:
        per[name] = {}
        for kind in GEOMETRIES:
            passed = failed = nonvacuous = 0
            for i in range(count):
                g, inputs = case_inputs(name, kind, case_rng(seed, name, kind, i), bounds)
                r = check_identity(name, inputs, ops=ops)
                nonvacuous += bool(r.lhs) or bool(r.rhs)
                if r.holds:
                    passed += 1
                    continue
                failed += 1
                counterexamples.append(
                    {
                        "identity": name,
                        "geometry": _geom_json(g),
                        "case": i,
                        "inputs": {k: v.render() for k, v in sorted(inputs.items())},
                        "lhs": r.lhs.render(),
                        "rhs": r.rhs.render(),
                        "difference": r.witness.render(),
                    }
                )
            per[name][kind] = {"passed": passed, "failed": failed, "nonvacuous": nonvacuous}
    return {
        "seed": seed,
        "count": count,
        "identities": per,
        "counterexamples": counterexamples,
        "allPassed": not counterexamples,
    }


def replay_counterexample(ce, ops=None):
    """Re-parse a counterexample's inputs and evaluate the identity again."""
    gj = ce["geometry"]
    g = Geometry(gj["kind"], gj["n"], gj["m"], gj["N"])
    inputs = {k: parse_expression(v, g) for k, v in ce["inputs"].items()}
    return check_identity(ce["identity"], inputs, ops=ops)
