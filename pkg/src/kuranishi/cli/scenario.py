"""Scenario documents and command dispatch.

A scenario is a JSON object::

    {"geometry": {"kind": "torus", "n": 2},
     "params": {"m": 1, "N": 4},
     "definitions": {"xi": "t*dvb(1)@d(2)", "omega0": "dv(1)^dv(2)"},
     "command": "pairing41",
     "ideal": "t^3",
     "seed": 1, "count": 200,
     "subtorus": [1]}

Definitions are parsed in order and may refer to earlier names.  Missing
definitions fall back to the defaults below (the 2-torus with the constant
shear t dvb1 (x) d/dv2).
"""

import json
from dataclasses import dataclass, field

from .. import deformation as dfm
from .. import submanifold as sub
from ..calculus import dbar, delo, lie
from ..errors import KuranishiError, ParseError
from ..forms import Geometry
from ..funring import CHART, TORUS
from .fuzz import fuzz_identities
from .parser import parse_expression, parse_ideal

COMMANDS = (
    "identities",
    "mc-solve",
    "obstruction",
    "gauge",
    "pairing41",
    "pairing43",
    "pair-cocycle",
    "gm",
    "extend",
)

EXIT_OK = 0
EXIT_CERTIFICATE = 1
EXIT_PARSE = 2
EXIT_ENGINE = 3

DEFAULT_DEFINITIONS = {
    "xi": "t*dvb(1)@d(2)",
    "xi1": "dvb(1)@d(2) + E[i,0;i,0]*dvb(1)@d(1)",
    "omega0": "dv(1)^dv(2)",
    "omega": "dv(1)^dv(2)",
    "alpha": "t*E[i,0;i,0]@d(1)",
}

DEFAULT_IDEALS = {"pairing43": "t", "pair-cocycle": "t"}


@dataclass
class Scenario:
    geometry: Geometry
    command: str
    definitions: dict = field(default_factory=dict)
    texts: dict = field(default_factory=dict)
    ideal: str = "t^3"
    seed: int = 1
    count: int = 200
    subtorus: tuple = (1,)
    k: int = 1
    s: object = 1


def _fail(message):
    raise ParseError(message, 1, 1)


def scenario_from_dict(doc, overrides=None):
    """Build a Scenario; ``overrides`` holds command-line values that win over the document."""
    if not isinstance(doc, dict):
        _fail("scenario must be a JSON object")
    ov = {k: v for k, v in (overrides or {}).items() if v is not None}
    gdoc = doc.get("geometry", {})
    pdoc = doc.get("params", {})
    kind = gdoc.get("kind", TORUS)
    if kind not in (CHART, TORUS):
        _fail(f"geometry kind must be chart or torus, got {kind!r}")
    try:
        n = int(gdoc.get("n", 2))
        m = int(pdoc.get("m", 1))
        N = int(ov.get("order", pdoc.get("N", 4)))
        geom = Geometry(kind, n, m, N)
    except (TypeError, ValueError, KuranishiError) as exc:
        _fail(f"bad geometry: {exc}")
    command = ov.get("command", doc.get("command"))
    if command not in COMMANDS:
        _fail(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    texts = dict(DEFAULT_DEFINITIONS)
    defs_doc = doc.get("definitions", {})
    if not isinstance(defs_doc, dict):
        _fail("definitions must be an object of name -> expression")
    texts.update(defs_doc)
    texts.update(ov.get("define", {}))
    defs = {}
    for name, text in texts.items():
        if not isinstance(text, str):
            _fail(f"definition {name!r} must be a string")
        try:
            defs[name] = parse_expression(text, geom, env=defs)
        except KuranishiError as exc:
            if name not in defs_doc and name not in ov.get("define", {}):
                # a default that does not fit this geometry is dropped
                continue
            if isinstance(exc, ParseError):
                raise ParseError(f"in definition {name!r}: {exc.reason}", exc.line, exc.column) from None
            raise ParseError(f"in definition {name!r}: {exc}", 1, 1) from None
    return Scenario(
        geometry=geom,
        command=command,
        definitions=defs,
        texts=texts,
        ideal=ov.get("ideal", doc.get("ideal", DEFAULT_IDEALS.get(command, "t^3"))),
        seed=int(ov.get("seed", doc.get("seed", 1))),
        count=int(ov.get("count", doc.get("count", 200))),
        subtorus=tuple(doc.get("subtorus", (1,))),
        k=int(doc.get("k", 1)),
        s=doc.get("s", 1),
    )


def load_scenario(path, overrides=None):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"scenario is not valid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return scenario_from_dict(doc, overrides)


def _get(sc, name):
    if name not in sc.definitions:
        _fail(f"command {sc.command!r} needs a definition named {name!r}")
    return sc.definitions[name]


# ---------------------------------------------------------------------------
# commands: each returns (passes, payload)
# ---------------------------------------------------------------------------

def _cmd_identities(sc):
    report = fuzz_identities(sc.seed, sc.count)
    return report["allPassed"], report


def _cmd_mc_solve(sc):
    xi, report = dfm.mc_solve(_get(sc, "xi1"), order=sc.geometry.N)
    residual = dfm.mc_residual(xi)
    ok = report.is_zero() and not residual
    return ok, {
        "xi": xi.render(),
        "obstructions": report.to_json(),
        "solvedTo": report.solved_to,
        "residual": residual.render(),
    }


def _cmd_obstruction(sc):
    A = parse_ideal(sc.ideal, sc.geometry.m)
    report = dfm.obstruction_class(_get(sc, "xi"), A)
    return report.is_zero(), {"ideal": A.render(), "class": report.to_json()}


def _cmd_gauge(sc):
    xi, alpha = _get(sc, "xi"), _get(sc, "alpha")
    fam = dfm.gauge_transform(xi, alpha, None)
    defect = dfm.gauge_flow_defect(xi, alpha)
    at = fam.at(sc.s)
    payload = {"family": fam.render(), "at": at.render(), "s": str(sc.s), "flowHolds": defect.is_zero()}
    ok = defect.is_zero()
    if sc.ideal:
        A = parse_ideal(sc.ideal, sc.geometry.m)
        if dfm.is_integrable_mod(xi, A):
            cov = dfm.is_integrable_mod(at, A)
            payload["covariant"] = cov
            ok = ok and cov
    return ok, payload


def _cmd_pairing41(sc):
    A = parse_ideal(sc.ideal, sc.geometry.m)
    cert = dfm.theorem41_certificate(_get(sc, "xi"), _get(sc, "omega0"), A)
    payload = cert.to_json()
    payload["ideal"] = A.render()
    return cert.holds, payload


def _cmd_pairing43(sc):
    A = parse_ideal(sc.ideal, sc.geometry.m)
    cert = sub.theorem43_certificate(_get(sc, "xi"), sc.subtorus, _get(sc, "omega0"), A)
    payload = cert.to_json()
    payload["ideal"] = A.render()
    payload["consistent"] = cert.consistent
    return cert.consistent, payload


def _cmd_pair_cocycle(sc):
    A = parse_ideal(sc.ideal, sc.geometry.m)
    pc = sub.pair_obstruction_cocycle(_get(sc, "xi"), sc.subtorus, A)
    payload = pc.to_json()
    payload["ideal"] = A.render()
    return pc.in_tangent_subsheaf, payload


def _cmd_gm(sc):
    first, second = dfm.gauss_manin(_get(sc, "xi"), _get(sc, "omega"), sc.k)
    return True, {"k": sc.k, "preserving": first.render(), "shift": second.render()}


def _cmd_extend(sc):
    A = parse_ideal(sc.ideal, sc.geometry.m)
    xi = _get(sc, "xi")
    w = dfm.extend_class(xi, _get(sc, "omega0"), A)
    defect = (dbar(w) - lie(xi, w, "holo")).terms_outside(A)
    closed = not delo(w)
    return not defect and closed, {
        "ideal": A.render(),
        "extension": w.render(),
        "flatModIdeal": not defect,
        "delClosed": closed,
    }


_DISPATCH = {
    "identities": _cmd_identities,
    "mc-solve": _cmd_mc_solve,
    "obstruction": _cmd_obstruction,
    "gauge": _cmd_gauge,
    "pairing41": _cmd_pairing41,
    "pairing43": _cmd_pairing43,
    "pair-cocycle": _cmd_pair_cocycle,
    "gm": _cmd_gm,
    "extend": _cmd_extend,
}


def run_scenario(sc):
    """Run a Scenario; returns (report dict, exit code)."""
    g = sc.geometry
    report = {
        "command": sc.command,
        "geometry": {"kind": g.kind, "n": g.n, "m": g.m, "N": g.N},
    }
    try:
        ok, payload = _DISPATCH[sc.command](sc)
    except ParseError as exc:
        report.update(status="parse-error", error={"type": "ParseError", "message": str(exc)})
        return report, EXIT_PARSE
    except KuranishiError as exc:
        report.update(status="engine-error", error={"type": type(exc).__name__, "message": str(exc)})
        return report, EXIT_ENGINE
    report["result"] = payload
    report["status"] = "pass" if ok else "fail"
    return report, EXIT_OK if ok else EXIT_CERTIFICATE


def dumps(report):
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
