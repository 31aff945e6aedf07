"""Coordinate subtori Y0 = {v_j = 0 : j not in S} of a flat torus.

Restricted forms keep the ambient index labels, so the ambient operators
(delbar, brackets, the harmonic projection, G) act on them as the Y0-level
operators.  The normal bundle is trivial, spanned by d/dv_j for j not in S.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .calculus import bracket, contract, dbar, delo, exp_contract, lie
from .deformation import (
    ObstructionReport,
    _form,
    _quotient_basis_checked,
    extend_class,
    mc_residual,
)
from .errors import (
    CocycleViolation,
    NotIntegrableMod,
    NotSubmanifoldDeformation,
    PreconditionFailed,
    WrongGeometry,
)
from .forms import Geometry, VForm, pullback_projection, restrict_subtorus, split_values
from .funring import TORUS
from .hodge import harmonic_projection

HALF = Fraction(1, 2)


class Subtorus:
    """The coordinate subtorus cut out by v_j = 0 for j outside ``tangential``."""

    __slots__ = ("geom", "tangential", "normal")

    def __init__(self, geom, tangential):
        if geom.kind != TORUS:
            raise WrongGeometry("subtori live in the torus geometry")
        S = tuple(sorted(set(tangential)))
        if not S or S[0] < 1 or S[-1] > geom.n:
            raise ValueError(f"tangential indices must be a nonempty subset of 1..{geom.n}")
        self.geom = geom
        self.tangential = S
        self.normal = tuple(j for j in range(1, geom.n + 1) if j not in S)

    @property
    def dimension(self):
        return len(self.tangential)

    def intrinsic_geometry(self):
        g = self.geom
        return Geometry(TORUS, len(self.tangential), g.m, g.N)

    def restrict(self, w):
        return restrict_subtorus(w, self.tangential)

    def split(self, w):
        """(tangential-valued, normal-valued) parts of w, without restricting."""
        return split_values(w, self.tangential)

    def __eq__(self, other):
        return isinstance(other, Subtorus) and (self.geom, self.tangential) == (other.geom, other.tangential)

    def __hash__(self):
        return hash((self.geom, self.tangential))

    def __repr__(self):
        return f"Subtorus(n={self.geom.n}, S={set(self.tangential)})"


def _subtorus(Y, geom):
    if isinstance(Y, Subtorus):
        return Y
    return Subtorus(geom, Y)


@dataclass(frozen=True)
class SplitKuranishi:
    """restrict(xi) = tangential + normal, with normal in the ideal ``ideal``."""

    tangential: VForm
    normal: VForm
    ideal: object
    subtorus: Subtorus

    def restricted(self):
        return self.tangential + self.normal


def split_tangent_normal(xi, Y, A):
    xi = _form(xi)
    Y = _subtorus(Y, xi.geom)
    tan, nor = split_values(Y.restrict(xi), Y.tangential)
    bad = nor.terms_outside(A)
    if bad:
        raise NotSubmanifoldDeformation(
            f"normal part has terms outside {A.render()}: {bad.render()}", bad
        )
    return SplitKuranishi(tangential=tan, normal=nor, ideal=A, subtorus=Y)


def submanifold_obstruction(xi, Y, A):
    """Y0-harmonic class of the normal part on the monomials spanning A / mA."""
    xi = _form(xi)
    g = xi.geom
    Y = _subtorus(Y, g)
    basis = _quotient_basis_checked(A, g)
    sp = split_tangent_normal(xi, Y, A)
    mA = A.times_maximal()
    res = mc_residual(xi).terms_outside(mA)
    if res:
        raise NotIntegrableMod(f"ambient residual has terms outside {mA.render()}: {res.render()}")
    closed = dbar(sp.normal).reduce_mod(mA)
    if closed:
        raise CocycleViolation(f"delbar of the normal part is nonzero mod mA: {closed.render()}")
    h = harmonic_projection(sp.normal)
    return ObstructionReport(entries=[(mono, h.t_monomial_part(mono)) for mono in basis], solved_to=None)


def vanishing_class_basis(Y, r):
    """Constant monomial r-forms whose restriction to Y vanishes.

    These span the kernel of restriction H^r(M0) -> H^r(Y0) on harmonic forms.
    """
    g = Y.geom
    idx = range(1, g.n + 1)
    out = []
    for p in range(r + 1):
        q = r - p
        if p > g.n or q > g.n:
            continue
        for I in combinations(idx, p):
            for J in combinations(idx, q):
                if all(i in Y.tangential for i in I + J):
                    continue
                out.append(VForm.term(g, 1, I=I, J=J))
    return out


@dataclass
class SubtorusPairingCertificate:
    hypothesis_holds: bool
    pairing_class: VForm
    witnesses: dict = field(default_factory=dict)

    @property
    def consistent(self):
        """The implication hypothesis => zero pairing."""
        return not self.hypothesis_holds or not self.pairing_class

    def to_json(self):
        return {
            "hypothesisHolds": self.hypothesis_holds,
            "pairingClass": self.pairing_class.render(),
            "witnesses": {k: v.render() for k, v in self.witnesses.items()},
        }


def _check_vanishing_class(w0, Y):
    if w0.is_vector_valued() or w0.t_orders() not in ([], [0]):
        raise PreconditionFailed("omega0 is a t-free scalar form", w0)
    if harmonic_projection(w0) != w0:
        raise PreconditionFailed("omega0 is harmonic", w0 - harmonic_projection(w0))
    r = harmonic_projection(Y.restrict(w0))
    if r:
        raise PreconditionFailed("omega0 restricts to zero in the cohomology of Y0", r)


def theorem43_certificate(xi, Y, w0, A):
    """Hypothesis check for the vanishing classes deforming, and the pairing class.

    Hypothesis, evaluated mod mA: every basis class kappa of the restriction
    kernel in the degree of w0 has a flat extension w_kappa, and the
    restriction of e^{<xi|>} w_kappa to Y0 has zero harmonic part.
    Pairing class: the harmonic part of <xi''|w0> restricted to Y0, mod mA.
    """
    xi = _form(xi)
    g = xi.geom
    Y = _subtorus(Y, g)
    _check_vanishing_class(w0, Y)
    sp = split_tangent_normal(xi, Y, A)
    mA = A.times_maximal()
    witnesses = {}
    degrees = w0.degrees()
    r = degrees[0] if degrees else 0
    for kappa in vanishing_class_basis(Y, r):
        name = kappa.render()
        w = extend_class(xi, kappa, mA, strict=False)
        defect = (dbar(w) - lie(xi, w, "holo")).reduce_mod(mA)
        if defect:
            witnesses[f"extension {name}"] = defect
            continue
        h = harmonic_projection(Y.restrict(exp_contract(xi, w))).reduce_mod(mA)
        if h:
            witnesses[f"restriction {name}"] = h
    pairing = harmonic_projection(Y.restrict(contract(sp.normal, w0))).reduce_mod(mA)
    return SubtorusPairingCertificate(hypothesis_holds=not witnesses, pairing_class=pairing, witnesses=witnesses)


@dataclass(frozen=True)
class PairCocycle:
    """Normal part of xi on Y0 and the ambient residual (both mod mA), with the epsilon-split."""

    pair_first: VForm
    pair_second: VForm
    epsilon: VForm
    combined: VForm
    normal_defect: VForm

    @property
    def in_tangent_subsheaf(self):
        """True when combined has no normal components on Y0."""
        return not self.normal_defect

    def to_json(self):
        return {
            "pairFirst": self.pair_first.render(),
            "pairSecond": self.pair_second.render(),
            "epsilon": self.epsilon.render(),
            "combined": self.combined.render(),
            "inTangentSubsheaf": self.in_tangent_subsheaf,
        }


def pair_obstruction_cocycle(xi, Y, A):
    """The cocycle (xi'' on Y0, delbar xi - 1/2 [xi,xi]) and delbar(xi - eps) - 1/2 [xi,xi].

    eps is xi'' pulled back along the product projection onto Y0, so xi - eps
    is tangent to Y0 along Y0 modulo A.
    """
    xi = _form(xi)
    g = xi.geom
    Y = _subtorus(Y, g)
    sp = split_tangent_normal(xi, Y, A)
    res = mc_residual(xi)
    outside = res.terms_outside(A)
    if outside:
        raise NotIntegrableMod(f"residual has terms outside {A.render()}: {outside.render()}")
    mA = A.times_maximal()
    eps = pullback_projection(sp.normal, Y.tangential)
    combined = (dbar(xi - eps) - bracket(xi, xi).scale(HALF)).reduce_mod(mA)
    normal_defect = Y.split(Y.restrict(combined))[1]
    return PairCocycle(
        pair_first=sp.normal.reduce_mod(mA),
        pair_second=res.reduce_mod(mA),
        epsilon=eps,
        combined=combined,
        normal_defect=normal_defect,
    )


def coboundary(alpha, beta, Y):
    """delta(alpha, beta) = (-delbar alpha + normal part of beta on Y0, delbar beta)."""
    g = beta.geom
    Y = _subtorus(Y, g)
    normal = Y.split(Y.restrict(beta))[1]
    return -dbar(alpha) + normal, dbar(beta)


@dataclass
class CochainCheck:
    holds: bool
    checks: dict

    @property
    def witness(self):
        for w in self.checks.values():
            if w:
                return w
        return None

    def __bool__(self):
        return self.holds


def theorem52_cochain_check(xi, eps, w0, w, A, Y):
    """Verify [xi', xi'] = [xi, xi] and the final congruence mod mA, with xi' = xi - eps.

    Congruence: delbar<xi'|w> + 1/2 del<xi'|<xi'|w>> = delbar<xi'|w0> - 1/2 <[xi,xi]|w0>.
    Preconditions (PreconditionFailed otherwise): del w = 0, w extends w0 mod A,
    and w restricts to zero on Y0 mod A.
    """
    xi = _form(xi)
    g = xi.geom
    Y = _subtorus(Y, g)
    mA = A.times_maximal()
    dw = delo(w)
    if dw:
        raise PreconditionFailed("del w = 0", dw)
    base = w.at_t_zero() - w0
    if base:
        raise PreconditionFailed("w reduces to w0 at t = 0", base)
    ext = (dbar(w) - lie(xi, w, "holo")).terms_outside(A)
    if ext:
        raise PreconditionFailed("w is a flat extension mod A", ext)
    rw = Y.restrict(w).reduce_mod(A)
    if rw:
        raise PreconditionFailed("w restricts to zero on Y0 mod A", rw)
    xp = xi - eps
    br = bracket(xi, xi)
    lhs = dbar(contract(xp, w)) + delo(contract(xp, contract(xp, w))).scale(HALF)
    rhs = dbar(contract(xp, w0)) - contract(br, w0).scale(HALF)
    checks = {
        "bracket_congruence": (bracket(xp, xp) - br).reduce_mod(mA),
        "final_congruence": (lhs - rhs).reduce_mod(mA),
    }
    return CochainCheck(holds=all(not v for v in checks.values()), checks=checks)
