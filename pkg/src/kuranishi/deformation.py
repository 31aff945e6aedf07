"""Deformation engine: integrability, gauge actions, the Maurer-Cartan solver,
obstruction classes, Gauss-Manin and flat extension of harmonic classes.

Kuranishi data are (0,1) forms with values in the holomorphic frame and no
t-constant term.  Functions here accept either a ``KuranishiData`` or the
underlying ``VForm``.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import (
    SPolynomial,
    ad_series,
    bracket,
    contract,
    dbar,
    delo,
    exp_contract,
    exp_lie,
    lie,
)
from .errors import (
    CocycleViolation,
    DegreeMismatch,
    NotCocycle,
    NotIntegrableMod,
    NotNilpotent,
    ObstructedExtension,
    ParamMismatch,
    PreconditionFailed,
    WrongGeometry,
)
from .forms import VForm, _acc
from .funring import CHART, TORUS, key_deriv
from .hodge import dbar_homotopy, harmonic_projection
from .scalars import ideal_quotient_basis, monomials_of_degree, render_tmono

HALF = Fraction(1, 2)


class KuranishiData:
    """A (0,1) form with values in the holomorphic frame and no t-constant term."""

    __slots__ = ("xi",)

    def __init__(self, xi):
        if not isinstance(xi, VForm):
            raise TypeError("KuranishiData wraps a VForm")
        for (I, J, a, f, t) in xi.terms:
            if I or len(J) != 1 or not a:
                raise DegreeMismatch("Kuranishi data must be a (0,1) vector-valued form")
            if not any(t):
                raise NotNilpotent("Kuranishi data must not have a t-constant term")
        self.xi = xi

    @property
    def geom(self):
        return self.xi.geom

    def __eq__(self, other):
        if isinstance(other, KuranishiData):
            return self.xi == other.xi
        if isinstance(other, VForm):
            return self.xi == other
        return NotImplemented

    def __hash__(self):
        return hash(self.xi)

    def render(self):
        return self.xi.render()

    __str__ = render

    def __repr__(self):
        return f"KuranishiData({self.xi.render()!r})"


def _form(x):
    return x.xi if isinstance(x, KuranishiData) else x


def _require(geom, kind, what):
    if geom.kind != kind:
        raise WrongGeometry(f"{what} needs the {kind} geometry, got {geom.kind}")


@dataclass
class ObstructionReport:
    """Harmonic forms indexed by t-monomials, plus the order up to which data were solved."""

    entries: list = field(default_factory=list)
    solved_to: object = None

    def is_zero(self):
        return all(not h for _, h in self.entries)

    def nonzero(self):
        return [(m, h) for m, h in self.entries if h]

    def total(self, geom):
        out = VForm.zero(geom)
        for _, h in self.entries:
            out = out + h
        return out

    def to_json(self):
        return [
            {"monomial": render_tmono(m) or "1", "harmonicForm": h.render(), "isZero": not h}
            for m, h in self.entries
        ]


# ---------------------------------------------------------------------------
# integrability
# ---------------------------------------------------------------------------

def mc_residual(xi):
    """delbar xi - 1/2 [xi, xi]."""
    xi = _form(xi)
    return dbar(xi) - bracket(xi, xi).scale(HALF)


def is_integrable_mod(xi, A):
    return mc_residual(xi).in_ideal(A)


def _partial(F, j, holo):
    """Partial derivative of a scalar 0-form along v_j or vb_j."""
    kind = F.geom.kind
    out = {}
    for (I, J, a, f, t), c in F.terms.items():
        r = key_deriv(kind, f, j, holo)
        if r is not None:
            x, y, nf = r
            _acc(out, (I, J, a, nf, t), c.mul_gauss(x, y))
    return F._new(out)


def frame_integrability_oracle(xi):
    """Failure tensor of the frame X_k = d/dvb_k - sum_l h^l_k d/dv_l.

    Uses only directional derivatives of the coefficient functions h^l_k
    (never the bracket routine).  With F^r_{jk} the pairing of the coframe
    dv^r + sum_s h^r_s dvb^s with [X_j, X_k], returns
    sum_{j,k,r} F^r_{jk} dvb_k ^ dvb_j (x) d/dv_r.
    """
    xi = _form(xi)
    g = xi.geom
    n = g.n
    h = {}
    for (I, J, a, f, t), c in xi.terms.items():
        if I or len(J) != 1 or not a:
            raise DegreeMismatch("the frame oracle takes a (0,1) vector-valued form")
        key = (J[0], a)
        h.setdefault(key, {})[((), (), 0, f, t)] = c
    H = {key: VForm(g, terms) for key, terms in h.items()}
    zero = VForm.zero(g)

    def coeff(k, r):
        return H.get((k, r), zero)

    def X(k, F):
        out = _partial(F, k, False)
        for l in range(1, n + 1):
            hl = coeff(k, l)
            if hl:
                out = out - (hl ^ _partial(F, l, True))
        return out

    out = zero
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if j == k:
                continue
            for r in range(1, n + 1):
                # [X_j, X_k](v_r) with X_k(v_r) = -h^r_k; the conjugate coordinates
                # go to constants under every X, so the dvb-part of the commutator is 0
                # and the coframe pairing picks out the d/dv_r component alone.
                F = X(k, coeff(j, r)) - X(j, coeff(k, r))
                if F:
                    out = out + (F ^ VForm.dvb(g, k) ^ VForm.dvb(g, j)).with_value(r)
    return out


# ---------------------------------------------------------------------------
# deformed operators
# ---------------------------------------------------------------------------

def dbar_xi_operator(xi, w):
    """D_xi(w) = delbar w - L_xi w."""
    xi = _form(xi)
    return dbar(w) - lie(xi, w)


def conjugation_defects(xi, w):
    """Both sides' differences for the conjugation identity and the commutator identity.

    Returns (d1, d2) with
      d1 = (delbar - L^{1,0}_xi) w - e^{-<xi|>} (delbar - L_xi) e^{<xi|>} w,
      d2 = (D_xi + delbar) e^{<xi|>} w - e^{<xi|>} (D_xi + delbar) w.
    Both vanish when xi is integrable; in general d1 = -2 <residual|w>.
    """
    xi = _form(xi)
    ew = exp_contract(xi, w)
    left = dbar(w) - lie(xi, w, "holo")
    right = exp_contract(-xi, dbar_xi_operator(xi, ew))
    d1 = left - right

    def op(x):
        return dbar_xi_operator(xi, x) + dbar(x)

    d2 = op(ew) - exp_contract(xi, op(w))
    return d1, d2


def conjugated_operator_check(xi, w):
    d1, d2 = conjugation_defects(xi, w)
    return not d1 and not d2


def _coordinate(geom, l):
    key = [0] * (2 * geom.n)
    key[l - 1] = 1
    return VForm.term(geom, 1, f=tuple(key))


def local_gauge_to_kuranishi(beta):
    """Kuranishi data xi with D_xi(e^{-L_beta} v_l) = 0 for every coordinate v_l.

    Equivalently L_xi = [delbar, e^{-L_beta}] e^{L_beta}; it is read off from
    L_xi(v_l) = -e^{-L_beta} delbar e^{L_beta}(v_l) = sum_k h^l_k dvb_k.
    """
    beta = _form(beta)
    g = beta.geom
    _require(g, CHART, "local gauge extraction")
    if beta.has_t_constant():
        raise NotNilpotent("beta must lie in the maximal ideal")
    minus = -beta
    out = VForm.zero(g)
    for l in range(1, g.n + 1):
        y = -exp_lie(minus, dbar(exp_lie(beta, _coordinate(g, l))))
        if any(I or len(J) != 1 for (I, J, _, _, _) in y.terms):
            raise DegreeMismatch("gauge operator did not produce a (0,1) form")
        out = out + y.with_value(l)
    return KuranishiData(out)


# ---------------------------------------------------------------------------
# gauge action
# ---------------------------------------------------------------------------

def _check_vector_field(alpha):
    for (I, J, a, f, t) in alpha.terms:
        if I or J or not a:
            raise DegreeMismatch("alpha must be a (0,0) vector-valued form")
    if alpha.has_t_constant():
        raise NotNilpotent("alpha must lie in the maximal ideal")


def gauge_family(xi, alpha):
    """xi_s = exp([s alpha, ]) xi + ((exp([s alpha, ]) - 1)/[s alpha, ]) (s delbar alpha), as an SPolynomial."""
    xi = _form(xi)
    _check_vector_field(alpha)
    g = alpha.geom
    first = ad_series(alpha, xi) if xi else []
    second = ad_series(alpha, dbar(alpha), divided=True)
    size = max(len(first), len(second) + 1)
    coeffs = []
    for k in range(size):
        c = first[k] if k < len(first) else VForm.zero(g)
        if 1 <= k <= len(second):
            c = c + second[k - 1]
        coeffs.append(c)
    return SPolynomial(g, coeffs)


def gauge_transform(xi, alpha, s=1):
    """Gauge action of the vector field series alpha at parameter s (None for the polynomial)."""
    fam = gauge_family(xi, alpha)
    if s is None:
        return fam
    return fam.at(s)


def gauge_flow_defect(xi, alpha):
    """d/ds xi_s - (delbar alpha + [alpha, xi_s]) as an SPolynomial; zero when the flow holds."""
    fam = gauge_family(xi, alpha)
    g = alpha.geom
    rhs = fam.map(lambda c: bracket(alpha, c)) + SPolynomial(g, [dbar(alpha)])
    return fam.derivative() - rhs


# ---------------------------------------------------------------------------
# Maurer-Cartan solver and obstructions
# ---------------------------------------------------------------------------

def reembed(w, geom):
    """The same terms in a geometry with another truncation order."""
    if (w.geom.kind, w.geom.n, w.geom.m) != (geom.kind, geom.n, geom.m):
        raise ParamMismatch("can only change the truncation order")
    return VForm(geom, {k: v for k, v in w.terms.items() if sum(k[4]) <= geom.N})


def _first_order(xi1):
    g = xi1.geom
    for (I, J, a, f, t) in xi1.terms:
        if I or len(J) != 1 or not a:
            raise DegreeMismatch("first-order datum must be a (0,1) vector-valued form")
    orders = xi1.t_orders()
    if orders == [0]:
        if g.m != 1:
            raise ParamMismatch("a t-free first-order datum needs a single parameter")
        return xi1.mul_t((1,))
    if orders and orders != [1]:
        raise ParamMismatch("first-order datum must be t-free or homogeneous of t-degree 1")
    return xi1


def mc_solve(xi1, order=None, inject=None):
    """Solve delbar xi = 1/2 [xi, xi] order by order with xi_k = G(1/2 sum [xi_i, xi_j]).

    ``inject`` maps an order d to a form added to that order's right-hand side
    (fault injection for exercising the obstruction path).  The recursion stops
    at the first order whose right-hand side has a nonzero harmonic part.
    """
    xi1 = _form(xi1)
    g = xi1.geom
    _require(g, TORUS, "mc_solve")
    if order is not None and order != g.N:
        g = g.with_order(order)
        xi1 = reembed(xi1, g)
    first = _first_order(xi1)
    if dbar(first):
        raise NotCocycle(f"first-order datum is not delbar-closed: delbar = {dbar(first).render()}")
    inject = inject or {}
    parts = {1: first}
    report = ObstructionReport(entries=[], solved_to=g.N)
    for deg in range(2, g.N + 1):
        y = VForm.zero(g)
        for i in range(1, deg):
            y = y + bracket(parts[i], parts[deg - i])
        y = y.scale(HALF).t_part(deg)
        if deg in inject:
            extra = reembed(inject[deg], g)
            if extra != extra.t_part(deg):
                raise ValueError(f"injected form for order {deg} must be homogeneous of t-degree {deg}")
            y = y + extra
        o = harmonic_projection(y)
        for mono in monomials_of_degree(g.m, deg):
            report.entries.append((mono, o.t_monomial_part(mono)))
        if o:
            report.solved_to = deg - 1
            break
        parts[deg] = dbar_homotopy(y)
    total = VForm.zero(g)
    for p in parts.values():
        total = total + p
    return KuranishiData(total), report


def _quotient_basis_checked(A, geom):
    basis = ideal_quotient_basis(A)
    if A.m != geom.m:
        raise ParamMismatch("ideal and geometry have different parameter counts")
    if any(sum(b) > geom.N for b in basis):
        raise ParamMismatch(f"truncation order {geom.N} is too small for {A.render()}")
    return basis


def obstruction_class(xi, A, inject=None):
    """Harmonic class of the residual on the monomials spanning A / mA.

    ``inject`` is added to the residual before the class is taken (fault injection).
    """
    xi = _form(xi)
    g = xi.geom
    _require(g, TORUS, "obstruction_class")
    basis = _quotient_basis_checked(A, g)
    res = mc_residual(xi)
    if inject is not None:
        res = res + inject
    outside = res.terms_outside(A)
    if outside:
        raise NotIntegrableMod(f"residual has terms outside {A.render()}: {outside.render()}")
    mA = A.times_maximal()
    closed = dbar(res).reduce_mod(mA)
    if closed:
        raise CocycleViolation(f"delbar of the residual is nonzero mod mA: {closed.render()}")
    h = harmonic_projection(res)
    entries = [(mono, h.t_monomial_part(mono)) for mono in basis]
    return ObstructionReport(entries=entries, solved_to=None)


# ---------------------------------------------------------------------------
# Gauss-Manin and flat extension
# ---------------------------------------------------------------------------

def gauss_manin(xi, w, k):
    """(e^{<xi|>} dw/dt_k, e^{<xi|>} <dxi/dt_k | w>)."""
    xi = _form(xi)
    if not 1 <= k <= xi.geom.m:
        raise ValueError(f"parameter index {k} out of range")
    first = exp_contract(xi, w.t_derivative(k))
    second = exp_contract(xi, contract(xi.t_derivative(k), w))
    return first, second


def _check_harmonic_class(w0):
    if w0.is_vector_valued():
        raise PreconditionFailed("omega0 is scalar-valued")
    if len(w0.bidegrees()) > 1:
        raise PreconditionFailed("omega0 has a single bidegree")
    if w0.t_orders() not in ([], [0]):
        raise PreconditionFailed("omega0 is independent of t")
    if harmonic_projection(w0) != w0:
        raise PreconditionFailed("omega0 is harmonic")


def extend_class(xi, w0, A, strict=True):
    """Extend a harmonic (p,q) form w0 to w with (delbar - L^{1,0}_xi) w = 0 mod A and del w = 0.

    Order by order on monomials outside A: w_K = G(sum_{J+I=K} L^{1,0}_{xi_J} w_I).
    With ``strict`` the solvability of each step is checked and a failure
    raises ObstructedExtension; otherwise the G-image is used regardless.
    """
    xi = _form(xi)
    g = xi.geom
    _require(g, TORUS, "extend_class")
    if A.m != g.m:
        raise ParamMismatch("ideal and geometry have different parameter counts")
    _check_harmonic_class(w0)
    if strict:
        outside = mc_residual(xi).terms_outside(A)
        if outside:
            raise NotIntegrableMod(f"residual has terms outside {A.render()}: {outside.render()}")
    w = w0
    for deg in range(1, g.N + 1):
        y = lie(xi, w, "holo").t_part(deg).terms_outside(A)
        if not y:
            continue
        if strict:
            dy = dbar(y)
            if dy:
                raise ObstructedExtension(f"order {deg} right-hand side is not delbar-closed", witness=dy)
            h = harmonic_projection(y)
            if h:
                raise ObstructedExtension(f"order {deg} right-hand side has a harmonic part", witness=h)
        w = w + dbar_homotopy(y)
    return w


@dataclass
class PairingCertificate:
    """Both sides of the final congruence (mod mA), the pairing class, and all sub-checks.

    ``checks`` maps a check name to its defect form; a check passes when the defect is 0.
    ``inner_w0_defect`` is the congruence defect when w0 replaces w inside the
    del-term; it is informational and does not enter ``holds``.
    """

    lhs: VForm
    rhs: VForm
    pairing: ObstructionReport
    checks: dict
    extension: VForm
    inner_w0_defect: VForm = None

    @property
    def holds(self):
        return all(not w for w in self.checks.values()) and self.pairing.is_zero()

    def failures(self):
        out = [name for name, w in self.checks.items() if w]
        if not self.pairing.is_zero():
            out.append("pairing")
        return out

    @property
    def witness(self):
        for name, w in self.checks.items():
            if w:
                return w
        if not self.pairing.is_zero():
            return self.pairing.total(self.lhs.geom)
        return VForm.zero(self.lhs.geom)

    def to_json(self):
        return {
            "holds": self.holds,
            "lhs": self.lhs.render(),
            "rhs": self.rhs.render(),
            "pairing": self.pairing.to_json(),
            "checks": {name: {"passes": not w, "defect": w.render()} for name, w in self.checks.items()},
            "failures": self.failures(),
        }


def _congruence_sides(xi, w, w0, mA, inner=None):
    """Both sides of the final congruence of the pairing argument, reduced mod mA.

    lhs = delbar<xi|w> + 1/2 del<xi|<xi|inner>>, rhs = delbar<xi|w0> - 1/2 <[xi,xi]|w0>.
    The congruence holds with inner = w (the extension).  With inner = w0 it
    can fail for (p,0) classes, p >= 2: <xi|<xi|w - w0>> is of t-order 3.
    """
    inner = w if inner is None else inner
    lhs = dbar(contract(xi, w)) + delo(contract(xi, contract(xi, inner))).scale(HALF)
    rhs = dbar(contract(xi, w0)) - contract(bracket(xi, xi), w0).scale(HALF)
    return lhs.reduce_mod(mA), rhs.reduce_mod(mA)


def theorem41_certificate(xi, w0, A):
    """Certificate that the class of <[xi,xi]|w0> vanishes in A/mA for xi integrable mod A.

    Checks: integrability mod A, the extension property, del-closedness of the
    extension, the intermediate contraction identity, the final congruence
    mod mA, and the pairing class itself.
    """
    xi = _form(xi)
    g = xi.geom
    _require(g, TORUS, "theorem41_certificate")
    basis = _quotient_basis_checked(A, g)
    mA = A.times_maximal()
    w = extend_class(xi, w0, A, strict=False)
    res = mc_residual(xi)
    br = bracket(xi, xi)
    cxw = contract(xi, w)
    ccw = contract(xi, contract(xi, w))
    e1 = contract(br, w).scale(HALF)
    e2 = contract(xi, delo(cxw)) - delo(ccw).scale(HALF)
    e3 = -contract(xi, lie(xi, w, "holo")) - delo(ccw).scale(HALF)
    lhs, rhs = _congruence_sides(xi, w, w0, mA)
    lhs0, rhs0 = _congruence_sides(xi, w, w0, mA, inner=w0)
    checks = {
        "integrable_mod_A": res.terms_outside(A),
        "extension_mod_A": (dbar(w) - lie(xi, w, "holo")).terms_outside(A),
        "extension_del_closed": delo(w),
        "contraction_identity_first": (e1 - e2).reduce_mod(mA),
        "contraction_identity_second": (e2 - e3).reduce_mod(mA),
        "final_congruence": lhs - rhs,
    }
    h = harmonic_projection(contract(br, w0))
    pairing = ObstructionReport(entries=[(mono, h.t_monomial_part(mono)) for mono in basis], solved_to=None)
    return PairingCertificate(
        lhs=lhs, rhs=rhs, pairing=pairing, checks=checks, extension=w, inner_w0_defect=lhs0 - rhs0
    )
