"""Operator calculus on vector-valued forms.

Conventions (fixed once, checked by the identity suite):

* contraction: <dvb^J (x) f d/dv_a | w> = f dvb^J ^ i_a(w), where
  i_a(dv^{i_1} ^ ... ^ dv^{i_p}) = sum_r (-1)^(r-1) delta(a, i_r) (omit r-th);
* Lie derivative of a degree-k vector form: L = <xi|.> d + (-1)^k d <xi|.>,
  with d replaced by del (holomorphic part) or delbar (antiholomorphic part);
* bracket: [dvb^J (x) f d_a, dvb^K (x) g d_b]
  = dvb^J ^ dvb^K (x) (f dg/dv_a d_b - g df/dv_b d_a).

Exterior derivatives act coefficientwise on vector-valued forms.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import DegreeMismatch, NotNilpotent, UnknownIdentity
from .forms import VForm, _acc, basis_wedge, remove_sign, tmul
from .funring import key_deriv


@lru_cache(maxsize=None)
def _insert(idx, j):
    """(sign, new index tuple) for dv_j ^ dv^idx, or (0, None) if j already occurs."""
    if j in idx:
        return 0, None
    pos = sum(1 for x in idx if x < j)
    return (-1 if pos & 1 else 1), idx[:pos] + (j,) + idx[pos:]


def _exterior(w, holo, anti):
    g = w.geom
    kind, n = g.kind, g.n
    out = {}
    for (I, J, a, f, t), c in w.terms.items():
        if holo:
            for j in range(1, n + 1):
                s, nI = _insert(I, j)
                if not s:
                    continue
                r = key_deriv(kind, f, j, True)
                if r is None:
                    continue
                x, y, nf = r
                v = c.mul_gauss(x, y)
                _acc(out, (nI, J, a, nf, t), v if s == 1 else -v)
        if anti:
            p = len(I)
            for j in range(1, n + 1):
                s, nJ = _insert(J, j)
                if not s:
                    continue
                r = key_deriv(kind, f, j, False)
                if r is None:
                    continue
                x, y, nf = r
                if p & 1:
                    s = -s
                v = c.mul_gauss(x, y)
                _acc(out, (I, nJ, a, nf, t), v if s == 1 else -v)
    return w._new(out)


def exterior(w, kind="d"):
    """d, del or delbar of a form ('d' | 'del' | 'delbar')."""
    if kind == "d":
        return _exterior(w, True, True)
    if kind == "del":
        return _exterior(w, True, False)
    if kind == "delbar":
        return _exterior(w, False, True)
    raise ValueError(f"unknown exterior derivative {kind!r}")


def d(w):
    return _exterior(w, True, True)


def delo(w):
    """The holomorphic part of d."""
    return _exterior(w, True, False)


def dbar(w):
    return _exterior(w, False, True)


def _check_kuranishi_like(xi):
    for (I, J, a, f, t) in xi.terms:
        if I or not a:
            raise DegreeMismatch("expected a (0,k) vector-valued form")


def contract(xi, w):
    """<xi|w> for xi of type (0,k) with values in the holomorphic frame."""
    xi._same(w)
    _check_kuranishi_like(xi)
    N = xi.geom.N
    out = {}
    for (I0, K, a, f1, t1), c1 in xi.terms.items():
        for (I, J, b, f2, t2), c2 in w.terms.items():
            s1, I2 = remove_sign(I, a)
            if not s1:
                continue
            t = tmul(t1, t2, N)
            if t is None:
                continue
            s2, nI, nJ = basis_wedge((), K, I2, J)
            if not s2:
                continue
            c = c1 * c2
            f = tuple(x + y for x, y in zip(f1, f2))
            _acc(out, (nI, nJ, b, f, t), c if s1 * s2 == 1 else -c)
    return xi._new(out)


def lie(xi, w, part="full"):
    """Lie derivative L_xi, or its (1,0) ('holo') or (0,1) ('anti') part."""
    if part == "full":
        D = d
    elif part == "holo":
        D = delo
    elif part == "anti":
        D = dbar
    else:
        raise ValueError(f"unknown Lie derivative part {part!r}")
    out = xi._new({})
    for k, xk in xi.by_degree().items():
        first = contract(xk, D(w))
        second = D(contract(xk, w))
        out = out + (first - second if k & 1 else first + second)
    return out


def bracket(xi, eta):
    """Bracket of two (0,j), (0,k) vector-valued forms."""
    xi._same(eta)
    _check_kuranishi_like(xi)
    _check_kuranishi_like(eta)
    kind, N = xi.geom.kind, xi.geom.N
    out = {}
    for (_, J, a, f, t1), c1 in xi.terms.items():
        for (_, K, b, g, t2), c2 in eta.terms.items():
            s, _, JK = basis_wedge((), J, (), K)
            if not s:
                continue
            t = tmul(t1, t2, N)
            if t is None:
                continue
            c = c1 * c2
            if s == -1:
                c = -c
            r = key_deriv(kind, g, a, True)
            if r is not None:
                x, y, ng = r
                _acc(out, ((), JK, b, tuple(p + q for p, q in zip(f, ng)), t), c.mul_gauss(x, y))
            r = key_deriv(kind, f, b, True)
            if r is not None:
                x, y, nf = r
                _acc(out, ((), JK, a, tuple(p + q for p, q in zip(nf, g)), t), c.mul_gauss(-x, -y))
    return xi._new(out)


def exp_contract(xi, w):
    """e^{<xi|.>} w; the series stops once the holomorphic degree is used up."""
    total = w
    cur = w
    i = 1
    while True:
        cur = contract(xi, cur)
        if not cur:
            return total
        cur = cur.scale(Fraction(1, i))
        total = total + cur
        i += 1


def _require_nilpotent(v, what):
    if v.has_t_constant():
        raise NotNilpotent(f"{what} has a term of t-order 0, so the exponential series does not terminate")


def exp_lie(beta, x):
    """e^{L_beta} x for a vector field series beta in m (no t-constant term)."""
    _require_nilpotent(beta, "beta")
    if any(J for (_, J, _, _, _) in beta.terms):
        raise DegreeMismatch("beta must be a (0,0) vector-valued form")
    total = x
    cur = x
    i = 1
    while True:
        cur = lie(beta, cur)
        if not cur:
            return total
        cur = cur.scale(Fraction(1, i))
        total = total + cur
        i += 1


class SPolynomial:
    """Polynomial in a formal scalar s with VForm coefficients."""

    __slots__ = ("geom", "coeffs")

    def __init__(self, geom, coeffs):
        self.geom = geom
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    def coefficient(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else VForm.zero(self.geom)

    def at(self, s):
        total = VForm.zero(self.geom)
        power = 1
        for c in self.coeffs:
            total = total + c.scale(power)
            power = power * s
        return total

    def derivative(self):
        return SPolynomial(self.geom, [c.scale(k) for k, c in enumerate(self.coeffs)][1:])

    def map(self, fn):
        return SPolynomial(self.geom, [fn(c) for c in self.coeffs])

    def shift(self):
        """Multiply by s."""
        return SPolynomial(self.geom, [VForm.zero(self.geom)] + self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SPolynomial(self.geom, [self.coefficient(k) + other.coefficient(k) for k in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SPolynomial(self.geom, [self.coefficient(k) - other.coefficient(k) for k in range(n)])

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, SPolynomial) and self.coeffs == other.coeffs

    def render(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"s^{k}*({c.render()})" for k, c in enumerate(self.coeffs) if c)


def ad_series(alpha, target, divided=False):
    """Coefficients ad_alpha^k(target)/k! (or /(k+1)! when ``divided``)."""
    _require_nilpotent(alpha, "alpha")
    coeffs = []
    cur = target
    k = 0
    fact = 1
    while cur:
        denom = fact * (k + 1) if divided else fact
        coeffs.append(cur.scale(Fraction(1, denom)))
        cur = bracket(alpha, cur)
        k += 1
        fact *= k
    return coeffs


def exp_ad(alpha, s, target, divided=False):
    """exp([s alpha, ]) target, or ((exp([s alpha, ]) - 1)/[s alpha, ]) target when ``divided``.

    With ``s=None`` the result is returned as an SPolynomial in s.
    """
    poly = SPolynomial(target.geom, ad_series(alpha, target, divided))
    if s is None:
        return poly
    return poly.at(s)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

class Ops:
    """The operator table used by identity checks; tests swap entries to mutate the build."""

    def __init__(self, contract=contract, lie=lie, bracket=bracket, dbar=dbar, d=d):
        self.contract = contract
        self.lie = lie
        self.bracket = bracket
        self.dbar = dbar
        self.d = d


DEFAULT_OPS = Ops()


class IdentityResult:
    __slots__ = ("name", "holds", "lhs", "rhs")

    def __init__(self, name, lhs, rhs):
        self.name = name
        self.lhs = lhs
        self.rhs = rhs
        self.holds = lhs == rhs

    @property
    def witness(self):
        return self.lhs - self.rhs

    def __bool__(self):
        return self.holds

    def __repr__(self):
        return f"IdentityResult({self.name}, holds={self.holds})"


def _deg(x):
    return x.by_degree()


def _sgn(k):
    return -1 if k & 1 else 1


def _id_contract_commute(o, xi, xi2, omega, **_):
    lhs = o.contract(xi, o.contract(xi2, omega))
    rhs = o.contract(xi2, o.contract(xi, omega))
    return lhs, rhs


def _id_leibniz(o, xi, omega, eta, **_):
    lhs = o.lie(xi, omega ^ eta)
    rhs = (o.lie(xi, omega) ^ eta) + (omega.parity() ^ o.lie(xi, eta))
    return lhs, rhs


def _id_dbar_bracket(o, xi, xi2, **_):
    lhs = o.dbar(o.bracket(xi, xi2))
    rhs = o.bracket(o.dbar(xi), xi2) + o.bracket(xi.parity(), o.dbar(xi2))
    return lhs, rhs


def _id_lie_d(o, xi, omega, **_):
    lhs = o.lie(xi, o.d(omega))
    rhs = o.d(o.lie(xi.parity(), omega))
    return lhs, rhs


def _id_dbar_contract(o, xi, omega, **_):
    lhs = o.dbar(o.contract(xi, omega))
    rhs = o.contract(o.dbar(xi), omega) - o.contract(xi.parity(), o.dbar(omega))
    return lhs, rhs


def _id_contract_lie(o, xi, xi2, omega, **_):
    lhs = VForm.zero(omega.geom)
    for j, xj in _deg(xi).items():
        for k, xk in _deg(xi2).items():
            a = o.contract(xj, o.lie(xk, omega))
            b = o.lie(xk, o.contract(xj, omega))
            lhs = lhs + a.scale(_sgn(k)) - b.scale(_sgn(j * k))
    rhs = o.contract(o.bracket(xi, xi2), omega)
    return lhs, rhs


def _id_lie_contract_commutator(o, xi, omega, **_):
    lhs = o.lie(xi, o.contract(xi, omega)) - o.contract(xi, o.lie(xi, omega))
    rhs = o.contract(o.bracket(xi, xi), omega)
    return lhs, rhs


def _id_holo_lie_contract_commutator(o, xi, omega, **_):
    lhs = o.lie(xi, o.contract(xi, omega), "holo") - o.contract(xi, o.lie(xi, omega, "holo"))
    rhs = o.contract(o.bracket(xi, xi), omega)
    return lhs, rhs


def _id_lie_commutator(o, xi, xi2, omega, **_):
    lhs = VForm.zero(omega.geom)
    for j, xj in _deg(xi).items():
        for k, xk in _deg(xi2).items():
            a = o.lie(xj, o.lie(xk, omega))
            b = o.lie(xk, o.lie(xj, omega))
            lhs = lhs + a - b.scale(_sgn(j * k))
    rhs = o.lie(o.bracket(xi, xi2), omega)
    return lhs, rhs


def _id_dbar_lie(o, xi, omega, **_):
    lhs = VForm.zero(omega.geom)
    for k, xk in _deg(xi).items():
        lhs = lhs + o.dbar(o.lie(xk, omega)) - o.lie(xk, o.dbar(omega)).scale(_sgn(k))
    rhs = o.lie(o.dbar(xi), omega)
    return lhs, rhs


IDENTITIES = {
    "I-2.7.00": (_id_contract_commute, ("xi", "xi2", "omega")),
    "I-2.7.3": (_id_leibniz, ("xi", "omega", "eta")),
    "I-2.7.4": (_id_dbar_bracket, ("xi", "xi2")),
    "I-2.7.5": (_id_lie_d, ("xi", "omega")),
    "I-2.7.6": (_id_dbar_contract, ("xi", "omega")),
    "I-2.7.7": (_id_contract_lie, ("xi", "xi2", "omega")),
    "I-2.7.8": (_id_lie_contract_commutator, ("xi", "omega")),
    "I-2.7.9": (_id_holo_lie_contract_commutator, ("xi", "omega")),
    "I-48.5": (_id_lie_commutator, ("xi", "xi2", "omega")),
    "I-kodd": (_id_dbar_lie, ("xi", "omega")),
}

IDENTITY_NAMES = tuple(IDENTITIES)

# identities whose statement needs xi (and xi2) of form degree exactly 1
DEGREE_ONE = {"I-2.7.00", "I-2.7.3", "I-2.7.8", "I-2.7.9"}


def check_identity(name, inputs, ops=None):
    """Evaluate both sides of a named identity; the result carries lhs, rhs and witness."""
    if name not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {name!r}; known: {', '.join(IDENTITY_NAMES)}")
    fn, needed = IDENTITIES[name]
    missing = [k for k in needed if k not in inputs]
    if missing:
        raise ValueError(f"{name} needs inputs {', '.join(missing)}")
    if name in DEGREE_ONE:
        for key in ("xi", "xi2"):
            if key in needed and inputs[key].degrees() not in ([], [1]):
                raise DegreeMismatch(f"{name} is stated for {key} of degree 1")
    lhs, rhs = fn(ops or DEFAULT_OPS, **{k: inputs[k] for k in needed})
    return IdentityResult(name, lhs, rhs)
