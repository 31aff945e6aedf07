"""Vector-valued (p,q)-forms with function-ring and power-series coefficients.

A form is stored fully expanded: a dict from a flat key
``(I, J, a, f, t)`` to a Gaussian rational, where

* ``I`` and ``J`` are strictly increasing index tuples for ``dv^I ^ dvb^J``
  (holomorphic factors first),
* ``a`` is the value index (``0`` for scalar-valued, ``a >= 1`` for ``d/dv_a``),
* ``f`` is a monomial key of the coefficient ring (see ``funring``),
* ``t`` is the exponent vector of the deformation parameters.

The vector value always sits to the right of the form part, so
``(w (x) d/dv_a) ^ u = (w ^ u) (x) d/dv_a``.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import DegreeMismatch, ParamMismatch, WrongGeometry
from .funring import (
    CHART,
    TORUS,
    FunctionElement,
    key_order,
    key_restrict,
    key_text,
    key_unit,
)
from .scalars import TSeries, gr, graded_lex_key, render_tmono


@dataclass(frozen=True)
class Geometry:
    """Model geometry: ring kind, complex dimension n, parameter count m, truncation N."""

    kind: str
    n: int
    m: int = 1
    N: int = 4

    def __post_init__(self):
        if self.kind not in (CHART, TORUS):
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        if self.n < 1 or self.m < 1 or self.N < 0:
            raise ValueError("need n >= 1, m >= 1, N >= 0")

    @property
    def unit_f(self):
        return key_unit(self.n)

    @property
    def unit_t(self):
        return (0,) * self.m

    def with_order(self, N):
        return Geometry(self.kind, self.n, self.m, N)


def chart(n=1, m=1, N=3):
    return Geometry(CHART, n, m, N)


def torus(n=2, m=1, N=4):
    return Geometry(TORUS, n, m, N)


# ---------------------------------------------------------------------------
# index bookkeeping
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def merge_sign(A, B):
    """Sign and merged tuple for dv^A ^ dv^B with A, B increasing; (0, None) if they overlap."""
    inv = 0
    for b in B:
        for x in A:
            if x == b:
                return 0, None
            if x > b:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(A + B))


@lru_cache(maxsize=None)
def sort_sign(idx):
    """Sign and sorted tuple for an arbitrary index sequence; (0, None) on repeats."""
    idx = tuple(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    inv = 0
    for p in range(len(idx)):
        for q in range(p + 1, len(idx)):
            if idx[p] > idx[q]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(idx))


@lru_cache(maxsize=None)
def remove_sign(idx, j):
    """Interior-product data: sign (-1)^(r-1) for j at 1-based position r, and idx without j."""
    if j not in idx:
        return 0, None
    r = idx.index(j)
    return (-1 if r & 1 else 1), idx[:r] + idx[r + 1:]


@lru_cache(maxsize=None)
def basis_wedge(I1, J1, I2, J2):
    """dv^I1 dvb^J1 ^ dv^I2 dvb^J2 as (sign, I, J); sign 0 when it vanishes."""
    s = -1 if (len(J1) * len(I2)) & 1 else 1
    s1, I = merge_sign(I1, I2)
    if not s1:
        return 0, None, None
    s2, J = merge_sign(J1, J2)
    if not s2:
        return 0, None, None
    return s * s1 * s2, I, J


def basis_text(I, J, a):
    parts = []
    if I:
        parts.append("dv" + "".join(str(i) for i in I))
    if J:
        parts.append("dvb" + "".join(str(j) for j in J))
    text = "^".join(parts)
    if a:
        text += f"⊗d/dv{a}"
    return text


def _acc(d, key, c):
    v = d.get(key)
    if v is None:
        d[key] = c
    else:
        v = v + c
        if v:
            d[key] = v
        else:
            del d[key]


def tmul(t1, t2, N):
    out = tuple(x + y for x, y in zip(t1, t2))
    if sum(out) > N:
        return None
    return out


# ---------------------------------------------------------------------------
# the form type
# ---------------------------------------------------------------------------

class FormTerm:
    """One canonical basis component: coef * dv^I ^ dvb^J (x) d/dv_a.

    ``coef`` maps t-exponent vectors to FunctionElement values.
    """

    __slots__ = ("I", "J", "a", "coef")

    def __init__(self, I, J, a, coef):
        self.I, self.J, self.a, self.coef = I, J, a, coef

    def __repr__(self):
        return f"FormTerm(I={self.I}, J={self.J}, a={self.a}, coef={self.coef!r})"


class VForm:
    """A vector-valued differential form with coefficients in functions (x) C[[t]]/m^(N+1)."""

    __slots__ = ("geom", "terms")

    def __init__(self, geom, terms=None):
        self.geom = geom
        self.terms = terms if terms is not None else {}

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, geom):
        return cls(geom, {})

    @classmethod
    def from_terms(cls, geom, raw):
        """Canonicalize an iterable of (coef, f, t, I, J, a) with unsorted index lists."""
        out = {}
        for coef, f, t, I, J, a in raw:
            c = gr(coef)
            if not c:
                continue
            f = tuple(f) if f is not None else geom.unit_f
            t = tuple(t) if t is not None else geom.unit_t
            if len(t) != geom.m:
                raise ParamMismatch(f"t-exponent {t} does not have length {geom.m}")
            if len(f) != 2 * geom.n:
                raise ParamMismatch(f"function key {f} does not match n={geom.n}")
            if sum(t) > geom.N:
                continue
            s1, I2 = sort_sign(tuple(I))
            s2, J2 = sort_sign(tuple(J))
            if not s1 or not s2:
                continue
            if any(not 1 <= i <= geom.n for i in I2 + J2) or not 0 <= a <= geom.n:
                raise ValueError(f"index out of range for n={geom.n}")
            _acc(out, (I2, J2, a, f, t), c if s1 * s2 == 1 else -c)
        return cls(geom, out)

    @classmethod
    def term(cls, geom, coef=1, f=None, t=None, I=(), J=(), a=0):
        return cls.from_terms(geom, [(coef, f, t, I, J, a)])

    @classmethod
    def scalar(cls, geom, c=1):
        return cls.term(geom, c)

    @classmethod
    def function(cls, geom, fn):
        """Embed a FunctionElement as a 0-form."""
        if not isinstance(fn, FunctionElement) or fn.kind != geom.kind or fn.n != geom.n:
            raise WrongGeometry("function element does not belong to this geometry")
        return cls.from_terms(geom, [(c, k, None, (), (), 0) for k, c in fn.terms.items()])

    @classmethod
    def series(cls, geom, s):
        """Embed a TSeries as a 0-form."""
        if s.m != geom.m or s.N != geom.N:
            raise ParamMismatch("series parameters do not match the geometry")
        return cls.from_terms(geom, [(c, None, mono, (), (), 0) for mono, c in s.terms.items()])

    @classmethod
    def t(cls, geom, k=1, power=1):
        mono = [0] * geom.m
        mono[k - 1] = power
        return cls.term(geom, 1, t=tuple(mono))

    @classmethod
    def dv(cls, geom, i):
        return cls.term(geom, 1, I=(i,))

    @classmethod
    def dvb(cls, geom, j):
        return cls.term(geom, 1, J=(j,))

    @classmethod
    def vector(cls, geom, a):
        """The constant vector field d/dv_a as a (0,0) vector-valued form."""
        return cls.term(geom, 1, a=a)

    def _new(self, terms):
        return VForm(self.geom, terms)

    def _same(self, other):
        if not isinstance(other, VForm):
            raise TypeError(f"expected a VForm, got {type(other).__name__}")
        if other.geom != self.geom:
            raise ParamMismatch(f"geometries differ: {self.geom} vs {other.geom}")

    # linear structure -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, -v)
        return self._new(out)

    def scale(self, c):
        c = gr(c)
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, VForm):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other):
        return wedge(self, other)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, VForm):
            return NotImplemented
        return self.geom == other.geom and self.terms == other.terms

    def __hash__(self):
        return hash((self.geom, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # structure queries ------------------------------------------------
    def is_vector_valued(self):
        return any(k[2] for k in self.terms)

    def is_scalar_valued(self):
        return not any(k[2] for k in self.terms)

    def bidegrees(self):
        return sorted({(len(k[0]), len(k[1])) for k in self.terms})

    def degrees(self):
        return sorted({len(k[0]) + len(k[1]) for k in self.terms})

    def type_project(self, p, q):
        return type_project(self, p, q)

    def by_degree(self):
        """Split into total-degree homogeneous parts: {k: VForm}."""
        out = {}
        for k, v in self.terms.items():
            out.setdefault(len(k[0]) + len(k[1]), {})[k] = v
        return {d: self._new(t) for d, t in sorted(out.items())}

    def parity(self):
        """The sign twist w -> (-1)^deg w applied term by term."""
        return self._new({k: (-v if (len(k[0]) + len(k[1])) & 1 else v) for k, v in self.terms.items()})

    def t_orders(self):
        return sorted({sum(k[4]) for k in self.terms})

    def t_part(self, d):
        """Terms of total t-degree d."""
        return self._new({k: v for k, v in self.terms.items() if sum(k[4]) == d})

    def t_below(self, d):
        return self._new({k: v for k, v in self.terms.items() if sum(k[4]) < d})

    def t_monomial_part(self, mono):
        return self._new({k: v for k, v in self.terms.items() if k[4] == mono})

    def t_monomials(self):
        return sorted({k[4] for k in self.terms}, key=graded_lex_key)

    def has_t_constant(self):
        return any(not any(k[4]) for k in self.terms)

    def mul_t(self, mono):
        """Multiply by t^mono, truncating."""
        N = self.geom.N
        out = {}
        for (I, J, a, f, t), v in self.terms.items():
            nt = tmul(t, mono, N)
            if nt is not None:
                out[(I, J, a, f, nt)] = v
        return self._new(out)

    def t_derivative(self, k):
        """Partial derivative in the parameter t_k (1-based)."""
        out = {}
        for (I, J, a, f, t), v in self.terms.items():
            e = t[k - 1]
            if e:
                nt = t[: k - 1] + (e - 1,) + t[k:]
                _acc(out, (I, J, a, f, nt), v * e)
        return self._new(out)

    def at_t_zero(self):
        return self.t_part(0)

    def reduce_mod(self, A):
        """Drop every term whose t-monomial lies in the monomial ideal A."""
        if A.m != self.geom.m:
            raise ParamMismatch("ideal and form have different parameter counts")
        return self._new({k: v for k, v in self.terms.items() if not A.contains(k[4])})

    def in_ideal(self, A):
        """True when every term's t-monomial lies in A."""
        return all(A.contains(k[4]) for k in self.terms)

    def terms_outside(self, A):
        return self._new({k: v for k, v in self.terms.items() if not A.contains(k[4])})

    def with_value(self, a):
        """Tensor a scalar-valued form with d/dv_a."""
        if self.is_vector_valued():
            raise DegreeMismatch("form is already vector-valued")
        return self._new({(I, J, a, f, t): v for (I, J, _, f, t), v in self.terms.items()})

    def value_component(self, a):
        """The scalar-valued form multiplying d/dv_a."""
        return self._new({(I, J, 0, f, t): v for (I, J, b, f, t), v in self.terms.items() if b == a})

    def select_values(self, values):
        return self._new({k: v for k, v in self.terms.items() if k[2] in values})

    def frequency_zero_part(self):
        return self._new({k: v for k, v in self.terms.items() if not any(k[3])})

    def restrict_subtorus(self, S):
        return restrict_subtorus(self, S)

    def coefficient(self, I=(), J=(), a=0):
        """Coefficient of one basis element as {t-monomial: FunctionElement}."""
        from .funring import ChartPoly, TorusFn

        cls = TorusFn if self.geom.kind == TORUS else ChartPoly
        by_t = {}
        for (I2, J2, a2, f, t), v in self.terms.items():
            if I2 == tuple(I) and J2 == tuple(J) and a2 == a:
                by_t.setdefault(t, {})[f] = v
        return {t: cls(self.geom.n, fs) for t, fs in sorted(by_t.items(), key=lambda kv: graded_lex_key(kv[0]))}

    def form_terms(self):
        """Canonical list of FormTerm, one per basis element (I, J, a)."""
        seen = []
        for k in self.sorted_keys():
            b = (k[0], k[1], k[2])
            if not seen or seen[-1] != b:
                seen.append(b)
        return [FormTerm(I, J, a, self.coefficient(I, J, a)) for I, J, a in seen]

    # rendering --------------------------------------------------------
    def sorted_keys(self):
        return sorted(self.terms, key=_canon_key)

    def render(self):
        if not self.terms:
            return "0"
        kind = self.geom.kind
        parts = []
        for k in self.sorted_keys():
            I, J, a, f, t = k
            c = self.terms[k]
            factors = [x for x in (key_text(kind, f), render_tmono(t)) if x]
            basis = basis_text(I, J, a)
            if basis and not basis.startswith("⊗"):
                factors.append(basis)
            ct = c.render()
            if c.needs_parens():
                ct = f"({ct})"
            if factors and c == 1:
                text = "*".join(factors)
            elif factors and c == -1:
                text = "-" + "*".join(factors)
            else:
                text = "*".join([ct] + factors)
            if basis.startswith("⊗"):
                text += basis
            parts.append(text)
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"VForm({self.render()!r})"


def _canon_key(k):
    I, J, a, f, t = k
    return ((len(I), len(J)), I, J, a, key_order(f), graded_lex_key(t))


def canonicalize(geom, raw):
    return VForm.from_terms(geom, raw)


def type_project(w, p, q):
    return w._new({k: v for k, v in w.terms.items() if len(k[0]) == p and len(k[1]) == q})


def wedge(w, u):
    """Graded-commutative product; the vector value (if any) is carried through."""
    w._same(u)
    aw = w.is_vector_valued()
    au = u.is_vector_valued()
    if aw and au:
        raise DegreeMismatch("cannot wedge two vector-valued forms")
    N = w.geom.N
    out = {}
    for (I1, J1, a1, f1, t1), c1 in w.terms.items():
        for (I2, J2, a2, f2, t2), c2 in u.terms.items():
            t = tmul(t1, t2, N)
            if t is None:
                continue
            s, I, J = basis_wedge(I1, J1, I2, J2)
            if not s:
                continue
            f = tuple(x + y for x, y in zip(f1, f2))
            c = c1 * c2
            _acc(out, (I, J, a1 or a2, f, t), c if s == 1 else -c)
    return w._new(out)


def restrict_subtorus(w, S):
    """Restriction to the coordinate slice {v_j = 0 : j not in S}.

    Terms containing dv_j or dvb_j with j outside S are dropped and the
    coefficients are restricted; index labels stay ambient.  Use
    ``split_values`` to separate tangential (a in S) and normal values.
    """
    keep = frozenset(S)
    kind = w.geom.kind
    out = {}
    for (I, J, a, f, t), v in w.terms.items():
        if any(i not in keep for i in I) or any(j not in keep for j in J):
            continue
        nf = key_restrict(kind, f, keep)
        if nf is None:
            continue
        _acc(out, (I, J, a, nf, t), v)
    return w._new(out)


def split_values(w, S):
    """(tangential, normal) parts by value index; scalar-valued terms go to neither."""
    keep = frozenset(S)
    tan = {k: v for k, v in w.terms.items() if k[2] and k[2] in keep}
    nor = {k: v for k, v in w.terms.items() if k[2] and k[2] not in keep}
    return w._new(tan), w._new(nor)


def value_flags(w, S):
    """Map each vector index present in w to 'tangential' or 'normal'."""
    keep = frozenset(S)
    return {a: ("tangential" if a in keep else "normal") for a in sorted({k[2] for k in w.terms if k[2]})}


def pullback_projection(w, S):
    """Pull a form living on the slice back along the product projection onto it.

    Coefficients become constant in the directions outside S; on the chart this
    is the identity for forms already independent of those coordinates.
    """
    return restrict_subtorus(w, S)


def as_tseries(w):
    """Read a scalar 0-form with constant function coefficients as a TSeries."""
    g = w.geom
    terms = {}
    for (I, J, a, f, t), v in w.terms.items():
        if I or J or a or any(f):
            raise DegreeMismatch("not a constant scalar function")
        terms[t] = v
    return TSeries(g.m, g.N, terms)

