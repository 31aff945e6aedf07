"""Exact scalars, truncated power series in the deformation parameters, and
monomial ideals.

Everything here is exact: Gaussian rationals are stored as a triple of
integers ``(a, b, d)`` meaning ``(a + b*i)/d`` with ``d > 0`` and
``gcd(a, b, d) == 1``.  The rational parts are exposed as reduced
``fractions.Fraction`` values.
"""

from fractions import Fraction
from math import gcd

from .errors import NotInMaximalIdeal, ParamMismatch


class GaussianRational:
    """An element of Q(i)."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(gcd(a, b), d)
        self._a, self._b, self._d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a, b, d):
        """Build from integers, normalizing the common denominator."""
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(gcd(a, b), d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj = object.__new__(cls)
        obj._a, obj._b, obj._d = a, b, d
        return obj

    @property
    def re(self):
        return Fraction(self._a, self._d)

    @property
    def im(self):
        return Fraction(self._b, self._d)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj._a, obj._b, obj._d = -self._a, -self._b, self._d
        return obj

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, e = self._a, self._b, o._a, o._b
        return GaussianRational._raw(a * c - b * e, a * e + b * c, self._d * o._d)

    __rmul__ = __mul__

    def mul_gauss(self, x, y):
        """Multiply by the Gaussian integer x + y*i."""
        a, b = self._a, self._b
        return GaussianRational._raw(a * x - b * y, a * y + b * x, self._d)

    def conjugate(self):
        return GaussianRational._raw(self._a, -self._b, self._d)

    def norm(self):
        """|z|^2 as a Fraction."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero Gaussian rational")
        # z / w = z * conj(w) * d_w^2 / (d_z * |w_num|^2)
        n = o._a * o._a + o._b * o._b
        a, b = self._a, self._b
        c, e = o._a, -o._b
        return GaussianRational._raw((a * c - b * e) * o._d, (a * e + b * c) * o._d, self._d * n)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -------------------------------------------------------
    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __repr__(self):
        return f"GaussianRational({self.render()!r})"

    def __str__(self):
        return self.render()

    def render(self):
        """Canonical text "a/b+c/d*i" with zero parts suppressed."""
        re, im = self.re, self.im
        if im == 0:
            return _frac_text(re)
        if im == 1:
            imtext = "i"
        elif im == -1:
            imtext = "-i"
        else:
            imtext = _frac_text(im) + "*i"
        if re == 0:
            return imtext
        if imtext.startswith("-"):
            return _frac_text(re) + imtext
        return _frac_text(re) + "+" + imtext

    def needs_parens(self):
        """True when the rendered text is a sum and must be bracketed in a product."""
        return self._a != 0 and self._b != 0


def _frac_text(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return GaussianRational._raw(x.numerator, 0, x.denominator)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; use GaussianRational")
    return None


def gr(x=0, y=0):
    """Shorthand constructor: gr(1, 2) is 1 + 2i."""
    if isinstance(x, GaussianRational) and y == 0:
        return x
    return GaussianRational(x, y)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# t-monomials
# ---------------------------------------------------------------------------

def tdeg(mono):
    return sum(mono)


def tmono_mul(a, b, N):
    """Product of two exponent vectors, or None when the total degree exceeds N."""
    out = tuple(x + y for x, y in zip(a, b))
    if sum(out) > N:
        return None
    return out


def graded_lex_key(mono):
    return (sum(mono), mono)


def render_tmono(mono):
    """'t^2' for m=1; 't1*t2^3' otherwise. Empty string for the unit."""
    m = len(mono)
    parts = []
    for j, e in enumerate(mono):
        if e == 0:
            continue
        name = "t" if m == 1 else f"t{j + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def monomials_of_degree(m, d):
    """All exponent vectors of length m and total degree d, in lex order."""
    if m == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(m - 1, d - first):
            out.append((first,) + rest)
    return out


def unit_mono(m, k=None):
    """Exponent vector of t_k (1-based), or the zero vector when k is None."""
    v = [0] * m
    if k is not None:
        v[k - 1] = 1
    return tuple(v)


class TSeries:
    """Truncated power series in t_1..t_m with Gaussian rational coefficients.

    Terms of total degree above ``N`` are never stored.
    """

    __slots__ = ("m", "N", "terms")

    def __init__(self, m, N, terms=None):
        self.m = m
        self.N = N
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != m:
                    raise ParamMismatch(f"exponent {mono} does not have length {m}")
                if sum(mono) > N:
                    continue
                c = gr(c)
                if c:
                    clean[mono] = clean.get(mono, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, m, N, c=1):
        return cls(m, N, {(0,) * m: c})

    @classmethod
    def var(cls, m, N, k=1):
        return cls(m, N, {unit_mono(m, k): 1})

    def _check(self, other):
        if not isinstance(other, TSeries):
            raise TypeError("expected a TSeries")
        if other.m != self.m or other.N != self.N:
            raise ParamMismatch(f"series parameters differ: (m={self.m}, N={self.N}) vs (m={other.m}, N={other.N})")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return TSeries(self.m, self.N, out)

    def __neg__(self):
        return TSeries(self.m, self.N, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TSeries):
            c = _coerce(other)
            if c is None:
                return NotImplemented
            return TSeries(self.m, self.N, {k: v * c for k, v in self.terms.items()})
        self._check(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tmono_mul(k1, k2, self.N)
                if k is not None:
                    out[k] = out.get(k, ZERO) + v1 * v2
        return TSeries(self.m, self.N, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.m == other.m and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, self.N, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def derivative(self, k):
        """Partial derivative in t_k (1-based)."""
        out = {}
        for mono, c in self.terms.items():
            e = mono[k - 1]
            if e:
                new = mono[: k - 1] + (e - 1,) + mono[k:]
                out[new] = c * e
        return TSeries(self.m, self.N, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mt = render_tmono(mono)
            ct = c.render()
            if c.needs_parens():
                ct = "(" + ct + ")"
            parts.append(f"{ct}*{mt}" if mt else ct)
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"TSeries({self.render()!r}, m={self.m}, N={self.N})"


def series_mul(a, b):
    return a * b


class MonomialIdeal:
    """A monomial ideal in C[[t_1..t_m]] given by its minimal generators."""

    __slots__ = ("m", "generators")

    def __init__(self, generators, m=None):
        gens = [tuple(g) for g in generators]
        if m is None:
            if not gens:
                raise ValueError("cannot infer m from an empty generator list")
            m = len(gens[0])
        for g in gens:
            if len(g) != m:
                raise ParamMismatch(f"generator {g} does not have length {m}")
        self.m = m
        self.generators = tuple(sorted(_minimize(gens), key=graded_lex_key))

    @classmethod
    def maximal(cls, m):
        return cls([unit_mono(m, k) for k in range(1, m + 1)], m)

    @classmethod
    def power_of_maximal(cls, m, k):
        return cls(monomials_of_degree(m, k), m)

    @classmethod
    def principal_power(cls, k):
        """The ideal generated by t^k with one parameter."""
        return cls([(k,)], 1)

    def contains(self, mono):
        return any(all(x >= y for x, y in zip(mono, g)) for g in self.generators)

    __contains__ = contains

    def times_maximal(self):
        """The product ideal m*A."""
        gens = []
        for g in self.generators:
            for k in range(self.m):
                gens.append(tuple(x + (1 if j == k else 0) for j, x in enumerate(g)))
        return MonomialIdeal(gens, self.m)

    def contains_unit(self):
        return self.contains((0,) * self.m)

    def max_generator_degree(self):
        return max((sum(g) for g in self.generators), default=0)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.m == other.m and self.generators == other.generators

    def __hash__(self):
        return hash((self.m, self.generators))

    def render(self):
        gens = ", ".join(render_tmono(g) or "1" for g in self.generators)
        return f"<{gens}>"

    __str__ = render

    def __repr__(self):
        return f"MonomialIdeal({self.render()})"


def _minimize(gens):
    uniq = sorted(set(gens), key=graded_lex_key)
    out = []
    for g in uniq:
        if not any(all(x >= y for x, y in zip(g, h)) for h in out):
            out.append(g)
    return out


def ideal_reduce(a, A):
    """Drop every term of the series whose monomial lies in A."""
    if a.m != A.m:
        raise ParamMismatch("series and ideal have different parameter counts")
    return TSeries(a.m, a.N, {k: v for k, v in a.terms.items() if not A.contains(k)})


def ideal_quotient_basis(A):
    """Monomials spanning A / m*A, which are exactly the minimal generators."""
    if A.contains_unit():
        raise NotInMaximalIdeal(f"{A.render()} contains the unit monomial")
    return list(A.generators)
