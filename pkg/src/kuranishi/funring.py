"""Coefficient rings: polynomials on a chart and Fourier characters on a flat torus.

Both rings store a function as a dict from a monomial key to a Gaussian
rational.  A key is a tuple of ``2n`` integers:

* chart: ``(e_1..e_n, f_1..f_n)`` for ``v^e * vb^f``;
* torus: ``(k_1..k_n, l_1..l_n)`` for the character ``E[a;b]`` with
  ``a = i*k + l`` and ``b = i*k - l``.

Storing ``(k, l)`` instead of ``(a, b)`` makes the lattice condition hold by
construction.  In both rings the product of monomials is componentwise
addition of keys, so form-level code can share one multiplication rule.
"""

from .errors import LatticeViolation, RingMismatch
from .scalars import ZERO, gr

CHART = "chart"
TORUS = "torus"


# ---------------------------------------------------------------------------
# key-level helpers (used by the forms layer on its flattened terms)
# ---------------------------------------------------------------------------

def key_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def key_unit(n):
    return (0,) * (2 * n)


def key_deriv(kind, key, j, holo):
    """Derivative of one monomial in direction j (1-based).

    Returns ``(x, y, newkey)`` meaning the result is ``(x + y*i) * newkey``,
    or None when the derivative vanishes.
    """
    n = len(key) // 2
    if kind == TORUS:
        k, l = key[j - 1], key[n + j - 1]
        if holo:
            x, y = l, k
        else:
            x, y = -l, k
        if x == 0 and y == 0:
            return None
        return x, y, key
    pos = j - 1 if holo else n + j - 1
    e = key[pos]
    if e == 0:
        return None
    return e, 0, key[:pos] + (e - 1,) + key[pos + 1:]


def key_is_unit(key):
    return not any(key)


def key_restrict(kind, key, keep):
    """Restriction to the coordinate slice where v_j = 0 for j not in ``keep``.

    The ambient labelling is kept: on the torus the dropped components are set
    to zero, on the chart the monomial either survives unchanged or vanishes.
    """
    n = len(key) // 2
    if kind == TORUS:
        return tuple(key[p] if (p % n) + 1 in keep else 0 for p in range(2 * n))
    for p in range(2 * n):
        if key[p] and (p % n) + 1 not in keep:
            return None
    return key


def freq_alpha(key):
    """Holomorphic frequency vector as Gaussian-integer pairs (re, im)."""
    n = len(key) // 2
    return [(key[n + j], key[j]) for j in range(n)]


def freq_beta(key):
    n = len(key) // 2
    return [(-key[n + j], key[j]) for j in range(n)]


def key_from_frequencies(alpha, beta):
    """Build a torus key from (alpha, beta) given as lists of (re, im) pairs.

    Raises LatticeViolation unless alpha + beta is in 2iZ^n and alpha - beta in 2Z^n.
    """
    if len(alpha) != len(beta):
        raise LatticeViolation("frequency vectors have different lengths")
    ks, ls = [], []
    for (ar, ai), (br, bi) in zip(alpha, beta):
        sr, si = ar + br, ai + bi
        dr, di = ar - br, ai - bi
        if sr != 0 or si % 2 or di != 0 or dr % 2:
            raise LatticeViolation(
                f"frequency pair ({_gauss_text(ar, ai)}, {_gauss_text(br, bi)}) is not a torus character"
            )
        ks.append(si // 2)
        ls.append(dr // 2)
    return tuple(ks) + tuple(ls)


def _gauss_text(x, y):
    if y == 0:
        return str(x)
    if y == 1:
        im = "i"
    elif y == -1:
        im = "-i"
    else:
        im = f"{y}i"
    if x == 0:
        return im
    if im.startswith("-"):
        return f"{x}{im}"
    return f"{x}+{im}"


def key_text(kind, key):
    """Text for a monomial key; empty string for the unit."""
    n = len(key) // 2
    if kind == TORUS:
        if key_is_unit(key):
            return ""
        a = ",".join(_gauss_text(x, y) for x, y in freq_alpha(key))
        b = ",".join(_gauss_text(x, y) for x, y in freq_beta(key))
        return f"E[{a};{b}]"
    parts = []
    for j in range(n):
        e = key[j]
        if e:
            parts.append(f"v{j + 1}" if e == 1 else f"v{j + 1}^{e}")
    for j in range(n):
        e = key[n + j]
        if e:
            parts.append(f"vb{j + 1}" if e == 1 else f"vb{j + 1}^{e}")
    return "*".join(parts)


def key_order(key):
    """Graded-lexicographic sort key shared by both rings."""
    return (sum(abs(x) for x in key), key)


# ---------------------------------------------------------------------------
# function elements
# ---------------------------------------------------------------------------

class FunctionElement:
    """Common interface for ChartPoly and TorusFn."""

    kind = None
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != 2 * n:
                raise RingMismatch(f"key {key} does not match dimension {n}")
            c = gr(c)
            if c:
                clean[key] = clean.get(key, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self._validate()

    def _validate(self):
        pass

    def _same(self, other):
        if not isinstance(other, FunctionElement) or other.kind != self.kind or other.n != self.n:
            raise RingMismatch("function elements live in different rings")

    @classmethod
    def constant(cls, n, c=1):
        return cls(n, {key_unit(n): c})

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return type(self)(self.n, out)

    def __neg__(self):
        return type(self)(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FunctionElement):
            c = gr(other)
            return type(self)(self.n, {k: v * c for k, v in self.terms.items()})
        return fn_mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, FunctionElement):
            return NotImplemented
        return self.kind == other.kind and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def derivative(self, j, kind):
        return derivative(self, j, kind)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=key_order):
            parts.append(_term_text(self.terms[key], key_text(self.kind, key)))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r}, n={self.n})"


def _term_text(c, mono):
    if not mono:
        return c.render()
    if c == 1:
        return mono
    ct = c.render()
    if c.needs_parens():
        ct = f"({ct})"
    return f"{ct}*{mono}"


class ChartPoly(FunctionElement):
    """Polynomial in v_1..v_n and their conjugates."""

    kind = CHART
    __slots__ = ()

    def _validate(self):
        for key in self.terms:
            if any(x < 0 for x in key):
                raise ValueError(f"negative exponent in {key}")

    @classmethod
    def monomial(cls, n, holo=None, anti=None, c=1):
        holo = tuple(holo or (0,) * n)
        anti = tuple(anti or (0,) * n)
        return cls(n, {holo + anti: c})

    @classmethod
    def coordinate(cls, n, j, conjugate=False):
        e = [0] * (2 * n)
        e[(n if conjugate else 0) + j - 1] = 1
        return cls(n, {tuple(e): 1})


class TorusFn(FunctionElement):
    """Finite Fourier sum of lattice characters E[a;b]."""

    kind = TORUS
    __slots__ = ()

    @classmethod
    def character(cls, alpha, beta, c=1):
        """alpha, beta: sequences of Gaussian integers given as (re, im) pairs or ints."""
        alpha = [_as_pair(x) for x in alpha]
        beta = [_as_pair(x) for x in beta]
        return cls(len(alpha), {key_from_frequencies(alpha, beta): c})

    @classmethod
    def from_kl(cls, k, l, c=1):
        return cls(len(k), {tuple(k) + tuple(l): c})


def _as_pair(x):
    if isinstance(x, tuple):
        return x
    return (int(x), 0)


def fn_mul(f, g):
    f._same(g)
    out = {}
    for k1, v1 in f.terms.items():
        for k2, v2 in g.terms.items():
            k = key_mul(k1, k2)
            out[k] = out.get(k, ZERO) + v1 * v2
    return type(f)(f.n, out)


def derivative(f, j, kind):
    """Partial derivative d/dv_j (kind 'holo') or d/dvb_j (kind 'anti')."""
    if kind not in ("holo", "anti"):
        raise ValueError(f"unknown derivative kind {kind!r}")
    if not 1 <= j <= f.n:
        raise ValueError(f"index {j} out of range 1..{f.n}")
    out = {}
    for key, c in f.terms.items():
        r = key_deriv(f.kind, key, j, kind == "holo")
        if r is None:
            continue
        x, y, nk = r
        out[nk] = out.get(nk, ZERO) + c.mul_gauss(x, y)
    return type(f)(f.n, out)


def torus_zero_freq(f):
    if f.kind != TORUS:
        raise RingMismatch("zero-frequency coefficient is defined on the torus ring only")
    return f.terms.get(key_unit(f.n), ZERO)


def restrict_chart(f, assignments):
    """Set the coordinates in ``assignments`` (and their conjugates) to zero.

    The result lives on the smaller chart or subtorus, with the remaining
    coordinates renumbered in increasing order.
    """
    assigned = set(assignments)
    keep = [j for j in range(1, f.n + 1) if j not in assigned]
    m = len(keep)
    out = {}
    for key, c in f.terms.items():
        if f.kind == CHART:
            if any(key[j - 1] or key[f.n + j - 1] for j in assigned):
                continue
            nk = tuple(key[j - 1] for j in keep) + tuple(key[f.n + j - 1] for j in keep)
        else:
            nk = tuple(key[j - 1] for j in keep) + tuple(key[f.n + j - 1] for j in keep)
            # projected (k, l) pairs are integers, so the lattice holds; assert it anyway
            alpha = freq_alpha(nk)
            beta = freq_beta(nk)
            if key_from_frequencies(alpha, beta) != nk:
                raise LatticeViolation("projected frequency left the lattice")
        out[nk] = out.get(nk, ZERO) + c
    return type(f)(m, out)
