"""Flat-torus Hodge theory: harmonic projection and explicit homotopy operators.

On a single frequency, delbar is exterior multiplication by sum_j b_j dvb_j.
The homotopy

    G = (1/N(b)) sum_j conj(b_j) i(d/dvb_j),   N(b) = sum_j |b_j|^2,

satisfies delbar G + G delbar = 1 there, and H (the zero-frequency part)
accounts for the rest: delbar G + G delbar + H = id.  The del-homotopy is
the same construction with the holomorphic frequency a and i(d/dv_j).
"""

from dataclasses import dataclass

from .calculus import dbar, delo
from .errors import NotClosed, Obstructed, WrongGeometry
from .forms import _acc, remove_sign
from .funring import TORUS, freq_alpha, freq_beta
from .scalars import GaussianRational


def _require_torus(w):
    if w.geom.kind != TORUS:
        raise WrongGeometry("harmonic theory is available on the torus only")


def harmonic_projection(w):
    """Keep the zero-frequency (constant coefficient) terms."""
    _require_torus(w)
    return w._new({k: v for k, v in w.terms.items() if not any(k[3])})


def _homotopy(w, holo):
    _require_torus(w)
    out = {}
    cache = {}
    for (I, J, a, f, t), c in w.terms.items():
        if not any(f):
            continue
        data = cache.get(f)
        if data is None:
            freq = freq_alpha(f) if holo else freq_beta(f)
            norm = sum(x * x + y * y for x, y in freq)
            # conj(b_j) / N(b) as Gaussian rationals
            data = [(j + 1, GaussianRational._raw(x, -y, norm)) for j, (x, y) in enumerate(freq) if x or y]
            cache[f] = data
        for j, coef in data:
            if holo:
                s, nI = remove_sign(I, j)
                if not s:
                    continue
                key = (nI, J, a, f, t)
            else:
                s, nJ = remove_sign(J, j)
                if not s:
                    continue
                if len(I) & 1:
                    s = -s
                key = (I, nJ, a, f, t)
            v = c * coef
            _acc(out, key, v if s == 1 else -v)
    return w._new(out)


def dbar_homotopy(w):
    """The Green-type homotopy G for delbar."""
    return _homotopy(w, holo=False)


def partial_homotopy(w):
    """The mirror homotopy for del."""
    return _homotopy(w, holo=True)


def solve_dbar(y):
    """Return x = G(y) with delbar x = y; y must be delbar-closed with zero harmonic part."""
    _require_torus(y)
    if dbar(y):
        raise NotClosed("right-hand side is not delbar-closed", witness=dbar(y))
    h = harmonic_projection(y)
    if h:
        raise Obstructed(f"right-hand side has harmonic part {h.render()}", witness=h)
    return dbar_homotopy(y)


@dataclass(frozen=True)
class HodgeDecomposition:
    """w = harmonic + delbar(potential) + remainder, with remainder = G(delbar w)."""

    harmonic: object
    potential: object
    remainder: object

    def reconstruct(self):
        return self.harmonic + dbar(self.potential) + self.remainder


def hodge_decompose(w):
    return HodgeDecomposition(harmonic_projection(w), dbar_homotopy(w), dbar_homotopy(dbar(w)))


def cohomologous(a, b):
    """Class comparison for delbar-closed forms: equal harmonic parts."""
    for x in (a, b):
        if dbar(x):
            raise NotClosed("class comparison needs delbar-closed forms", witness=dbar(x))
    return harmonic_projection(a) == harmonic_projection(b)


def del_closed(w):
    return not delo(w)

