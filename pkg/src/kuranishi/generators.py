"""Seeded random generators for forms, Kuranishi data and vector fields.

All generators take a ``random.Random`` instance so runs are reproducible.
Sizes follow the fuzzing bounds: at most 5 terms per form, chart exponents
up to 2, torus lattice coordinates (k, l) in [-1, 1] so every frequency
entry has real and imaginary parts in [-2, 2].
"""

from itertools import combinations

from .forms import Geometry, VForm
from .funring import CHART, TORUS
from .scalars import GaussianRational, monomials_of_degree


def rand_scalar(rng):
    re = rng.randint(-3, 3)
    im = rng.choice((0, 0, -1, 1, 2))
    den = rng.choice((1, 1, 1, 2, 3))
    if re == 0 and im == 0:
        re = 1
    return GaussianRational._raw(re, im, den)


def rand_fkey(geom, rng, const_prob=0.2, only=None):
    """Random monomial key; ``only`` restricts the dependence to those coordinates."""
    n = geom.n
    if rng.random() < const_prob:
        return geom.unit_f
    allowed = set(only) if only is not None else set(range(1, n + 1))
    if geom.kind == CHART:
        key = [0] * (2 * n)
        for p in range(2 * n):
            if (p % n) + 1 in allowed and rng.random() < 0.45:
                key[p] = rng.randint(1, 2)
        return tuple(key)
    key = [0] * (2 * n)
    for p in range(2 * n):
        if (p % n) + 1 in allowed:
            key[p] = rng.choice((-1, 0, 0, 1))
    return tuple(key)


def rand_tmono(geom, rng, lo=0, hi=None):
    hi = geom.N if hi is None else min(hi, geom.N)
    if lo > hi:
        return None
    d = rng.randint(lo, hi)
    return rng.choice(monomials_of_degree(geom.m, d))


def rand_form(geom, rng, bidegrees, vector=False, tmin=0, tmax=None, terms=None, only=None):
    """Random form whose terms have bidegrees drawn from ``bidegrees``."""
    n = geom.n
    count = terms if terms is not None else rng.randint(1, 5)
    raw = []
    for _ in range(count):
        p, q = rng.choice(bidegrees)
        if p > n or q > n:
            continue
        I = rng.choice(list(combinations(range(1, n + 1), p)))
        J = rng.choice(list(combinations(range(1, n + 1), q)))
        a = rng.randint(1, n) if vector else 0
        t = rand_tmono(geom, rng, tmin, tmax)
        if t is None:
            continue
        raw.append((rand_scalar(rng), rand_fkey(geom, rng, only=only), t, I, J, a))
    return VForm.from_terms(geom, raw)


def all_bidegrees(n):
    return [(p, q) for p in range(n + 1) for q in range(n + 1)]


def rand_scalar_form(geom, rng, terms=None):
    return rand_form(geom, rng, all_bidegrees(geom.n), terms=terms)


def rand_xi(geom, rng, k=1, terms=None, tmin=1, tmax=None, only=None):
    """Random (0,k) vector-valued form in m (no t-constant term by default)."""
    return rand_form(geom, rng, [(0, k)], vector=True, tmin=tmin, tmax=tmax, terms=terms, only=only)


def rand_vector_field(geom, rng, terms=None, tmin=1, tmax=None):
    """Random (0,0) vector-valued series in m."""
    return rand_form(geom, rng, [(0, 0)], vector=True, tmin=tmin, tmax=tmax, terms=terms)


def rand_geometry(rng, kind=None, n_max=3, N_max=4):
    kind = kind or rng.choice((CHART, TORUS))
    n = rng.randint(1, n_max)
    m = rng.choice((1, 1, 2))
    N = rng.randint(2, N_max)
    return Geometry(kind, n, m, N)


def rand_nonconstant_character(geom, rng, only=None):
    """Torus key with at least one nonzero lattice coordinate."""
    while True:
        key = rand_fkey(geom, rng, const_prob=0.0, only=only)
        if any(key):
            return key


def rand_tangent_cocycle(geom, rng, harmonic_terms=2, exact_terms=2, only=None):
    """t-free delbar-closed (0,1) datum on the torus: constant part + delbar(function vector field)."""
    from .calculus import dbar

    if geom.kind != TORUS:
        raise ValueError("cocycles are generated on the torus")
    n = geom.n
    harmonic = VForm.from_terms(
        geom,
        [
            (rand_scalar(rng), geom.unit_f, geom.unit_t, (), (rng.randint(1, n),), rng.randint(1, n))
            for _ in range(harmonic_terms)
        ],
    )
    potential = VForm.from_terms(
        geom,
        [
            (rand_scalar(rng), rand_nonconstant_character(geom, rng, only=only), geom.unit_t, (), (), rng.randint(1, n))
            for _ in range(exact_terms)
        ],
    )
    return harmonic + dbar(potential)
