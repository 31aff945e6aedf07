"""Shared builders for seeded test inputs."""

import random

from kuranishi.deformation import mc_solve
from kuranishi.forms import Geometry, VForm, torus
from kuranishi.generators import rand_tangent_cocycle, rand_xi
from kuranishi.scalars import MonomialIdeal


def fix_t2():
    return torus(2, 1, 4)


def xi_a(g=None):
    g = g or fix_t2()
    return (VForm.t(g) ^ VForm.dvb(g, 1)).with_value(2)


def omega_std(g=None):
    g = g or fix_t2()
    return VForm.dv(g, 1) ^ VForm.dv(g, 2)


def ideal(k, m=1):
    return MonomialIdeal([(k,) if m == 1 else tuple(k if j == 0 else 0 for j in range(m))], m)


def truncate_below(w, d):
    """Terms of t-degree < d."""
    return w._new({k: v for k, v in w.terms.items() if sum(k[4]) < d})


def integrable_xi(g, rng, only=None):
    """Exactly integrable Kuranishi data from the solver on a torus geometry."""
    c = rand_tangent_cocycle(g, rng, only=only)
    if g.m > 1:
        c = c.mul_t(tuple(1 if j == 0 else 0 for j in range(g.m)))
    xi, report = mc_solve(c)
    assert report.is_zero()
    return xi.xi


def integrable_mod(g, rng, k):
    """Data integrable mod <t^k> but (generically) not exactly: solver output below t^k plus t^k noise."""
    xi = truncate_below(integrable_xi(g, rng), k)
    noise = rand_xi(g, rng, tmin=k, tmax=k, terms=2)
    return xi + noise


def seeded(seed):
    return random.Random(seed)


def rand_torus(rng, n_choices=(1, 2, 2, 3), m_choices=(1,), N=4):
    return Geometry("torus", rng.choice(n_choices), rng.choice(m_choices), N)



def y_tangent_cocycle(g, rng):
    """delbar-closed first-order datum whose normal part vanishes on the subtorus {v1}.

    Constant terms take values in d/dv1 or carry a dvb_j with j != 1; exact
    terms are delbar of v1-characters times d/dv1.
    """
    from kuranishi.calculus import dbar
    from kuranishi.generators import rand_nonconstant_character, rand_scalar

    out = VForm.zero(g)
    for _ in range(2):
        j = rng.randint(1, g.n)
        a = 1 if j == 1 or rng.random() < 0.5 else rng.randint(1, g.n)
        out = out + VForm.term(g, rand_scalar(rng), J=(j,), a=a)
    for _ in range(2):
        f = rand_nonconstant_character(g, rng, only={1})
        out = out + dbar(VForm.term(g, rand_scalar(rng), f=f, a=1))
    return out


def y_tangent_xi(g, rng):
    xi, report = mc_solve(y_tangent_cocycle(g, rng))
    assert report.is_zero()
    return xi.xi
