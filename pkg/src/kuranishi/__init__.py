"""Exact symbolic engine for deformations of complex structure.

Forms on a polydisk chart or a flat torus with coefficients in a truncated
power series ring; contraction, Lie derivatives and the Frolicher-Nijenhuis
bracket on vector-valued forms; torus Hodge theory; a Maurer-Cartan solver;
obstruction classes and pairing certificates, including for coordinate
subtori.
"""

from .calculus import (
    IDENTITY_NAMES,
    SPolynomial,
    bracket,
    check_identity,
    contract,
    d,
    dbar,
    delo,
    exp_contract,
    exp_lie,
    lie,
)
from .deformation import (
    KuranishiData,
    ObstructionReport,
    conjugated_operator_check,
    dbar_xi_operator,
    extend_class,
    frame_integrability_oracle,
    gauge_transform,
    gauss_manin,
    is_integrable_mod,
    local_gauge_to_kuranishi,
    mc_residual,
    mc_solve,
    obstruction_class,
    theorem41_certificate,
)
from .forms import Geometry, VForm, chart, restrict_subtorus, torus
from .hodge import dbar_homotopy, harmonic_projection, hodge_decompose, partial_homotopy, solve_dbar
from .scalars import GaussianRational, MonomialIdeal, TSeries, gr, ideal_quotient_basis
from .submanifold import (
    Subtorus,
    coboundary,
    pair_obstruction_cocycle,
    split_tangent_normal,
    submanifold_obstruction,
    theorem43_certificate,
    theorem52_cochain_check,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "Geometry",
    "IDENTITY_NAMES",
    "KuranishiData",
    "MonomialIdeal",
    "ObstructionReport",
    "SPolynomial",
    "Subtorus",
    "TSeries",
    "VForm",
    "bracket",
    "chart",
    "check_identity",
    "coboundary",
    "conjugated_operator_check",
    "contract",
    "d",
    "dbar",
    "dbar_homotopy",
    "dbar_xi_operator",
    "delo",
    "exp_contract",
    "exp_lie",
    "extend_class",
    "frame_integrability_oracle",
    "gauge_transform",
    "gauss_manin",
    "gr",
    "harmonic_projection",
    "hodge_decompose",
    "ideal_quotient_basis",
    "is_integrable_mod",
    "lie",
    "local_gauge_to_kuranishi",
    "mc_residual",
    "mc_solve",
    "obstruction_class",
    "pair_obstruction_cocycle",
    "partial_homotopy",
    "restrict_subtorus",
    "solve_dbar",
    "split_tangent_normal",
    "submanifold_obstruction",
    "theorem41_certificate",
    "theorem43_certificate",
    "theorem52_cochain_check",
    "torus",
]
