"""Numerical laboratory for Moser-Trudinger constructions: truncated
exponential functionals, rearrangements, conformal transport, counterexample
metrics, strip eigenfunctions, and concentration-compactness diagnostics."""

from ._mtlab import (
    RadialProfile,
    Nonlinearity,
    capped_moser,
    case_preset,
    dirichlet_energy,
    disc_strip,
    disc_strip_jacobian,
    double_symmetrize,
    growth_index,
    hyperbolic_density,
    jensen_lower_bound,
    lambda1_numeric,
    lp_norm,
    maximize_from_eigenfunction,
    mobius_apply,
    mobius_ball_image,
    moser,
    mt_functional,
    nl_phi_alpha,
    nl_power,
    phi_eval,
    rectangle_lambda1,
    scaled_moser,
    schwarz_radii,
    sharp_exponent,
    sphere_measure,
    steiner,
    tilde_transform,
)

__all__ = [
    "RadialProfile",
    "Nonlinearity",
    "capped_moser",
    "case_preset",
    "dirichlet_energy",
    "disc_strip",
    "disc_strip_jacobian",
    "double_symmetrize",
    "growth_index",
    "hyperbolic_density",
    "jensen_lower_bound",
    "lambda1_numeric",
    "lp_norm",
    "maximize_from_eigenfunction",
    "mobius_apply",
    "mobius_ball_image",
    "moser",
    "mt_functional",
    "nl_phi_alpha",
    "nl_power",
    "phi_eval",
    "rectangle_lambda1",
    "scaled_moser",
    "schwarz_radii",
    "sharp_exponent",
    "sphere_measure",
    "steiner",
    "tilde_transform",
]
