"""Partial match queries in random quadtrees and 2-d trees."""

from ._core import (
    CapError,
    beta_exponent,
    beta_fn,
    constants,
    cost_profile,
    diagnostics,
    fill_up_level,
    gamma,
    h,
    kd_cost,
    psi_moments,
    quadtree_cost,
    run_experiment,
    second_moment,
    simulate_limit,
    simulate_limit_path,
    supremum,
    uniform_points,
    xi_perp_moments,
)

__all__ = [
    "CapError",
    "beta_exponent",
    "beta_fn",
    "constants",
    "cost_profile",
    "diagnostics",
    "fill_up_level",
    "gamma",
    "h",
    "kd_cost",
    "psi_moments",
    "quadtree_cost",
    "run_experiment",
    "second_moment",
    "simulate_limit",
    "simulate_limit_path",
    "supremum",
    "uniform_points",
    "xi_perp_moments",
]
