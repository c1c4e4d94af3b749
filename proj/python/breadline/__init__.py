"""Steady-state analysis of food prices, savings and inequality under
sectoral productivity losses.

The heavy lifting lives in the compiled extension ``breadline._core``;
this package re-exports its operations.
"""

from breadline._core import (
    ModelError,
    compare_scenarios,
    demand,
    discretize_ar1,
    engel_approximation,
    equivalent_variation,
    food_share,
    gini,
    indirect_utility,
    ratio_8020,
    solve_steady_state,
    weighted_damage,
)

__all__ = [
    "ModelError",
    "compare_scenarios",
    "demand",
    "discretize_ar1",
    "engel_approximation",
    "equivalent_variation",
    "food_share",
    "gini",
    "indirect_utility",
    "ratio_8020",
    "solve_steady_state",
    "weighted_damage",
]
