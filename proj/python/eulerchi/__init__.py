"""Exact Eulerian numbers, Euler characteristics of complete intersections in
abelian varieties, the wedge-power search and the inequality checks."""

from ._core import (
    ConsistencyError,
    IntegralityError,
    PreconditionError,
    brute_force_generalized,
    chi_from_profile,
    chi_same_class,
    chi_via_recurrence,
    eulerian,
    eulerian_row,
    generalized_eulerian,
    generalized_eulerian_row,
    generalized_eulerian_via_sum,
    induced_profile,
    lhs_value,
    m0_bound,
    numerical_condition,
    plant,
    search,
    selftest,
    sweep,
    threshold_n,
    verify,
)

__all__ = [
    "ConsistencyError",
    "IntegralityError",
    "PreconditionError",
    "brute_force_generalized",
    "chi_from_profile",
    "chi_same_class",
    "chi_via_recurrence",
    "eulerian",
    "eulerian_row",
    "generalized_eulerian",
    "generalized_eulerian_row",
    "generalized_eulerian_via_sum",
    "induced_profile",
    "lhs_value",
    "m0_bound",
    "numerical_condition",
    "plant",
    "search",
    "selftest",
    "sweep",
    "threshold_n",
    "verify",
]
