"""Effective chain-length bounds, prolongation equations and integrability
conditions for polynomial systems with several commuting derivations."""

from ._core import (
    DomainError,
    BudgetError,
    alpha,
    enumerate_gamma,
    t_bound,
    T_bound,
    poly_str,
    prolong,
    nabla,
    integrability,
    reduce_modulo,
    bound_first_order,
    bound_positive_dim,
    bound_higher_order,
    bound_generator_degrees,
    isogeny_bound,
    oracle_chain,
    oracle_case1,
    oracle_tsound,
    run_acceptance,
)

__all__ = [
    "DomainError",
    "BudgetError",
    "alpha",
    "enumerate_gamma",
    "t_bound",
    "T_bound",
    "poly_str",
    "prolong",
    "nabla",
    "integrability",
    "reduce_modulo",
    "bound_first_order",
    "bound_positive_dim",
    "bound_higher_order",
    "bound_generator_degrees",
    "isogeny_bound",
    "oracle_chain",
    "oracle_case1",
    "oracle_tsound",
    "run_acceptance",
]

__version__ = "0.1.0"
