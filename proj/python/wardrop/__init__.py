"""Routing games: Wardrop equilibria, social optima, and price-of-anarchy
asymptotics across the congestion spectrum."""

from wardrop._core import (  # noqa: F401
    HypothesisError,
    Network,
    NumericError,
    ParseError,
    Scenario,
    StructuralError,
    brute_force,
    classify,
    fit_power_law,
    k_shortest_paths,
    limit_value,
    lock_in_threshold,
    network_from_json,
    parse_tntp,
    pigou_asymptotics,
    poly_orders,
    predict_poa_limit,
    price_of_anarchy,
    rate_bound_constants,
    rate_exponent,
    salience_check,
    scenario,
    scenario_names,
    solve,
    sweep,
    sweep_csv,
)

__all__ = [
    "HypothesisError",
    "Network",
    "NumericError",
    "ParseError",
    "Scenario",
    "StructuralError",
    "brute_force",
    "classify",
    "fit_power_law",
    "k_shortest_paths",
    "limit_value",
    "lock_in_threshold",
    "network_from_json",
    "parse_tntp",
    "pigou_asymptotics",
    "poly_orders",
    "predict_poa_limit",
    "price_of_anarchy",
    "rate_bound_constants",
    "rate_exponent",
    "salience_check",
    "scenario",
    "scenario_names",
    "solve",
    "sweep",
    "sweep_csv",
]
