from ._fractool import (
    bracket_table,
    composed_x_derivative,
    convention_gap,
    eigen_suite,
    evaluate_expr,
    gamma_fn,
    gap_report,
    heat_residual_max,
    iterate_family5,
    mittag_leffler,
    mrl_derivative,
    power_rule_coeff,
    rl_integral,
    to_canonical,
    transform,
)

__all__ = [
    "bracket_table",
    "composed_x_derivative",
    "convention_gap",
    "eigen_suite",
    "evaluate_expr",
    "gamma_fn",
    "gap_report",
    "heat_residual_max",
    "iterate_family5",
    "mittag_leffler",
    "mrl_derivative",
    "power_rule_coeff",
    "rl_integral",
    "to_canonical",
    "transform",
]
