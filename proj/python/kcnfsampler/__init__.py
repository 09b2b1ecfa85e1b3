"""Sampling, counting and structural checks for random k-CNF formulas."""

from ._core import (
    Formula,
    KcnfError,
    all_property_ids,
    approx_count,
    brute_force_solutions,
    certify_delta,
    check_property,
    construct_sep,
    count_solutions,
    derive_params,
    exact_marginal,
    generate_random_kcnf,
    measure_halt_rate,
    parse_dimacs,
    rejection_sample,
    sample_with_policy,
    solution_sample,
    verify_sampler,
    write_dimacs,
)

__all__ = [
    "Formula",
    "KcnfError",
    "all_property_ids",
    "approx_count",
    "brute_force_solutions",
    "certify_delta",
    "check_property",
    "construct_sep",
    "count_solutions",
    "derive_params",
    "exact_marginal",
    "generate_random_kcnf",
    "measure_halt_rate",
    "parse_dimacs",
    "rejection_sample",
    "sample_with_policy",
    "solution_sample",
    "verify_sampler",
    "write_dimacs",
]
