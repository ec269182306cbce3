"""Exact majorization, spin-sum and Ising-domination verifiers.

Exact quantities are returned as :class:`fractions.Fraction`; inputs may be
ints, Fractions or rational strings such as ``"3/2"``.
"""

from ._core import (  # noqa: F401
    ConfigError,
    DomainError,
    InvariantError,
    PreconditionError,
    ResourceError,
    a_s,
    build_xyw_integer,
    decreasing_rearrangement,
    gibbs_expectation,
    majorizes,
    partial_sums,
    random_probe_canonical,
    single_crossing_majorizes,
    sphere_moment,
    spin_sum,
    t_minus_mu_lambda,
    t_minus_upper,
    tc_bounds,
    verify_conjecture,
    verify_half_odd_centered_sum,
    verify_integer_centered_sum,
    wells_term,
)

__version__ = "0.1.0"
