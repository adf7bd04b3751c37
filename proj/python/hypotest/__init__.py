"""Gauss hypergeometric quotient/difference bound verifier.

Thin re-export of the compiled core: special functions, F(a,b;c;x)
evaluation on [0,1), the Q/D functionals, the theorem registry with
margin checks, and the sweep/probe machinery.
"""

from ._core import (  # noqa: F401
    DomainError,
    HypothesisError,
    NumericError,
    OverflowRangeError,
    beta,
    bound_constants,
    check,
    classify,
    d_f,
    d_g,
    default_sweep_spec,
    default_t_grid,
    derivative,
    digamma,
    euler_gamma,
    f1,
    f2,
    f3,
    f4,
    f_pv,
    g_zb,
    gamma,
    h_pv,
    hyp2f1,
    log_gamma,
    oracle_binomial,
    oracle_elliptic_agm,
    oracle_log,
    oracle_series_hq,
    probe_infimum_d_f,
    q_f,
    q_g,
    r_coeff,
    run_sweep,
    s_func,
    subadditivity_check,
    theorems,
    value_at_one,
)

__version__ = "0.1.0"
