"""Exact Lagrange inversion over Newton-Puiseux branches.

Solves ``H = q R(H)`` and ``H**e = q R(H)`` over the rationals, evaluates
branch-symmetric quantities without leaving the rational field, and checks
the identity between ``G_e(R)`` and its branch-product form to any order.
"""

from .branches import (
    PuiseuxBranchSet,
    RSpec,
    elementary_symmetric,
    gessel_phi_expansion,
    log_H_over_q,
    power_sum,
    solve_ramified_branch,
    solve_unramified,
    symmetric_product,
    vandermonde_product,
)
from .identity import VerificationReport, corollary_rhs, lhs_G, rhs_product, verify
from .series import (
    LaurentSeries,
    PowerSeries,
    PrecisionError,
    coeff_extract,
    compose,
    derivative,
    invert,
    laurent_polynomial,
    monomial,
    polynomial,
    pow_rational,
    series_exp,
    series_log,
)

__version__ = "0.1.0"
