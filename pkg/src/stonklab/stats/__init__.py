"""From-scratch statistics: correlation, OLS, Granger causality, F distribution."""

from .correlation import kendall_tau, pearson
from .granger import (
    GrangerResult,
    GrangerScan,
    granger_scan,
    granger_test,
    max_feasible_lag,
)
from .ols import OlsFit, ols_fit
from .special import f_cdf, f_sf, log_beta, reg_inc_beta

__all__ = [
    "pearson",
    "kendall_tau",
    "OlsFit",
    "ols_fit",
    "GrangerResult",
    "GrangerScan",
    "granger_test",
    "granger_scan",
    "max_feasible_lag",
    "reg_inc_beta",
    "log_beta",
    "f_cdf",
    "f_sf",
]
