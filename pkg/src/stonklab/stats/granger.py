"""Bivariate Granger causality: nested OLS models, F statistic, p-value.

The restricted model regresses the effect on its own lags; the unrestricted
model adds the candidate cause's lags. Rejecting the null (no improvement)
means the cause's past carries predictive information about the effect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..errors import SeriesTooShortError
from .ols import ols_fit
from .special import f_sf

# slack for the nesting inequality rss_u <= rss_r under rounding
_NEST_REL = 1e-9
_NEST_ABS = 1e-12


@dataclass(frozen=True)
class GrangerResult:
    cause: str
    effect: str
    lag: int
    f_stat: float
    p_value: float
    rss_restricted: float
    rss_unrestricted: float
    n_effective: int

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value outside [0, 1]: {self.p_value}")
        if self.rss_restricted < 0.0 or self.rss_unrestricted < 0.0:
            raise ValueError("negative residual sum of squares")


@dataclass(frozen=True)
class GrangerScan:
    """Per-lag results plus the AIC-selected headline row."""

    results: tuple[GrangerResult, ...]
    headline: GrangerResult


def _lagged_rows(series: Sequence[float], lag: int, t: int) -> list[float]:
    return [series[t - i] for i in range(1, lag + 1)]


def granger_test(
    x: Sequence[float],
    y: Sequence[float],
    lag: int,
    cause: str = "x",
    effect: str = "y",
) -> GrangerResult:
    """Test whether lagged x improves prediction of y beyond y's own lags."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if lag < 1:
        raise ValueError("lag must be >= 1")
    n = len(y)
    n_eff = n - lag
    dof = n_eff - 2 * lag - 1
    if dof <= 0:
        raise SeriesTooShortError(
            f"too few observations for lag {lag} (n={n}, residual dof={dof})"
        )

    rows_r = []
    rows_u = []
    target = []
    for t in range(lag, n):
        ylags = _lagged_rows(y, lag, t)
        xlags = _lagged_rows(x, lag, t)
        rows_r.append([1.0] + ylags)
        rows_u.append([1.0] + ylags + xlags)
        target.append(y[t])

    fit_r = ols_fit(rows_r, target)
    fit_u = ols_fit(rows_u, target)
    rss_r, rss_u = fit_r.rss, fit_u.rss
    if rss_u > rss_r + _NEST_REL * rss_r + _NEST_ABS:
        raise ArithmeticError(
            f"nesting violated: rss_u={rss_u} > rss_r={rss_r}; OLS is broken"
        )
    rss_u = min(rss_u, rss_r)

    if rss_u == 0.0:
        # perfect unrestricted fit: the limiting p-value is 0
        f_stat, p_value = math.inf, 0.0
    else:
        f_stat = ((rss_r - rss_u) / lag) / (rss_u / dof)
        f_stat = max(f_stat, 0.0)
        p_value = f_sf(f_stat, lag, dof)
    return GrangerResult(cause, effect, lag, f_stat, p_value, rss_r, rss_u, n_eff)


def _aic(result: GrangerResult) -> float:
    """AIC of the unrestricted model: n_eff*ln(rss/n_eff) + 2k."""
    k = 2 * result.lag + 1
    if result.rss_unrestricted == 0.0:
        return -math.inf
    return (
        result.n_effective * math.log(result.rss_unrestricted / result.n_effective)
        + 2 * k
    )


def max_feasible_lag(n: int) -> int:
    """Largest lag with positive residual degrees of freedom: n - lag > 2*lag + 1."""
    return (n - 2) // 3


def granger_scan(
    x: Sequence[float],
    y: Sequence[float],
    maxlag: int,
    cause: str = "x",
    effect: str = "y",
) -> GrangerScan:
    """Run granger_test for each feasible lag in 1..maxlag.

    Lags beyond feasibility are silently truncated; the headline row is the
    lag whose unrestricted model minimizes AIC (ties go to the smaller lag).
    """
    if maxlag < 1:
        raise ValueError("maxlag must be >= 1")
    top = min(maxlag, max_feasible_lag(len(y)))
    if top < 1:
        raise SeriesTooShortError(
            f"too few observations for any lag (n={len(y)})"
        )
    results = tuple(
        granger_test(x, y, lag, cause=cause, effect=effect)
        for lag in range(1, top + 1)
    )
    headline = min(results, key=lambda r: (_aic(r), r.lag))
    return GrangerScan(results, headline)
