"""Pearson r and tie-corrected Kendall tau-b, straight from the definitions.

Daily series are short (tens of points), so the O(n^2) pair enumeration in
kendall_tau is deliberate; it keeps the implementation checkable against
exhaustive counting.
"""

from __future__ import annotations

import math
from typing import Sequence

from ..errors import DegenerateSeriesError


def _check_lengths(x: Sequence[float], y: Sequence[float]) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if len(x) < 2:
        raise ValueError("need at least 2 observations")
    return len(x)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Linear correlation coefficient in [-1, 1].

    Raises DegenerateSeriesError (never returns NaN) when either input has
    zero variance.
    """
    n = _check_lengths(x, y)
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    sxx = math.fsum((xi - mx) ** 2 for xi in x)
    syy = math.fsum((yi - my) ** 2 for yi in y)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateSeriesError("degenerate series: zero variance")
    sxy = math.fsum((xi - mx) * (yi - my) for xi, yi in zip(x, y))
    r = sxy / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """Kendall tau-b: (C - D) / sqrt((n0 - n1) (n0 - n2)).

    C and D count concordant and discordant pairs; n1 and n2 are the tie
    corrections sum t*(t-1)/2 over tie groups in x and y respectively.
    """
    n = _check_lengths(x, y)
    concordant = 0
    discordant = 0
    ties_x = 0
    ties_y = 0
    for i in range(n):
        xi, yi = x[i], y[i]
        for j in range(i + 1, n):
            dx = xi - x[j]
            dy = yi - y[j]
            if dx == 0:
                ties_x += 1
            if dy == 0:
                ties_y += 1
            if dx == 0 or dy == 0:
                continue
            if (dx > 0) == (dy > 0):
                concordant += 1
            else:
                discordant += 1
    n0 = n * (n - 1) // 2
    if ties_x == n0 or ties_y == n0:
        raise DegenerateSeriesError("degenerate series: all values tied")
    tau = (concordant - discordant) / math.sqrt((n0 - ties_x) * (n0 - ties_y))
    return max(-1.0, min(1.0, tau))
