"""Ordinary least squares via Householder QR.

The factorization is written out explicitly (not delegated to a LAPACK
driver) so the rank test and the residual norm carry exactly the documented
semantics: relative tolerance 1e-10 on the R diagonal, rss taken from the
transformed tail of y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import SingularMatrixError

RANK_TOL = 1e-10


@dataclass(frozen=True)
class OlsFit:
    coefficients: tuple[float, ...]
    rss: float
    n: int
    k: int


def ols_fit(X: Sequence[Sequence[float]] | np.ndarray, y: Sequence[float]) -> OlsFit:
    """Least-squares fit of y on the columns of X (intercept column included
    by the caller).

    Raises SingularMatrixError when the smallest |R| diagonal entry falls
    below RANK_TOL times the largest.
    """
    A = np.array(X, dtype=float)
    b = np.array(y, dtype=float)
    if A.ndim != 2:
        raise ValueError("X must be a 2-D design matrix")
    n, k = A.shape
    if b.shape != (n,):
        raise ValueError(f"y has length {b.shape[0]}, expected {n}")
    if n <= k:
        raise ValueError(f"need more rows than columns (n={n}, k={k})")

    for j in range(k):
        col = A[j:, j]
        norm = math.sqrt(float(col @ col))
        if norm == 0.0:
            continue  # column already zero below the diagonal; rank check catches it
        alpha = -math.copysign(norm, col[0])
        v = col.copy()
        v[0] -= alpha
        vnorm2 = float(v @ v)
        if vnorm2 == 0.0:
            continue
        scale = 2.0 / vnorm2
        A[j:, j:] -= np.outer(v, scale * (v @ A[j:, j:]))
        b[j:] -= v * (scale * float(v @ b[j:]))
        # the reflection maps the column onto alpha*e1 exactly by construction
        A[j, j] = alpha
        A[j + 1 :, j] = 0.0

    diag = np.abs(np.diag(A[:k, :k]))
    if diag.max() == 0.0 or diag.min() < RANK_TOL * diag.max():
        raise SingularMatrixError("singular design matrix")

    beta = np.empty(k)
    for i in range(k - 1, -1, -1):
        beta[i] = (b[i] - float(A[i, i + 1 :] @ beta[i + 1 :])) / A[i, i]
    rss = float(b[k:] @ b[k:])
    return OlsFit(tuple(float(c) for c in beta), rss, n, k)
