import numpy as np
import pytest
from mpmath import mp, matrix, lu_solve

from stonklab.errors import SingularMatrixError
from stonklab.stats import ols_fit


def normal_equations_oracle(X, y, dps=50):
    """Solve X'X b = X'y at 50 significant digits."""
    mp.dps = dps
    rows, cols = len(X), len(X[0])
    xtx = matrix(cols, cols)
    xty = matrix(cols, 1)
    for i in range(cols):
        for j in range(cols):
            xtx[i, j] = sum(mp.mpf(X[r][i]) * mp.mpf(X[r][j]) for r in range(rows))
        xty[i] = sum(mp.mpf(X[r][i]) * mp.mpf(y[r]) for r in range(rows))
    beta = lu_solve(xtx, xty)
    residual_sq = mp.mpf(0)
    for r in range(rows):
        pred = sum(beta[i] * mp.mpf(X[r][i]) for i in range(cols))
        residual_sq += (mp.mpf(y[r]) - pred) ** 2
    return [float(b) for b in beta], float(residual_sq)


class TestOlsFit:
    def test_exact_line(self):
        X = [[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]]
        fit = ols_fit(X, [1.0, 3.0, 5.0])
        assert abs(fit.coefficients[0] - 1.0) < 1e-12
        assert abs(fit.coefficients[1] - 2.0) < 1e-12
        assert fit.rss < 1e-24
        assert fit.n == 3 and fit.k == 2

    def test_orthogonal_target_gives_zero_slopes(self):
        # column mean-zero and orthogonal to y beyond the intercept
        X = [[1.0, -1.0], [1.0, 0.0], [1.0, 1.0]]
        fit = ols_fit(X, [2.0, -4.0, 2.0])  # correlates 0 with the slope column
        assert abs(fit.coefficients[1]) < 1e-12

    def test_matches_normal_equations_oracle(self):
        rng = np.random.default_rng(20240317)
        X = np.column_stack([np.ones(20), rng.normal(size=(20, 2))])
        y = rng.normal(size=20)
        fit = ols_fit(X, y)
        beta_ref, rss_ref = normal_equations_oracle(X.tolist(), y.tolist())
        for mine, ref in zip(fit.coefficients, beta_ref):
            assert abs(mine - ref) < 1e-10
        assert abs(fit.rss - rss_ref) < 1e-10

    def test_singular_design_raises(self):
        X = [[1.0, 2.0, 4.0], [1.0, 3.0, 6.0], [1.0, 5.0, 10.0], [1.0, 7.0, 14.0]]
        with pytest.raises(SingularMatrixError, match="singular"):
            ols_fit(X, [1.0, 2.0, 3.0, 4.0])

    def test_near_singular_within_tolerance_raises(self):
        X = [[1.0, 1.0 + 1e-13], [1.0, 1.0], [1.0, 1.0 - 1e-13]]
        with pytest.raises(SingularMatrixError):
            ols_fit(X, [1.0, 2.0, 3.0])

    def test_underdetermined_rejected(self):
        with pytest.raises(ValueError):
            ols_fit([[1.0, 2.0]], [1.0])

    def test_rss_nonnegative_random(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            X = np.column_stack([np.ones(12), rng.normal(size=(12, 3))])
            y = rng.normal(size=12)
            fit = ols_fit(X, y)
            assert fit.rss >= 0.0
            # rss equals the explicit residual norm
            beta = np.array(fit.coefficients)
            explicit = float(np.sum((y - X @ beta) ** 2))
            assert abs(fit.rss - explicit) < 1e-9 * max(1.0, explicit)
