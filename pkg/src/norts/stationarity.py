"""Stationarity pre-tests: Ljung-Box, augmented Dickey-Fuller, KPSS.

The Dickey-Fuller and KPSS p-values come from linear interpolation in the
standard published critical-value tables shipped with the package; values
falling outside a table are clamped to its edge and flagged as bounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .dist import chi2_sf
from .errors import InvalidInputError, NumericDegeneracyError
from .series import as_series, autocovariances

__all__ = ["UnitRootReport", "ljung_box", "adf_test", "kpss_test"]


@dataclass(frozen=True)
class UnitRootReport:
    """Stationarity-check outcome; ``conclusion`` restates the p-value
    versus alpha decision for the test's own null hypothesis."""

    method: str
    statistic: float
    lag_order: int
    p_value: float
    bounded: bool
    conclusion: str
    alpha: float = 0.05


def _load_tables() -> dict:
    with resources.files("norts.data").joinpath("critical_values.json").open() as fh:
        return json.load(fh)


_TABLES = _load_tables()


def ljung_box(s, lags: int = 10, alpha: float = 0.05) -> UnitRootReport:
    """Portmanteau test of the first ``lags`` autocorrelations being zero."""
    s = as_series(s)
    lags = int(lags)
    n = len(s)
    if lags < 1:
        raise InvalidInputError("number of lags must be positive")
    if lags >= n / 2:
        raise InvalidInputError(f"lags must be below n/2, got lags={lags}, n={n}")
    gamma = autocovariances(s, lags)
    if gamma[0] <= 0.0:
        raise InvalidInputError("series has zero variance")
    rho = gamma[1:] / gamma[0]
    q = n * (n + 2.0) * np.sum(rho**2 / (n - np.arange(1, lags + 1)))
    p = chi2_sf(q, lags)
    return UnitRootReport(
        method="Ljung-Box",
        statistic=float(q),
        lag_order=lags,
        p_value=float(p),
        bounded=False,
        conclusion="stationary" if p >= alpha else "non-stationary",
        alpha=alpha,
    )


def _interp_bounded(stat: float, cvs, probs) -> tuple[float, bool]:
    cvs = np.asarray(cvs, dtype=float)
    probs = np.asarray(probs, dtype=float)
    bounded = stat < cvs[0] or stat > cvs[-1]
    return float(np.interp(stat, cvs, probs)), bool(bounded)


def adf_test(s, alpha: float = 0.05) -> UnitRootReport:
    """Augmented Dickey-Fuller unit-root test, trend-included variant.

    Regresses the first difference on an intercept, a linear trend, the
    lagged level and floor((n-1)^(1/3)) lagged differences, and refers the
    t-statistic of the lagged level to the trend-case Dickey-Fuller table.
    Small p-values speak against a unit root, i.e. for stationarity.
    """
    s = as_series(s)
    n = len(s)
    if n < 30:
        raise InvalidInputError(f"ADF test requires at least 30 observations, got {n}")
    x = s.values
    d = np.diff(x)
    k = int(np.floor((n - 1) ** (1.0 / 3.0)))
    rows = n - 1 - k
    y = d[k:]
    design = np.empty((rows, 3 + k))
    design[:, 0] = 1.0
    design[:, 1] = np.arange(k + 1, n)  # time index of the response
    design[:, 2] = x[k : n - 1]  # lagged level
    for j in range(1, k + 1):
        design[:, 2 + j] = d[k - j : n - 1 - j]
    coef, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < design.shape[1]:
        raise NumericDegeneracyError("Dickey-Fuller regression design is rank deficient")
    resid = y - design @ coef
    dof = rows - design.shape[1]
    if dof < 1:
        raise InvalidInputError("too few observations for the Dickey-Fuller regression")
    sigma2 = float(resid @ resid) / dof
    xtx_inv = np.linalg.inv(design.T @ design)
    stat = float(coef[2] / np.sqrt(sigma2 * xtx_inv[2, 2]))

    table = _TABLES["dickey_fuller_trend"]
    sizes = np.asarray(table["sample_sizes"], dtype=float)
    grid = np.asarray(table["statistics"], dtype=float)
    cvs = [float(np.interp(n, sizes, grid[:, j])) for j in range(grid.shape[1])]
    p, bounded = _interp_bounded(stat, cvs, table["probabilities"])
    return UnitRootReport(
        method="Augmented Dickey-Fuller Test",
        statistic=stat,
        lag_order=k,
        p_value=p,
        bounded=bounded,
        conclusion="stationary" if p < alpha else "non-stationary",
        alpha=alpha,
    )


def kpss_test(s, alpha: float = 0.05) -> UnitRootReport:
    """KPSS level-stationarity test (null hypothesis: stationary).

    The numerator uses partial sums of the demeaned data; the denominator
    is a Bartlett long-run variance with truncation floor(4 (n/100)^(1/4)).
    Small p-values speak against stationarity.
    """
    s = as_series(s)
    n = len(s)
    if n < 30:
        raise InvalidInputError(f"KPSS test requires at least 30 observations, got {n}")
    e = s.values - np.mean(s.values)
    if np.max(np.abs(e)) == 0.0:
        raise InvalidInputError("series has zero variance")
    cumsums = np.cumsum(e)
    eta = float(np.sum(cumsums**2)) / n**2
    lag = int(np.floor(4.0 * (n / 100.0) ** 0.25))
    lrv = float(e @ e) / n
    for i in range(1, lag + 1):
        w = 1.0 - i / (lag + 1.0)
        lrv += 2.0 * w * float(e[i:] @ e[:-i]) / n
    if lrv <= 0.0:
        raise NumericDegeneracyError("long-run variance estimate is non-positive")
    stat = eta / lrv

    table = _TABLES["kpss_level"]
    p, bounded = _interp_bounded(stat, table["statistics"], table["probabilities"])
    return UnitRootReport(
        method="KPSS Test for Level Stationarity",
        statistic=stat,
        lag_order=lag,
        p_value=p,
        bounded=bounded,
        conclusion="non-stationary" if p < alpha else "stationary",
        alpha=alpha,
    )
