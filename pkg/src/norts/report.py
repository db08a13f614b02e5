"""Uniform test reports, the residual-check procedure, and plot-data files.

Every test outcome is rendered through :class:`TestReport`, which carries
the method label, named statistics, degrees of freedom where defined, the
p-value and the alternative-hypothesis line.  Text output follows the
classic hypothesis-test print layout; JSON output round-trips exactly.
"""

from __future__ import annotations

import csv
import json
import secrets
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .dist import normal_ppf
from .epps import Lambda, epps_test
from .errors import InvalidInputError
from .lobato import lobato_test
from .rng import RngStream
from .rp import ProjectionConfig, rp_test
from .series import as_series, autocovariances
from .stationarity import UnitRootReport, adf_test, kpss_test, ljung_box
from .vavra import SieveConfig, vavra_test

__all__ = [
    "TestReport",
    "CheckConfig",
    "CheckReport",
    "NORMALITY_METHODS",
    "UNIT_ROOT_METHODS",
    "test_dispatch",
    "check",
    "render_text",
    "render_json",
    "report_from_json",
    "render_check_text",
    "render_check_json",
    "check_report_from_json",
]

NORMALITY_METHODS = ("epps", "lobato", "rp", "vavra")
UNIT_ROOT_METHODS = ("adf", "kpss", "lb")

GAUSSIAN_ALTERNATIVE = "{name} does not follow a Gaussian Process"


@dataclass(frozen=True)
class TestReport:
    """Universal rendering of a hypothesis-test outcome."""

    method: str
    statistics: dict[str, float]
    p_value: float
    df: int | None = None
    alternative: str = ""
    data_name: str = "x"
    notes: tuple[str, ...] = ()


def _fmt_stat(v: float) -> str:
    return f"{v:.5g}"


def _fmt_p(p: float) -> str:
    return f"{p:.4g}"


def render_text(report: TestReport) -> str:
    """Classic hypothesis-test text block."""
    parts = [f"{k} = {_fmt_stat(v)}" for k, v in report.statistics.items()]
    if report.df is not None:
        parts.append(f"df = {report.df}")
    parts.append(f"p-value = {_fmt_p(report.p_value)}")
    lines = [
        "",
        f"\t{report.method}",
        "",
        f"data:  {report.data_name}",
        ", ".join(parts),
        f"alternative hypothesis: {report.alternative}",
    ]
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _report_to_dict(report: TestReport) -> dict:
    return {
        "method": report.method,
        "statistics": dict(report.statistics),
        "p_value": report.p_value,
        "df": report.df,
        "alternative": report.alternative,
        "data_name": report.data_name,
        "notes": list(report.notes),
    }


def _report_from_dict(payload: dict) -> TestReport:
    return TestReport(
        method=payload["method"],
        statistics={k: float(v) for k, v in payload["statistics"].items()},
        p_value=float(payload["p_value"]),
        df=None if payload["df"] is None else int(payload["df"]),
        alternative=payload["alternative"],
        data_name=payload["data_name"],
        notes=tuple(payload["notes"]),
    )


def render_json(report: TestReport) -> str:
    return json.dumps(_report_to_dict(report), indent=2)


def report_from_json(text: str) -> TestReport:
    return _report_from_dict(json.loads(text))


def _unit_root_to_report(res: UnitRootReport, data_name: str) -> TestReport:
    if res.method.startswith("Augmented Dickey-Fuller"):
        stats = {"Dickey-Fuller": res.statistic, "Lag order": float(res.lag_order)}
        alternative = "stationary"
    elif res.method.startswith("KPSS"):
        stats = {"KPSS Level": res.statistic, "Truncation lag": float(res.lag_order)}
        alternative = "non-stationary"
    else:
        stats = {"X-squared": res.statistic}
        alternative = "serial correlation present"
    notes = ()
    if res.bounded:
        notes = ("p-value interpolated at a critical-value table edge",)
    return TestReport(
        method=res.method,
        statistics=stats,
        p_value=res.p_value,
        df=res.lag_order if res.method == "Ljung-Box" else None,
        alternative=alternative,
        data_name=data_name,
        notes=notes,
    )


def _auto_stream(rng: RngStream | None) -> tuple[RngStream, tuple[str, ...]]:
    if rng is not None:
        return rng, ()
    seed = secrets.randbits(63)
    return RngStream(seed), (f"seed: {seed} (auto-generated; pass it back to reproduce)",)


def _stationarity_note(s, alpha: float) -> tuple[str, ...]:
    if len(s) < 30:
        return ()
    pre = adf_test(s, alpha=alpha)
    if pre.conclusion == "non-stationary":
        return (
            "warning: augmented Dickey-Fuller does not reject a unit root "
            f"(p-value = {_fmt_p(pre.p_value)}); the series may be non-stationary",
        )
    return ()


def test_dispatch(
    method: str,
    s,
    *,
    alpha: float = 0.05,
    rng: RngStream | None = None,
    data_name: str = "x",
    warn_stationarity: bool = True,
    **options,
) -> TestReport:
    """Run the named test on the series and wrap it in a :class:`TestReport`.

    Normality methods are preceded by an ADF check whose warning, if any,
    is attached to the report notes.  Stochastic methods draw from ``rng``
    when given and otherwise auto-seed from entropy, echoing the seed in
    the notes for replay.
    """
    s = as_series(s)
    valid = NORMALITY_METHODS + UNIT_ROOT_METHODS
    if method not in valid:
        raise InvalidInputError(f"unknown method {method!r}; expected one of {valid}")

    if method in UNIT_ROOT_METHODS:
        if method == "adf":
            res = adf_test(s, alpha=alpha)
        elif method == "kpss":
            res = kpss_test(s, alpha=alpha)
        else:
            res = ljung_box(s, lags=int(options.pop("lags", 10)), alpha=alpha)
        return _unit_root_to_report(res, data_name)

    notes: tuple[str, ...] = ()
    if warn_stationarity:
        notes += _stationarity_note(s, alpha)

    alternative = GAUSSIAN_ALTERNATIVE.format(name=data_name)
    if method == "lobato":
        r = lobato_test(s)
        return TestReport(
            method="Lobato and Velasco's test",
            statistics={"lobato": r.statistic},
            p_value=r.p_value,
            df=r.df,
            alternative=alternative,
            data_name=data_name,
            notes=notes,
        )
    if method == "epps":
        lam = options.pop("lam", None)
        if lam is not None and not isinstance(lam, Lambda):
            lam = Lambda(tuple(lam))
        r = epps_test(s, lam)
        if not r.converged:
            notes += ("optimizer did not converge within its iteration cap",)
        return TestReport(
            method="Epps test",
            statistics={"epps": r.statistic},
            p_value=r.p_value,
            df=r.df,
            alternative=alternative,
            data_name=data_name,
            notes=notes,
        )
    if method == "rp":
        stream, seed_note = _auto_stream(rng)
        cfg = ProjectionConfig(seed=stream, **options)
        r = rp_test(s, cfg)
        return TestReport(
            method="k random projections test",
            statistics={"k": float(r.k), "lobato": r.avg_lobato, "epps": r.avg_epps},
            p_value=r.p_value,
            df=None,
            alternative=alternative,
            data_name=data_name,
            notes=notes + seed_note,
        )
    # vavra
    stream, seed_note = _auto_stream(rng)
    cfg = SieveConfig(seed=stream, **options)
    r = vavra_test(s, cfg)
    return TestReport(
        method="Psaradakis-Vavra test",
        statistics={"A": r.ad_observed, "bootstrap mean": r.ad_bootstrap_mean},
        p_value=r.p_value,
        df=None,
        alternative=alternative,
        data_name=data_name,
        notes=notes + seed_note,
    )


# ---------------------------------------------------------------------------
# Residual check report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckConfig:
    unit_root: str = "adf"
    normality: str = "rp"
    alpha: float = 0.05
    emit_plot_data: bool = False
    seed: RngStream | None = None
    out_dir: Path = Path(".")
    normality_options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.unit_root not in UNIT_ROOT_METHODS:
            raise InvalidInputError(
                f"unknown unit-root method {self.unit_root!r}; expected one of {UNIT_ROOT_METHODS}"
            )
        if self.normality not in NORMALITY_METHODS:
            raise InvalidInputError(
                f"unknown normality method {self.normality!r}; expected one of {NORMALITY_METHODS}"
            )
        if not 0.0 < self.alpha < 1.0:
            raise InvalidInputError("alpha must lie in (0, 1)")
        object.__setattr__(self, "out_dir", Path(self.out_dir))
        object.__setattr__(self, "normality_options", dict(self.normality_options))


@dataclass(frozen=True)
class CheckReport:
    stationarity: TestReport
    stationarity_conclusion: str
    normality: TestReport
    normality_conclusion: str
    verdict: str


def _write_plot_data(s, cfg: CheckConfig) -> None:
    x = s.values
    n = len(s)
    out = cfg.out_dir

    def open_csv(name):
        path = out / name
        try:
            return open(path, "w", newline="")
        except OSError as exc:
            raise InvalidInputError(f"cannot write plot data to {path}: {exc}") from exc

    try:
        with open_csv("residuals.csv") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "value"])
            for t, v in enumerate(x, start=1):
                w.writerow([t, f"{v:.10g}"])

        counts, edges = np.histogram(x, bins="fd")
        with open_csv("hist.csv") as fh:
            w = csv.writer(fh)
            w.writerow(["bin_left", "bin_right", "count"])
            for i, c in enumerate(counts):
                w.writerow([f"{edges[i]:.10g}", f"{edges[i + 1]:.10g}", int(c)])

        order = np.sort(x)
        theo = normal_ppf((np.arange(1, n + 1) - 0.5) / n)
        with open_csv("qq.csv") as fh:
            w = csv.writer(fh)
            w.writerow(["theoretical_quantile", "sample_quantile"])
            for tq, sq in zip(theo, order):
                w.writerow([f"{tq:.10g}", f"{sq:.10g}"])

        max_lag = min(int(np.floor(10.0 * np.log10(n))), n - 1)
        gamma = autocovariances(s, max_lag)
        acf = gamma[1:] / gamma[0]
        pacf = _pacf_from_autocov(gamma)
        band = 1.96 / np.sqrt(n)
        with open_csv("acf.csv") as fh:
            w = csv.writer(fh)
            w.writerow(["lag", "acf", "pacf", "band"])
            for lag in range(1, max_lag + 1):
                w.writerow([lag, f"{acf[lag - 1]:.10g}", f"{pacf[lag - 1]:.10g}", f"{band:.10g}"])
    except OSError as exc:
        raise InvalidInputError(f"cannot write plot data under {out}: {exc}") from exc


def _pacf_from_autocov(gamma: np.ndarray) -> np.ndarray:
    """Partial autocorrelations (reflection coefficients) via Levinson."""
    max_lag = gamma.size - 1
    pacf = np.zeros(max_lag)
    prev = np.zeros(0)
    sigma2 = gamma[0]
    for p in range(1, max_lag + 1):
        if sigma2 <= 0:
            break
        kappa = (gamma[p] - prev @ gamma[1:p][::-1]) / sigma2
        pacf[p - 1] = kappa
        new = np.empty(p)
        new[: p - 1] = prev - kappa * prev[::-1]
        new[p - 1] = kappa
        prev = new
        sigma2 *= 1.0 - kappa * kappa
    return pacf


def check(series, cfg: CheckConfig, data_name: str = "y") -> CheckReport:
    """Run the configured stationarity and normality tests on a residual
    series and, when requested, write the four plot-data CSV files."""
    s = as_series(series)
    stream, seed_note = _auto_stream(cfg.seed)

    stat_report = test_dispatch(cfg.unit_root, s, alpha=cfg.alpha, data_name=data_name)
    stat_ok = stat_report.p_value < cfg.alpha if cfg.unit_root == "adf" else stat_report.p_value >= cfg.alpha
    stat_conclusion = f"{data_name} is {'stationary' if stat_ok else 'non-stationary'}"

    norm_report = test_dispatch(
        cfg.normality,
        s,
        alpha=cfg.alpha,
        rng=stream,
        data_name=data_name,
        warn_stationarity=False,
        **cfg.normality_options,
    )
    if seed_note and cfg.normality in ("rp", "vavra"):
        norm_report = TestReport(
            method=norm_report.method,
            statistics=norm_report.statistics,
            p_value=norm_report.p_value,
            df=norm_report.df,
            alternative=norm_report.alternative,
            data_name=norm_report.data_name,
            notes=norm_report.notes + seed_note,
        )
    norm_ok = norm_report.p_value >= cfg.alpha
    norm_conclusion = (
        f"{data_name} follows a Gaussian Process"
        if norm_ok
        else f"{data_name} does not follow a Gaussian Process"
    )

    if cfg.emit_plot_data:
        _write_plot_data(s, cfg)

    if stat_ok and norm_ok:
        verdict = f"{data_name} behaves like a stationary Gaussian process"
    elif stat_ok:
        verdict = f"{data_name} is stationary but not Gaussian"
    elif norm_ok:
        verdict = f"{data_name} is Gaussian-like but may be non-stationary"
    else:
        verdict = f"{data_name} is neither stationary nor Gaussian"

    if s.period > 1:
        stat_report = TestReport(
            method=stat_report.method,
            statistics=stat_report.statistics,
            p_value=stat_report.p_value,
            df=stat_report.df,
            alternative=stat_report.alternative,
            data_name=stat_report.data_name,
            notes=stat_report.notes + ("seasonal tests: not implemented",),
        )

    return CheckReport(
        stationarity=stat_report,
        stationarity_conclusion=stat_conclusion,
        normality=norm_report,
        normality_conclusion=norm_conclusion,
        verdict=verdict,
    )


_BANNER = " *************************************************** "


def render_check_text(report: CheckReport) -> str:
    lines = [
        _BANNER,
        "",
        " Unit root test for stationarity: ",
        render_text(report.stationarity).rstrip("\n"),
        "",
        "",
        f" Conclusion: {report.stationarity_conclusion}",
        "",
        _BANNER,
        "",
        " Goodness of fit test for Gaussian Distribution: ",
        render_text(report.normality).rstrip("\n"),
        "",
        "",
        f" Conclusion: {report.normality_conclusion}",
        "",
        _BANNER,
    ]
    return "\n".join(lines) + "\n"


def render_check_json(report: CheckReport) -> str:
    payload = {
        "stationarity": _report_to_dict(report.stationarity),
        "stationarity_conclusion": report.stationarity_conclusion,
        "normality": _report_to_dict(report.normality),
        "normality_conclusion": report.normality_conclusion,
        "verdict": report.verdict,
    }
    return json.dumps(payload, indent=2)


def check_report_from_json(text: str) -> CheckReport:
    payload = json.loads(text)
    return CheckReport(
        stationarity=_report_from_dict(payload["stationarity"]),
        stationarity_conclusion=payload["stationarity_conclusion"],
        normality=_report_from_dict(payload["normality"]),
        normality_conclusion=payload["normality_conclusion"],
        verdict=payload["verdict"],
    )
