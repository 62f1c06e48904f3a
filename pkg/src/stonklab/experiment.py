"""The experiment matrix: every signal against price, every variant, both
correlation metrics and both causality directions.

Degenerate inputs (no variance, too-short overlap, collinear designs) mark
individual result cells rather than aborting the run, so one flat signal
never hides the rest of the table.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .errors import (
    AlignmentError,
    DegenerateSeriesError,
    InputFormatError,
    SeriesTooShortError,
    SingularMatrixError,
)
from .ingest import comment_volume, filter_window, read_labels, read_posts, read_prices, read_trends
from .sentiment import EMOJI_COUNT, EXTERNAL_LABELS, LEXICON_POLARITY, daily_signal
from .series import ALL_VARIANTS, AlignedPair, DailySeries, Variant, align, apply_variant
from .stats import granger_scan, kendall_tau, pearson

DEFAULT_WINDOW = (date(2021, 1, 4), date(2021, 3, 31))
DEFAULT_MAXLAG = 5

PRICE_NAME = "Stock price"
VOLUME_NAME = "Number of comments"
TRENDS_NAME = "Google Trends"
LEXICON_NAME = "Emotional"
EMOJI_NAME = "Emoji counter"
LABELS_NAME = "External labels"

_DEGENERATE_ERRORS = (DegenerateSeriesError, SeriesTooShortError, SingularMatrixError)


@dataclass(frozen=True)
class ExperimentConfig:
    prices: str
    posts: str | None = None
    trends: str | None = None
    labels: str | None = None
    ticker: str = "STOCK"
    start: date = DEFAULT_WINDOW[0]
    end: date = DEFAULT_WINDOW[1]
    variants: tuple[Variant, ...] = ALL_VARIANTS
    maxlag: int = DEFAULT_MAXLAG
    align_policy: str = "inner-join"
    aggregation: str = "mean"

    def __post_init__(self):
        if self.posts is None and self.trends is None:
            raise ValueError("configure at least one predictor source (posts or trends)")
        if not self.start < self.end:
            raise ValueError("window start must precede end")
        if self.maxlag < 1:
            raise ValueError("maxlag must be >= 1")

    def to_dict(self) -> dict:
        return {
            "ticker": self.ticker,
            "posts": self.posts,
            "prices": self.prices,
            "trends": self.trends,
            "labels": self.labels,
            "start": self.start.isoformat(),
            "end": self.end.isoformat(),
            "variants": [v.label for v in self.variants],
            "maxlag": self.maxlag,
            "align": self.align_policy,
            "agg": self.aggregation,
        }


@dataclass(frozen=True)
class CorrelationRow:
    method: str  # "pearson" | "kendall"
    shifted: bool
    stationary: bool
    signal: str
    value: float | None  # None marks a degenerate cell

    def __post_init__(self):
        if self.value is not None and not -1.0 <= self.value <= 1.0:
            raise ValueError(f"correlation outside [-1, 1]: {self.value}")


@dataclass(frozen=True)
class CausalityRow:
    cause: str
    effect: str
    p_value: float | None
    stationary: bool
    shifted: bool
    lag: int | None
    f_stat: float | None


@dataclass(frozen=True)
class Provenance:
    config: dict
    config_digest: str
    inputs: dict  # name -> {"path":..., "sha256":...}


@dataclass(frozen=True)
class ResultSet:
    ticker: str
    correlations: tuple[CorrelationRow, ...]
    causality: tuple[CausalityRow, ...]
    provenance: Provenance
    chart_series: tuple[tuple[str, DailySeries], ...] = ()

    def to_dict(self) -> dict:
        return {
            "ticker": self.ticker,
            "correlations": [
                {
                    "method": r.method,
                    "shifted": r.shifted,
                    "stationary": r.stationary,
                    "signal": r.signal,
                    "value": r.value,
                }
                for r in self.correlations
            ],
            "causality": [
                {
                    "cause": r.cause,
                    "effect": r.effect,
                    "p_value": r.p_value,
                    "stationary": r.stationary,
                    "shifted": r.shifted,
                    "lag": r.lag,
                    "f_stat": r.f_stat,
                }
                for r in self.causality
            ],
            "provenance": {
                "config": self.provenance.config,
                "config_digest": self.provenance.config_digest,
                "inputs": self.provenance.inputs,
            },
            "chart_series": [
                {
                    "name": name,
                    "dates": [d.isoformat() for d in s.dates],
                    "values": list(s.values),
                }
                for name, s in self.chart_series
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ResultSet":
        return cls(
            ticker=data["ticker"],
            correlations=tuple(
                CorrelationRow(
                    r["method"], r["shifted"], r["stationary"], r["signal"], r["value"]
                )
                for r in data["correlations"]
            ),
            causality=tuple(
                CausalityRow(
                    r["cause"],
                    r["effect"],
                    r["p_value"],
                    r["stationary"],
                    r["shifted"],
                    r["lag"],
                    r["f_stat"],
                )
                for r in data["causality"]
            ),
            provenance=Provenance(
                data["provenance"]["config"],
                data["provenance"]["config_digest"],
                data["provenance"]["inputs"],
            ),
            chart_series=tuple(
                (
                    s["name"],
                    DailySeries(
                        tuple(date.fromisoformat(d) for d in s["dates"]),
                        tuple(s["values"]),
                    ),
                )
                for s in data.get("chart_series", [])
            ),
        )


def _sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _provenance(config: ExperimentConfig) -> Provenance:
    cfg = config.to_dict()
    digest = hashlib.sha256(
        json.dumps(cfg, sort_keys=True).encode("utf-8")
    ).hexdigest()
    inputs = {}
    for name, path in (
        ("posts", config.posts),
        ("prices", config.prices),
        ("trends", config.trends),
        ("labels", config.labels),
    ):
        if path is not None:
            inputs[name] = {"path": str(path), "sha256": _sha256_file(path)}
    return Provenance(cfg, digest, inputs)


def build_signals(config: ExperimentConfig) -> list[tuple[str, DailySeries]]:
    """Load inputs and derive every configured predictor signal."""
    signals: list[tuple[str, DailySeries]] = []
    if config.posts is not None:
        result = read_posts(config.posts)
        posts = filter_window(result.posts, config.start, config.end)
        if not posts:
            raise InputFormatError(
                f"no posts within window {config.start}..{config.end}"
            )
        signals.append((VOLUME_NAME, comment_volume(posts)))
        if config.trends is not None:
            trends = read_trends(config.trends).clip(config.start, config.end)
            signals.append((TRENDS_NAME, trends))
        signals.append(
            (LEXICON_NAME, daily_signal(posts, LEXICON_POLARITY, config.aggregation))
        )
        signals.append(
            (EMOJI_NAME, daily_signal(posts, EMOJI_COUNT, config.aggregation))
        )
        if config.labels is not None:
            records = read_labels(config.labels)
            labels = {r.post_id: r.label for r in records}
            signals.append(
                (
                    LABELS_NAME,
                    daily_signal(
                        posts, EXTERNAL_LABELS, config.aggregation, labels=labels
                    ),
                )
            )
    elif config.trends is not None:
        trends = read_trends(config.trends).clip(config.start, config.end)
        signals.append((TRENDS_NAME, trends))
    return signals


def run_experiment(config: ExperimentConfig) -> ResultSet:
    """Compute the full correlation and causality grid against price."""
    price = read_prices(config.prices).clip(config.start, config.end)
    if len(price) == 0:
        raise InputFormatError(
            f"no price rows within window {config.start}..{config.end}"
        )
    signals = build_signals(config)

    correlations: list[CorrelationRow] = []
    causality: list[CausalityRow] = []
    for name, signal in signals:
        pair = align(signal, price, config.align_policy)
        for variant in config.variants:
            correlations.extend(_correlation_rows(name, pair, variant))
            causality.extend(
                _causality_rows(name, pair, variant, config.maxlag)
            )

    chart_series = [(PRICE_NAME, price)] + signals
    return ResultSet(
        ticker=config.ticker,
        correlations=tuple(correlations),
        causality=tuple(causality),
        provenance=_provenance(config),
        chart_series=tuple(chart_series),
    )


def _correlation_rows(name, pair, variant):
    for method, fn in (("pearson", pearson), ("kendall", kendall_tau)):
        try:
            transformed = apply_variant(pair, variant, side="target-only")
            value = fn(transformed.x, transformed.y)
        except _DEGENERATE_ERRORS:
            value = None
        yield CorrelationRow(method, variant.shifted, variant.stationary, name, value)


def _causality_rows(name, pair, variant, maxlag):
    # stationarity is applied to both sides for causality tests
    directions = (
        (name, PRICE_NAME, pair.x, pair.y),
        (PRICE_NAME, name, pair.y, pair.x),
    )
    for cause, effect, x_vals, y_vals in directions:
        try:
            base = AlignedPair(pair.dates, x_vals, y_vals)
            transformed = apply_variant(base, variant, side="both")
            scan = granger_scan(
                transformed.x, transformed.y, maxlag, cause=cause, effect=effect
            )
            head = scan.headline
            yield CausalityRow(
                cause,
                effect,
                head.p_value,
                variant.stationary,
                variant.shifted,
                head.lag,
                head.f_stat,
            )
        except _DEGENERATE_ERRORS:
            yield CausalityRow(
                cause, effect, None, variant.stationary, variant.shifted, None, None
            )
