"""Seeded synthetic data with planted causal structure.

gen_pair draws a bivariate autoregressive pair where x drives y at a known
lag, used to validate the causality statistics. gen_fixture writes a
complete miniature dataset (posts, prices, trends, labels) with planted
relationships for end-to-end golden tests. Everything is a pure function of
the seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from .ingest import (
    LabelRecord,
    write_labels,
    write_posts,
    write_prices,
    write_trends,
)
from .rng import Xoshiro256StarStar
from .sentiment import Post, SentimentLabel
from .series import DailySeries

START_DATE = date(2021, 1, 4)


@dataclass(frozen=True)
class VarSpec:
    """Parameters of the planted relationship y_t = ar_y*y_{t-1} + c*x_{t-lag} + noise."""

    n: int
    coupling: float
    lag: int = 1
    ar_x: float = 0.0
    ar_y: float = 0.0
    noise_std: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.lag < 1:
            raise ValueError("lag must be >= 1")
        if self.n <= 10 * self.lag:
            raise ValueError(f"n must exceed 10*lag (n={self.n}, lag={self.lag})")
        if not (abs(self.ar_x) < 1 and abs(self.ar_y) < 1):
            raise ValueError("autoregression coefficients must lie in (-1, 1)")
        if not self.noise_std > 0:
            raise ValueError("noise_std must be positive")


def gen_pair(spec: VarSpec) -> tuple[DailySeries, DailySeries]:
    """Generate (x, y) where x Granger-causes y with the spec's coupling.

    x_t = ar_x*x_{t-1} + eps_t and y_t = ar_y*y_{t-1} + c*x_{t-lag} + eta_t,
    with eps/eta i.i.d. Gaussian(0, noise_std^2) and zero initial history.
    """
    rng = Xoshiro256StarStar(spec.seed)
    x = [0.0] * spec.n
    y = [0.0] * spec.n
    for t in range(spec.n):
        eps = rng.gauss() * spec.noise_std
        eta = rng.gauss() * spec.noise_std
        x_prev = x[t - 1] if t >= 1 else 0.0
        y_prev = y[t - 1] if t >= 1 else 0.0
        x_lagged = x[t - spec.lag] if t >= spec.lag else 0.0
        x[t] = spec.ar_x * x_prev + eps
        y[t] = spec.ar_y * y_prev + spec.coupling * x_lagged + eta
    dates = tuple(START_DATE + timedelta(days=t) for t in range(spec.n))
    return DailySeries(dates, tuple(x)), DailySeries(dates, tuple(y))


_EMOJI_POS = ("\U0001F680", "\U0001F48E", "\U0001F64C", "\U0001F98D", "\U0001F4C8")
_EMOJI_NEG = ("\U0001F4C9", "\U0001F921", "\U0001F480", "\U0001F62D")
_TEMPLATES_POS = (
    "to the moon {e}{e}",
    "diamond hands forever {e}",
    "buying the dip, easy tendies {e}",
    "this rocket is just getting started {e}{e}{e}",
    "hold strong together {e}",
    "best stock on the market, huge gains {e}",
)
_TEMPLATES_NEG = (
    "paper hands dumping everything {e}",
    "this is a scam, we are doomed {e}{e}",
    "lost half my savings today {e}",
    "worst trade of my life {e}",
)
_TEMPLATES_NEU = (
    "what time does the market open tomorrow",
    "holding since january, no change",
    "any news on the earnings call",
    "volume looks about average today",
    "reading the quarterly report {e}",
)


def _make_post_text(rng: Xoshiro256StarStar, label: SentimentLabel) -> str:
    if label is SentimentLabel.POSITIVE:
        template = _TEMPLATES_POS[rng.randint(len(_TEMPLATES_POS))]
        pool = _EMOJI_POS
    elif label is SentimentLabel.NEGATIVE:
        template = _TEMPLATES_NEG[rng.randint(len(_TEMPLATES_NEG))]
        pool = _EMOJI_NEG
    else:
        template = _TEMPLATES_NEU[rng.randint(len(_TEMPLATES_NEU))]
        pool = _EMOJI_POS
    out = []
    for part in template.split("{e}"):
        out.append(part)
        out.append(pool[rng.randint(len(pool))])
    out.pop()  # one emoji slot per "{e}" only
    return "".join(out)


def gen_fixture(directory: str | Path, seed: int = 20210104, days: int = 90) -> dict:
    """Write a miniature dataset with planted structure; returns the manifest.

    A latent daily "hype" level drives post volume, post sentiment mix and
    (one day later) the price return, so volume Granger-causes price by
    construction. Prices exist on weekdays only; trends and posts are
    calendar-daily.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rng = Xoshiro256StarStar(seed)

    hype = []
    level = 0.0
    for _ in range(days):
        level = 0.7 * level + rng.gauss()
        hype.append(level)

    posts: list[Post] = []
    labels: list[LabelRecord] = []
    counter = 0
    for t in range(days):
        day = START_DATE + timedelta(days=t)
        n_posts = max(1, 5 + int(round(2.0 * hype[t])))
        for _ in range(n_posts):
            counter += 1
            # hype tilts the sentiment mix toward positive
            threshold = 0.5 + 0.25 * math.tanh(hype[t])
            roll = rng.uniform()
            if roll < threshold:
                label = SentimentLabel.POSITIVE
            elif roll < threshold + 0.3:
                label = SentimentLabel.NEUTRAL
            else:
                label = SentimentLabel.NEGATIVE
            post = Post(
                id=f"p{counter:06d}",
                timestamp=int(
                    day.toordinal() - date(1970, 1, 1).toordinal()
                ) * 86400 + rng.randint(86400),
                text=_make_post_text(rng, label),
            )
            posts.append(post)
            labels.append(LabelRecord(post.id, label))
    order = sorted(range(len(posts)), key=lambda i: (posts[i].timestamp, posts[i].id))
    posts = [posts[i] for i in order]
    labels = [labels[i] for i in order]

    price_dates = []
    price_values = []
    log_price = math.log(100.0)
    for t in range(days):
        day = START_DATE + timedelta(days=t)
        if day.weekday() >= 5:
            continue
        driver = hype[t - 1] if t >= 1 else 0.0
        log_price += 0.02 * driver + 0.01 * rng.gauss()
        price_dates.append(day)
        price_values.append(round(math.exp(log_price), 2))

    trend_dates = []
    trend_values = []
    for t in range(days):
        raw = 50.0 + 14.0 * hype[t] + 4.0 * rng.gauss()
        trend_dates.append(START_DATE + timedelta(days=t))
        trend_values.append(float(max(0, min(100, int(round(raw))))))

    write_posts(directory / "posts.jsonl", posts)
    write_prices(directory / "prices.csv", DailySeries(tuple(price_dates), tuple(price_values)))
    write_trends(directory / "trends.csv", DailySeries(tuple(trend_dates), tuple(trend_values)))
    write_labels(directory / "labels.csv", labels)

    manifest = {
        "seed": seed,
        "days": days,
        "start": START_DATE.isoformat(),
        "end": (START_DATE + timedelta(days=days - 1)).isoformat(),
        "posts": len(posts),
        "price_rows": len(price_dates),
        "trends_rows": len(trend_dates),
        "labels": len(labels),
    }
    (directory / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return manifest
