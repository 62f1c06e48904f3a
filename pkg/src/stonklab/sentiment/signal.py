"""Posts, sentiment labels, and reduction of per-post scores to daily series."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Mapping, Sequence

from ..errors import MissingLabelError
from ..series import DailySeries
from .emoji import count_emojis
from .lexicon import Lexicon, lexicon_polarity

EMOJI_COUNT = "emoji-count"
LEXICON_POLARITY = "lexicon-polarity"
EXTERNAL_LABELS = "external-labels"
SCORERS = (EMOJI_COUNT, LEXICON_POLARITY, EXTERNAL_LABELS)


@dataclass(frozen=True)
class Post:
    """One social-media post: unique id, UTC epoch seconds, raw text."""

    id: str
    timestamp: int
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("post id must be non-empty")

    @property
    def day(self) -> date:
        return datetime.fromtimestamp(self.timestamp, tz=timezone.utc).date()


class SentimentLabel(enum.Enum):
    POSITIVE = "positive"
    NEUTRAL = "neutral"
    NEGATIVE = "negative"

    @classmethod
    def parse(cls, token: str) -> "SentimentLabel":
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ValueError(f"unknown sentiment label {token!r}") from None


def label_to_score(label: SentimentLabel) -> float:
    return {
        SentimentLabel.POSITIVE: 1.0,
        SentimentLabel.NEUTRAL: 0.0,
        SentimentLabel.NEGATIVE: -1.0,
    }[label]


def daily_signal(
    posts: Sequence[Post],
    scorer: str,
    aggregation: str = "mean",
    lexicon: Lexicon | None = None,
    labels: Mapping[str, SentimentLabel] | None = None,
) -> DailySeries:
    """Score every post and aggregate per UTC day.

    Days with no posts are absent from the result rather than zero-filled.
    With scorer=external-labels every post id must appear in `labels`.
    """
    if not posts:
        raise ValueError("no posts to score")
    if aggregation not in ("mean", "sum"):
        raise ValueError(f"unknown aggregation {aggregation!r}")

    if scorer == EMOJI_COUNT:
        score = lambda p: float(count_emojis(p.text))
    elif scorer == LEXICON_POLARITY:
        score = lambda p: lexicon_polarity(p.text, lexicon)
    elif scorer == EXTERNAL_LABELS:
        if labels is None:
            raise ValueError("external-labels scorer needs a labels mapping")
        missing = [p.id for p in posts if p.id not in labels]
        if missing:
            raise MissingLabelError(missing)
        score = lambda p: label_to_score(labels[p.id])
    else:
        raise ValueError(f"unknown scorer {scorer!r}")

    by_day: dict[date, list[float]] = defaultdict(list)
    for post in posts:
        by_day[post.day].append(score(post))
    if aggregation == "mean":
        reduced = {d: sum(v) / len(v) for d, v in by_day.items()}
    else:
        reduced = {d: sum(v) for d, v in by_day.items()}
    return DailySeries.from_items(reduced.items())
