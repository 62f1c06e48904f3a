"""Sentiment signals: emoji counting, lexicon polarity, label aggregation."""

from .emoji import (
    EmojiInventoryRow,
    count_emojis,
    emoji_inventory,
    iter_emoji_clusters,
    parse_range_table,
)
from .lexicon import (
    DEFAULT_NEGATORS,
    Lexicon,
    bundled_lexicon,
    lexicon_polarity,
    load_lexicon,
    parse_lexicon,
    tokenize,
)
from .signal import (
    EMOJI_COUNT,
    EXTERNAL_LABELS,
    LEXICON_POLARITY,
    SCORERS,
    Post,
    SentimentLabel,
    daily_signal,
    label_to_score,
)

__all__ = [
    "count_emojis",
    "emoji_inventory",
    "iter_emoji_clusters",
    "parse_range_table",
    "EmojiInventoryRow",
    "Lexicon",
    "DEFAULT_NEGATORS",
    "bundled_lexicon",
    "load_lexicon",
    "parse_lexicon",
    "lexicon_polarity",
    "tokenize",
    "Post",
    "SentimentLabel",
    "label_to_score",
    "daily_signal",
    "EMOJI_COUNT",
    "LEXICON_POLARITY",
    "EXTERNAL_LABELS",
    "SCORERS",
]
