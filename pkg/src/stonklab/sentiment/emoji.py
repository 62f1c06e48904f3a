"""Emoji counting against the pinned codepoint table.

Segmentation follows the emoji-relevant grapheme rules: ZWJ sequences are
one emoji, skin-tone modifiers and variation selectors extend the current
cluster, regional-indicator pairs form one flag, and text-presentation
characters count only when promoted with VS16. Digits, '#' and '*' without
a variation selector never count.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator, TYPE_CHECKING

if TYPE_CHECKING:
    from .signal import Post

_ZWJ = "‍"
_VS15 = "︎"
_VS16 = "️"
_KEYCAP = "⃣"
_SKIN_TONES = frozenset(range(0x1F3FB, 0x1F400))
_TAG_CHARS = frozenset(range(0xE0020, 0xE0080))
_RI_FIRST, _RI_LAST = 0x1F1E6, 0x1F1FF

# scalars that may extend a cluster already started
_EXTEND = _SKIN_TONES | _TAG_CHARS | {ord(_VS15), ord(_VS16), ord(_KEYCAP)}


def _load_ranges() -> tuple[tuple[int, int], ...]:
    text = (
        resources.files("stonklab.sentiment")
        .joinpath("data/emoji_ranges.txt")
        .read_text(encoding="utf-8")
    )
    return parse_range_table(text)


def parse_range_table(text: str) -> tuple[tuple[int, int], ...]:
    """Parse `hex_start..hex_end` lines; `#` starts a comment."""
    ranges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lo, _, hi = line.partition("..")
        ranges.append((int(lo, 16), int(hi or lo, 16)))
    return tuple(sorted(ranges))


_RANGES = _load_ranges()
_TABLE = frozenset(
    cp for lo, hi in _RANGES for cp in range(lo, hi + 1)
)


def _in_table(cp: int) -> bool:
    return cp in _TABLE


def _is_ri(cp: int) -> bool:
    return _RI_FIRST <= cp <= _RI_LAST


def iter_emoji_clusters(text: str) -> Iterator[str]:
    """Yield each emoji grapheme cluster in order of appearance."""
    i = 0
    n = len(text)
    while i < n:
        cp = ord(text[i])
        if _is_ri(cp):
            if i + 1 < n and _is_ri(ord(text[i + 1])):
                yield text[i : i + 2]
                i += 2
            else:
                i += 1
            continue
        start = i
        if _in_table(cp):
            demoted = i + 1 < n and text[i + 1] == _VS15
            i = _consume_cluster(text, i + 1)
            if demoted:
                continue  # VS15 requests text presentation
        elif i + 1 < n and text[i + 1] == _VS16:
            i = _consume_cluster(text, i + 2)
        else:
            i += 1
            continue
        yield text[start:i]


def _consume_cluster(text: str, i: int) -> int:
    """Extend an already-started cluster: modifiers, then ZWJ continuations."""
    n = len(text)
    while i < n and ord(text[i]) in _EXTEND:
        i += 1
    while i < n and text[i] == _ZWJ:
        nxt = _zwj_continuation(text, i + 1)
        if nxt is None:
            break
        i = nxt
    return i


def _zwj_continuation(text: str, j: int) -> int | None:
    """Length consumed by a valid emoji element after a ZWJ, or None."""
    n = len(text)
    if j >= n:
        return None
    if _in_table(ord(text[j])):
        j += 1
    elif j + 1 < n and text[j + 1] == _VS16:
        j += 2
    else:
        return None
    while j < n and ord(text[j]) in _EXTEND:
        j += 1
    return j


def count_emojis(text: str) -> int:
    """Number of emoji grapheme clusters in the text."""
    return sum(1 for _ in iter_emoji_clusters(text))


@dataclass(frozen=True)
class EmojiInventoryRow:
    emoji: str
    occurrences: int
    post_count: int

    def __post_init__(self):
        if not self.occurrences >= self.post_count >= 1:
            raise ValueError(
                f"inventory row violates occurrences >= post_count >= 1: {self}"
            )


def emoji_inventory(posts: Iterable["Post"]) -> list[EmojiInventoryRow]:
    """Per-emoji totals and distinct-post counts over a corpus.

    Sorted by occurrences descending; ties break by codepoint sequence so
    the ordering is deterministic.
    """
    occurrences: Counter[str] = Counter()
    post_count: Counter[str] = Counter()
    for post in posts:
        clusters = list(iter_emoji_clusters(post.text))
        occurrences.update(clusters)
        post_count.update(set(clusters))
    rows = [
        EmojiInventoryRow(emoji, occurrences[emoji], post_count[emoji])
        for emoji in occurrences
    ]
    rows.sort(key=lambda r: (-r.occurrences, tuple(ord(c) for c in r.emoji)))
    return rows
