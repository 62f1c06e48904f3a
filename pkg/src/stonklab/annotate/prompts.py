"""Prompt construction and strict response parsing for batch annotation.

The prompt formats here are the wire protocol: numbered texts separated by
em-dash lines, answers expected as `<id>: <label>` lines. Parsing is
deliberately tolerant (models decorate, re-case and re-order); anything
unparseable is skipped and surfaces as a missing id for the retry loop.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from ..sentiment import SentimentLabel

MAX_BATCH_SIZE = 100
DEFAULT_AUGMENT_COUNT = 50

SEPARATOR = "—"  # em dash on its own line delimits texts

ANNOTATION_INSTRUCTIONS = (
    "For each line of text below, separated by —, specify sentiment "
    "towards the stock as positive, neutral, or negative. The context is "
    "meme stocks. Respond with sentiment for each text in a separate line, "
    "with corresponding id. Don’t add any decorators, just lowercase "
    "response in one word. Make sure to give the response for each id. "
    "Here are the texts:"
)

AUGMENTATION_INSTRUCTIONS = (
    "Here are comments about Gamestock squeeze and meme stocks (stonks).\n"
    "All of them were marked as negative.\n"
    "Each one is divided with —.\n"
    "Learn the style of these comments. Look at emojis.\n"
    "Respond with {count} new comments, also negative, in the same style. "
    "Separate each generated comment with — and give it an index "
    "number starting from 1.\n"
    "Here are the texts:"
)

_SEPARATOR_LINE = re.compile(r"^(\\*)—$")
_RESPONSE_LINE = re.compile(
    r"^\W{0,8}?(\d+)\s*[:.)\-]\s*\**\s*([A-Za-z]+)"
)
_AUGMENT_LINE = re.compile(r"^\s*(\d+)\s*[:.)\-]\s*(.*\S)\s*$")


def _escape_body(text: str) -> str:
    """Prefix a backslash to any body line that would read as a separator."""
    return "\n".join(
        "\\" + line if _SEPARATOR_LINE.match(line) else line
        for line in text.split("\n")
    )


def _unescape_body(text: str) -> str:
    return "\n".join(
        line[1:] if _SEPARATOR_LINE.match(line) and line.startswith("\\") else line
        for line in text.split("\n")
    )


def _render_numbered(items: Sequence[tuple[int, str]]) -> str:
    parts = []
    for local_id, text in items:
        parts.append(SEPARATOR)
        parts.append(f"{local_id}: {_escape_body(text)}")
    parts.append(SEPARATOR)
    return "\n".join(parts)


def build_annotation_prompt(items: Sequence[tuple[int, str]]) -> str:
    """Render the annotation prompt for (id, text) pairs with ids 1..n."""
    if not items:
        raise ValueError("empty batch")
    if len(items) > MAX_BATCH_SIZE:
        raise ValueError(f"batch exceeds {MAX_BATCH_SIZE} texts")
    if [i for i, _ in items] != list(range(1, len(items) + 1)):
        raise ValueError("batch ids must be contiguous from 1")
    return ANNOTATION_INSTRUCTIONS + "\n" + _render_numbered(items)


def parse_annotation_prompt(prompt: str) -> dict[int, str]:
    """Recover the id -> text map from a rendered prompt (inverse of build)."""
    lines = prompt.split("\n")
    blocks: list[list[str]] = []
    current: list[str] | None = None
    for line in lines:
        if line == SEPARATOR:
            if current is not None:
                blocks.append(current)
            current = []
        elif current is not None:
            current.append(line)
    items: dict[int, str] = {}
    for block in blocks:
        if not block:
            continue
        head = block[0]
        local_id, sep, rest = head.partition(": ")
        if not sep or not local_id.isdigit():
            continue
        body = "\n".join([rest] + block[1:])
        items[int(local_id)] = _unescape_body(body)
    return items


def parse_annotation_response(
    text: str, expected_ids: Iterable[int]
) -> tuple[dict[int, SentimentLabel], set[int]]:
    """Extract `<id>: <label>` lines; unknown ids and noise are ignored.

    Returns the parsed labels and the expected ids that never got one.
    """
    expected = set(expected_ids)
    labels: dict[int, SentimentLabel] = {}
    for line in text.splitlines():
        match = _RESPONSE_LINE.match(line)
        if not match:
            continue
        local_id = int(match.group(1))
        if local_id not in expected or local_id in labels:
            continue
        try:
            labels[local_id] = SentimentLabel.parse(match.group(2))
        except ValueError:
            continue
    return labels, expected - set(labels)


def build_augmentation_prompt(
    seeds: Sequence[str], requested: int = DEFAULT_AUGMENT_COUNT
) -> str:
    """Render the style-transfer generation prompt over negative seed texts."""
    if not seeds:
        raise ValueError("empty seed set")
    if len(seeds) > MAX_BATCH_SIZE:
        raise ValueError(f"seed set exceeds {MAX_BATCH_SIZE} texts")
    if requested < 1:
        raise ValueError("requested count must be >= 1")
    numbered = list(enumerate(seeds, start=1))
    return AUGMENTATION_INSTRUCTIONS.format(count=requested) + "\n" + _render_numbered(
        numbered
    )


def parse_augmentation_response(text: str) -> list[str]:
    """Extract `<index>: <comment>` lines, ordered by index."""
    found: dict[int, str] = {}
    for line in text.splitlines():
        match = _AUGMENT_LINE.match(line)
        if not match:
            continue
        index = int(match.group(1))
        if index not in found:
            found[index] = match.group(2)
    return [found[i] for i in sorted(found)]


@dataclass(frozen=True)
class AnnotationBatch:
    """One prompt's worth of texts with batch-local ids 1..n."""

    items: tuple[tuple[int, str], ...]
    prompt: str
    responses: Mapping[int, SentimentLabel] = field(default_factory=dict)
    missing: frozenset[int] = frozenset()

    @classmethod
    def build(cls, texts: Sequence[str]) -> "AnnotationBatch":
        items = tuple(enumerate(texts, start=1))
        return cls(items=items, prompt=build_annotation_prompt(items))

    def with_response(self, response_text: str) -> "AnnotationBatch":
        labels, missing = parse_annotation_response(
            response_text, (i for i, _ in self.items)
        )
        return replace(self, responses=labels, missing=frozenset(missing))


@dataclass(frozen=True)
class AugmentationBatch:
    """Negative seed texts plus the generation request and its parsed output."""

    seeds: tuple[str, ...]
    requested: int
    prompt: str
    generated: tuple[str, ...] = ()

    @classmethod
    def build(
        cls, seeds: Sequence[str], requested: int = DEFAULT_AUGMENT_COUNT
    ) -> "AugmentationBatch":
        return cls(
            seeds=tuple(seeds),
            requested=requested,
            prompt=build_augmentation_prompt(seeds, requested),
        )

    def with_response(self, response_text: str) -> "AugmentationBatch":
        generated = tuple(t for t in parse_augmentation_response(response_text) if t)
        return replace(self, generated=generated)
