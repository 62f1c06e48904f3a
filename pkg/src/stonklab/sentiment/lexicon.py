"""Token-polarity lexicon scorer with a simple negation rule.

This is a lightweight stand-in for heavier NLP polarity models: tokens are
matched against a bundled (or user-supplied) lexicon, a negator immediately
before a match flips and halves its contribution, and the score is the mean
over matched tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping

from ..errors import InputFormatError

DEFAULT_NEGATORS = frozenset({"not", "no", "never", "n't"})

_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, float]
    negators: frozenset[str] = DEFAULT_NEGATORS

    def __post_init__(self):
        for token, polarity in self.entries.items():
            if token != token.lower():
                raise ValueError(f"lexicon token not lowercase: {token!r}")
            if not -1.0 <= polarity <= 1.0:
                raise ValueError(f"polarity out of [-1, 1] for {token!r}: {polarity}")


def parse_lexicon(
    text: str, negators: frozenset[str] = DEFAULT_NEGATORS
) -> Lexicon:
    """Parse `token<TAB>polarity` lines; `#` starts a comment."""
    entries: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise InputFormatError(f"lexicon line {lineno}: expected token<TAB>polarity")
        token = parts[0].strip().lower()
        try:
            polarity = float(parts[1])
        except ValueError:
            raise InputFormatError(
                f"lexicon line {lineno}: bad polarity {parts[1]!r}"
            ) from None
        if not -1.0 <= polarity <= 1.0:
            raise InputFormatError(
                f"lexicon line {lineno}: polarity {polarity} outside [-1, 1]"
            )
        if token in entries:
            raise InputFormatError(f"lexicon line {lineno}: duplicate token {token!r}")
        entries[token] = polarity
    return Lexicon(entries, negators)


def load_lexicon(path: str | Path, negators: frozenset[str] = DEFAULT_NEGATORS) -> Lexicon:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"), negators)


_bundled: Lexicon | None = None


def bundled_lexicon() -> Lexicon:
    global _bundled
    if _bundled is None:
        text = (
            resources.files("stonklab.sentiment")
            .joinpath("data/lexicon.tsv")
            .read_text(encoding="utf-8")
        )
        _bundled = parse_lexicon(text)
    return _bundled


def tokenize(text: str) -> Iterator[str]:
    """Lowercased word tokens; trailing n't splits off as its own token."""
    for match in _TOKEN_RE.finditer(text.lower()):
        token = match.group(0)
        if token.endswith("n't") and len(token) > 3:
            yield token[:-3]
            yield "n't"
        else:
            yield token


def lexicon_polarity(text: str, lexicon: Lexicon | None = None) -> float:
    """Mean polarity of matched tokens in [-1, 1]; 0.0 when nothing matches.

    A matched token immediately preceded by a negator contributes its
    polarity times -0.5.
    """
    lex = lexicon if lexicon is not None else bundled_lexicon()
    tokens = list(tokenize(text))
    contributions = []
    for i, token in enumerate(tokens):
        polarity = lex.entries.get(token)
        if polarity is None:
            continue
        if i > 0 and tokens[i - 1] in lex.negators:
            polarity *= -0.5
        contributions.append(polarity)
    if not contributions:
        return 0.0
    return sum(contributions) / len(contributions)
