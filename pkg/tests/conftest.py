"""Shared test helpers: quick series builders and scripted chat clients."""

from __future__ import annotations

from datetime import date, timedelta

import pytest

from stonklab.annotate import parse_annotation_prompt
from stonklab.series import DailySeries

D0 = date(2021, 1, 4)


def day(offset: int) -> date:
    return D0 + timedelta(days=offset)


def mk_series(values, start=0):
    """DailySeries over consecutive dates starting at D0+start."""
    return DailySeries(
        tuple(day(start + i) for i in range(len(values))),
        tuple(float(v) for v in values),
    )


class ScriptedChatClient:
    """Deterministic stand-in for a chat-completion endpoint.

    `handler(prompt, call_index)` returns the response text or raises.
    """

    def __init__(self, handler):
        self._handler = handler
        self.calls: list[str] = []

    async def complete(self, prompt: str) -> str:
        index = len(self.calls)
        self.calls.append(prompt)
        return self._handler(prompt, index)


def answer_all(label_fn):
    """Handler answering every id using label_fn(text) -> label string."""

    def handler(prompt, _index):
        items = parse_annotation_prompt(prompt)
        return "\n".join(f"{i}: {label_fn(text)}" for i, text in items.items())

    return handler


def keyword_label(text: str) -> str:
    lowered = text.lower()
    if "moon" in lowered or "\U0001F680" in text:
        return "positive"
    if "scam" in lowered or "\U0001F4C9" in text:
        return "negative"
    return "neutral"


@pytest.fixture
def scripted_client():
    return ScriptedChatClient(answer_all(keyword_label))
