"""Batch orchestration: dispatch, bounded concurrency, missing-id retries.

The corpus is cut into batches of at most 100 posts. Ids the model skips are
re-sent as fresh, smaller batches (first answer wins); whatever is still
unlabeled when the retry budget runs out comes back as rejects, so labels
plus rejects always partition the input exactly.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass
from typing import Sequence

import httpx

from ..ingest import LabelRecord
from ..sentiment import Post, SentimentLabel
from .client import ChatClient, ClientConfig
from .prompts import (
    MAX_BATCH_SIZE,
    AnnotationBatch,
    AugmentationBatch,
    DEFAULT_AUGMENT_COUNT,
)

_TRANSPORT_ERRORS = (httpx.HTTPError, OSError)


@dataclass(frozen=True)
class AnnotationOutcome:
    labels: tuple[LabelRecord, ...]
    rejects: tuple[Post, ...]
    rounds: int
    batches_sent: int

    @property
    def complete(self) -> bool:
        return not self.rejects


@dataclass(frozen=True)
class AugmentationOutcome:
    generated: tuple[str, ...]
    requested: int

    @property
    def shortfall(self) -> int:
        return max(0, self.requested - len(self.generated))


async def _complete_with_backoff(
    client: ChatClient, prompt: str, config: ClientConfig
) -> str | None:
    """One logical request with transport-level retries; None if exhausted."""
    for attempt in range(config.retry_limit + 1):
        try:
            return await client.complete(prompt)
        except _TRANSPORT_ERRORS:
            if attempt == config.retry_limit:
                return None
            await asyncio.sleep(config.backoff_seconds * 2**attempt)
    return None


def _chunk(seq: Sequence, size: int) -> list[Sequence]:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


async def annotate_corpus(
    posts: Sequence[Post], client: ChatClient, config: ClientConfig
) -> AnnotationOutcome:
    """Label every post via the chat client, retrying ids the model omits."""
    ids = [p.id for p in posts]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate post ids in corpus")

    labels: dict[str, SentimentLabel] = {}
    pending: list[Post] = list(posts)
    semaphore = asyncio.Semaphore(config.max_in_flight)
    batches_sent = 0
    rounds = 0

    async def run_batch(chunk: Sequence[Post]) -> list[Post]:
        batch = AnnotationBatch.build([p.text for p in chunk])
        async with semaphore:
            response = await _complete_with_backoff(client, batch.prompt, config)
        if response is None:
            return list(chunk)
        batch = batch.with_response(response)
        unanswered = []
        for local_id, post in enumerate(chunk, start=1):
            label = batch.responses.get(local_id)
            if label is None:
                unanswered.append(post)
            elif post.id not in labels:  # first answer wins
                labels[post.id] = label
        return unanswered

    while pending:
        rounds += 1
        chunks = _chunk(pending, MAX_BATCH_SIZE)
        batches_sent += len(chunks)
        results = await asyncio.gather(*(run_batch(c) for c in chunks))
        pending = [post for missing in results for post in missing]
        if rounds > config.retry_limit:
            break

    ordered = tuple(
        LabelRecord(p.id, labels[p.id]) for p in posts if p.id in labels
    )
    rejects = tuple(p for p in posts if p.id not in labels)
    return AnnotationOutcome(ordered, rejects, rounds, batches_sent)


async def augment_corpus(
    seeds: Sequence[str],
    client: ChatClient,
    config: ClientConfig,
    per_batch: int = DEFAULT_AUGMENT_COUNT,
) -> AugmentationOutcome:
    """Generate new negative-style texts from seed batches.

    Each batch of up to `per_batch` seeds requests the same number of new
    texts; producing fewer is reported via the outcome, not an error.
    """
    if not seeds:
        raise ValueError("empty seed set")
    per_batch = min(per_batch, MAX_BATCH_SIZE)
    semaphore = asyncio.Semaphore(config.max_in_flight)

    async def run_batch(chunk: Sequence[str]) -> tuple[str, ...]:
        batch = AugmentationBatch.build(chunk, requested=len(chunk))
        async with semaphore:
            response = await _complete_with_backoff(client, batch.prompt, config)
        if response is None:
            return ()
        return batch.with_response(response).generated

    chunks = _chunk(list(seeds), per_batch)
    results = await asyncio.gather(*(run_batch(c) for c in chunks))
    generated = tuple(text for chunk in results for text in chunk)
    return AugmentationOutcome(generated, requested=len(seeds))
