import asyncio

import httpx
import pytest

from stonklab.annotate import (
    ClientConfig,
    annotate_corpus,
    augment_corpus,
    parse_annotation_prompt,
)
from stonklab.sentiment import Post, SentimentLabel

from conftest import ScriptedChatClient, answer_all, keyword_label


def mk_posts(n):
    return [Post(f"p{i:04d}", 1_610_000_000 + i, f"text {i} moon") for i in range(n)]


def config(**overrides):
    defaults = dict(
        base_url="http://chat.test",
        model="test-model",
        retry_limit=2,
        backoff_seconds=0.0,
    )
    defaults.update(overrides)
    return ClientConfig(**defaults)


def run(coro):
    return asyncio.run(coro)


class TestAnnotateCorpus:
    def test_batch_partitioning(self):
        client = ScriptedChatClient(answer_all(keyword_label))
        outcome = run(annotate_corpus(mk_posts(250), client, config()))
        assert outcome.batches_sent == 3
        sizes = [len(parse_annotation_prompt(p)) for p in client.calls]
        assert sizes == [100, 100, 50]
        assert outcome.complete
        assert len(outcome.labels) == 250

    def test_all_answered_no_rejects(self):
        client = ScriptedChatClient(answer_all(lambda text: "neutral"))
        posts = mk_posts(30)
        outcome = run(annotate_corpus(posts, client, config()))
        assert outcome.rejects == ()
        assert [r.post_id for r in outcome.labels] == [p.id for p in posts]
        assert all(r.label is SentimentLabel.NEUTRAL for r in outcome.labels)

    def test_dropped_id_recovered_after_retries(self):
        posts = mk_posts(20)
        target_text = posts[7].text
        state = {"drops": 2}

        def handler(prompt, _index):
            items = parse_annotation_prompt(prompt)
            lines = []
            for i, text in items.items():
                if text == target_text and state["drops"] > 0:
                    state["drops"] -= 1
                    continue
                lines.append(f"{i}: positive")
            return "\n".join(lines)

        client = ScriptedChatClient(handler)
        outcome = run(annotate_corpus(posts, client, config(retry_limit=2)))
        assert outcome.complete
        assert len(outcome.labels) == 20
        assert outcome.rounds == 3
        # retry rounds re-send only the missing post
        assert len(parse_annotation_prompt(client.calls[1])) == 1
        assert len(parse_annotation_prompt(client.calls[2])) == 1

    def test_exhausted_retries_leave_rejects(self):
        posts = mk_posts(10)
        stubborn = {posts[2].text, posts[5].text}

        def handler(prompt, _index):
            items = parse_annotation_prompt(prompt)
            return "\n".join(
                f"{i}: negative" for i, text in items.items() if text not in stubborn
            )

        client = ScriptedChatClient(handler)
        outcome = run(annotate_corpus(posts, client, config(retry_limit=1)))
        assert {p.id for p in outcome.rejects} == {posts[2].id, posts[5].id}
        assert len(outcome.labels) == 8

    def test_labels_plus_rejects_partition_input(self):
        posts = mk_posts(137)

        def handler(prompt, index):
            items = parse_annotation_prompt(prompt)
            # answer only odd local ids, whatever the batch
            return "\n".join(f"{i}: neutral" for i in items if i % 2 == 1)

        client = ScriptedChatClient(handler)
        outcome = run(annotate_corpus(posts, client, config(retry_limit=3)))
        labeled = {r.post_id for r in outcome.labels}
        rejected = {p.id for p in outcome.rejects}
        assert labeled | rejected == {p.id for p in posts}
        assert labeled & rejected == set()
        assert len(outcome.labels) + len(outcome.rejects) == len(posts)

    def test_transport_errors_retried_then_rejected(self):
        state = {"failures": 2}

        async def flaky_complete(prompt):
            if state["failures"] > 0:
                state["failures"] -= 1
                raise httpx.ConnectError("boom")
            items = parse_annotation_prompt(prompt)
            return "\n".join(f"{i}: positive" for i in items)

        class FlakyClient:
            async def complete(self, prompt):
                return await flaky_complete(prompt)

        outcome = run(annotate_corpus(mk_posts(5), FlakyClient(), config(retry_limit=2)))
        assert outcome.complete

    def test_transport_never_recovers_gives_full_rejects(self):
        class DeadClient:
            async def complete(self, prompt):
                raise httpx.ConnectError("down")

        posts = mk_posts(7)
        outcome = run(annotate_corpus(posts, DeadClient(), config(retry_limit=1)))
        assert outcome.labels == ()
        assert len(outcome.rejects) == 7

    def test_duplicate_ids_rejected(self):
        posts = [Post("same", 1, "a"), Post("same", 2, "b")]
        client = ScriptedChatClient(answer_all(lambda t: "neutral"))
        with pytest.raises(ValueError, match="duplicate"):
            run(annotate_corpus(posts, client, config()))

    def test_bounded_concurrency_respected(self):
        in_flight = {"now": 0, "max": 0}

        class GaugeClient:
            async def complete(self, prompt):
                in_flight["now"] += 1
                in_flight["max"] = max(in_flight["max"], in_flight["now"])
                await asyncio.sleep(0.001)
                items = parse_annotation_prompt(prompt)
                in_flight["now"] -= 1
                return "\n".join(f"{i}: neutral" for i in items)

        run(annotate_corpus(mk_posts(500), GaugeClient(), config(max_in_flight=2)))
        assert in_flight["max"] <= 2


class TestAugmentCorpus:
    def test_generation_round(self):
        def handler(prompt, _index):
            items = parse_annotation_prompt(prompt)
            return "\n".join(f"{i}: generated from {len(items)} seeds" for i in items)

        client = ScriptedChatClient(handler)
        outcome = run(augment_corpus(["s1", "s2", "s3"], client, config(), per_batch=2))
        assert outcome.requested == 3
        assert len(outcome.generated) == 3
        assert outcome.shortfall == 0

    def test_shortfall_reported_not_fatal(self):
        client = ScriptedChatClient(lambda prompt, i: "1: only one")
        outcome = run(augment_corpus(["a", "b", "c", "d"], client, config(), per_batch=4))
        assert outcome.generated == ("only one",)
        assert outcome.shortfall == 3

    def test_empty_seeds_rejected(self):
        client = ScriptedChatClient(lambda p, i: "")
        with pytest.raises(ValueError):
            run(augment_corpus([], client, config()))
