import asyncio
import json

import httpx
import pytest

from stonklab.annotate import ClientConfig, HttpChatClient, Transcript


def make_transport(handler):
    return httpx.MockTransport(handler)


def run(coro):
    return asyncio.run(coro)


def completion_response(text):
    return httpx.Response(
        200, json={"choices": [{"message": {"role": "assistant", "content": text}}]}
    )


class TestHttpChatClient:
    def test_wire_format(self):
        seen = {}

        def handler(request):
            seen["url"] = str(request.url)
            seen["body"] = json.loads(request.content)
            return completion_response("1: positive")

        config = ClientConfig(base_url="http://chat.test/v1", model="gpt-test")
        client = HttpChatClient(config, transport=make_transport(handler))
        text = run(client.complete("the prompt"))
        run(client.aclose())
        assert text == "1: positive"
        assert seen["url"] == "http://chat.test/v1/chat/completions"
        assert seen["body"] == {
            "model": "gpt-test",
            "messages": [{"role": "user", "content": "the prompt"}],
        }

    def test_bearer_token_from_named_env_var(self, monkeypatch):
        monkeypatch.setenv("CUSTOM_TOKEN_VAR", "sekrit")
        seen = {}

        def handler(request):
            seen["auth"] = request.headers.get("authorization")
            return completion_response("ok")

        config = ClientConfig(
            base_url="http://chat.test", model="m", auth_env="CUSTOM_TOKEN_VAR"
        )
        client = HttpChatClient(config, transport=make_transport(handler))
        run(client.complete("x"))
        run(client.aclose())
        assert seen["auth"] == "Bearer sekrit"

    def test_no_header_without_token(self, monkeypatch):
        monkeypatch.delenv("STONKLAB_API_TOKEN", raising=False)
        seen = {}

        def handler(request):
            seen["auth"] = request.headers.get("authorization")
            return completion_response("ok")

        config = ClientConfig(base_url="http://chat.test", model="m")
        client = HttpChatClient(config, transport=make_transport(handler))
        run(client.complete("x"))
        run(client.aclose())
        assert seen["auth"] is None

    def test_http_error_raises(self):
        def handler(request):
            return httpx.Response(500, text="boom")

        config = ClientConfig(base_url="http://chat.test", model="m")
        client = HttpChatClient(config, transport=make_transport(handler))
        with pytest.raises(httpx.HTTPStatusError):
            run(client.complete("x"))
        run(client.aclose())

    def test_transcript_records_both_directions(self, tmp_path):
        path = tmp_path / "transcript.jsonl"
        config = ClientConfig(
            base_url="http://chat.test", model="m", transcript_path=path
        )
        client = HttpChatClient(
            config, transport=make_transport(lambda r: completion_response("reply!"))
        )
        run(client.complete("hello there"))
        run(client.aclose())
        entries = [json.loads(line) for line in path.read_text().splitlines()]
        assert [e["event"] for e in entries] == ["request", "response"]
        assert entries[0]["content"] == "hello there"
        assert entries[1]["content"] == "reply!"

    def test_transcript_redaction_hashes_content(self, tmp_path):
        path = tmp_path / "transcript.jsonl"
        config = ClientConfig(
            base_url="http://chat.test",
            model="m",
            transcript_path=path,
            redact_transcripts=True,
        )
        client = HttpChatClient(
            config, transport=make_transport(lambda r: completion_response("reply"))
        )
        run(client.complete("sensitive text"))
        run(client.aclose())
        entries = [json.loads(line) for line in path.read_text().splitlines()]
        for entry in entries:
            assert set(entry["content"]) == {"sha256", "chars"}
        assert entries[0]["content"]["chars"] == len("sensitive text")


class TestClientConfig:
    def test_invariants(self):
        with pytest.raises(ValueError):
            ClientConfig(base_url="http://x", model="m", max_in_flight=0)
        with pytest.raises(ValueError):
            ClientConfig(base_url="http://x", model="m", retry_limit=-1)


def test_transcript_standalone(tmp_path):
    path = tmp_path / "t.jsonl"
    transcript = Transcript(path, redact=False)
    transcript.record("request", "abc")
    entry = json.loads(path.read_text())
    assert entry["event"] == "request"
    assert "time" in entry
