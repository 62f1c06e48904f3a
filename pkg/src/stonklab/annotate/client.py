"""Chat-completion client plumbing: config, HTTP transport, transcripts.

The wire contract is the common chat-completions shape: POST
{base_url}/chat/completions with {model, messages:[{role, content}]},
assistant text read from choices[0].message.content. Any compatible
provider (or an in-process stub) works; tests inject a transport.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx


@dataclass(frozen=True)
class ClientConfig:
    base_url: str
    model: str
    auth_env: str = "STONKLAB_API_TOKEN"
    max_in_flight: int = 4
    retry_limit: int = 2
    timeout_seconds: float = 60.0
    backoff_seconds: float = 0.5
    transcript_path: str | Path | None = None
    redact_transcripts: bool = False

    def __post_init__(self):
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")
        if self.retry_limit < 0:
            raise ValueError("retry_limit must be >= 0")


class ChatClient(Protocol):
    async def complete(self, prompt: str) -> str: ...


class Transcript:
    """Append-only JSONL log of request/response bodies for audit/replay."""

    def __init__(self, path: str | Path, redact: bool = False):
        self._path = Path(path)
        self._redact = redact
        self._lock = threading.Lock()
        self._path.parent.mkdir(parents=True, exist_ok=True)

    def _content(self, text: str):
        if self._redact:
            return {
                "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
                "chars": len(text),
            }
        return text

    def record(self, event: str, text: str) -> None:
        entry = {
            "time": _dt.datetime.now(_dt.timezone.utc).isoformat(),
            "event": event,
            "content": self._content(text),
        }
        line = json.dumps(entry, ensure_ascii=False)
        with self._lock, open(self._path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")


class HttpChatClient:
    """Async chat-completion client over httpx."""

    def __init__(self, config: ClientConfig, transport: httpx.AsyncBaseTransport | None = None):
        self.config = config
        headers = {}
        token = os.environ.get(config.auth_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.AsyncClient(
            base_url=config.base_url.rstrip("/"),
            headers=headers,
            timeout=config.timeout_seconds,
            transport=transport,
        )
        self._transcript = (
            Transcript(config.transcript_path, config.redact_transcripts)
            if config.transcript_path
            else None
        )

    async def complete(self, prompt: str) -> str:
        if self._transcript:
            self._transcript.record("request", prompt)
        response = await self._client.post(
            "/chat/completions",
            json={
                "model": self.config.model,
                "messages": [{"role": "user", "content": prompt}],
            },
        )
        response.raise_for_status()
        text = response.json()["choices"][0]["message"]["content"]
        if self._transcript:
            self._transcript.record("response", text)
        return text

    async def aclose(self) -> None:
        await self._client.aclose()

    async def __aenter__(self) -> "HttpChatClient":
        return self

    async def __aexit__(self, *exc) -> None:
        await self.aclose()
