"""Completion providers: a chat-completion HTTP client and a scripted stub."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Protocol

API_KEY_ENV = "PEA_API_KEY"


class ProviderError(RuntimeError):
    """Transport or protocol failure while querying a provider."""


class Provider(Protocol):
    def complete(self, prompt: str) -> str: ...


class ScriptedProvider:
    """Replays canned responses in order.

    Items are response strings or dicts: ``{"response": text}``,
    ``{"file": path}`` (read relative to ``base``) or ``{"error": message}``,
    which raises :class:`ProviderError` when reached.  Running past the end
    of the script is an error too.
    """

    def __init__(self, script, base=None):
        self.script = list(script)
        self.base = Path(base) if base else Path.cwd()
        self.prompts: list[str] = []

    @classmethod
    def from_file(cls, path) -> "ScriptedProvider":
        path = Path(path)
        return cls(json.loads(path.read_text()), base=path.parent)

    @classmethod
    def from_transcript(cls, transcript) -> "ScriptedProvider":
        script = []
        for entry in transcript:
            if entry.get("error") is not None:
                script.append({"error": entry["error"]})
            else:
                script.append(entry["response"])
        return cls(script)

    def complete(self, prompt: str) -> str:
        i = len(self.prompts)
        self.prompts.append(prompt)
        if i >= len(self.script):
            raise ProviderError(f"script exhausted after {len(self.script)} responses")
        item = self.script[i]
        if isinstance(item, str):
            return item
        if "error" in item:
            raise ProviderError(item["error"])
        if "file" in item:
            return (self.base / item["file"]).read_text()
        return item["response"]


class HttpProvider:
    """Single-turn chat completion against an OpenAI-compatible endpoint."""

    def __init__(self, endpoint: str, model: str, api_key: str | None = None,
                 timeout: float = 600.0, temperature: float | None = None, client=None):
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.temperature = temperature
        self._client = client

    @classmethod
    def from_config(cls, config: dict) -> "HttpProvider":
        key = os.environ.get(config.get("api_key_env", API_KEY_ENV)) or config.get("api_key")
        return cls(config["endpoint"], config["model"], key,
                   float(config.get("timeout", 600.0)), config.get("temperature"))

    def complete(self, prompt: str) -> str:
        import httpx

        body = {"model": self.model, "messages": [{"role": "user", "content": prompt}]}
        if self.temperature is not None:
            body["temperature"] = self.temperature
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        url = self.endpoint + "/chat/completions"
        try:
            if self._client is not None:
                resp = self._client.post(url, json=body, headers=headers, timeout=self.timeout)
            else:
                resp = httpx.post(url, json=body, headers=headers, timeout=self.timeout)
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        except (httpx.HTTPError, KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError(f"{type(exc).__name__}: {exc}") from exc


def load_provider(spec: str) -> Provider:
    """``stub:<script.json>`` or the path of a JSON provider config."""
    if spec.startswith("stub:"):
        return ScriptedProvider.from_file(spec[len("stub:"):])
    config = json.loads(Path(spec).read_text())
    return HttpProvider.from_config(config)
