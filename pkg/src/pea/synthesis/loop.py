"""Bounded synthesize-and-check loop with optional pruning-strategy phase."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .candidate import CandidateProgram, Fixture, candidate_from_response, integrity_check
from .providers import Provider, ProviderError
from .templates import TaskPrompt, augment

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynthesisConfig:
    m: int = 10
    op: bool = False
    timeout_seconds: float = 30.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout must be positive")


@dataclass
class SynthesisResult:
    candidate: CandidateProgram | None
    transcript: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def empty(self) -> bool:
        return self.candidate is None

    @property
    def code_queries(self) -> int:
        return sum(1 for e in self.transcript if e["phase"] in ("optimized", "plain"))

    @property
    def strategy_queries(self) -> int:
        return sum(1 for e in self.transcript if e["phase"] == "strategy")

    @property
    def attempts(self) -> int:
        """Loop iterations spent, counting a failed strategy query as one."""
        iterations = {(e["phase"] if e["phase"] != "strategy" else "optimized", e["iteration"])
                      for e in self.transcript}
        return len(iterations)


def _query(provider: Provider, prompt: str, phase: str, iteration: int, transcript: list):
    entry = {"phase": phase, "iteration": iteration, "prompt": prompt, "response": None,
             "error": None, "report": None}
    transcript.append(entry)
    try:
        entry["response"] = provider.complete(prompt)
    except ProviderError as exc:
        entry["error"] = str(exc)
        log.warning("%s query %d failed: %s", phase, iteration, exc)
    return entry


def _try_candidate(entry: dict, task: TaskPrompt, fixture: Fixture, config: SynthesisConfig):
    if entry["response"] is None:
        return None
    candidate = candidate_from_response(entry["response"], task)
    report = integrity_check(candidate, task, fixture, config.timeout_seconds)
    entry["report"] = report.as_dict()
    log.info("%s attempt %d: %s", entry["phase"], entry["iteration"],
             "pass" if report.overall else report.reason)
    return candidate if report.overall else None


def synthesize(task: TaskPrompt, provider: Provider, config: SynthesisConfig,
               fixture: Fixture) -> SynthesisResult:
    """Return the first candidate passing the integrity check, or an empty result.

    With ``config.op`` the loop first spends up to ``m`` iterations asking for
    a pruning strategy and code written against it, then falls back to up to
    ``m`` iterations with the plain template.
    """
    start = time.perf_counter()
    transcript: list[dict] = []
    template = task.template()

    def done(candidate):
        return SynthesisResult(candidate, transcript, time.perf_counter() - start)

    if config.op:
        for i in range(1, config.m + 1):
            strategy = _query(provider, task.strategy_request(), "strategy", i, transcript)
            if strategy["response"] is None or not strategy["response"].strip():
                continue
            augmented = augment(template, strategy["response"])
            entry = _query(provider, augmented.text, "optimized", i, transcript)
            candidate = _try_candidate(entry, task, fixture, config)
            if candidate is not None:
                return done(candidate)

    for i in range(1, config.m + 1):
        entry = _query(provider, template.text, "plain", i, transcript)
        candidate = _try_candidate(entry, task, fixture, config)
        if candidate is not None:
            return done(candidate)
    return done(None)
