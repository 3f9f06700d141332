"""Program synthesis: prompts, candidate programs, providers and the retry loop."""

from .candidate import (
    CRASH, OK, TIMEOUT, CandidateProgram, Fixture, IntegrityReport, RunResult,
    candidate_from_response, integrity_check, load_candidate, normalize_output, run_candidate,
)
from .loop import SynthesisConfig, SynthesisResult, synthesize
from .providers import HttpProvider, ProviderError, ScriptedProvider, load_provider
from .templates import TASKS, PeaSections, PromptTemplate, TaskPrompt, augment, build_template

__all__ = [
    "CRASH", "OK", "TIMEOUT", "CandidateProgram", "Fixture", "IntegrityReport", "RunResult",
    "candidate_from_response", "integrity_check", "load_candidate", "normalize_output", "run_candidate",
    "SynthesisConfig", "SynthesisResult", "synthesize",
    "HttpProvider", "ProviderError", "ScriptedProvider", "load_provider",
    "TASKS", "PeaSections", "PromptTemplate", "TaskPrompt", "augment", "build_template",
]
