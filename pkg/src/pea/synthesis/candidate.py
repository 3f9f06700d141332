"""Candidate programs and how they are run and checked.

A candidate is source text plus a manifest naming its predicate, enumeration
and aggregation entry points and the command that runs it.  It is executed
as a child process: the instance goes to standard input, the answer comes
back as the last non-empty line of standard output, and a non-zero exit
status is a crash.
"""

from __future__ import annotations

import ast
import json
import os
import re
import signal
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .templates import ROLES, TaskPrompt

MANIFEST_NAME = "manifest.json"

OK = "ok"
TIMEOUT = "timeout"
CRASH = "crash"


@dataclass
class CandidateProgram:
    source_text: str
    manifest: dict
    directory: Path | None = None

    @property
    def language(self) -> str:
        return self.manifest.get("language", "python")

    @property
    def source_name(self) -> str:
        default = "candidate.py" if self.language == "python" else "candidate"
        return self.manifest.get("source", default)

    def write(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / self.source_name).write_text(self.source_text)
        (directory / MANIFEST_NAME).write_text(json.dumps(self.manifest, indent=2) + "\n")
        self.directory = directory
        return directory

    def command(self) -> list[str]:
        """Argument vector; writes the program to a temp dir on first use."""
        if self.directory is None:
            self.write(tempfile.mkdtemp(prefix="pea-candidate-"))
        source = str(self.directory / self.source_name)
        template = self.manifest.get("command") or ["{python}", "{source}"]
        return [part.replace("{python}", sys.executable).replace("{source}", source)
                for part in template]


def load_candidate(path) -> CandidateProgram:
    path = Path(path)
    manifest_path = path / MANIFEST_NAME if path.is_dir() else path
    manifest = json.loads(manifest_path.read_text())
    directory = manifest_path.parent
    probe = CandidateProgram("", manifest)
    source = (directory / probe.source_name).read_text()
    return CandidateProgram(source, manifest, directory)


def default_manifest(task: TaskPrompt, language: str = "python") -> dict:
    return {
        "task": task.task,
        "language": language,
        "entry_points": {role: task.entry_points[role].as_dict() for role in ROLES},
        "instance_conversion": task.instance_conversion,
    }


_FENCE = re.compile(r"```([\w+-]*)[^\n]*\n(.*?)```", re.S)


def candidate_from_response(text: str, task: TaskPrompt) -> CandidateProgram:
    """Pull a candidate out of a model reply.

    A fenced ``json`` block holding an object with ``entry_points`` is taken
    as the manifest; the first other fenced block is the source.  Without a
    manifest the source is assumed to be Python following the task's naming.
    """
    manifest = None
    source = None
    lang = None
    for tag, body in _FENCE.findall(text):
        tag = tag.lower()
        if tag == "json" and manifest is None:
            try:
                data = json.loads(body)
            except json.JSONDecodeError:
                data = None
            if isinstance(data, dict) and "entry_points" in data:
                manifest = data
                continue
        if source is None:
            source, lang = body, tag or None
    if source is None:
        source = text if manifest is None else ""
    if manifest is None:
        manifest = default_manifest(task, "python" if lang in (None, "python", "py") else lang)
        manifest["inferred"] = True
    return CandidateProgram(source, manifest)


# --- execution ------------------------------------------------------------------------

@dataclass(frozen=True)
class RunResult:
    status: str
    output: str
    seconds: float
    returncode: int | None = None
    stderr: str = ""

    @property
    def ok(self) -> bool:
        return self.status == OK


def _last_line(stdout: str) -> str:
    lines = [l for l in stdout.splitlines() if l.strip()]
    return lines[-1].strip() if lines else ""


def run_command(argv: list[str], instance: str, timeout: float) -> RunResult:
    start = time.perf_counter()
    proc = subprocess.Popen(argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                            stderr=subprocess.PIPE, text=True, start_new_session=True)
    try:
        out, err = proc.communicate(instance, timeout=timeout)
    except subprocess.TimeoutExpired:
        # the whole session, so grandchildren holding the pipes die too
        try:
            os.killpg(proc.pid, signal.SIGKILL)
        except ProcessLookupError:
            pass
        proc.communicate()
        return RunResult(TIMEOUT, "", time.perf_counter() - start, None, "")
    elapsed = time.perf_counter() - start
    if proc.returncode != 0:
        return RunResult(CRASH, _last_line(out), elapsed, proc.returncode, err[-2000:])
    return RunResult(OK, _last_line(out), elapsed, 0, err[-2000:])


def run_candidate(candidate: CandidateProgram, instance: str, timeout: float = 30.0) -> RunResult:
    try:
        argv = candidate.command()
    except OSError as exc:
        return RunResult(CRASH, "", 0.0, None, str(exc))
    try:
        return run_command(argv, instance, timeout)
    except OSError as exc:
        return RunResult(CRASH, "", 0.0, None, str(exc))


# --- integrity checks ---------------------------------------------------------------

@dataclass(frozen=True)
class Fixture:
    instance: str
    expected: str
    judge: Callable[[str], bool] | None = field(default=None, compare=False)


_BOOL = re.compile(r"\b(true|false)\b", re.I)


def normalize_output(text: str) -> str:
    """Trim, collapse whitespace, case-fold booleans, tidy bracketed lists."""
    text = " ".join(text.strip().split())
    text = _BOOL.sub(lambda m: m.group(1).capitalize(), text)
    if text.startswith("[") and text.endswith("]"):
        items = [i.strip() for i in re.split(r"[,;]", text[1:-1])]
        sep = "; " if ";" in text else ", "
        text = "[" + sep.join(i for i in items if i) + "]"
    if text.upper() == "UNSAT":
        text = "UNSAT"
    return text


@dataclass
class IntegrityReport:
    structural: dict[str, bool]
    semantic_pass: bool
    fixture_input: str = ""
    expected_output: str = ""
    actual_output: str = ""
    reason: str = ""

    @property
    def overall(self) -> bool:
        return all(self.structural.values()) and self.semantic_pass

    def as_dict(self) -> dict:
        return {
            "structural": dict(self.structural),
            "semantic": {"input": self.fixture_input, "expected": self.expected_output,
                         "actual": self.actual_output, "pass": self.semantic_pass,
                         "reason": self.reason},
            "overall": self.overall,
        }


def _norm_io(value) -> tuple:
    if isinstance(value, str):
        value = [value]
    return tuple(str(v).strip().lower() for v in value)


def _python_functions(source: str) -> dict[str, ast.FunctionDef] | None:
    try:
        tree = ast.parse(source)
    except SyntaxError:
        return None
    funcs = {}
    for node in ast.walk(tree):
        if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            funcs.setdefault(node.name, node)
    return funcs


def _is_stub(fn: ast.FunctionDef) -> bool:
    body = list(fn.body)
    if body and isinstance(body[0], ast.Expr) and isinstance(getattr(body[0], "value", None), ast.Constant) \
            and isinstance(body[0].value.value, str):
        body = body[1:]
    return all(isinstance(s, ast.Pass) or (isinstance(s, ast.Expr) and isinstance(s.value, ast.Constant))
               or (isinstance(s, ast.Raise) and "NotImplementedError" in ast.dump(s))
               for s in body)


def _defined_by_marker(source: str, name: str) -> bool:
    return re.search(rf"\b{re.escape(name)}\s*\(", source) is not None


def structural_checks(candidate: CandidateProgram, task: TaskPrompt) -> dict[str, bool]:
    manifest = candidate.manifest or {}
    declared = manifest.get("entry_points") or {}
    conversion = manifest.get("instance_conversion")
    names = {role: (declared.get(role) or {}).get("name") for role in ROLES}

    checks = {}
    checks["manifest_entry_points"] = all(names[r] for r in ROLES) and bool(conversion)
    io_ok = True
    for role in ROLES:
        want = task.entry_points[role]
        got = declared.get(role) or {}
        if got.get("name") != want.name or _norm_io(got.get("inputs", ())) != _norm_io(want.inputs) \
                or _norm_io(got.get("output", "")) != _norm_io(want.output):
            io_ok = False
    checks["io_descriptions_match"] = io_ok

    source = candidate.source_text
    wanted = [n for n in (*names.values(), conversion) if n]
    if candidate.language == "python":
        funcs = _python_functions(source)
        checks["parses"] = funcs is not None
        funcs = funcs or {}
        checks["entry_points_defined"] = checks["manifest_entry_points"] and all(n in funcs for n in wanted)
        checks["non_empty_definitions"] = checks["entry_points_defined"] and not any(
            _is_stub(funcs[n]) for n in wanted)
        if checks["entry_points_defined"]:
            for role in ROLES:
                fn = funcs[names[role]]
                arity = len(fn.args.posonlyargs) + len(fn.args.args)
                if arity != len(task.entry_points[role].inputs):
                    checks["io_descriptions_match"] = False
        checks["instance_conversion_present"] = bool(conversion) and conversion in funcs
    else:
        checks["parses"] = bool(source.strip())
        checks["entry_points_defined"] = checks["manifest_entry_points"] and all(
            _defined_by_marker(source, n) for n in wanted)
        checks["non_empty_definitions"] = checks["entry_points_defined"] and len(source.strip()) > 0
        checks["instance_conversion_present"] = bool(conversion) and _defined_by_marker(source, conversion)
    return checks


def integrity_check(candidate: CandidateProgram, task: TaskPrompt, fixture: Fixture,
                    timeout: float = 30.0) -> IntegrityReport:
    structural = structural_checks(candidate, task)
    report = IntegrityReport(structural, False, fixture.instance, fixture.expected)
    if not all(structural.values()):
        failed = [k for k, v in structural.items() if not v]
        report.reason = "structural: " + ", ".join(failed)
        return report
    result = run_candidate(candidate, fixture.instance, timeout)
    report.actual_output = result.output
    if result.status == TIMEOUT:
        report.reason = f"timeout after {timeout:g} s"
        return report
    if result.status == CRASH:
        report.reason = f"crash (exit {result.returncode}): {result.stderr.strip()[-300:]}"
        return report
    if normalize_output(result.output) == normalize_output(fixture.expected):
        report.semantic_pass = True
    elif fixture.judge is not None:
        try:
            report.semantic_pass = bool(fixture.judge(result.output))
        except Exception as exc:  # noqa: BLE001 - a judge fault fails the candidate, not the loop
            report.reason = f"judge failed: {exc!r}"
            return report
    if not report.semantic_pass:
        report.reason = "output differs from expected"
    return report
