"""Benchmark harness: load a dataset, solve every instance under a timeout,
judge the answers and tabulate accuracy and amortized per-instance time."""

from __future__ import annotations

import csv
import enum
import io
import multiprocessing as mp
import statistics
import time
import traceback
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import blocksworld as bw
from . import game24
from . import logistics as lg
from . import sat
from .planning import Plan
from .synthesis.candidate import CRASH, TIMEOUT, CandidateProgram, run_candidate

TASKS = ("sat", "g24", "bw", "logi")


class Outcome(str, enum.Enum):
    CORRECT = "CORRECT"
    INCORRECT = "INCORRECT"
    TIMEOUT = "TIMEOUT"
    ERROR = "ERROR"


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    id: str
    text: str
    data: Any = field(compare=False, default=None)


@dataclass(frozen=True)
class InstanceResult:
    instance_id: str
    outcome: Outcome
    wall_seconds: float
    answer: str = ""
    detail: str = ""


@dataclass
class BenchReport:
    task: str
    results: list[InstanceResult]
    synthesis_seconds: float = 0.0
    mode: str = "native"
    timeout: float = 30.0
    workers: int = 1

    @property
    def counts(self) -> Counter:
        return Counter(r.outcome for r in self.results)

    @property
    def correct(self) -> int:
        return self.counts[Outcome.CORRECT]

    @property
    def sat_split(self) -> tuple[int, int]:
        """(correct satisfiable answers, correct UNSAT answers)."""
        ok = [r for r in self.results if r.outcome is Outcome.CORRECT]
        unsat = sum(1 for r in ok if r.answer.strip().upper() == "UNSAT")
        return len(ok) - unsat, unsat

    @property
    def solved_cell(self) -> str:
        if self.task == "sat":
            m, n = self.sat_split
            return f"{m}+{n}"
        return str(self.correct)

    @property
    def mean_seconds(self) -> float:
        return statistics.fmean(r.wall_seconds for r in self.results) if self.results else 0.0

    @property
    def amortized_seconds(self) -> float:
        if not self.results:
            return 0.0
        return self.mean_seconds + self.synthesis_seconds / len(self.results)


# --- loading -----------------------------------------------------------------------

def _natural(path: Path):
    return lg.natural_key(path.name)


def _files(path: Path, patterns: Sequence[str]) -> list[Path]:
    if path.is_file():
        return [path]
    found = {p for pat in patterns for p in path.glob(pat) if p.is_file()}
    return sorted(found, key=_natural)


def parse_instance(task: str, text: str):
    if task == "sat":
        return sat.parse_dimacs(text)
    if task == "g24":
        return game24.parse_instance(text.strip())
    if task == "bw":
        return bw.parse_instance_file(text)
    if task == "logi":
        return lg.parse_instance_file(text)
    raise ValueError(f"unknown task {task!r}")


def _g24_lines(path: Path) -> list[tuple[str, str]]:
    if path.suffix == ".csv":
        with path.open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        key = "Puzzles" if rows and "Puzzles" in rows[0] else None
        if key is None:
            raise DatasetError(f"{path}: CSV needs a 'Puzzles' column")
        return [(row.get("Rank") or str(i), row[key]) for i, row in enumerate(rows, 1)]
    out = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            out.append((f"{path.stem}:{lineno}" if path.stem else str(lineno), line.strip()))
    return out


def load_dataset(task: str, path, exclude: Sequence[str] = ()) -> list[Instance]:
    """Read and validate every instance; parse errors are reported together."""
    if task not in TASKS:
        raise DatasetError(f"unknown task {task!r}")
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"{path} does not exist")
    raw: list[tuple[str, str]] = []
    if task == "g24":
        for f in _files(path, ["*.txt", "*.csv"]):
            raw += _g24_lines(f)
    else:
        patterns = ["*.cnf", "*.dimacs"] if task == "sat" else ["*.txt", "*.prompt"]
        raw = [(f.stem, f.read_text()) for f in _files(path, patterns)]
    skip = set(exclude)
    instances, errors = [], []
    for ident, text in raw:
        if ident in skip:
            continue
        try:
            instances.append(Instance(ident, text, parse_instance(task, text)))
        except ValueError as exc:
            errors.append(f"{ident}: {exc}")
    if errors:
        raise DatasetError(f"{len(errors)} instance(s) failed to parse:\n" + "\n".join(errors))
    if not instances:
        raise DatasetError(f"no {task} instances found under {path}")
    return instances


# --- native solvers ----------------------------------------------------------------

def _plan_line(actions, render) -> str:
    return "[" + "; ".join(render(a) for a in actions) + "]"


def native_answer(task: str, text: str) -> str:
    """Solve one raw instance with the library's solver; answer in wire format."""
    if task == "sat":
        return sat.format_answer(sat.solve_sat(sat.parse_dimacs(text)))
    if task == "g24":
        return game24.format_answer(game24.solve24(game24.parse_instance(text.strip())))
    if task == "bw":
        inst = bw.parse_instance_file(text)
        result = bw.solve_optimal(inst.initial, inst.goal)
        return _plan_line(result.actions, bw.render_action) if isinstance(result, Plan) else "NO PLAN"
    if task == "logi":
        inst = lg.parse_instance_file(text)
        result = lg.solve(inst.world, inst.initial, inst.goal)
        return _plan_line(result.actions, lg.render_action) if isinstance(result, Plan) else "NO PLAN"
    raise ValueError(f"unknown task {task!r}")


# --- judging -----------------------------------------------------------------------

class Judge:
    """Task-specific correctness checks, with reference results cached per instance."""

    def __init__(self, task: str):
        self.task = task
        self._reference: dict[str, Any] = {}

    def _ref(self, inst: Instance, compute: Callable[[], Any]):
        if inst.id not in self._reference:
            self._reference[inst.id] = compute()
        return self._reference[inst.id]

    def __call__(self, inst: Instance, answer: str) -> tuple[bool, str]:
        task, data = self.task, inst.data
        try:
            if task == "sat":
                assignment = sat.parse_answer(answer)
                if assignment is None:
                    truth = self._ref(inst, lambda: sat.dpll_oracle(data).satisfiable)
                    return (not truth, "claimed UNSAT" + ("" if not truth else " but satisfiable"))
                if len(assignment) != data.num_vars:
                    return False, "assignment length mismatch"
                return sat.eval_formula(data, assignment), "witness checked"
            if task == "g24":
                verdict = game24.check_answer(data, answer)
                if verdict is None:
                    possible = self._ref(inst, lambda: game24.solve24(data) != game24.IMPOSSIBLE)
                    return (not possible, "claimed impossible")
                return verdict, "expression checked"
            if task == "bw":
                actions = bw.parse_plan(answer)
                if not bw.check_plan(data.initial, data.goal, actions):
                    return False, "plan invalid"
                if data.ground_truth is not None:
                    best = len(data.ground_truth)
                else:
                    best = self._ref(inst, lambda: len(bw.solve_optimal(data.initial, data.goal)))
                return len(actions) == best, f"length {len(actions)} vs optimal {best}"
            if task == "logi":
                actions = lg.parse_plan(answer, data.world)
                ok = bool(lg.check_plan(data.world, data.initial, data.goal, actions))
                return ok, "plan valid" if ok else "plan invalid"
        except ValueError as exc:
            return False, f"unreadable answer: {exc}"
        raise ValueError(f"unknown task {task!r}")


# --- execution ---------------------------------------------------------------------

def _serve(conn, solver):
    while True:
        try:
            job = conn.recv()
        except EOFError:
            return
        if job is None:
            return
        task, text = job
        try:
            conn.send((True, solver(task, text)))
        except Exception:  # noqa: BLE001 - reported to the parent as an ERROR outcome
            conn.send((False, traceback.format_exc(limit=3)))


class _NativeWorker:
    """A forked child running one solver; replaced after a timeout kill."""

    def __init__(self, solver):
        self.solver = solver
        self.ctx = mp.get_context("fork")
        self._start()

    def _start(self):
        self.conn, child = self.ctx.Pipe()
        self.proc = self.ctx.Process(target=_serve, args=(child, self.solver), daemon=True)
        self.proc.start()
        child.close()

    def run(self, task: str, text: str, timeout: float):
        start = time.perf_counter()
        self.conn.send((task, text))
        if not self.conn.poll(timeout):
            self.proc.kill()
            self.proc.join()
            self._start()
            return None, time.perf_counter() - start
        try:
            result = self.conn.recv()
        except EOFError:
            self.proc.join()
            self._start()
            result = (False, "solver process died")
        return result, time.perf_counter() - start

    def close(self):
        try:
            self.conn.send(None)
        except (BrokenPipeError, OSError):
            pass
        self.proc.join(timeout=5)
        if self.proc.is_alive():
            self.proc.kill()


def run_benchmark(task: str, instances: Sequence[Instance], mode="native", timeout: float = 30.0,
                  workers: int = 1, solver: Callable[[str, str], str] | None = None,
                  synthesis_seconds: float = 0.0) -> BenchReport:
    """Solve and judge every instance.

    ``mode`` is ``"native"`` (the library solver, or ``solver`` when given,
    run in a forked worker) or a :class:`CandidateProgram` run per instance
    as a child process.  Results keep dataset order whatever ``workers`` is.
    """
    if not instances:
        raise DatasetError("empty dataset")
    judge = Judge(task)
    candidate = mode if isinstance(mode, CandidateProgram) else None
    if candidate is None and mode != "native":
        raise ValueError(f"unknown mode {mode!r}")
    solver = solver or native_answer

    def judged(inst: Instance, answer: str, seconds: float) -> InstanceResult:
        ok, why = judge(inst, answer)
        return InstanceResult(inst.id, Outcome.CORRECT if ok else Outcome.INCORRECT, seconds, answer, why)

    def one(inst: Instance, worker: _NativeWorker | None) -> InstanceResult:
        if candidate is not None:
            res = run_candidate(candidate, inst.text, timeout)
            if res.status == TIMEOUT:
                return InstanceResult(inst.id, Outcome.TIMEOUT, max(res.seconds, timeout))
            if res.status == CRASH:
                return InstanceResult(inst.id, Outcome.ERROR, res.seconds, res.output, res.stderr[-300:])
            return judged(inst, res.output, res.seconds)
        result, seconds = worker.run(task, inst.text, timeout)
        if result is None:
            return InstanceResult(inst.id, Outcome.TIMEOUT, max(seconds, timeout))
        ok, payload = result
        if not ok:
            return InstanceResult(inst.id, Outcome.ERROR, seconds, "", payload[-300:])
        return judged(inst, payload, seconds)

    workers = max(1, workers)
    chunks = [list(range(i, len(instances), workers)) for i in range(workers)]
    results: list[InstanceResult | None] = [None] * len(instances)

    def drain(indices: list[int]):
        worker = _NativeWorker(solver) if candidate is None else None
        try:
            for i in indices:
                try:
                    results[i] = one(instances[i], worker)
                except Exception as exc:  # noqa: BLE001 - never abort the run on one instance
                    results[i] = InstanceResult(instances[i].id, Outcome.ERROR, 0.0, "", repr(exc))
        finally:
            if worker is not None:
                worker.close()

    if workers == 1:
        drain(chunks[0])
    else:
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(drain, chunks))
    return BenchReport(task, list(results), synthesis_seconds,
                       "native" if candidate is None else "candidate", timeout, workers)


# --- reports -----------------------------------------------------------------------

SUMMARY_COLUMNS = ("task", "mode", "instances", "solved", "correct", "incorrect", "timeout",
                   "error", "mean_s", "synthesis_s", "amortized_s")
INSTANCE_COLUMNS = ("instance", "outcome", "seconds", "answer")


def _secs(x: float) -> str:
    return f"{x:.2f}"


def summary_row(report: BenchReport) -> dict[str, str]:
    c = report.counts
    timing_ok = report.workers == 1
    return {
        "task": report.task,
        "mode": report.mode,
        "instances": str(len(report.results)),
        "solved": report.solved_cell,
        "correct": str(c[Outcome.CORRECT]),
        "incorrect": str(c[Outcome.INCORRECT]),
        "timeout": str(c[Outcome.TIMEOUT]),
        "error": str(c[Outcome.ERROR]),
        "mean_s": _secs(report.mean_seconds) if timing_ok else "n/a",
        "synthesis_s": _secs(report.synthesis_seconds),
        "amortized_s": _secs(report.amortized_seconds) if timing_ok else "n/a",
    }


def _instance_rows(report: BenchReport) -> list[dict[str, str]]:
    return [{"instance": r.instance_id, "outcome": r.outcome.value, "seconds": f"{r.wall_seconds:.3f}",
             "answer": r.answer} for r in report.results]


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _markdown(columns, rows) -> str:
    def esc(s: str) -> str:
        return s.replace("|", "\\|")
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    lines += ["| " + " | ".join(esc(row[c]) for c in columns) + " |" for row in rows]
    return "\n".join(lines) + "\n"


def emit_report(report: BenchReport, fmt: str = "md", per_instance: bool = False) -> str:
    render = {"csv": _csv, "md": _markdown, "markdown": _markdown}.get(fmt.lower())
    if render is None:
        raise ValueError(f"unknown report format {fmt!r}")
    doc = render(SUMMARY_COLUMNS, [summary_row(report)])
    if per_instance:
        doc += "\n" + render(INSTANCE_COLUMNS, _instance_rows(report))
    return doc
