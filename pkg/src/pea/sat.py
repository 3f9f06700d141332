"""Brute-force SAT and tautology checking over CNF formulas.

Literals use the DIMACS convention: a non-zero int whose magnitude is the
variable index (1-based) and whose sign is the polarity.  Assignments are
tuples of bools indexed by ``variable - 1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

Assignment = tuple  # tuple[bool, ...]


class DimacsError(ValueError):
    """Base class for DIMACS parse failures; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class HeaderError(DimacsError):
    pass


class LiteralRangeError(DimacsError):
    pass


class ClauseCountError(DimacsError):
    pass


class EmptyClauseError(DimacsError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise ValueError("num_vars must be >= 0")
        for clause in clauses:
            if not clause:
                raise ValueError("clauses must be non-empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")


@dataclass(frozen=True)
class SatVerdict:
    satisfiable: bool
    witness: Assignment | None = None


@dataclass(frozen=True)
class TautologyVerdict:
    valid: bool
    counterexample: Assignment | None = None


_HEADER = re.compile(r"^p\s+cnf\s+(\d+)\s+(\d+)\s*$")


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    header_line = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # SATLIB files end with a '%' line followed by a stray '0'
            break
        if line.startswith("p"):
            if header_line is not None:
                raise HeaderError("duplicate problem line", lineno)
            m = _HEADER.match(line)
            if not m:
                raise HeaderError(f"malformed problem line {line!r}", lineno)
            num_vars, num_clauses = int(m.group(1)), int(m.group(2))
            header_line = lineno
            continue
        if header_line is None:
            raise HeaderError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise EmptyClauseError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > num_vars:
                raise LiteralRangeError(f"literal {lit} exceeds {num_vars} variables", lineno)
            else:
                current.append(lit)
    if header_line is None:
        raise HeaderError("missing 'p cnf' header")
    if current:
        # tolerate a missing terminal 0 on the last clause
        clauses.append(tuple(current))
    if len(clauses) != num_clauses:
        raise ClauseCountError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", header_line)
    return CnfFormula(num_vars, tuple(clauses))


def to_dimacs(formula: CnfFormula, comment: str | None = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in formula.clauses)
    return "\n".join(lines) + "\n"


def eval_formula(formula: CnfFormula, assignment: Sequence[bool]) -> bool:
    if len(assignment) != formula.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {formula.num_vars} variables")
    return all(
        any(assignment[lit - 1] if lit > 0 else not assignment[-lit - 1] for lit in clause)
        for clause in formula.clauses
    )


def enumerate_assignments(num_vars: int) -> Iterator[Assignment]:
    """All 2**n assignments in binary counting order, variable 1 most significant."""
    if num_vars < 0:
        raise ValueError("num_vars must be >= 0")
    return itertools.product((False, True), repeat=num_vars)


def solve_sat(formula: CnfFormula) -> SatVerdict:
    for assignment in enumerate_assignments(formula.num_vars):
        if eval_formula(formula, assignment):
            return SatVerdict(True, assignment)
    return SatVerdict(False)


def check_tautology(formula: CnfFormula) -> TautologyVerdict:
    for assignment in enumerate_assignments(formula.num_vars):
        if not eval_formula(formula, assignment):
            return TautologyVerdict(False, assignment)
    return TautologyVerdict(True)


def as_quantified(formula: CnfFormula, universal: bool = False):
    """The formula as ``exists x in {0,1}^n . phi(x)`` (or ``forall``)."""
    from .quantified import Quantifier, formula as make

    q = Quantifier.FORALL if universal else Quantifier.EXISTS
    bindings = [(q, f"x{i}", (False, True)) for i in range(1, formula.num_vars + 1)]
    return make(bindings, lambda *vals: eval_formula(formula, vals))


# --- independent oracle -----------------------------------------------------

def _simplify(clauses: list[frozenset], lit: int) -> list[frozenset] | None:
    out = []
    for clause in clauses:
        if lit in clause:
            continue
        if -lit in clause:
            clause = clause - {-lit}
            if not clause:
                return None
        out.append(clause)
    return out


def _dpll(clauses: list[frozenset], model: dict[int, bool]) -> dict[int, bool] | None:
    while True:
        unit = next((c for c in clauses if len(c) == 1), None)
        if unit is None:
            break
        (lit,) = unit
        model = {**model, abs(lit): lit > 0}
        clauses = _simplify(clauses, lit)
        if clauses is None:
            return None
    if not clauses:
        return model
    lit = next(iter(min(clauses, key=len)))
    for choice in (lit, -lit):
        reduced = _simplify(clauses, choice)
        if reduced is None:
            continue
        result = _dpll(reduced, {**model, abs(choice): choice > 0})
        if result is not None:
            return result
    return None


def dpll_oracle(formula: CnfFormula) -> SatVerdict:
    """Unit propagation plus branching; shares no code with :func:`solve_sat`."""
    model = _dpll([frozenset(c) for c in formula.clauses], {})
    if model is None:
        return SatVerdict(False)
    witness = tuple(model.get(v, False) for v in range(1, formula.num_vars + 1))
    return SatVerdict(True, witness)


# --- answer format ------------------------------------------------------------

def format_answer(verdict: SatVerdict) -> str:
    if not verdict.satisfiable:
        return "UNSAT"
    return "[" + ", ".join("True" if v else "False" for v in verdict.witness) + "]"


def parse_answer(text: str) -> Assignment | None:
    """Inverse of :func:`format_answer`; ``None`` means the answer claims UNSAT."""
    text = text.strip()
    if text.upper() == "UNSAT":
        return None
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a SAT answer: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    values = []
    for tok in body.split(","):
        tok = tok.strip().lower()
        if tok in ("true", "1"):
            values.append(True)
        elif tok in ("false", "0"):
            values.append(False)
        else:
            raise ValueError(f"bad truth value {tok!r}")
    return tuple(values)


def random_cnf(rng, num_vars: int, num_clauses: int, width: int) -> CnfFormula:
    """Uniform random k-CNF: distinct variables per clause, random polarity."""
    clauses = []
    for _ in range(num_clauses):
        vars_ = rng.sample(range(1, num_vars + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(num_vars, tuple(clauses))

