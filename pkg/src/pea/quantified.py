"""Finite-domain quantified predicates decided by exhaustive unraveling.

A formula is a quantifier prefix ``Q1 x1 in D1 ... Qn xn in Dn`` over a
total predicate ``P(x1, ..., xn)``.  :func:`evaluate` unravels the prefix
left to right, OR-ing over the domain for an existential and AND-ing for a
universal, stopping at the first deciding value.

Witness selection follows the deciding path.  At an existential level that
comes out true, the path continues through the first value whose sub-formula
is true; at a universal level that comes out false, through the first value
whose sub-formula is false.  Otherwise the path goes through the first value.
The leaf of the path always evaluates to the verdict, so witnesses and
counterexamples are re-checkable.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence


class Quantifier(enum.Enum):
    EXISTS = "exists"
    FORALL = "forall"

    def flipped(self) -> "Quantifier":
        return Quantifier.FORALL if self is Quantifier.EXISTS else Quantifier.EXISTS


class PredicateError(RuntimeError):
    """The predicate raised on a concrete tuple (an ill-formed predicate)."""

    def __init__(self, assignment: dict[str, Any], cause: BaseException):
        self.assignment = assignment
        self.cause = cause
        super().__init__(f"predicate failed on {assignment!r}: {cause!r}")


@dataclass(frozen=True)
class Domain:
    name: str
    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError(f"domain {self.name!r} is empty")
        if len(set(values)) != len(values):
            raise ValueError(f"domain {self.name!r} contains duplicate values")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class Binding:
    quantifier: Quantifier
    variable: str
    domain: Domain


@dataclass(frozen=True)
class QuantifiedFormula:
    prefix: tuple[Binding, ...]
    predicate: Callable[..., bool] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        names = [b.variable for b in self.prefix]
        if len(set(names)) != len(names):
            raise ValueError(f"prefix variables must be distinct, got {names}")

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(b.variable for b in self.prefix)

    def space_size(self) -> int:
        return math.prod(len(b.domain) for b in self.prefix)

    def negated(self) -> "QuantifiedFormula":
        """Dual formula: every quantifier flipped, predicate negated."""
        pred = self.predicate
        prefix = tuple(Binding(b.quantifier.flipped(), b.variable, b.domain) for b in self.prefix)
        return QuantifiedFormula(prefix, lambda *xs: not pred(*xs))


def formula(bindings: Iterable[tuple[Quantifier, str, Sequence[Hashable]]],
            predicate: Callable[..., bool]) -> QuantifiedFormula:
    """Shorthand: ``formula([(EXISTS, "x", [2, 3])], lambda x: x + 2 == 5)``."""
    prefix = tuple(Binding(q, name, Domain(name, tuple(vals))) for q, name, vals in bindings)
    return QuantifiedFormula(prefix, predicate)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: dict[str, Any] | None = None
    counterexample: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.valid


class _Exhausted(Exception):
    pass


EXHAUSTED = "EXHAUSTED"


def _call(formula: QuantifiedFormula, values: tuple) -> bool:
    try:
        return bool(formula.predicate(*values))
    except Exception as exc:  # noqa: BLE001 - any predicate fault is reported with its tuple
        raise PredicateError(dict(zip(formula.variables, values)), exc) from exc


def _verdict(formula: QuantifiedFormula, value: bool, path: tuple) -> Verdict:
    if not formula.prefix:
        return Verdict(value)
    outer = formula.prefix[0].quantifier
    tuple_map = dict(zip(formula.variables, path))
    if value and outer is Quantifier.EXISTS:
        return Verdict(True, witness=tuple_map)
    if not value and outer is Quantifier.FORALL:
        return Verdict(False, counterexample=tuple_map)
    return Verdict(value)


def _unravel(formula: QuantifiedFormula, counter: list[int] | None, budget: int | None):
    prefix = formula.prefix
    depth = len(prefix)

    def leaf(values: tuple) -> bool:
        if counter is not None:
            if budget is not None and counter[0] >= budget:
                raise _Exhausted
            counter[0] += 1
        return _call(formula, values)

    def go(level: int, bound: tuple) -> tuple[bool, tuple]:
        if level == depth:
            return leaf(bound), ()
        want = prefix[level].quantifier is Quantifier.EXISTS
        first = None
        for value in prefix[level].domain:
            result, rest = go(level + 1, bound + (value,))
            if result == want:
                return want, (value,) + rest
            if first is None:
                first = (value,) + rest
        return not want, first

    return go(0, ())


def evaluate(formula: QuantifiedFormula) -> Verdict:
    """Decide ``formula`` with short-circuit aggregation."""
    value, path = _unravel(formula, None, None)
    return _verdict(formula, value, path)


def evaluate_with_budget(formula: QuantifiedFormula, max_tuples: int):
    """Like :func:`evaluate` but gives up after ``max_tuples`` predicate calls.

    Returns a :class:`Verdict`, or the string :data:`EXHAUSTED` when deciding
    would need more concrete evaluations than allowed.
    """
    if max_tuples < 1:
        raise ValueError("max_tuples must be >= 1")
    try:
        value, path = _unravel(formula, [0], max_tuples)
    except _Exhausted:
        return EXHAUSTED
    return _verdict(formula, value, path)


def evaluate_exhaustive(formula: QuantifiedFormula) -> tuple[Verdict, int]:
    """Reference decision procedure without short-circuiting.

    Tabulates the predicate over the whole Cartesian product, then folds the
    table from the innermost quantifier outwards.  Returns the verdict and the
    number of tuples evaluated (always the product of the domain sizes).
    """
    prefix = formula.prefix
    domains = [b.domain.values for b in prefix]
    # Row order of itertools.product is the same lexicographic domain order
    # used by evaluate, which keeps witness selection comparable.
    table = [(_call(formula, values), values) for values in itertools.product(*domains)]
    count = len(table)
    for level in range(len(prefix) - 1, -1, -1):
        width = len(domains[level])
        want = prefix[level].quantifier is Quantifier.EXISTS
        folded = []
        for start in range(0, len(table), width):
            group = table[start:start + width]
            hits = [row for row in group if row[0] == want]
            folded.append(hits[0] if hits else (not want, group[0][1]))
        table = folded
    value, path = table[0]
    return _verdict(formula, value, path), count
