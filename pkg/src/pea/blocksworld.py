"""Blocksworld with a single hand and unit-cost actions.

States are immutable: ``on`` maps each block not in the hand to its support
(another block or :data:`TABLE`), ``held`` names the block in the hand.
Instances and plans are read from and written to the templated English used
by the PlanBench prompts ("the red block is on top of the blue block", ...).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .planning import Plan, SearchLimits, SearchProblem, bfs_plan, iddfs_oracle, verify_plan

TABLE = "table"

PICK_UP = "pick-up"
PUT_DOWN = "put-down"
UNSTACK = "unstack"
STACK = "stack"


class IllegalAction(ValueError):
    def __init__(self, action, restriction: str):
        self.action = action
        self.restriction = restriction
        super().__init__(f"{render_action(action)}: {restriction}")


class StatementError(ValueError):
    pass


@dataclass(frozen=True)
class BwState:
    on: tuple[tuple[str, str], ...]
    held: str | None = None

    @classmethod
    def make(cls, on: Mapping[str, str], held: str | None = None) -> "BwState":
        state = cls(tuple(sorted(on.items())), held)
        validate_state(state)
        return state

    @property
    def support(self) -> dict[str, str]:
        return dict(self.on)

    @property
    def blocks(self) -> frozenset[str]:
        names = {b for b, _ in self.on}
        if self.held is not None:
            names.add(self.held)
        return frozenset(names)

    @property
    def hand_empty(self) -> bool:
        return self.held is None

    @property
    def clear(self) -> frozenset[str]:
        covered = {s for _, s in self.on}
        return frozenset(b for b, _ in self.on if b not in covered)

    def key(self):
        return (self.on, self.held)


def validate_state(state: BwState) -> None:
    support = state.support
    if state.held is not None and state.held in support:
        raise ValueError(f"{state.held} is both held and placed")
    below_count: dict[str, int] = {}
    for block, under in support.items():
        if under == block:
            raise ValueError(f"{block} is on itself")
        if under != TABLE:
            if under not in support:
                raise ValueError(f"{block} rests on {under}, which is not placed")
            below_count[under] = below_count.get(under, 0) + 1
            if below_count[under] > 1:
                raise ValueError(f"{under} supports more than one block")
    for block in support:
        seen = set()
        cur = block
        while cur != TABLE:
            if cur in seen:
                raise ValueError(f"cyclic stack through {block}")
            seen.add(cur)
            cur = support[cur]


@dataclass(frozen=True)
class BwGoal:
    on: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "on", frozenset(self.on))
        seen: dict[str, str] = {}
        for block, under in self.on:
            if seen.setdefault(block, under) != under:
                raise ValueError(f"goal puts {block} on both {seen[block]} and {under}")

    def satisfied(self, state: BwState) -> bool:
        support = state.support
        return all(support.get(b) == s for b, s in self.on)


@dataclass(frozen=True, order=True)
class BwAction:
    kind: str
    block: str
    other: str | None = None

    def __str__(self) -> str:
        return render_action(self)


def render_action(action: BwAction) -> str:
    if action.kind == PICK_UP:
        return f"pick up the {action.block} block"
    if action.kind == PUT_DOWN:
        return f"put down the {action.block} block"
    if action.kind == UNSTACK:
        return f"unstack the {action.block} block from on top of the {action.other} block"
    if action.kind == STACK:
        return f"stack the {action.block} block on top of the {action.other} block"
    raise ValueError(f"unknown action kind {action.kind!r}")


_ACTION_PATTERNS = (
    (re.compile(r"^pick up the (\S+) block$"), PICK_UP),
    (re.compile(r"^put down the (\S+) block$"), PUT_DOWN),
    (re.compile(r"^unstack the (\S+) block from on top of the (\S+) block$"), UNSTACK),
    (re.compile(r"^stack the (\S+) block on top of the (\S+) block$"), STACK),
)


def parse_action(text: str) -> BwAction:
    line = " ".join(text.strip().rstrip(".").lower().split())
    line = line.removeprefix("(").removesuffix(")")
    for pattern, kind in _ACTION_PATTERNS:
        m = pattern.match(line)
        if m:
            return BwAction(kind, *m.groups())
    raise ValueError(f"not a blocksworld action: {text!r}")


def applicable_actions(state: BwState) -> list[BwAction]:
    actions = []
    clear = state.clear
    support = state.support
    if state.held is None:
        for block in clear:
            under = support[block]
            if under == TABLE:
                actions.append(BwAction(PICK_UP, block))
            else:
                actions.append(BwAction(UNSTACK, block, under))
    else:
        actions.append(BwAction(PUT_DOWN, state.held))
        for target in clear:
            actions.append(BwAction(STACK, state.held, target))
    actions.sort(key=render_action)
    return actions


def _check(state: BwState, action: BwAction) -> str | None:
    """Name of the first violated restriction, or None when legal."""
    support = state.support
    clear = state.clear
    b = action.block
    if action.kind in (PICK_UP, UNSTACK):
        if state.held is not None:
            return "hand not empty"
        if b not in support:
            return "block not in the world"
        if b not in clear:
            return "block not clear"
        if action.kind == PICK_UP and support[b] != TABLE:
            return "block not on the table"
        if action.kind == UNSTACK and support[b] != action.other:
            return "block not on top of the named block"
        return None
    if action.kind in (PUT_DOWN, STACK):
        if state.held != b:
            return "block not held"
        if action.kind == STACK:
            if action.other == b or action.other not in support:
                return "target not in the world"
            if action.other not in clear:
                return "target not clear"
        return None
    return "unknown action"


def apply(state: BwState, action: BwAction) -> BwState:
    violated = _check(state, action)
    if violated:
        raise IllegalAction(action, violated)
    support = state.support
    if action.kind in (PICK_UP, UNSTACK):
        del support[action.block]
        return BwState(tuple(sorted(support.items())), action.block)
    support[action.block] = TABLE if action.kind == PUT_DOWN else action.other
    return BwState(tuple(sorted(support.items())), None)


def successors(state: BwState) -> list[tuple[BwAction, BwState]]:
    return [(a, apply(state, a)) for a in applicable_actions(state)]


def search_problem(initial: BwState, goal: BwGoal) -> SearchProblem:
    return SearchProblem(initial, goal.satisfied, successors, BwState.key)


def solve_optimal(initial: BwState, goal: BwGoal, limits: SearchLimits = SearchLimits()):
    return bfs_plan(search_problem(initial, goal), limits)


def optimal_length_oracle(initial: BwState, goal: BwGoal, max_depth: int = 40):
    return iddfs_oracle(search_problem(initial, goal), max_depth)


def check_plan(initial: BwState, goal: BwGoal, actions: Iterable[BwAction]):
    return verify_plan(search_problem(initial, goal), tuple(actions))


# --- statements -----------------------------------------------------------------

_INIT_MARK = "as initial conditions i have that"
_GOAL_MARK = "my goal is to have that"

_FACTS = (
    ("clear", re.compile(r"^the (\S+) block is clear$")),
    ("hand", re.compile(r"^the hand is empty$")),
    ("on", re.compile(r"^the (\S+) block is on top of the (\S+) block$")),
    ("table", re.compile(r"^the (\S+) block is on the table$")),
)


def _clauses(text: str) -> list[str]:
    parts = []
    for chunk in re.split(r",\s*", text.strip().rstrip(".")):
        for piece in re.split(r"\s+and\s+", chunk):
            piece = " ".join(piece.split())
            if piece:
                parts.append(piece)
    return parts


def _match_fact(sentence: str):
    s = sentence.lower()
    for kind, pattern in _FACTS:
        m = pattern.match(s)
        if m:
            return kind, m.groups()
    raise StatementError(f"unknown sentence template: {sentence!r}")


def _split_statement(text: str) -> tuple[str, str]:
    flat = " ".join(text.split())
    low = flat.lower()
    i = low.find(_INIT_MARK)
    j = low.find(_GOAL_MARK)
    if i < 0 or j < 0 or j < i:
        raise StatementError("statement needs initial conditions followed by a goal")
    init = flat[i + len(_INIT_MARK):j].strip().lstrip(",:").strip()
    goal = flat[j + len(_GOAL_MARK):].strip().lstrip(",:").strip()
    # the goal sentence ends at the first full stop
    goal = goal.split(".")[0]
    return init, goal


def parse_bw_statement(text: str) -> tuple[BwState, BwGoal]:
    init_text, goal_text = _split_statement(text)
    support: dict[str, str] = {}
    claimed_clear: set[str] = set()
    hand_empty = False
    for sentence in _clauses(init_text):
        kind, args = _match_fact(sentence)
        if kind == "hand":
            hand_empty = True
        elif kind == "clear":
            claimed_clear.add(args[0])
        else:
            block = args[0]
            under = args[1] if kind == "on" else TABLE
            if support.setdefault(block, under) != under:
                raise StatementError(f"{block} placed on both {support[block]} and {under}")
    if not hand_empty:
        raise StatementError("the hand must be stated empty")
    unplaced = claimed_clear - set(support)
    if unplaced:
        raise StatementError(f"blocks with no support: {sorted(unplaced)}")
    try:
        state = BwState.make(support)
    except ValueError as exc:
        raise StatementError(str(exc)) from exc
    contradicted = claimed_clear - state.clear
    if contradicted:
        raise StatementError(f"blocks claimed clear but covered: {sorted(contradicted)}")

    conditions = set()
    for sentence in _clauses(goal_text):
        kind, args = _match_fact(sentence)
        if kind == "on":
            conditions.add((args[0], args[1]))
        elif kind == "table":
            conditions.add((args[0], TABLE))
        else:
            raise StatementError(f"unsupported goal condition: {sentence!r}")
    try:
        goal = BwGoal(frozenset(conditions))
    except ValueError as exc:
        raise StatementError(str(exc)) from exc
    unknown = {b for pair in goal.on for b in pair if b != TABLE} - state.blocks
    if unknown:
        raise StatementError(f"goal mentions unknown blocks: {sorted(unknown)}")
    return state, goal


def _join(facts: list[str]) -> str:
    if len(facts) == 1:
        return facts[0]
    return ", ".join(facts[:-1]) + " and " + facts[-1]


def render_statement(state: BwState, goal: BwGoal) -> str:
    if state.held is not None:
        raise ValueError("statements describe hand-empty states only")
    facts = [f"the {b} block is clear" for b in sorted(state.clear)]
    facts.append("the hand is empty")
    facts += [f"the {b} block is on top of the {s} block" for b, s in state.on if s != TABLE]
    facts += [f"the {b} block is on the table" for b, s in state.on if s == TABLE]
    wanted = [f"the {b} block is on top of the {s} block" if s != TABLE else f"the {b} block is on the table"
              for b, s in sorted(goal.on)]
    return (f"As initial conditions I have that, {_join(facts)}.\n"
            f"My goal is to have that {_join(wanted)}.")


def render_plan(plan: Plan | Iterable[BwAction]) -> str:
    actions = plan.actions if isinstance(plan, Plan) else tuple(plan)
    lines = ["[PLAN]", *(render_action(a) for a in actions), "[PLAN END]",
             f"The total time to execute the plan is {len(actions)} minutes."]
    return "\n".join(lines)


def parse_plan(text: str) -> list[BwAction]:
    """Actions from a plan block; accepts one action per line or ``;``-separated."""
    body = text
    if "[PLAN]" in body:
        body = body.split("[PLAN]", 1)[1]
    body = body.split("[PLAN END]", 1)[0]
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    actions = []
    for line in re.split(r"[\n;]", body):
        line = line.strip()
        if not line or line.lower().startswith("the total time"):
            continue
        actions.append(parse_action(line))
    return actions


@dataclass(frozen=True)
class BwInstance:
    initial: BwState
    goal: BwGoal
    ground_truth: tuple[BwAction, ...] | None = None


def parse_instance_file(text: str) -> BwInstance:
    """The task statement of a prompt file.

    Prompt files carry a solved example first, so the question is the text
    after the last ``[STATEMENT]`` marker.  A ``[PLAN] ... [PLAN END]`` block
    after that marker is read as the ground-truth plan.
    """
    section = text.rsplit("[STATEMENT]", 1)[-1]
    initial, goal = parse_bw_statement(section.split("[PLAN]", 1)[0])
    truth = None
    if "[PLAN]" in section and "[PLAN END]" in section:
        try:
            truth = tuple(parse_plan(section)) or None
        except ValueError:
            truth = None
    return BwInstance(initial, goal, truth)
