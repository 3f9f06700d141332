"""State-space search shared by the planning domains.

Actions have unit cost, so breadth-first search by depth returns a
minimum-cost plan.  Domains supply successors already sorted by the
rendered action text, which fixes which optimal plan is returned.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence


class SearchFailure(enum.Enum):
    NO_PLAN = "NO_PLAN"
    LIMIT_EXCEEDED = "LIMIT_EXCEEDED"


NO_PLAN = SearchFailure.NO_PLAN
LIMIT_EXCEEDED = SearchFailure.LIMIT_EXCEEDED


class SuccessorError(RuntimeError):
    def __init__(self, key: Hashable, cause: BaseException):
        self.key = key
        self.cause = cause
        super().__init__(f"successor generation failed at state {key!r}: {cause!r}")


@dataclass(frozen=True)
class SearchProblem:
    initial_state: Any
    goal_test: Callable[[Any], bool]
    successors: Callable[[Any], Sequence[tuple[Any, Any]]]
    state_key: Callable[[Any], Hashable] = lambda s: s


@dataclass(frozen=True)
class Plan:
    actions: tuple = ()

    @property
    def cost(self) -> int:
        return len(self.actions)

    def __len__(self) -> int:
        return len(self.actions)


@dataclass(frozen=True)
class SearchLimits:
    max_expanded_states: int = 1_000_000
    max_depth: int = 1_000

    def __post_init__(self):
        if self.max_expanded_states < 1 or self.max_depth < 1:
            raise ValueError("search limits must be >= 1")


@dataclass(frozen=True)
class Invalid:
    step: int
    reason: str

    def __bool__(self) -> bool:
        return False


VALID = True


def _expand(problem: SearchProblem, state):
    try:
        return problem.successors(state)
    except Exception as exc:  # noqa: BLE001
        raise SuccessorError(problem.state_key(state), exc) from exc


def bfs_plan(problem: SearchProblem, limits: SearchLimits = SearchLimits(), dedup: bool = True):
    """Minimum-length plan, :data:`NO_PLAN`, or :data:`LIMIT_EXCEEDED`.

    ``dedup=False`` turns off the visited set; only useful for checking that
    deduplication never changes the answer.
    """
    start = problem.initial_state
    if problem.goal_test(start):
        return Plan()
    key = problem.state_key
    visited = {key(start)} if dedup else None
    # Parent pointers keep memory linear in the number of generated nodes.
    frontier = deque([(start, None, 0)])
    expanded = 0
    truncated = False
    while frontier:
        state, link, depth = frontier.popleft()
        if depth >= limits.max_depth:
            truncated = True
            continue
        if expanded >= limits.max_expanded_states:
            return LIMIT_EXCEEDED
        expanded += 1
        for action, nxt in _expand(problem, state):
            if dedup:
                k = key(nxt)
                if k in visited:
                    continue
                visited.add(k)
            child = (action, link)
            if problem.goal_test(nxt):
                return Plan(_unwind(child))
            frontier.append((nxt, child, depth + 1))
    return LIMIT_EXCEEDED if truncated else NO_PLAN


def _unwind(link) -> tuple:
    actions = []
    while link is not None:
        action, link = link
        actions.append(action)
    return tuple(reversed(actions))


def verify_plan(problem: SearchProblem, plan: Plan | Sequence):
    """Simulate ``plan``; :data:`VALID` or :class:`Invalid` with a 1-based step.

    A plan that runs cleanly but misses the goal is reported at step
    ``len(actions)`` (0 for the empty plan).
    """
    actions = plan.actions if isinstance(plan, Plan) else tuple(plan)
    state = problem.initial_state
    for i, action in enumerate(actions, 1):
        for candidate, nxt in problem.successors(state):
            if candidate == action:
                state = nxt
                break
        else:
            return Invalid(i, f"action {action!r} is not applicable")
    if not problem.goal_test(state):
        return Invalid(len(actions), "goal not reached")
    return VALID


def iddfs_oracle(problem: SearchProblem, max_depth: int):
    """Iterative deepening DFS; minimum-length plan within ``max_depth`` or NO_PLAN.

    A per-iteration table remembers the largest remaining budget with which a
    state has already failed, so repeated sub-searches are cut.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    key = problem.state_key

    def dls(state, budget: int, failed: dict) -> list | None:
        if problem.goal_test(state):
            return []
        if budget == 0:
            return None
        k = key(state)
        if failed.get(k, -1) >= budget:
            return None
        for action, nxt in problem.successors(state):
            rest = dls(nxt, budget - 1, failed)
            if rest is not None:
                return [action] + rest
        failed[k] = budget
        return None

    for bound in range(max_depth + 1):
        found = dls(problem.initial_state, bound, {})
        if found is not None:
            return Plan(tuple(found))
    return NO_PLAN
