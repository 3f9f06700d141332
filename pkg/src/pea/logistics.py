"""Logistics: trucks move packages inside a city, airplanes between airports.

A package's place is either a location name or the name of the vehicle
carrying it; the world tells the two apart.  Identifiers are ordered
naturally (``package_2`` before ``package_10``) wherever the procedure below
says "first".
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .planning import (
    Plan, SearchLimits, SearchProblem, bfs_plan, verify_plan,
)

LOAD_TRUCK = "load-truck"
UNLOAD_TRUCK = "unload-truck"
LOAD_AIRPLANE = "load-airplane"
UNLOAD_AIRPLANE = "unload-airplane"
DRIVE_TRUCK = "drive-truck"
FLY_AIRPLANE = "fly-airplane"


class Strategy(enum.Enum):
    NAIVE_BFS = "naive"
    HELPFUL_GREEDY_WITH_FALLBACK = "helpful"


class IllegalAction(ValueError):
    def __init__(self, action, restriction: str):
        self.action = action
        self.restriction = restriction
        super().__init__(f"{render_action(action)}: {restriction}")


class StatementError(ValueError):
    pass


def natural_key(name: str):
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


@dataclass(frozen=True)
class LogiWorld:
    location_city: Mapping[str, str]
    airports: frozenset[str]
    truck_city: Mapping[str, str]
    airplanes: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "airports", frozenset(self.airports))
        object.__setattr__(self, "airplanes", tuple(sorted(self.airplanes, key=natural_key)))
        cities = set(self.location_city.values())
        for ap in self.airports:
            if ap not in self.location_city:
                raise ValueError(f"airport {ap} is not in any city")
        for city in cities:
            if not any(self.location_city[a] == city for a in self.airports):
                raise ValueError(f"{city} has no airport")
        homes = list(self.truck_city.values())
        if sorted(homes) != sorted(cities) or len(set(homes)) != len(homes):
            raise ValueError("every city needs exactly one truck")

    @property
    def cities(self) -> list[str]:
        return sorted(set(self.location_city.values()), key=natural_key)

    @property
    def trucks(self) -> list[str]:
        return sorted(self.truck_city, key=natural_key)

    def locations_in(self, city: str) -> list[str]:
        return sorted((l for l, c in self.location_city.items() if c == city), key=natural_key)

    def airport_of(self, city: str) -> str:
        return min((a for a in self.airports if self.location_city[a] == city), key=natural_key)

    def truck_of(self, city: str) -> str:
        return next(t for t, c in self.truck_city.items() if c == city)

    def is_truck(self, name: str) -> bool:
        return name in self.truck_city

    def is_airplane(self, name: str) -> bool:
        return name in self.airplanes


@dataclass(frozen=True)
class LogiState:
    package_at: tuple[tuple[str, str], ...]
    truck_at: tuple[tuple[str, str], ...]
    plane_at: tuple[tuple[str, str], ...]

    @classmethod
    def make(cls, package_at: Mapping[str, str], truck_at: Mapping[str, str],
             plane_at: Mapping[str, str]) -> "LogiState":
        return cls(tuple(sorted(package_at.items())), tuple(sorted(truck_at.items())),
                   tuple(sorted(plane_at.items())))

    @property
    def packages(self) -> dict[str, str]:
        return dict(self.package_at)

    @property
    def trucks(self) -> dict[str, str]:
        return dict(self.truck_at)

    @property
    def planes(self) -> dict[str, str]:
        return dict(self.plane_at)

    def key(self):
        return (self.package_at, self.truck_at, self.plane_at)


def validate_state(world: LogiWorld, state: LogiState) -> None:
    trucks, planes = state.trucks, state.planes
    if set(trucks) != set(world.truck_city):
        raise ValueError("state must place every truck exactly once")
    if set(planes) != set(world.airplanes):
        raise ValueError("state must place every airplane exactly once")
    for t, loc in trucks.items():
        if world.location_city.get(loc) != world.truck_city[t]:
            raise ValueError(f"{t} is outside its city")
    for a, loc in planes.items():
        if loc not in world.airports:
            raise ValueError(f"{a} is not at an airport")
    for p, place in state.package_at:
        if place not in world.location_city and place not in trucks and place not in planes:
            raise ValueError(f"{p} is at unknown place {place}")


@dataclass(frozen=True)
class LogiGoal:
    package_at: tuple[tuple[str, str], ...]

    @classmethod
    def make(cls, targets: Mapping[str, str]) -> "LogiGoal":
        return cls(tuple(sorted(targets.items(), key=lambda kv: natural_key(kv[0]))))

    @property
    def targets(self) -> dict[str, str]:
        return dict(self.package_at)

    def satisfied(self, state: LogiState) -> bool:
        at = state.packages
        return all(at.get(p) == loc for p, loc in self.package_at)


@dataclass(frozen=True, order=True)
class LogiAction:
    kind: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return render_action(self)


def render_action(action: LogiAction) -> str:
    k, a = action.kind, action.args
    if k in (LOAD_TRUCK, LOAD_AIRPLANE):
        return f"load {a[0]} into {a[1]} at {a[2]}"
    if k in (UNLOAD_TRUCK, UNLOAD_AIRPLANE):
        return f"unload {a[0]} from {a[1]} at {a[2]}"
    if k == DRIVE_TRUCK:
        return f"drive {a[0]} from {a[1]} to {a[2]} in {a[3]}"
    if k == FLY_AIRPLANE:
        return f"fly {a[0]} from {a[1]} to {a[2]}"
    raise ValueError(f"unknown action kind {k!r}")


_ACTION_PATTERNS = (
    (re.compile(r"^load (\S+) into (\S+) at (\S+)$"), "load"),
    (re.compile(r"^unload (\S+) from (\S+) at (\S+)$"), "unload"),
    (re.compile(r"^drive (\S+) from (\S+) to (\S+) in (\S+)$"), DRIVE_TRUCK),
    (re.compile(r"^fly (\S+) from (\S+) to (\S+)$"), FLY_AIRPLANE),
)


def parse_action(text: str, world: LogiWorld | None = None) -> LogiAction:
    line = " ".join(text.strip().rstrip(".").split()).lower()
    line = line.removeprefix("(").removesuffix(")")
    for pattern, kind in _ACTION_PATTERNS:
        m = pattern.match(line)
        if not m:
            continue
        args = m.groups()
        if kind in ("load", "unload"):
            vehicle = args[1]
            plane = world.is_airplane(vehicle) if world else vehicle.startswith("airplane")
            if kind == "load":
                kind = LOAD_AIRPLANE if plane else LOAD_TRUCK
            else:
                kind = UNLOAD_AIRPLANE if plane else UNLOAD_TRUCK
        return LogiAction(kind, args)
    raise ValueError(f"not a logistics action: {text!r}")


def applicable_actions(world: LogiWorld, state: LogiState) -> list[LogiAction]:
    trucks, planes = state.trucks, state.planes
    actions = []
    for p, place in state.package_at:
        if place in trucks:
            actions.append(LogiAction(UNLOAD_TRUCK, (p, place, trucks[place])))
        elif place in planes:
            actions.append(LogiAction(UNLOAD_AIRPLANE, (p, place, planes[place])))
        else:
            actions += [LogiAction(LOAD_TRUCK, (p, t, place)) for t, loc in trucks.items() if loc == place]
            actions += [LogiAction(LOAD_AIRPLANE, (p, a, place)) for a, loc in planes.items() if loc == place]
    for t, loc in trucks.items():
        city = world.location_city[loc]
        actions += [LogiAction(DRIVE_TRUCK, (t, loc, dest, city))
                    for dest in world.locations_in(city) if dest != loc]
    for a, loc in planes.items():
        actions += [LogiAction(FLY_AIRPLANE, (a, loc, dest)) for dest in world.airports if dest != loc]
    actions.sort(key=render_action)
    return actions


def _violation(world: LogiWorld, state: LogiState, action: LogiAction) -> str | None:
    trucks, planes, packages = state.trucks, state.planes, state.packages
    k, a = action.kind, action.args
    if k in (LOAD_TRUCK, LOAD_AIRPLANE, UNLOAD_TRUCK, UNLOAD_AIRPLANE):
        if len(a) != 3:
            return "malformed action"
        p, vehicle, loc = a
        fleet = trucks if k in (LOAD_TRUCK, UNLOAD_TRUCK) else planes
        if p not in packages:
            return "unknown package"
        if vehicle not in fleet:
            return "unknown vehicle"
        if fleet[vehicle] != loc:
            return "vehicle not at the location"
        if k in (LOAD_TRUCK, LOAD_AIRPLANE):
            if packages[p] != loc:
                return "package and vehicle not co-located"
        elif packages[p] != vehicle:
            return "package not in the vehicle"
        return None
    if k == DRIVE_TRUCK:
        if len(a) != 4:
            return "malformed action"
        t, src, dst, city = a
        if t not in trucks:
            return "unknown truck"
        if trucks[t] != src:
            return "truck not at the from-location"
        if world.location_city.get(src) != city or world.location_city.get(dst) != city:
            return "locations not in the same city"
        if src == dst:
            return "from-location equals to-location"
        return None
    if k == FLY_AIRPLANE:
        if len(a) != 3:
            return "malformed action"
        plane, src, dst = a
        if plane not in planes:
            return "unknown airplane"
        if src not in world.airports or dst not in world.airports:
            return "endpoints must be airports"
        if planes[plane] != src:
            return "airplane not at the from-location"
        if src == dst:
            return "from-location equals to-location"
        return None
    return "unknown action"


def apply(world: LogiWorld, state: LogiState, action: LogiAction) -> LogiState:
    violated = _violation(world, state, action)
    if violated:
        raise IllegalAction(action, violated)
    k, a = action.kind, action.args
    if k in (LOAD_TRUCK, LOAD_AIRPLANE):
        packages = state.packages
        packages[a[0]] = a[1]
        return LogiState(tuple(sorted(packages.items())), state.truck_at, state.plane_at)
    if k in (UNLOAD_TRUCK, UNLOAD_AIRPLANE):
        packages = state.packages
        packages[a[0]] = a[2]
        return LogiState(tuple(sorted(packages.items())), state.truck_at, state.plane_at)
    if k == DRIVE_TRUCK:
        trucks = state.trucks
        trucks[a[0]] = a[2]
        return LogiState(state.package_at, tuple(sorted(trucks.items())), state.plane_at)
    planes = state.planes
    planes[a[0]] = a[2]
    return LogiState(state.package_at, state.truck_at, tuple(sorted(planes.items())))


def successors(world: LogiWorld):
    return lambda state: [(a, apply(world, state, a)) for a in applicable_actions(world, state)]


def search_problem(world: LogiWorld, initial: LogiState, goal: LogiGoal) -> SearchProblem:
    return SearchProblem(initial, goal.satisfied, successors(world), LogiState.key)


def check_plan(world: LogiWorld, initial: LogiState, goal: LogiGoal, actions: Iterable[LogiAction]):
    return verify_plan(search_problem(world, initial, goal), tuple(actions))


# --- helpful-action pruning ---------------------------------------------------------

def _place_location(state: LogiState, place: str) -> str:
    trucks, planes = state.trucks, state.planes
    return trucks.get(place) or planes.get(place) or place


def helpful_action(world: LogiWorld, state: LogiState, goal: LogiGoal) -> LogiAction | None:
    """One deterministic action moving the first unfinished package toward its goal."""
    packages = state.packages
    pending = [p for p, target in goal.package_at if packages.get(p) != target]
    if not pending:
        return None
    pkg = min(pending, key=natural_key)
    target = goal.targets[pkg]
    place = packages[pkg]
    trucks, planes = state.trucks, state.planes
    here = _place_location(state, place)
    city = world.location_city[here]
    goal_city = world.location_city[target]

    if city != goal_city:
        if place in trucks:
            airport = world.airport_of(city)
            if here != airport:
                return LogiAction(DRIVE_TRUCK, (place, here, airport, city))
            # at the airport already: hand over to an airplane
            return LogiAction(UNLOAD_TRUCK, (pkg, place, here))
        if place in planes:
            return LogiAction(FLY_AIRPLANE, (place, here, world.airport_of(goal_city)))
        is_airport = here in world.airports
        truck = world.truck_of(city)
        if not is_airport and trucks[truck] == here:
            return LogiAction(LOAD_TRUCK, (pkg, truck, here))
        if is_airport:
            plane = next((a for a in world.airplanes if planes[a] == here), None)
            if plane is not None:
                return LogiAction(LOAD_AIRPLANE, (pkg, plane, here))
            if world.airplanes:
                plane = world.airplanes[0]
                return LogiAction(FLY_AIRPLANE, (plane, planes[plane], here))
            return None
        return LogiAction(DRIVE_TRUCK, (truck, trucks[truck], here, city))

    if place in planes:
        return LogiAction(UNLOAD_AIRPLANE, (pkg, place, here))
    if place in trucks:
        if here == target:
            return LogiAction(UNLOAD_TRUCK, (pkg, place, here))
        return LogiAction(DRIVE_TRUCK, (place, here, target, city))
    truck = world.truck_of(city)
    if trucks[truck] == here:
        return LogiAction(LOAD_TRUCK, (pkg, truck, here))
    return LogiAction(DRIVE_TRUCK, (truck, trucks[truck], here, city))


def progress_measure(world: LogiWorld, state: LogiState, goal: LogiGoal, cap: int = 64) -> tuple[int, int]:
    """``(unfinished packages, helpful steps left for the first of them)``.

    Each helpful step lowers this pair lexicographically: it either finishes
    the chosen package or brings it one step closer along its own rollout.
    The second component saturates at ``cap``.
    """
    packages = state.packages
    pending = [p for p, t in goal.package_at if packages.get(p) != t]
    if not pending:
        return (0, 0)
    pkg = min(pending, key=natural_key)
    target = goal.targets[pkg]
    steps = 0
    while state.packages[pkg] != target and steps < cap:
        action = helpful_action(world, state, goal)
        if action is None:
            return (len(pending), cap)
        state = apply(world, state, action)
        steps += 1
    return (len(pending), steps)


@dataclass(frozen=True)
class Rollout:
    plan: Plan | None
    stopped: str  # "goal", "no-action", "cycle", "illegal", "limit"


def greedy_rollout(world: LogiWorld, initial: LogiState, goal: LogiGoal,
                   limits: SearchLimits = SearchLimits()) -> Rollout:
    state = initial
    seen = {state.key()}
    actions: list[LogiAction] = []
    while not goal.satisfied(state):
        if len(actions) >= limits.max_depth:
            return Rollout(None, "limit")
        action = helpful_action(world, state, goal)
        if action is None:
            return Rollout(None, "no-action")
        try:
            state = apply(world, state, action)
        except IllegalAction:
            return Rollout(None, "illegal")
        if state.key() in seen:
            return Rollout(None, "cycle")
        seen.add(state.key())
        actions.append(action)
    return Rollout(Plan(tuple(actions)), "goal")


def solve(world: LogiWorld, initial: LogiState, goal: LogiGoal,
          strategy: Strategy = Strategy.HELPFUL_GREEDY_WITH_FALLBACK,
          limits: SearchLimits = SearchLimits()):
    """A valid plan, :data:`NO_PLAN`, or :data:`LIMIT_EXCEEDED`."""
    if strategy is Strategy.HELPFUL_GREEDY_WITH_FALLBACK:
        rollout = greedy_rollout(world, initial, goal, limits)
        if rollout.plan is not None:
            return rollout.plan
    return bfs_plan(search_problem(world, initial, goal), limits)


# --- statements -----------------------------------------------------------------------

_INIT_MARK = "as initial conditions i have that"
_GOAL_MARK = "my goal is to have that"

_FACTS = (
    ("airport", re.compile(r"^(location_\S+) is an airport$")),
    ("in_city", re.compile(r"^(location_\S+) is in the city (\S+)$")),
    ("at", re.compile(r"^((?:airplane|package|truck)_\S+) is at (location_\S+)$")),
)


def _clauses(text: str) -> list[str]:
    parts = []
    for chunk in re.split(r",\s*", text.strip().rstrip(".")):
        for piece in re.split(r"\s+and\s+", chunk):
            piece = " ".join(piece.split())
            if piece:
                parts.append(piece)
    return parts


def _fact(sentence: str):
    s = sentence.lower()
    for kind, pattern in _FACTS:
        m = pattern.match(s)
        if m:
            return kind, m.groups()
    raise StatementError(f"unknown sentence template: {sentence!r}")


def _split_statement(text: str) -> tuple[str, str]:
    flat = " ".join(text.split())
    low = flat.lower()
    i, j = low.find(_INIT_MARK), low.find(_GOAL_MARK)
    if i < 0 or j < i:
        raise StatementError("statement needs initial conditions followed by a goal")
    init = flat[i + len(_INIT_MARK):j].strip().lstrip(",:").strip()
    goal = flat[j + len(_GOAL_MARK):].strip().lstrip(",:").strip()
    return init, goal.split(". ")[0].rstrip(".")


def _record(table: dict, key: str, value: str, what: str) -> None:
    if table.setdefault(key, value) != value:
        raise StatementError(f"conflicting facts: {key} {what} {table[key]} and {value}")


def parse_logi_statement(text: str) -> tuple[LogiWorld, LogiState, LogiGoal]:
    init_text, goal_text = _split_statement(text)
    airports: set[str] = set()
    location_city: dict[str, str] = {}
    packages: dict[str, str] = {}
    trucks: dict[str, str] = {}
    planes: dict[str, str] = {}
    for sentence in _clauses(init_text):
        kind, args = _fact(sentence)
        if kind == "airport":
            airports.add(args[0])
        elif kind == "in_city":
            _record(location_city, args[0], args[1], "in")
        else:
            thing, loc = args
            table = packages if thing.startswith("package") else trucks if thing.startswith("truck") else planes
            _record(table, thing, loc, "at")

    for name, loc in [*packages.items(), *trucks.items(), *planes.items(), *((a, a) for a in airports)]:
        if loc not in location_city:
            raise StatementError(f"{name}: {loc} is not in any city")
    for plane, loc in planes.items():
        if loc not in airports:
            raise StatementError(f"{plane} is at {loc}, which is not an airport")

    cities = set(location_city.values())
    truck_city = {}
    for truck, loc in trucks.items():
        city = location_city[loc]
        # dataset convention: truck_K serves city_K
        suffix = truck.split("_", 1)[1] if "_" in truck else None
        home = f"city_{suffix}"
        if home in cities and home != city:
            raise StatementError(f"{truck} is at {loc}, outside its city {home}")
        truck_city[truck] = city
    try:
        world = LogiWorld(location_city, frozenset(airports), truck_city, tuple(planes))
    except ValueError as exc:
        raise StatementError(str(exc)) from exc
    state = LogiState.make(packages, trucks, planes)
    try:
        validate_state(world, state)
    except ValueError as exc:
        raise StatementError(str(exc)) from exc

    targets: dict[str, str] = {}
    for sentence in _clauses(goal_text):
        kind, args = _fact(sentence)
        if kind != "at" or not args[0].startswith("package"):
            raise StatementError(f"unsupported goal condition: {sentence!r}")
        if args[0] not in packages:
            raise StatementError(f"goal mentions unknown package {args[0]}")
        if args[1] not in location_city:
            raise StatementError(f"goal location {args[1]} is not in any city")
        _record(targets, args[0], args[1], "at")
    return world, state, LogiGoal.make(targets)


def _join(facts: list[str]) -> str:
    if len(facts) == 1:
        return facts[0]
    return ", ".join(facts[:-1]) + " and " + facts[-1]


def render_statement(world: LogiWorld, state: LogiState, goal: LogiGoal) -> str:
    nk = natural_key
    facts = [f"{a} is an airport" for a in sorted(world.airports, key=nk)]
    facts += [f"{a} is at {loc}" for a, loc in sorted(state.plane_at, key=lambda kv: nk(kv[0]))]
    for p, place in sorted(state.package_at, key=lambda kv: nk(kv[0])):
        if place not in world.location_city:
            raise ValueError("statements describe unloaded packages only")
        facts.append(f"{p} is at {place}")
    facts += [f"{t} is at {loc}" for t, loc in sorted(state.truck_at, key=lambda kv: nk(kv[0]))]
    facts += [f"{l} is in the city {c}" for l, c in sorted(world.location_city.items(), key=lambda kv: nk(kv[0]))]
    wanted = [f"{p} is at {loc}" for p, loc in goal.package_at]
    return (f"As initial conditions I have that, {_join(facts)}.\n"
            f"My goal is to have that {_join(wanted)}.")


def render_plan(plan: Plan | Iterable[LogiAction]) -> str:
    actions = plan.actions if isinstance(plan, Plan) else tuple(plan)
    return "\n".join(["[PLAN]", *(render_action(a) for a in actions), "[PLAN END]"])


def parse_plan(text: str, world: LogiWorld | None = None) -> list[LogiAction]:
    body = text
    if "[PLAN]" in body:
        body = body.split("[PLAN]", 1)[1]
    body = body.split("[PLAN END]", 1)[0].strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    return [parse_action(line, world) for line in re.split(r"[\n;]", body) if line.strip()]


@dataclass(frozen=True)
class LogiInstance:
    world: LogiWorld
    initial: LogiState
    goal: LogiGoal
    ground_truth: tuple[LogiAction, ...] | None = None


def parse_instance_file(text: str) -> LogiInstance:
    """Task statement after the last ``[STATEMENT]`` marker (see blocksworld)."""
    section = text.rsplit("[STATEMENT]", 1)[-1]
    world, initial, goal = parse_logi_statement(section.split("[PLAN]", 1)[0])
    truth = None
    if "[PLAN]" in section and "[PLAN END]" in section:
        try:
            truth = tuple(parse_plan(section, world)) or None
        except ValueError:
            truth = None
    return LogiInstance(world, initial, goal, truth)

