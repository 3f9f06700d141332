"""Structured prompts: a problem description plus predicate, enumeration and
aggregation instructions, optionally augmented with a pruning strategy."""

from __future__ import annotations

from dataclasses import dataclass, field

ROLES = ("predicate", "enumeration", "aggregation")


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class PeaSections:
    predicate: str
    enumeration: str
    aggregation: str

    def as_dict(self) -> dict[str, str]:
        return {r: getattr(self, r) for r in ROLES}


@dataclass(frozen=True)
class PromptTemplate:
    problem_description: str
    pea_sections: PeaSections
    optimization_insert: str | None = None
    protocol: str = ""

    @property
    def text(self) -> str:
        parts = [self.problem_description.strip(), _FRAMING,
                 self.pea_sections.predicate.strip(), self.pea_sections.enumeration.strip()]
        if self.optimization_insert:
            parts.append("Use the following strategy to prune the enumeration:\n"
                         + self.optimization_insert.strip())
        parts.append(self.pea_sections.aggregation.strip())
        if self.protocol:
            parts.append(self.protocol.strip())
        return "\n\n".join(parts) + "\n"


_FRAMING = ("Write a program for this problem in three parts: a predicate that checks one "
            "candidate, an enumeration that produces every candidate, and an aggregation that "
            "combines the two.")


def build_template(problem_description: str, pea_sections: PeaSections | dict,
                   protocol: str = "") -> PromptTemplate:
    if isinstance(pea_sections, dict):
        missing = [r for r in ROLES if not str(pea_sections.get(r, "")).strip()]
        if missing:
            raise TemplateError(f"missing sections: {', '.join(missing)}")
        pea_sections = PeaSections(**{r: pea_sections[r] for r in ROLES})
    if not problem_description.strip():
        raise TemplateError("missing problem description")
    for role in ROLES:
        if not getattr(pea_sections, role).strip():
            raise TemplateError(f"missing {role} section")
    return PromptTemplate(problem_description, pea_sections, None, protocol)


def augment(template: PromptTemplate, strategy: str) -> PromptTemplate:
    if not strategy.strip():
        raise TemplateError("empty strategy")
    return PromptTemplate(template.problem_description, template.pea_sections, strategy,
                          template.protocol)


@dataclass(frozen=True)
class EntryPoint:
    name: str
    inputs: tuple[str, ...]
    output: str

    def as_dict(self) -> dict:
        return {"name": self.name, "inputs": list(self.inputs), "output": self.output}


@dataclass(frozen=True)
class TaskPrompt:
    """Everything the synthesis loop needs to know about one task."""

    task: str
    description: str
    sections: PeaSections
    entry_points: dict[str, EntryPoint]
    instance_conversion: str = "parse_instance"
    extra: dict = field(default_factory=dict)

    def template(self) -> PromptTemplate:
        return build_template(self.description, self.sections, protocol_text(self))

    def strategy_request(self) -> str:
        return (self.description.strip() + "\n\n"
                + f"Do not write code yet. Describe, as short numbered rules, how "
                  f"`{self.entry_points['enumeration'].name}` can generate only the candidates "
                  f"that can still lead to a solution, so that the rest of the search space is "
                  f"never visited. The rules will be pasted into a later code-generation request.\n")


def protocol_text(task: TaskPrompt) -> str:
    return (f"Also write `{task.instance_conversion}(text)`, which converts the raw instance "
            f"text into your data structures. The program is run once per instance: it reads "
            f"the whole instance from standard input, calls `{task.instance_conversion}`, then "
            f"the aggregation function, and prints the answer on a single line. Reply with one "
            f"fenced code block.")


SAT = TaskPrompt(
    task="sat",
    description=(
        "The input is a Boolean formula in conjunctive normal form, given in DIMACS format. "
        "Find an assignment that makes it true and answer with the list of truth values in "
        "brackets, variable 1 first, e.g. [True, False, True]. If no assignment works, "
        "answer UNSAT."),
    sections=PeaSections(
        predicate=("Predicate: write `evaluate_formula(formula, vals)` that returns True when "
                   "the formula evaluates to true under the list of booleans `vals`, else False."),
        enumeration=("Enumeration: write `enumerate_boolean(n)` that yields every list of n "
                     "booleans, in binary counting order."),
        aggregation=("Aggregation: write `can_evaluate(formula)` that feeds every list from "
                     "`enumerate_boolean` to `evaluate_formula` and returns the first satisfying "
                     "assignment, or None when there is none."),
    ),
    entry_points={
        "predicate": EntryPoint("evaluate_formula", ("formula", "vals"), "bool"),
        "enumeration": EntryPoint("enumerate_boolean", ("n",), "iterable"),
        "aggregation": EntryPoint("can_evaluate", ("formula",), "assignment"),
    },
)

G24 = TaskPrompt(
    task="g24",
    description=(
        "Four positive integers are given on one line. Using each number exactly once and the "
        "operators +, -, *, / with any parentheses, build an expression equal to 24. Answer "
        "with the expression in brackets, e.g. [6+2*(4+5)], or with the word cannot."),
    sections=PeaSections(
        predicate=("Predicate: write `evaluate_to_24(expression)` that returns True when the "
                   "expression equals 24 exactly. Division by zero must count as False, and "
                   "rounding must not cause false answers."),
        enumeration=("Enumeration: write `generate_expressions(n1, n2, n3, n4)` that returns "
                     "every expression over the four numbers: all orders, all operator choices "
                     "and all parenthesizations."),
        aggregation=("Aggregation: write `can_evaluate(n1, n2, n3, n4)` that returns the first "
                     "expression from `generate_expressions` accepted by `evaluate_to_24`, or "
                     "None."),
    ),
    entry_points={
        "predicate": EntryPoint("evaluate_to_24", ("expression",), "bool"),
        "enumeration": EntryPoint("generate_expressions", ("n1", "n2", "n3", "n4"), "list"),
        "aggregation": EntryPoint("can_evaluate", ("n1", "n2", "n3", "n4"), "expression"),
    },
)

_BW_RULES = (
    "Blocks sit on the table or on one other block, and one hand moves them. The four actions "
    "are pick up (a clear block from the table), unstack (a clear block from the block it is "
    "on), put down (the held block onto the table) and stack (the held block onto a clear "
    "block). Picking up and unstacking need an empty hand; putting down and stacking empty "
    "it. A block is clear when nothing is on it and it is not held. Every action costs one "
    "minute.")

BW = TaskPrompt(
    task="bw",
    description=(
        _BW_RULES + " The input is a statement in the usual template sentences. Find a plan "
        "of minimum total time and answer with the action sentences in brackets separated by "
        "semicolons, e.g. [unstack the blue block from on top of the orange block; put down "
        "the blue block]."),
    sections=PeaSections(
        predicate="Predicate: write `check_goal(state, goal)` that tells whether a state meets every goal condition.",
        enumeration=("Enumeration: write `generate_actions(state)` returning every action "
                     "allowed in the state, and `apply_action(state, action)` returning the "
                     "successor state."),
        aggregation=("Aggregation: write `find_plan(initial, goal)` that runs breadth-first "
                     "search over action sequences using the functions above and returns the "
                     "first plan reaching the goal, plus `verify_plan(initial, goal, plan)`."),
    ),
    entry_points={
        "predicate": EntryPoint("check_goal", ("state", "goal"), "bool"),
        "enumeration": EntryPoint("generate_actions", ("state",), "list"),
        "aggregation": EntryPoint("find_plan", ("initial", "goal"), "list"),
    },
)

_LOGI_RULES = (
    "Packages move between locations. Each city has one truck, which drives between locations "
    "of its own city, and one airport. Airplanes fly between airports. A package can be "
    "loaded into a vehicle at the vehicle's location and unloaded wherever the vehicle is.")

LOGI = TaskPrompt(
    task="logi",
    description=(
        _LOGI_RULES + " The input is a statement in the usual template sentences. Find any "
        "plan that brings every package to its goal and answer with the action sentences in "
        "brackets separated by semicolons, e.g. [load package_0 into truck_1 at location_1_0; "
        "drive truck_1 from location_1_0 to location_1_1 in city_1]."),
    sections=PeaSections(
        predicate="Predicate: write `check_goal(state, goal)` that tells whether every package is at its goal.",
        enumeration="Enumeration: write `generate_actions(state)` returning the actions allowed in the state.",
        aggregation=("Aggregation: write `find_plan(initial, goal)` that searches breadth-first "
                     "with the functions above and returns a plan, plus "
                     "`verify_plan(initial, goal, plan)`."),
    ),
    entry_points={
        "predicate": EntryPoint("check_goal", ("state", "goal"), "bool"),
        "enumeration": EntryPoint("generate_actions", ("state",), "list"),
        "aggregation": EntryPoint("find_plan", ("initial", "goal"), "list"),
    },
)

TASKS: dict[str, TaskPrompt] = {t.task: t for t in (SAT, G24, BW, LOGI)}
