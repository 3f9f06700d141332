"""Reference cost-optimal Blocksworld program built on the library's domain model."""

import sys

from pea import blocksworld as bw
from pea.planning import Plan


def parse_instance(text):
    inst = bw.parse_instance_file(text)
    return inst.initial, inst.goal


def check_goal(state, goal):
    return goal.satisfied(state)


def generate_actions(state):
    return bw.applicable_actions(state)


def apply_action(state, action):
    return bw.apply(state, action)


def find_plan(initial, goal):
    result = bw.solve_optimal(initial, goal)
    return list(result.actions) if isinstance(result, Plan) else None


def verify_plan(initial, goal, plan):
    return bool(bw.check_plan(initial, goal, plan))


def main():
    plan = find_plan(*parse_instance(sys.stdin.read()))
    print("NO PLAN" if plan is None else "[" + "; ".join(map(bw.render_action, plan)) + "]")


if __name__ == "__main__":
    main()
