"""Reference Logistics program: helpful-action rollout with BFS fallback."""

import sys

from pea import logistics as lg
from pea.planning import Plan

_world = None


def parse_instance(text):
    global _world
    inst = lg.parse_instance_file(text)
    _world = inst.world
    return inst.initial, inst.goal


def check_goal(state, goal):
    return goal.satisfied(state)


def generate_actions(state):
    return lg.applicable_actions(_world, state)


def find_plan(initial, goal):
    result = lg.solve(_world, initial, goal)
    return list(result.actions) if isinstance(result, Plan) else None


def verify_plan(initial, goal, plan):
    return bool(lg.check_plan(_world, initial, goal, plan))


def main():
    plan = find_plan(*parse_instance(sys.stdin.read()))
    print("NO PLAN" if plan is None else "[" + "; ".join(map(lg.render_action, plan)) + "]")


if __name__ == "__main__":
    main()
