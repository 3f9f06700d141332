"""Held-out instances used for the semantic half of the integrity check."""

from __future__ import annotations

from .. import blocksworld as bw
from .. import game24
from .. import logistics as lg
from .candidate import Fixture

SAT_INSTANCE = """\
c 3-CNF over 10 variables with exactly one satisfying assignment
p cnf 10 42
8 -3 -5 0
-5 -9 4 0
-9 4 5 0
-4 -8 -3 0
6 -7 -8 0
-7 6 9 0
10 4 7 0
-1 -5 -6 0
-10 -2 6 0
8 6 -3 0
-3 5 -7 0
8 3 -9 0
-2 3 1 0
-4 2 10 0
-5 8 -7 0
5 -10 9 0
-2 -8 4 0
-4 -6 9 0
9 7 2 0
4 -2 -3 0
-3 -2 -10 0
-10 -1 2 0
2 5 -1 0
-10 4 9 0
-5 -8 9 0
-10 8 7 0
-5 7 -4 0
-2 -6 1 0
-1 -4 8 0
-6 -1 -10 0
-3 -4 2 0
-3 10 -1 0
-8 -3 -6 0
10 6 3 0
3 9 2 0
5 -4 2 0
10 -2 -7 0
-7 -9 -3 0
4 -7 -9 0
-4 9 5 0
-2 7 -9 0
4 6 10 0
"""
SAT_EXPECTED = "[False, False, False, True, True, True, True, True, True, True]"

G24_INSTANCE = "1 1 4 6\n"

BW_EXAMPLE_1 = (
    "[STATEMENT]\n"
    "As initial conditions I have that, the red block is clear, the blue block is clear, the "
    "yellow block is clear, the hand is empty, the blue block is on top of the orange block, "
    "the red block is on the table, the orange block is on the table and the yellow block is "
    "on the table.\n"
    "My goal is to have that the orange block is on top of the blue block. I want to minimize "
    "the time taken to achieve my goal.\n"
)
BW_EXAMPLE_1_PLAN = (
    "[unstack the blue block from on top of the orange block; put down the blue block; "
    "pick up the orange block; stack the orange block on top of the blue block]"
)
BW_EXAMPLE_2 = (
    "[STATEMENT]\n"
    "As initial conditions I have that, the red block is clear, the yellow block is clear, the "
    "hand is empty, the red block is on top of the blue block, the yellow block is on top of "
    "the orange block, the blue block is on the table and the orange block is on the table.\n"
    "My goal is to have that the orange block is on top of the red block. I want to minimize "
    "the time taken to achieve my goal.\n"
)

LOGI_EXAMPLE_1 = (
    "[STATEMENT]\n"
    "As initial conditions I have that, location_0_0 is an airport, location_1_0 is an "
    "airport, airplane_0 is at location_1_0, package_0 is at location_1_0, truck_0 is at "
    "location_0_0, truck_1 is at location_1_0, location_0_0 is in the city city_0, "
    "location_0_1 is in the city city_0, location_1_0 is in the city city_1 and location_1_1 "
    "is in the city city_1.\n"
    "My goal is to have that package_0 is at location_1_1.\n"
)
LOGI_EXAMPLE_1_PLAN = (
    "[load package_0 into truck_1 at location_1_0; drive truck_1 from location_1_0 to "
    "location_1_1 in city_1; unload package_0 from truck_1 at location_1_1]"
)
LOGI_EXAMPLE_2 = (
    "[STATEMENT]\n"
    "As initial conditions I have that, location_0_0 is an airport, location_1_0 is an "
    "airport, airplane_0 is at location_0_0, package_0 is at location_0_1, truck_0 is at "
    "location_0_0, truck_1 is at location_1_1, location_0_0 is in the city city_0, "
    "location_0_1 is in the city city_0, location_1_0 is in the city city_1 and location_1_1 "
    "is in the city city_1.\n"
    "My goal is to have that package_0 is at location_1_0.\n"
)


def _bw_judge(text: str) -> bool:
    inst = bw.parse_instance_file(BW_EXAMPLE_1)
    try:
        actions = bw.parse_plan(text)
    except ValueError:
        return False
    return bool(bw.check_plan(inst.initial, inst.goal, actions)) and len(actions) == 4


def _logi_judge(text: str) -> bool:
    inst = lg.parse_instance_file(LOGI_EXAMPLE_1)
    try:
        actions = lg.parse_plan(text, inst.world)
    except ValueError:
        return False
    return bool(lg.check_plan(inst.world, inst.initial, inst.goal, actions))


def default_fixture(task: str) -> Fixture:
    if task == "sat":
        return Fixture(SAT_INSTANCE, SAT_EXPECTED)
    if task == "g24":
        return Fixture(G24_INSTANCE, "[6*4*1*1]",
                       judge=lambda out: game24.check_answer((1, 1, 4, 6), out) is True)
    if task == "bw":
        return Fixture(BW_EXAMPLE_1, BW_EXAMPLE_1_PLAN, judge=_bw_judge)
    if task == "logi":
        return Fixture(LOGI_EXAMPLE_1, LOGI_EXAMPLE_1_PLAN, judge=_logi_judge)
    raise KeyError(task)
