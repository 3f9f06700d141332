"""Random instance generators shared by the test modules."""

import itertools
import random

from pea import blocksworld as bw
from pea import logistics as lg
from pea import quantified as qp

COLORS = ["red", "blue", "orange", "yellow", "green", "purple", "white"]


def random_formula(rng: random.Random, max_vars=4, max_domain=3) -> qp.QuantifiedFormula:
    """Random prefix over small integer domains with a random truth table."""
    bindings = [(rng.choice(list(qp.Quantifier)), f"x{i}", range(rng.randint(1, max_domain)))
                for i in range(rng.randint(1, max_vars))]
    bias = rng.random()
    table = {xs: rng.random() < bias for xs in itertools.product(*(d for _, _, d in bindings))}
    return qp.formula([(q, n, list(d)) for q, n, d in bindings], lambda *xs: table[xs])


def random_bw_state(rng: random.Random, blocks) -> bw.BwState:
    blocks = list(blocks)
    rng.shuffle(blocks)
    stacks: list[list[str]] = []
    for b in blocks:
        if stacks and rng.random() < 0.5:
            rng.choice(stacks).append(b)
        else:
            stacks.append([b])
    on = {}
    for stack in stacks:
        on[stack[0]] = bw.TABLE
        for lower, upper in zip(stack, stack[1:]):
            on[upper] = lower
    return bw.BwState.make(on)


def random_bw_instance(rng: random.Random, max_blocks=5):
    """A start state and a goal it does not already satisfy."""
    n = rng.randint(2, max_blocks)
    blocks = rng.sample(COLORS, n)
    initial = random_bw_state(rng, blocks)
    while True:
        target = random_bw_state(rng, blocks).support
        chosen = rng.sample(sorted(target), rng.randint(1, n))
        goal = bw.BwGoal(frozenset((b, target[b]) for b in chosen))
        if not goal.satisfied(initial):
            return initial, goal


def random_logi_instance(rng: random.Random, cities=2, max_packages=2, max_locations=2):
    location_city, airports, truck_city = {}, set(), {}
    for c in range(cities):
        city = f"city_{c}"
        for i in range(rng.randint(1, max_locations)):
            location_city[f"location_{c}_{i}"] = city
        airports.add(f"location_{c}_0")
        truck_city[f"truck_{c}"] = city
    planes = [f"airplane_{i}" for i in range(rng.randint(1, 2))]
    world = lg.LogiWorld(location_city, airports, truck_city, planes)
    locations = sorted(location_city)
    trucks = {t: rng.choice(world.locations_in(c)) for t, c in truck_city.items()}
    plane_at = {p: rng.choice(sorted(airports)) for p in planes}
    npk = rng.randint(1, max_packages)
    packages = {f"package_{i}": rng.choice(locations) for i in range(npk)}
    goal = lg.LogiGoal.make({p: rng.choice(locations) for p in packages})
    state = lg.LogiState.make(packages, trucks, plane_at)
    lg.validate_state(world, state)
    return world, state, goal
