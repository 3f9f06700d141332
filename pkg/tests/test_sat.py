import itertools
import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from pea import sat
from pea.quantified import evaluate

F = sat.CnfFormula


def test_parse_examples():
    f = sat.parse_dimacs("p cnf 2 1\n1 -2 0\n")
    assert f.num_vars == 2 and f.clauses == ((1, -2),)
    assert sat.parse_dimacs("p cnf 1 2\n1 0\n-1 0").clauses == ((1,), (-1,))


def test_parse_comments_multiline_and_percent():
    text = "c hello\nc world\np cnf 3 2\n1 2\n 3 0 -1\n-2 0\n%\n0\n"
    assert sat.parse_dimacs(text).clauses == ((1, 2, 3), (-1, -2))


def test_missing_final_zero_tolerated():
    assert sat.parse_dimacs("p cnf 2 2\n1 0\n-2").clauses == ((1,), (-2,))


@pytest.mark.parametrize("text,err", [
    ("p cnf 3 3\n1 0\n2 0\n", sat.ClauseCountError),
    ("1 2 0\n", sat.HeaderError),
    ("p cnf x 1\n1 0\n", sat.HeaderError),
    ("p cnf 2 1\n3 0\n", sat.LiteralRangeError),
    ("p cnf 2 2\n1 0\n0\n", sat.EmptyClauseError),
    ("p cnf 2 1\n1 a 0\n", sat.DimacsError),
    ("p cnf 2 1\np cnf 2 1\n1 0\n", sat.HeaderError),
])
def test_parse_errors(text, err):
    with pytest.raises(err) as info:
        sat.parse_dimacs(text)
    assert isinstance(info.value, ValueError)


def test_parse_error_reports_line():
    with pytest.raises(sat.LiteralRangeError) as info:
        sat.parse_dimacs("c x\np cnf 2 2\n1 0\n5 0\n")
    assert info.value.line == 4


def test_eval_examples():
    assert sat.eval_formula(F(2, ((1, -2),)), (True, True))
    contradiction = F(1, ((1,), (-1,)))
    assert not any(sat.eval_formula(contradiction, a) for a in sat.enumerate_assignments(1))
    assert sat.eval_formula(F(3, ()), (False, False, False))
    with pytest.raises(ValueError):
        sat.eval_formula(F(2, ((1,),)), (True,))


def test_enumeration_order():
    assert list(sat.enumerate_assignments(2)) == [
        (False, False), (False, True), (True, False), (True, True)]
    assert list(sat.enumerate_assignments(0)) == [()]
    assert sum(1 for _ in sat.enumerate_assignments(10)) == 1024


def test_solve_examples():
    assert not sat.solve_sat(F(1, ((1,), (-1,)))).satisfiable
    assert sat.solve_sat(F(2, ((1, 2),))).witness == (False, True)
    assert sat.format_answer(sat.solve_sat(F(2, ((1, 2),)))) == "[False, True]"
    assert sat.format_answer(sat.SatVerdict(False)) == "UNSAT"


def test_tautology_examples():
    assert sat.check_tautology(F(1, ((1, -1),))).valid
    v = sat.check_tautology(F(1, ((1,),)))
    assert not v.valid and v.counterexample == (False,)


def _truth_table(f):
    return [sat.eval_formula(f, a) for a in itertools.product((False, True), repeat=f.num_vars)]


def test_tautology_duality_via_truth_table():
    rng = random.Random(11)
    for _ in range(200):
        f = sat.random_cnf(rng, rng.randint(1, 4), rng.randint(0, 3), 1)
        f = F(f.num_vars, tuple(c + (-c[0],) if rng.random() < 0.5 else c for c in f.clauses))
        table = _truth_table(f)
        # the negation is unsatisfiable exactly when every row is true
        assert sat.check_tautology(f).valid == (not any(not r for r in table))


def test_quantified_view_agrees():
    rng = random.Random(5)
    for _ in range(50):
        f = sat.random_cnf(rng, 6, rng.randint(10, 30), 3)
        v = evaluate(sat.as_quantified(f))
        assert v.valid == sat.solve_sat(f).satisfiable
        if v.valid:
            assert tuple(v.witness.values()) == sat.solve_sat(f).witness
        assert evaluate(sat.as_quantified(f, universal=True)).valid == sat.check_tautology(f).valid


def test_dpll_examples():
    assert not sat.dpll_oracle(F(1, ((1,), (-1,)))).satisfiable
    w = sat.dpll_oracle(F(2, ((1, 2),))).witness
    assert sat.eval_formula(F(2, ((1, 2),)), w)


def test_random_agreement_500():
    rng = random.Random(2024)
    sizes = {2: (8, 25), 3: (30, 55), 4: (70, 120)}
    seen = set()
    start = time.perf_counter()
    for i in range(500):
        width = (2, 3, 4)[i % 3]
        f = sat.random_cnf(rng, 10, rng.randint(*sizes[width]), width)
        a, b = sat.solve_sat(f), sat.dpll_oracle(f)
        assert a.satisfiable == b.satisfiable
        seen.add(a.satisfiable)
        if a.satisfiable:
            assert sat.eval_formula(f, a.witness) and sat.eval_formula(f, b.witness)
    assert seen == {True, False}
    assert time.perf_counter() - start < 10


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(1, n).flatmap(
        lambda v: st.sampled_from([v, -v])), min_size=1, max_size=4), max_size=8))))
def test_dimacs_round_trip(data):
    n, clauses = data
    f = F(n, tuple(tuple(c) for c in clauses))
    assert sat.parse_dimacs(sat.to_dimacs(f, comment="rt")) == f


@settings(max_examples=100, deadline=None)
@given(st.lists(st.booleans(), max_size=12))
def test_answer_round_trip(values):
    text = sat.format_answer(sat.SatVerdict(True, tuple(values)))
    assert sat.parse_answer(text) == tuple(values)


def test_parse_answer_rejects_garbage():
    assert sat.parse_answer(" unsat ") is None
    with pytest.raises(ValueError):
        sat.parse_answer("maybe")
    with pytest.raises(ValueError):
        sat.parse_answer("[True, perhaps]")
