import csv
import io
import random
import time

import pytest

from pea import bench, sat
from pea import blocksworld as bw
from pea.bench import Outcome
from pea.candidates import reference_candidate
from pea.synthesis.fixtures import BW_EXAMPLE_1, BW_EXAMPLE_2, LOGI_EXAMPLE_1, LOGI_EXAMPLE_2


@pytest.fixture
def sat_dir(tmp_path):
    rng = random.Random(42)
    d = tmp_path / "sat"
    d.mkdir()
    for i in range(12):
        f = sat.random_cnf(rng, 10, 44 if i % 3 else 70, 3)
        (d / f"uf10-{i:02d}.cnf").write_text(sat.to_dimacs(f))
    return d


def g24_file(tmp_path, lines):
    p = tmp_path / "g24.txt"
    p.write_text("\n".join(lines) + "\n")
    return p


def test_load_sat_dir(sat_dir):
    inst = bench.load_dataset("sat", sat_dir)
    assert [i.id for i in inst] == [f"uf10-{i:02d}" for i in range(12)]
    assert len(bench.load_dataset("sat", sat_dir, exclude=["uf10-03"])) == 11


def test_load_errors(tmp_path):
    with pytest.raises(bench.DatasetError):
        bench.load_dataset("sat", tmp_path / "nope")
    (tmp_path / "empty").mkdir()
    with pytest.raises(bench.DatasetError):
        bench.load_dataset("sat", tmp_path / "empty")
    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "a.cnf").write_text("p cnf 2 2\n1 0\n")
    (bad / "b.cnf").write_text("p cnf 2 1\n9 0\n")
    with pytest.raises(bench.DatasetError) as info:
        bench.load_dataset("sat", bad)
    assert "a:" in str(info.value) and "b:" in str(info.value)
    with pytest.raises(bench.DatasetError):
        bench.run_benchmark("sat", [])


def test_load_g24_text_and_csv(tmp_path):
    assert len(bench.load_dataset("g24", g24_file(tmp_path, ["6 2 4 5", "# c", "1 1 1 1"]))) == 2
    p = tmp_path / "24.csv"
    with p.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["Rank", "Puzzles", "AMT (s)"])
        w.writerow([901, "1 2 3 4", 5.0])
        w.writerow([902, "4 4 10 10", 9.0])
    inst = bench.load_dataset("g24", p)
    assert [i.id for i in inst] == ["901", "902"] and inst[1].data == (4, 4, 10, 10)


def test_sat_native_tallies(sat_dir):
    instances = bench.load_dataset("sat", sat_dir)
    report = bench.run_benchmark("sat", instances, timeout=30)
    m, n = report.sat_split
    truth = [sat.dpll_oracle(i.data).satisfiable for i in instances]
    assert (m, n) == (sum(truth), len(truth) - sum(truth))
    assert report.solved_cell == f"{m}+{n}" and n > 0 and m > 0
    assert all(r.wall_seconds < 0.5 for r in report.results)
    again = bench.run_benchmark("sat", instances)
    assert [r.answer for r in again.results] == [r.answer for r in report.results]
    assert again.counts == report.counts


def test_parallel_same_tallies(sat_dir):
    instances = bench.load_dataset("sat", sat_dir)
    one = bench.run_benchmark("sat", instances)
    three = bench.run_benchmark("sat", instances, workers=3)
    assert [(r.instance_id, r.outcome, r.answer) for r in one.results] == \
        [(r.instance_id, r.outcome, r.answer) for r in three.results]
    assert bench.summary_row(three)["amortized_s"] == "n/a"


def _mixed_solver(task, text):
    line = text.strip()
    if line == "1 1 1 2":
        time.sleep(60)
    if line == "1 1 1 3":
        raise RuntimeError("solver bug")
    if line == "1 1 1 4":
        return "[1+1+1+4]"
    return bench.native_answer(task, text)


def test_mixed_outcomes_conserve(tmp_path):
    lines = ["6 2 4 5", "1 1 1 2", "1 1 1 3", "1 1 1 4", "1 1 1 1", "4 9 10 13"]
    instances = bench.load_dataset("g24", g24_file(tmp_path, lines))
    start = time.perf_counter()
    report = bench.run_benchmark("g24", instances, timeout=1, solver=_mixed_solver)
    assert time.perf_counter() - start < 10
    outcomes = [r.outcome for r in report.results]
    assert outcomes == [Outcome.CORRECT, Outcome.TIMEOUT, Outcome.ERROR, Outcome.INCORRECT,
                        Outcome.CORRECT, Outcome.CORRECT]
    assert sum(report.counts.values()) == len(instances)
    assert "solver bug" in report.results[2].detail


def test_sleep_solver_times_out(tmp_path):
    instances = bench.load_dataset("g24", g24_file(tmp_path, ["6 2 4 5"] * 2))
    report = bench.run_benchmark("g24", instances, timeout=0.5,
                                 solver=lambda task, text: time.sleep(30))
    assert [r.outcome for r in report.results] == [Outcome.TIMEOUT] * 2


def test_amortization_identity():
    results = [bench.InstanceResult(str(i), Outcome.CORRECT, s) for i, s in enumerate([0.01, 0.03, 0.05])]
    report = bench.BenchReport("g24", results, synthesis_seconds=30.0)
    assert report.amortized_seconds == pytest.approx(0.03 + 10.0)
    assert bench.summary_row(report)["amortized_s"] == "10.03"


def test_report_formats_agree(sat_dir):
    report = bench.run_benchmark("sat", bench.load_dataset("sat", sat_dir), synthesis_seconds=12.0)
    csv_text = bench.emit_report(report, "csv")
    md_text = bench.emit_report(report, "md")
    row = next(csv.DictReader(io.StringIO(csv_text)))
    assert list(row) == list(bench.SUMMARY_COLUMNS)
    md_cells = [c.strip() for c in md_text.splitlines()[2].strip("|").split("|")]
    assert md_cells == list(row.values())
    assert "+" in row["solved"]
    with pytest.raises(ValueError):
        bench.emit_report(report, "xml")
    assert "uf10-00" in bench.emit_report(report, "md", per_instance=True)


def test_seconds_cell_format():
    report = bench.BenchReport("sat", [bench.InstanceResult("a", Outcome.CORRECT, 0.031)])
    assert bench.summary_row(report)["mean_s"] == "0.03"


def test_planning_tasks(tmp_path):
    bw_dir, logi_dir = tmp_path / "bw", tmp_path / "logi"
    bw_dir.mkdir()
    logi_dir.mkdir()
    (bw_dir / "instance-1.txt").write_text(BW_EXAMPLE_1)
    (bw_dir / "instance-2.txt").write_text(BW_EXAMPLE_2)
    (logi_dir / "instance-1.txt").write_text(LOGI_EXAMPLE_1)
    (logi_dir / "instance-2.txt").write_text(LOGI_EXAMPLE_2)
    for task, d in (("bw", bw_dir), ("logi", logi_dir)):
        report = bench.run_benchmark(task, bench.load_dataset(task, d))
        assert report.correct == 2, report.results
        cand = bench.run_benchmark(task, bench.load_dataset(task, d), reference_candidate(task))
        assert cand.correct == 2 and cand.mode == "candidate"


def test_bw_judge_rejects_suboptimal():
    parsed = bw.parse_instance_file(BW_EXAMPLE_1)
    instance = bench.Instance("x", BW_EXAMPLE_1, parsed)
    judge = bench.Judge("bw")
    optimal = bench.native_answer("bw", BW_EXAMPLE_1)
    assert judge(instance, optimal)[0]
    detour = optimal[:-1] + "; unstack the orange block from on top of the blue block; " \
        "stack the orange block on top of the blue block]"
    ok, why = judge(instance, detour)
    assert not ok and "optimal" in why
    assert not judge(instance, "[dance]")[0]


def test_sat_judge_checks_unsat_claims():
    f = sat.CnfFormula(2, ((1, 2),))
    inst = bench.Instance("x", sat.to_dimacs(f), f)
    judge = bench.Judge("sat")
    assert not judge(inst, "UNSAT")[0]
    assert judge(inst, "[False, True]")[0]
    assert not judge(inst, "[False, False]")[0]
    assert not judge(inst, "[True]")[0]
