import csv
import json
import numpy as np
import pytest

from fdo.engine import run
from fdo.errors import EmptyBatch, TraceMonotonicityError
from fdo.objectives import sphere
from fdo.replay import run_replay
from fdo.trace import (
    RunTrace,
    read_trace_csv,
    summarize_batch,
    summary_json,
    trace_header,
    write_runs_csv,
    write_trace_csv,
)
from fdo.types import Direction, FdoConfig, RunResult, SearchSpace


def test_header_names():
    assert trace_header(2) == [
        "iteration", "bee", "x0", "x1", "pace0", "pace1", "r0", "r1", "fw",
        "branch0", "branch1", "candidate_fitness", "decision", "global_best_fitness",
    ]


def test_replay_first_row(tmp_path):
    path = write_trace_csv(run_replay().trace, tmp_path / "t.csv")
    with open(path) as fh:
        row = next(csv.DictReader(fh))
    assert (row["iteration"], row["bee"], float(row["candidate_fitness"])) == ("1", "1", 4610.0)


def test_empty_trace_header_only(tmp_path):
    path = write_trace_csv(RunTrace(3), tmp_path / "e.csv")
    assert path.read_text() == ",".join(trace_header(3)) + "\n"


def test_round_trip(tmp_path):
    # 9 significant digits: half a unit in the last place is at most 5e-9 relative
    res = run(SearchSpace(3, -10, 10), sphere, FdoConfig(population=4, iterations=15, seed=2))
    path = write_trace_csv(res.trace, tmp_path / "t.csv")
    back = read_trace_csv(path)
    assert len(back.records) == len(res.trace.records)
    for a, b in zip(res.trace.records, back.records):
        assert (a.iteration, a.bee, a.decision, a.branches) == (b.iteration, b.bee, b.decision, b.branches)
        for u, v in [(a.position, b.position), (a.pace, b.pace), (a.r, b.r),
                     ([a.fw, a.fitness, a.global_best_fitness], [b.fw, b.fitness, b.global_best_fitness])]:
            np.testing.assert_allclose(v, u, rtol=5e-9, atol=1e-300, equal_nan=True)


def test_write_rejects_non_monotone_history(tmp_path):
    tr = RunTrace(1, Direction.MINIMIZE)
    tr.best_history = [(1, 5.0, np.zeros(1)), (2, 6.0, np.zeros(1))]
    with pytest.raises(TraceMonotonicityError):
        write_trace_csv(tr, tmp_path / "x.csv")


def _fake(value, evals=10):
    return RunResult(np.zeros(1), value, RunTrace(1), evals)


def test_summary_finals_123():
    s = summarize_batch([_fake(1.0), _fake(2.0), _fake(3.0)])
    assert (s.mean, s.median, s.best, s.worst) == (2.0, 2.0, 1.0, 3.0)
    assert s.std == pytest.approx(1.0)


def test_summary_maximize_best_worst():
    s = summarize_batch([_fake(1.0), _fake(3.0)], Direction.MAXIMIZE)
    assert (s.best, s.worst) == (3.0, 1.0)


def test_identical_runs_zero_std():
    cfg = FdoConfig(population=5, iterations=20, seed=4)
    results = [run(SearchSpace(2, -5, 5), sphere, cfg) for _ in range(5)]
    assert summarize_batch(results).std == 0


def test_empty_batch():
    with pytest.raises(EmptyBatch):
        summarize_batch([])


def test_summary_recomputed_from_runs_csv(tmp_path):
    seeds = list(range(30))
    results = [run(SearchSpace(4, -100, 100), sphere, FdoConfig(population=8, iterations=40, seed=s))
               for s in seeds]
    write_runs_csv(seeds, results, tmp_path / "runs.csv")
    summary = summarize_batch(results)
    doc = json.loads(summary_json(summary, "sphere", {}, seeds))
    # independent recomputation from the raw CSV with NumPy
    with open(tmp_path / "runs.csv") as fh:
        finals = np.array([float(r["final_best_fitness"]) for r in csv.DictReader(fh)])
    assert finals.size == 30
    assert doc["mean"] == pytest.approx(finals.mean(), rel=1e-12)
    assert doc["std"] == pytest.approx(finals.std(ddof=1), rel=1e-9)
    assert doc["median"] == pytest.approx(np.median(finals), rel=1e-12)
    assert (doc["best"], doc["worst"]) == (min(finals), max(finals))
    assert set(doc) >= {"objective", "config", "seeds", "finals", "mean", "std", "median",
                        "best", "worst", "evaluations"}
