"""Run traces, CSV/JSON persistence and batch statistics."""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import EmptyBatch, TraceMonotonicityError
from .types import Branch, Decision, Direction, RunResult

Array = np.ndarray
FLOAT_FORMAT = "{:.9g}"


@dataclass
class EvalRecord:
    """One objective evaluation: initial placement or a candidate move."""

    iteration: int
    bee: int  # 1-based
    position: Array
    pace: Array
    r: Array
    fw: float
    branches: Optional[Tuple[Branch, ...]]
    fitness: float
    decision: Decision
    global_best_fitness: float


@dataclass
class RunTrace:
    dimension: int
    direction: Direction = Direction.MINIMIZE
    records: List[EvalRecord] = field(default_factory=list)
    outcomes: list = field(default_factory=list)
    best_history: List[Tuple[int, float, Array]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def candidate_evaluations(self) -> int:
        return sum(1 for rec in self.records if rec.decision is not Decision.INIT)

    def iteration_records(self, iteration: int) -> List[EvalRecord]:
        return [rec for rec in self.records if rec.iteration == iteration]

    def best_fitness_history(self) -> List[float]:
        return [f for _, f, _ in self.best_history]

    def check_monotone(self) -> None:
        hist = self.best_fitness_history()
        for i, (a, b) in enumerate(zip(hist, hist[1:]), start=1):
            if self.direction.better(a, b):
                raise TraceMonotonicityError(
                    f"best-so-far regressed between iterations {i} and {i + 1}: {a!r} -> {b!r}"
                )


def _fmt(value) -> str:
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return ""
    return FLOAT_FORMAT.format(value)


def trace_header(dimension: int) -> List[str]:
    d = range(dimension)
    return (
        ["iteration", "bee"]
        + [f"x{i}" for i in d]
        + [f"pace{i}" for i in d]
        + [f"r{i}" for i in d]
        + ["fw"]
        + [f"branch{i}" for i in d]
        + ["candidate_fitness", "decision", "global_best_fitness"]
    )


def _row(rec: EvalRecord, dimension: int) -> List[str]:
    branches = rec.branches or (None,) * dimension
    return (
        [str(rec.iteration), str(rec.bee)]
        + [_fmt(v) for v in rec.position]
        + [_fmt(v) for v in rec.pace]
        + [_fmt(v) for v in rec.r]
        + [_fmt(rec.fw)]
        + ["" if b is None else b.value for b in branches]
        + [_fmt(rec.fitness), rec.decision.value, _fmt(rec.global_best_fitness)]
    )


def trace_to_csv(trace: RunTrace) -> str:
    trace.check_monotone()
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(trace_header(trace.dimension))
    for rec in trace.records:
        writer.writerow(_row(rec, trace.dimension))
    return buf.getvalue()


def write_trace_csv(trace: RunTrace, destination) -> Path:
    """Write one row per evaluation. Raises ``TraceMonotonicityError`` on a bad history."""
    path = Path(destination)
    text = trace_to_csv(trace)
    path.write_text(text)
    return path


def _num(text: str) -> float:
    return float(text) if text != "" else float("nan")


def read_trace_csv(source) -> RunTrace:
    with open(source, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        dim = sum(1 for h in header if h.startswith("x") and h[1:].isdigit())
        if header != trace_header(dim):
            raise ValueError(f"{source}: unexpected trace header")
        trace = RunTrace(dim)
        for row in reader:
            i = 2
            pos = np.array([_num(v) for v in row[i : i + dim]])
            i += dim
            pace = np.array([_num(v) for v in row[i : i + dim]])
            i += dim
            r = np.array([_num(v) for v in row[i : i + dim]])
            i += dim
            fw = _num(row[i])
            i += 1
            raw = row[i : i + dim]
            i += dim
            branches = None if all(b == "" for b in raw) else tuple(Branch(b) for b in raw)
            trace.records.append(
                EvalRecord(
                    int(row[0]), int(row[1]), pos, pace, r, fw, branches,
                    _num(row[i]), Decision(row[i + 1]), _num(row[i + 2]),
                )
            )
    return trace


# --- batches ------------------------------------------------------------------


@dataclass
class BatchSummary:
    finals: List[float]
    mean: float
    std: float
    median: float
    best: float
    worst: float
    evaluations: List[int]


def summarize_batch(
    results: Sequence[RunResult], direction: Direction = Direction.MINIMIZE
) -> BatchSummary:
    """Sample statistics over the final best fitness of each run (``std`` uses ddof=1)."""
    if not results:
        raise EmptyBatch("cannot summarize an empty batch")
    finals = [float(r.best_fitness) for r in results]
    std = statistics.stdev(finals) if len(finals) > 1 else 0.0
    lo, hi = min(finals), max(finals)
    best, worst = (lo, hi) if direction is Direction.MINIMIZE else (hi, lo)
    return BatchSummary(
        finals=finals,
        mean=statistics.fmean(finals),
        std=std,
        median=statistics.median(finals),
        best=best,
        worst=worst,
        evaluations=[int(r.evaluations) for r in results],
    )


def summary_json(
    summary: BatchSummary,
    objective: str,
    config: Dict[str, Any],
    seeds: Sequence[Optional[int]],
    extra: Optional[Dict[str, Any]] = None,
) -> str:
    doc = {
        "objective": objective,
        "config": config,
        "seeds": list(seeds),
        "finals": summary.finals,
        "mean": summary.mean,
        "std": summary.std,
        "median": summary.median,
        "best": summary.best,
        "worst": summary.worst,
        "evaluations": summary.evaluations,
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


RUNS_HEADER = ["seed", "initial_best_fitness", "final_best_fitness", "evaluations"]


def write_runs_csv(seeds: Sequence[Optional[int]], results: Sequence[RunResult], destination) -> Path:
    """Per-run finals, one row per seed; the raw input for re-deriving batch statistics."""
    path = Path(destination)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RUNS_HEADER)
        for seed, res in zip(seeds, results):
            writer.writerow(
                ["" if seed is None else seed, repr(float(res.initial_best_fitness)),
                 repr(float(res.best_fitness)), res.evaluations]
            )
    return path
