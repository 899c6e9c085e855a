"""Deterministic replay of the published two-iteration, three-bee worked example.

The scenario: sphere objective on the 2-D box [-100, 100]^2, three bees,
two iterations, ``wf = 0``, minimization, random numbers taken from the fixed
table, bees placed with ``x1 = r * upper`` and ``x2 = r * lower``.

The printed example is not fully consistent with its own update rules, so
every printed number is checked and classified:

``match``
    the engine reproduces it within the printed rounding.
``equation-inconsistent``
    no application of the pace rules yields it; listed, not enforced.

With ``paper_literal_bee3`` the third bee of iteration 2 follows the printed
narrative instead of the rules: ``fw = 1`` but the pace is taken as
``-(x - x*) * fw`` (zero, since that bee *is* the best), and the zero pace
vector itself is what gets evaluated, which is how the narrative arrives at a
declared best of 0 at (0, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .engine import Proposal, Swarm, propose_fresh, run
from .objectives import sphere
from .trace import EvalRecord, trace_to_csv
from .types import (
    BoundaryPolicy,
    Branch,
    Decision,
    Direction,
    FdoConfig,
    InitRule,
    RandomMode,
    RunResult,
    ScoutBee,
    SearchSpace,
)

Array = np.ndarray


@dataclass(frozen=True)
class ReplayScenario:
    paper_literal_bee3: bool = False
    space: SearchSpace = field(default_factory=lambda: SearchSpace(2, -100.0, 100.0))
    config: FdoConfig = FdoConfig(
        population=3,
        iterations=2,
        wf=0.0,
        direction=Direction.MINIMIZE,
        random_mode=RandomMode.TABLE,
        boundary_policy=BoundaryPolicy.NONE,
    )
    init_rule: InitRule = InitRule.PAPER_ALTERNATING


def propose_paper_literal(
    bee: ScoutBee, swarm: Swarm, fw: float, r: Array, space: SearchSpace, config: FdoConfig
) -> Proposal:
    if fw != 1.0:
        return propose_fresh(bee, swarm, fw, r, space, config)
    pace = (bee.position - swarm.best_position) * fw * -1.0
    branches = (Branch.TOWARD_BEST,) * space.dimension
    # the narrative scores the pace vector, not position + pace
    return pace, branches, pace.copy()


def run_replay(paper_literal_bee3: bool = False) -> RunResult:
    scenario = ReplayScenario(paper_literal_bee3)
    propose = propose_paper_literal if paper_literal_bee3 else propose_fresh
    result = run(
        scenario.space,
        sphere,
        scenario.config,
        init_rule=scenario.init_rule,
        propose=propose,
        objective_name="sphere",
    )
    result.trace.metadata["paper_literal_bee3"] = paper_literal_bee3
    return result


# --- printed values and the rounding chain used to print them -------------------

PRINTED = {
    "init_positions": ((-49.0, 47.0), (44.0, 78.0), (-22.0, 52.0)),
    "init_fitness": (4610.0, 8020.0, 3188.0),
    "iter1_best": (3188.0, (-22.0, 52.0)),
    "iter1_best_alt_position": (-11.0, 52.0),
    "r": ((0.82, -0.22), (-0.81, 0.82), (-0.94, -0.29)),
    "fw": (0.69, 0.397, 1.0),
    "bee1_pace": (-33.82, 3.45),
    "bee1_position": (-82.88, 50.45),
    "bee1_fitness": 9414.0,
    "bee2_pace": (-26.20, 10.32),
    "bee2_position": (17.8, 88.32),
    "bee2_fitness": 8117.26,
    "bee3_pace": (0.0, 0.0),
    "declared_best": (0.0, (0.0, 0.0)),
}


def truncate(value: float, decimals: int) -> float:
    scale = 10.0**decimals
    return math.trunc(value * scale) / scale


def printed_chain(
    x: Sequence[float], xstar: Sequence[float], fw_printed: float, r: Sequence[float]
) -> Tuple[Array, Array, float]:
    """Redo a move the way the text does: printed ``fw``, paces rounded to 2 decimals."""
    x = np.asarray(x, dtype=float)
    xstar = np.asarray(xstar, dtype=float)
    pace = np.array(
        [
            round((xi - si) * fw_printed * (-1.0 if ri < 0 else 1.0), 2)
            for xi, si, ri in zip(x, xstar, r)
        ]
    )
    pos = x + pace
    return pace, pos, float(np.sum(pos**2))


# --- checks ----------------------------------------------------------------------


@dataclass
class Check:
    quantity: str
    engine: object
    printed: object
    tolerance: float
    rule: str
    status: str  # "match", "mismatch", "equation-inconsistent"
    note: str = ""

    @property
    def enforced(self) -> bool:
        return self.status != "equation-inconsistent"


def _close(a, b, tol: float) -> bool:
    return bool(np.all(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) <= tol))


def _records(result: RunResult, iteration: int, bee: int) -> List[EvalRecord]:
    return [r for r in result.trace.records if r.iteration == iteration and r.bee == bee]


def _check(quantity, engine, printed, tol, rule, note="") -> Check:
    return Check(quantity, engine, printed, tol, rule, "match" if _close(engine, printed, tol) else "mismatch", note)


def _inconsistent(quantity, engine, printed, rule, note) -> Check:
    return Check(quantity, engine, printed, 0.0, rule, "equation-inconsistent", note)


def fixture_checks(result: RunResult, paper_literal_bee3: bool = False) -> List[Check]:
    checks: List[Check] = []
    init = _records(result, 1, 1) + _records(result, 1, 2) + _records(result, 1, 3)
    for i, rec in enumerate(init):
        checks.append(_check(f"iteration 1 bee {i + 1} position", rec.position,
                             PRINTED["init_positions"][i], 0.0, "x1 = r * upper, x2 = r * lower"))
        checks.append(_check(f"iteration 1 bee {i + 1} fitness", rec.fitness,
                             PRINTED["init_fitness"][i], 0.0, "F(x) = sum x_i^2"))
    _, best1, pos1 = result.trace.best_history[0]
    checks.append(_check("iteration 1 global best fitness", best1, PRINTED["iter1_best"][0], 0.0, "lowest fitness"))
    checks.append(_check("iteration 1 global best position", pos1, PRINTED["iter1_best"][1], 0.0, "lowest fitness"))
    checks.append(_inconsistent(
        "iteration 1 global best position (alternate printing)", pos1,
        PRINTED["iter1_best_alt_position"], "lowest fitness",
        "one printing gives [-11, 52]; bee 3 sits at (-22, 52)",
    ))

    fresh = [_records(result, 2, b)[0] for b in (1, 2, 3)]
    for b, rec in enumerate(fresh):
        checks.append(_check(f"iteration 2 bee {b + 1} r", rec.r, PRINTED["r"][b], 0.0,
                             "table cells, row-major, one per dimension"))

    # bee 1: fw and the second coordinate agree; the first coordinate does not
    b1 = fresh[0]
    checks.append(_check("iteration 2 bee 1 fw (2 decimals)", truncate(b1.fw, 2), PRINTED["fw"][0], 0.0,
                         "fw = abs(best / current)"))
    chain_pace, chain_pos, chain_fit = printed_chain(init[0].position, pos1, PRINTED["fw"][0], b1.r)
    checks.append(_check("iteration 2 bee 1 pace x2", b1.pace[1], PRINTED["bee1_pace"][1], 0.01,
                         "pace = -(x - x*) * fw when r < 0"))
    checks.append(_check("iteration 2 bee 1 position x2", b1.position[1], PRINTED["bee1_position"][1], 0.01,
                         "x' = x + pace"))
    checks.append(_inconsistent("iteration 2 bee 1 pace x1", b1.pace[0], PRINTED["bee1_pace"][0],
                                "pace = (x - x*) * fw when r >= 0",
                                f"rule gives {chain_pace[0]:.2f} with fw 0.69; printed value is about -49 * 0.69 = -33.81"))
    checks.append(_inconsistent("iteration 2 bee 1 position x1", b1.position[0], PRINTED["bee1_position"][0],
                                "x' = x + pace", "-49 + (-33.82) is -82.82, not -82.88"))
    checks.append(_inconsistent("iteration 2 bee 1 candidate fitness", b1.fitness, PRINTED["bee1_fitness"],
                                "F(x) = sum x_i^2",
                                f"follows from the inconsistent x1; printed-rounding chain gives {chain_fit:.2f}"))

    # bee 2: fully reproducible once the printed fw truncation is mimicked
    b2 = fresh[1]
    checks.append(_check("iteration 2 bee 2 fw", b2.fw, 0.3975, 0.0005, "fw = abs(best / current)"))
    checks.append(_check("iteration 2 bee 2 fw (3 decimals)", truncate(b2.fw, 3), PRINTED["fw"][1], 0.0,
                         "fw = abs(best / current)"))
    pace2, pos2, fit2 = printed_chain(init[1].position, pos1, truncate(b2.fw, 3), b2.r)
    checks.append(_check("iteration 2 bee 2 pace (printed fw)", pace2, PRINTED["bee2_pace"], 0.01,
                         "pace = -(x - x*) * fw if r < 0 else (x - x*) * fw"))
    checks.append(_check("iteration 2 bee 2 position (printed fw)", pos2, PRINTED["bee2_position"], 0.01,
                         "x' = x + pace"))
    checks.append(_check("iteration 2 bee 2 candidate fitness (printed fw)", fit2, PRINTED["bee2_fitness"], 0.01,
                         "F(x) = sum x_i^2"))

    b3 = fresh[2]
    checks.append(_check("iteration 2 bee 3 fw", b3.fw, PRINTED["fw"][2], 0.0, "fw = abs(best / current)"))
    final_best, final_pos = result.best_fitness, result.best_position
    if paper_literal_bee3:
        checks.append(_check("iteration 2 bee 3 pace (literal)", b3.pace, PRINTED["bee3_pace"], 0.0,
                             "pace = -(x - x*) * fw, applied at fw = 1"))
        checks.append(_check("declared global best fitness", final_best, PRINTED["declared_best"][0], 0.0,
                             "narrative evaluates the pace vector"))
        checks.append(_check("declared global best position", final_pos, PRINTED["declared_best"][1], 0.0,
                             "narrative evaluates the pace vector"))
    else:
        oracle = np.array([x * r for x, r in zip(init[2].position, b3.r)])
        oracle_pos = init[2].position + oracle
        checks.append(_check("iteration 2 bee 3 pace", b3.pace, oracle, 1e-12, "pace = x * r when fw = 1"))
        checks.append(_check("iteration 2 bee 3 candidate fitness", b3.fitness,
                             float(np.sum(oracle_pos**2)), 1e-9, "F(x) = sum x_i^2"))
        checks.append(Check("iteration 2 bee 3 improves on 3188", b3.fitness, "< 3188", 0.0,
                            "strict improvement", "match" if b3.fitness < 3188.0 else "mismatch"))
        checks.append(_inconsistent("iteration 2 bee 3 pace", b3.pace, PRINTED["bee3_pace"],
                                    "pace = x * r when fw = 1",
                                    "text applies -(x - x*) * fw although fw = 1"))
        checks.append(_inconsistent("declared global best", (final_best, tuple(final_pos)),
                                    PRINTED["declared_best"], "x' = x + pace",
                                    "a zero pace from (-22, 52) cannot reach (0, 0)"))
    return checks


def _show(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, tuple) and len(value) == 2 and np.ndim(value[1]) == 1:
        return f"{_show(value[0])} at {_show(value[1])}"
    arr = np.asarray(value, dtype=float) + 0.0  # no "-0" in the report
    if arr.ndim == 0:
        return f"{float(arr):.6g}"
    return "(" + ", ".join(f"{v:.6g}" for v in arr) + ")"


def discrepancy_report(checks: Sequence[Check], result: RunResult, paper_literal_bee3: bool = False) -> str:
    lines = [
        "# Worked-example replay: engine vs printed values",
        "",
        f"- mode: {'paper-literal third bee' if paper_literal_bee3 else 'rule-faithful'}",
        f"- iteration 1 fitnesses: {', '.join(_show(f) for f in (r.fitness for r in result.trace.iteration_records(1)))}",
        f"- final global best: {_show(result.best_fitness)} at {_show(result.best_position)}",
        f"- enforced checks passed: {sum(c.status == 'match' for c in checks)}/{sum(c.enforced for c in checks)}",
        f"- equation-inconsistent printed values: {sum(not c.enforced for c in checks)}",
        "",
        "| quantity | engine | printed | tolerance | governing rule | status | note |",
        "|---|---|---|---|---|---|---|",
    ]
    for c in checks:
        tol = "n/a" if not c.enforced else f"{c.tolerance:g}"
        lines.append(
            f"| {c.quantity} | {_show(c.engine)} | {_show(c.printed)} | {tol} | {c.rule} | {c.status} | {c.note} |"
        )
    lines.append("")
    return "\n".join(lines)


@dataclass
class ReplayOutput:
    result: RunResult
    checks: List[Check]
    trace_csv: str
    report: str

    @property
    def ok(self) -> bool:
        return all(c.status == "match" for c in self.checks if c.enforced)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.enforced and c.status != "match"]


def replay(paper_literal_bee3: bool = False) -> ReplayOutput:
    result = run_replay(paper_literal_bee3)
    checks = fixture_checks(result, paper_literal_bee3)
    return ReplayOutput(result, checks, trace_to_csv(result.trace),
                        discrepancy_report(checks, result, paper_literal_bee3))
