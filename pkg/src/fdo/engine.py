"""Fitness Dependent Optimizer.

Each scout bee holds a position, the last pace that improved it, and its
fitness. Per step a bee draws one ``r`` per dimension, computes a single
fitness weight ``fw`` against the global best, and builds a fresh pace
coordinate by coordinate. The fresh move is tried first, then a move along
the saved pace, and if neither strictly improves the bee stays put.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import NonFiniteFitness, PaperAlternatingRequiresTwoDims
from .rng import RandomSource, make_source
from .trace import EvalRecord, RunTrace
from .types import (
    BRANCH_CODES,
    BoundaryPolicy,
    Branch,
    Decision,
    Direction,
    FdoConfig,
    InitRule,
    RunResult,
    ScoutBee,
    SearchSpace,
    clamp_position,
    validate_space,
)

Array = np.ndarray
Objective = Callable[[Array], float]


@dataclass
class Swarm:
    bees: List[ScoutBee]
    best_position: Array
    best_fitness: float
    direction: Direction = Direction.MINIMIZE
    iteration: int = 1

    def refresh_best(self, bee: ScoutBee) -> bool:
        if self.direction.better(bee.fitness, self.best_fitness):
            self.best_fitness = bee.fitness
            self.best_position = bee.position.copy()
            return True
        return False


@dataclass
class StepOutcome:
    bee_index: int  # 0-based slot in the swarm
    prior_fitness: float
    fw_used: float
    r_used: Array
    pace: Array
    branches: Tuple[Branch, ...]
    candidate_position: Array
    candidate_fitness: float
    decision: Decision
    saved_candidate_position: Optional[Array] = None
    saved_candidate_fitness: Optional[float] = None


class Evaluator:
    """Counts calls and rejects non-finite fitness values."""

    def __init__(self, objective: Objective):
        self.objective = objective
        self.count = 0

    def __call__(self, x: Array) -> float:
        self.count += 1
        value = float(self.objective(x))
        if not math.isfinite(value):
            raise NonFiniteFitness(f"objective returned {value} at {np.asarray(x).tolist()}")
        return value


# --- pure rules -----------------------------------------------------------------


def fitness_weight(current_fitness: float, best_fitness: float, wf: float, direction: Direction) -> float:
    """``|best / current| - wf`` when minimizing, ``|current / best| - wf`` when maximizing.

    The caller must intercept a zero denominator.
    """
    if direction is Direction.MINIMIZE:
        return abs(best_fitness / current_fitness) - wf
    return abs(current_fitness / best_fitness) - wf


def weight_is_degenerate(fw: float, current_fitness: float) -> bool:
    return fw <= 0.0 or fw >= 1.0 or current_fitness == 0.0


def pace_for_dimension(x_d: float, xstar_d: float, fw: float, r: float, current_fitness: float) -> Tuple[float, Branch]:
    if weight_is_degenerate(fw, current_fitness):
        return x_d * r, Branch.SCALED_RANDOM
    if r < 0:
        return (x_d - xstar_d) * fw * -1.0, Branch.TOWARD_BEST
    return (x_d - xstar_d) * fw, Branch.AWAY_FROM_BEST


def guarded_weight(current_fitness: float, best_fitness: float, wf: float, direction: Direction) -> float:
    """Fitness weight with the divide-by-zero guard: a zero denominator yields 0."""
    denominator = current_fitness if direction is Direction.MINIMIZE else best_fitness
    if denominator == 0.0:
        return 0.0
    return fitness_weight(current_fitness, best_fitness, wf, direction)


def candidate_position(bee: ScoutBee, pace: Array, space: SearchSpace, policy: BoundaryPolicy) -> Array:
    return kernels.move(
        bee.position, np.ascontiguousarray(pace, dtype=float),
        space.lower, space.upper, policy is BoundaryPolicy.CLAMP,
    )


# --- swarm ----------------------------------------------------------------------


def _initial_position(
    space: SearchSpace, source: RandomSource, rule: InitRule
) -> Tuple[Array, Array]:
    draws = np.array([source.next_init() for _ in range(space.dimension)], dtype=float)
    if rule is InitRule.PAPER_ALTERNATING:
        # first coordinate scales the upper bound, second the lower bound
        pos = np.array([draws[0] * space.upper[0], draws[1] * space.lower[1]])
    else:
        pos = space.lower + (draws + 1.0) / 2.0 * (space.upper - space.lower)
    return pos, draws


def init_swarm(
    space: SearchSpace,
    config: FdoConfig,
    source: RandomSource,
    rule: InitRule = InitRule.UNIFORM_BOX,
    evaluate: Optional[Objective] = None,
    trace: Optional[RunTrace] = None,
    initial_positions: Optional[Sequence[Sequence[float]]] = None,
) -> Swarm:
    """Place and evaluate ``config.population`` bees; saved paces start at zero.

    Rows of ``initial_positions`` pin the first bees and consume no draws.
    """
    if rule is InitRule.PAPER_ALTERNATING and space.dimension != 2:
        raise PaperAlternatingRequiresTwoDims(
            f"paper-alternating initialization needs dimension 2, got {space.dimension}"
        )
    if evaluate is None:
        raise ValueError("init_swarm needs an objective")
    pinned = [] if initial_positions is None else [np.asarray(p, dtype=float) for p in initial_positions]
    bees: List[ScoutBee] = []
    swarm: Optional[Swarm] = None
    for i in range(config.population):
        if i < len(pinned):
            pos, draws = pinned[i].copy(), np.full(space.dimension, np.nan)
        else:
            pos, draws = _initial_position(space, source, rule)
        bee = ScoutBee(pos, np.zeros(space.dimension), evaluate(pos))
        bees.append(bee)
        if swarm is None:
            swarm = Swarm(bees, pos.copy(), bee.fitness, config.direction)
        else:
            swarm.refresh_best(bee)
        if trace is not None:
            trace.records.append(
                EvalRecord(1, i + 1, pos.copy(), bee.pace.copy(), draws, float("nan"),
                           None, bee.fitness, Decision.INIT, swarm.best_fitness)
            )
    assert swarm is not None
    return swarm


Proposal = Tuple[Array, Tuple[Branch, ...], Array]


def propose_fresh(
    bee: ScoutBee, swarm: Swarm, fw: float, r: Array, space: SearchSpace, config: FdoConfig
) -> Proposal:
    pace, codes = kernels.pace_vector(bee.position, swarm.best_position, fw, r, bee.fitness)
    branches = tuple(BRANCH_CODES[c] for c in codes)
    return pace, branches, candidate_position(bee, pace, space, config.boundary_policy)


def step_bee(
    index: int,
    swarm: Swarm,
    evaluate: Objective,
    space: SearchSpace,
    config: FdoConfig,
    source: RandomSource,
    trace: Optional[RunTrace] = None,
    propose: Callable[..., Proposal] = propose_fresh,
) -> StepOutcome:
    bee = swarm.bees[index]
    prior = bee.fitness
    better = config.direction.better
    r = np.ascontiguousarray(source.r_vector(space.dimension), dtype=float)
    fw = guarded_weight(prior, swarm.best_fitness, config.wf, config.direction)
    pace, branches, cand = propose(bee, swarm, fw, r, space, config)
    f_cand = evaluate(cand)

    def log(pos, pc, brs, fit, decision):
        if trace is not None:
            trace.records.append(
                EvalRecord(swarm.iteration, index + 1, pos.copy(), np.array(pc, dtype=float),
                           r.copy(), fw, brs, fit, decision, swarm.best_fitness)
            )

    outcome = StepOutcome(index, prior, fw, r, pace, branches, cand, f_cand, Decision.STAYED)
    if better(f_cand, prior):
        bee.position, bee.pace, bee.fitness = cand, np.array(pace, dtype=float), f_cand
        outcome.decision = Decision.ACCEPTED_FRESH
        swarm.refresh_best(bee)
        log(cand, pace, branches, f_cand, Decision.ACCEPTED_FRESH)
        return outcome
    log(cand, pace, branches, f_cand, Decision.REJECTED_FRESH)

    saved = candidate_position(bee, bee.pace, space, config.boundary_policy)
    f_saved = evaluate(saved)
    outcome.saved_candidate_position, outcome.saved_candidate_fitness = saved, f_saved
    saved_branches = (Branch.SAVED,) * space.dimension
    if better(f_saved, prior):
        bee.position, bee.fitness = saved, f_saved
        outcome.decision = Decision.ACCEPTED_SAVED
        swarm.refresh_best(bee)
        log(saved, bee.pace, saved_branches, f_saved, Decision.ACCEPTED_SAVED)
    else:
        log(saved, bee.pace, saved_branches, f_saved, Decision.STAYED)
    return outcome


def run(
    space: SearchSpace,
    objective: Objective,
    config: FdoConfig,
    *,
    source: Optional[RandomSource] = None,
    init_rule: InitRule = InitRule.UNIFORM_BOX,
    initial_positions: Optional[Sequence[Sequence[float]]] = None,
    propose: Callable[..., Proposal] = propose_fresh,
    objective_name: Optional[str] = None,
) -> RunResult:
    """Optimize ``objective`` over ``space``.

    Initialization counts as iteration 1; ``config.iterations - 1`` sweeps over
    the bees follow. The global best is refreshed after every bee.
    """
    validate_space(space)
    config.validate()
    if source is None:
        source = make_source(config)
    evaluate = Evaluator(objective)
    trace = RunTrace(space.dimension, config.direction)
    trace.metadata = {
        "objective": objective_name or getattr(objective, "name", getattr(objective, "__name__", "objective")),
        "config": config.as_dict(),
        "source": source.descriptor,
        "init_rule": init_rule.value,
        "backend": kernels.BACKEND,
    }

    swarm = init_swarm(space, config, source, init_rule, evaluate, trace, initial_positions)
    trace.best_history.append((1, swarm.best_fitness, swarm.best_position.copy()))
    initial_best = swarm.best_fitness
    for t in range(2, config.iterations + 1):
        swarm.iteration = t
        for i in range(len(swarm.bees)):
            trace.outcomes.append(
                step_bee(i, swarm, evaluate, space, config, source, trace, propose)
            )
        trace.best_history.append((t, swarm.best_fitness, swarm.best_position.copy()))

    return RunResult(
        best_position=swarm.best_position.copy(),
        best_fitness=swarm.best_fitness,
        trace=trace,
        evaluations=evaluate.count,
        initial_best_fitness=initial_best,
    )
