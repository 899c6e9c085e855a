"""Fitness Dependent Optimizer (FDO) for black-box minimization and maximization."""

from .engine import (
    StepOutcome,
    Swarm,
    candidate_position,
    fitness_weight,
    init_swarm,
    pace_for_dimension,
    run,
    step_bee,
)
from .errors import (
    DimensionMismatch,
    EmptyBatch,
    FdoError,
    InvalidConfig,
    InvertedBounds,
    NonFiniteFitness,
    PaperAlternatingRequiresTwoDims,
    TableExhausted,
    UnknownObjective,
)
from .kernels import BACKEND
from .objectives import ClusterScenario, Objective, cluster_head_cost, get_objective, sphere
from .replay import run_replay
from .rng import LevySource, TableSource, UniformSource, make_source
from .trace import BatchSummary, RunTrace, read_trace_csv, summarize_batch, write_trace_csv
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
    clamp_position,
    validate_space,
)

__version__ = "0.1.0"
