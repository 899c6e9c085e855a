"""Shared value types: search space, scout bee, run configuration and result."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, InvalidConfig, InvertedBounds

if TYPE_CHECKING:
    from .trace import RunTrace

Array = np.ndarray


class Direction(enum.Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"

    def better(self, a: float, b: float) -> bool:
        """Strict improvement of ``a`` over ``b``; ties are not improvements."""
        return a < b if self is Direction.MINIMIZE else a > b


class BoundaryPolicy(enum.Enum):
    CLAMP = "clamp"
    NONE = "none"


class RandomMode(enum.Enum):
    TABLE = "table"
    UNIFORM = "uniform"
    LEVY = "levy"


class InitRule(enum.Enum):
    UNIFORM_BOX = "uniform-box"
    PAPER_ALTERNATING = "paper-alternating"


def _as_bounds(value, dimension: int) -> Array:
    if np.ndim(value) == 0:
        return np.full(max(int(dimension), 0), float(value))
    return np.array(value, dtype=float).ravel()


@dataclass(frozen=True)
class SearchSpace:
    """Axis-aligned feasible box.

    Scalar bounds are broadcast to every dimension.
    """

    dimension: int
    lower: Array
    upper: Array

    def __init__(
        self,
        dimension: int,
        lower: Union[float, Sequence[float]],
        upper: Union[float, Sequence[float]],
    ):
        lo = _as_bounds(lower, dimension)
        hi = _as_bounds(upper, dimension)
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def box(cls, dimension: int, low: float, high: float) -> "SearchSpace":
        return cls(dimension, low, high)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SearchSpace):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )

    __hash__ = None  # type: ignore[assignment]


def validate_space(space: SearchSpace) -> None:
    """Raise if ``space`` is malformed; return ``None`` when it is usable."""
    if space.dimension < 1:
        raise DimensionMismatch(f"dimension must be >= 1, got {space.dimension}")
    if space.lower.shape != (space.dimension,) or space.upper.shape != (space.dimension,):
        raise DimensionMismatch(
            f"bounds must have {space.dimension} entries, "
            f"got lower={space.lower.size} upper={space.upper.size}"
        )
    bad = np.flatnonzero(~(space.lower < space.upper))
    if bad.size:
        d = int(bad[0])
        raise InvertedBounds(
            f"lower[{d}]={space.lower[d]} is not below upper[{d}]={space.upper[d]}"
        )


def clamp_position(position: Array, space: SearchSpace, policy: BoundaryPolicy) -> Array:
    if policy is BoundaryPolicy.NONE:
        return np.array(position, dtype=float)
    return np.minimum(np.maximum(position, space.lower), space.upper)


@dataclass
class ScoutBee:
    position: Array
    pace: Array
    fitness: float

    def copy(self) -> "ScoutBee":
        return ScoutBee(self.position.copy(), self.pace.copy(), self.fitness)


@dataclass(frozen=True)
class FdoConfig:
    """Run parameters.

    ``seed`` is ignored in table-replay mode. ``levy_beta`` only matters in
    Levy mode.
    """

    population: int = 30
    iterations: int = 500
    wf: float = 0.0
    direction: Direction = Direction.MINIMIZE
    random_mode: RandomMode = RandomMode.UNIFORM
    seed: Optional[int] = None
    boundary_policy: BoundaryPolicy = BoundaryPolicy.CLAMP
    levy_beta: float = 1.5

    def validate(self) -> None:
        if int(self.population) != self.population or self.population < 1:
            raise InvalidConfig(f"population must be a positive integer, got {self.population}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise InvalidConfig(f"iterations must be a positive integer, got {self.iterations}")
        if self.wf not in (0, 1):
            raise InvalidConfig(f"wf must be 0 or 1, got {self.wf}")
        if not 0 < self.levy_beta <= 2:
            raise InvalidConfig(f"levy_beta must lie in (0, 2], got {self.levy_beta}")

    def as_dict(self) -> dict:
        return {
            "population": self.population,
            "iterations": self.iterations,
            "wf": self.wf,
            "direction": self.direction.value,
            "random_mode": self.random_mode.value,
            "seed": self.seed,
            "boundary_policy": self.boundary_policy.value,
            "levy_beta": self.levy_beta,
        }


@dataclass
class RunResult:
    best_position: Array
    best_fitness: float
    trace: "RunTrace"
    evaluations: int
    initial_best_fitness: float = field(default=float("nan"))


class Branch(enum.Enum):
    """Which pace formula produced a coordinate's move.

    ``SCALED_RANDOM``: ``x * r``, used when the fitness weight is degenerate
    (``fw <= 0``, ``fw >= 1``) or the bee's fitness is zero.
    ``TOWARD_BEST``: ``-(x - x*) * fw`` when ``r < 0``.
    ``AWAY_FROM_BEST``: ``(x - x*) * fw`` when ``r >= 0``.
    """

    SCALED_RANDOM = "scaled-random"
    TOWARD_BEST = "toward-best"
    AWAY_FROM_BEST = "away-from-best"
    SAVED = "saved-pace"


BRANCH_CODES = (Branch.SCALED_RANDOM, Branch.TOWARD_BEST, Branch.AWAY_FROM_BEST)


class Decision(enum.Enum):
    ACCEPTED_FRESH = "accepted-fresh"
    ACCEPTED_SAVED = "accepted-saved"
    STAYED = "stayed"
    # per-evaluation labels used only in trace records
    REJECTED_FRESH = "rejected-fresh"
    INIT = "init"
