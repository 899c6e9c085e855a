"""Objective functions: sphere, standard benchmarks and a cluster-head cost.

Every objective is wrapped in :class:`Objective`, which carries the suggested
box, the optimization direction and, where one exists, a known optimum for
test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import kernels
from .errors import InvalidConfig, UnknownObjective
from .types import Direction, SearchSpace

Array = np.ndarray


@dataclass(frozen=True)
class Objective:
    name: str
    func: Callable[[Array], float]
    lower: float = -100.0
    upper: float = 100.0
    direction: Direction = Direction.MINIMIZE
    min_dimension: int = 1
    fixed_dimension: Optional[int] = None
    optimum: Optional[Callable[[int], Tuple[Array, float]]] = None
    bounds: Optional[Tuple[Array, Array]] = None

    def __call__(self, x: Array) -> float:
        return self.func(x)

    def space(self, dimension: Optional[int] = None) -> SearchSpace:
        dim = self.check_dimension(dimension)
        if self.bounds is not None:
            return SearchSpace(dim, self.bounds[0], self.bounds[1])
        return SearchSpace(dim, self.lower, self.upper)

    def check_dimension(self, dimension: Optional[int]) -> int:
        if self.fixed_dimension is not None:
            if dimension not in (None, self.fixed_dimension):
                raise InvalidConfig(
                    f"{self.name} is defined for dimension {self.fixed_dimension} only"
                )
            return self.fixed_dimension
        dim = 2 if dimension is None else int(dimension)
        if dim < self.min_dimension:
            raise InvalidConfig(f"{self.name} needs dimension >= {self.min_dimension}")
        return dim

    def known_optimum(self, dimension: Optional[int] = None) -> Optional[Tuple[Array, float]]:
        if self.optimum is None:
            return None
        return self.optimum(self.check_dimension(dimension))


def sphere(x: Array) -> float:
    return kernels.sphere(np.ascontiguousarray(x, dtype=float))


def rosenbrock(x: Array) -> float:
    x = np.ascontiguousarray(x, dtype=float)
    if x.size < 2:
        raise InvalidConfig("rosenbrock needs dimension >= 2")
    return kernels.rosenbrock(x)


def rastrigin(x: Array) -> float:
    return kernels.rastrigin(np.ascontiguousarray(x, dtype=float))


def ackley(x: Array) -> float:
    return kernels.ackley(np.ascontiguousarray(x, dtype=float))


def negated_sphere(x: Array) -> float:
    """``100 * D - sum(x**2)``: positive on the default box, maximum at the origin."""
    x = np.ascontiguousarray(x, dtype=float)
    return 100.0 * x.size - kernels.sphere(x)


def _at(value: float, fill: float = 0.0):
    return lambda d: (np.full(d, fill), value)


CATALOG: Dict[str, Objective] = {
    "sphere": Objective("sphere", sphere, optimum=_at(0.0)),
    "rosenbrock": Objective(
        "rosenbrock", rosenbrock, -30.0, 30.0, min_dimension=2, optimum=_at(0.0, 1.0)
    ),
    "rastrigin": Objective("rastrigin", rastrigin, -5.12, 5.12, optimum=_at(0.0)),
    "ackley": Objective("ackley", ackley, -32.768, 32.768, optimum=_at(0.0)),
    "negated-sphere": Objective(
        "negated-sphere",
        negated_sphere,
        -10.0,
        10.0,
        direction=Direction.MAXIMIZE,
        optimum=lambda d: (np.zeros(d), 100.0 * d),
    ),
}


def get_objective(name: str, scenario: Optional["ClusterScenario"] = None) -> Objective:
    if name == "cluster-head":
        if scenario is None:
            raise InvalidConfig("cluster-head needs a scenario file")
        return cluster_objective(scenario)
    try:
        return CATALOG[name]
    except KeyError:
        known = ", ".join(list_objectives())
        raise UnknownObjective(f"unknown objective {name!r}; choose from {known}") from None


def benchmark(name: str, position: Array) -> float:
    return get_objective(name)(np.asarray(position, dtype=float))


def list_objectives() -> List[str]:
    return sorted(CATALOG) + ["cluster-head"]


# --- cluster-head selection -------------------------------------------------

ENERGY_EPS = 1e-6


@dataclass(frozen=True)
class ClusterScenario:
    """Sensor nodes in the plane and the number of cluster heads to place.

    ``energy_weight`` trades coverage (squared distance from every node to its
    nearest head) against placing heads next to drained nodes.
    """

    node_positions: Array
    node_energy: Array
    head_count: int
    energy_weight: float = 0.0
    source: str = field(default="", compare=False)

    def __post_init__(self):
        pos = np.asarray(self.node_positions, dtype=float).reshape(-1, 2)
        energy = np.asarray(self.node_energy, dtype=float).ravel()
        object.__setattr__(self, "node_positions", pos)
        object.__setattr__(self, "node_energy", energy)
        if len(pos) < 1:
            raise InvalidConfig("cluster scenario needs at least one node")
        if len(energy) != len(pos):
            raise InvalidConfig("one energy value per node is required")
        if np.any(energy < 0):
            raise InvalidConfig("node energy must be nonnegative")
        if not 1 <= int(self.head_count) <= len(pos):
            raise InvalidConfig(
                f"head_count must lie in [1, {len(pos)}], got {self.head_count}"
            )
        if self.energy_weight < 0:
            raise InvalidConfig("energy_weight must be nonnegative")

    @property
    def dimension(self) -> int:
        return 2 * int(self.head_count)

    def bounds(self) -> Tuple[Array, Array]:
        """Node bounding box, padded so that collinear layouts stay non-degenerate."""
        lo = self.node_positions.min(axis=0)
        hi = self.node_positions.max(axis=0)
        pad = np.maximum(1.0, 0.1 * (hi - lo))
        return np.tile(lo - pad, self.head_count), np.tile(hi + pad, self.head_count)


def cluster_head_cost(scenario: ClusterScenario, head_positions_flat: Array) -> float:
    heads = np.asarray(head_positions_flat, dtype=float).reshape(-1, 2)
    if heads.shape[0] != scenario.head_count:
        raise InvalidConfig(
            f"expected {2 * scenario.head_count} coordinates, got {heads.size}"
        )
    # (nodes, heads) squared distances
    d2 = ((scenario.node_positions[:, None, :] - heads[None, :, :]) ** 2).sum(axis=2)
    coverage = float(d2.min(axis=1).sum())
    if scenario.energy_weight == 0:
        return coverage
    nearest_node = d2.argmin(axis=0)
    penalty = float(np.sum(1.0 / (ENERGY_EPS + scenario.node_energy[nearest_node])))
    return coverage + scenario.energy_weight * penalty


def cluster_objective(scenario: ClusterScenario) -> Objective:
    lo, hi = scenario.bounds()
    return Objective(
        "cluster-head",
        lambda x: cluster_head_cost(scenario, x),
        fixed_dimension=scenario.dimension,
        bounds=(lo, hi),
    )


def load_cluster_scenario(path) -> ClusterScenario:
    """Parse ``k lambda`` on the first line, then ``x y energy`` per node.

    Blank lines and ``#`` comments are ignored.
    """
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidConfig(f"{path}: empty scenario file")
    try:
        k_text, lam_text = lines[0].split()
        head_count, weight = int(k_text), float(lam_text)
        nodes = [tuple(float(v) for v in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise InvalidConfig(f"{path}: malformed scenario ({exc})") from None
    if any(len(n) != 3 for n in nodes):
        raise InvalidConfig(f"{path}: node lines must read 'x y energy'")
    arr = np.array(nodes, dtype=float).reshape(-1, 3)
    return ClusterScenario(arr[:, :2], arr[:, 2], head_count, weight, source=str(path))
