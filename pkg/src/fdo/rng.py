"""Random scalar sources for the pace rule and swarm initialization.

Three interchangeable sources share one small interface:

``TableSource``
    Replays the fixed 50-row table of the worked example, row-major,
    first parameter before the second, each cell used at most once.
``UniformSource``
    Seeded draws uniform on [-1, 1].
``LevySource``
    Seeded Mantegna steps with stability exponent ``beta``. Steps are not
    clipped, so the sign test of the pace rule sees the raw heavy-tailed value.

The published table's caption announces fifteen sequences but the table body
lists fifty numbered rows; all fifty are kept.
"""

from __future__ import annotations

import csv
import math
from importlib import resources
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import TableExhausted
from .types import FdoConfig, RandomMode

# (param1, param2) per row, rows 1..50, copied cell for cell.
REPLAY_TABLE: Tuple[Tuple[float, float], ...] = (
    (-0.49, -0.47), (0.44, -0.78), (-0.22, -0.52), (0.82, -0.22), (-0.81, 0.82),
    (-0.94, -0.29), (-0.10, 0.95), (0.12, -0.96), (-0.89, 0.08), (0.68, -0.06),
    (-0.09, 0.92), (0.60, -0.45), (-0.15, 0.40), (0.36, -0.47), (-0.25, 0.61),
    (0.17, -0.55), (-0.88, -0.64), (0.13, 0.94), (-0.25, -0.35), (0.08, 0.63),
    (0.34, -0.48), (-0.72, 0.84), (0.82, -0.15), (-0.40, 0.67), (0.77, -0.93),
    (-0.97, 0.62), (0.80, -0.84), (-0.28, 0.63), (0.38, -0.55), (-0.94, -0.68),
    (0.64, 0.41), (-0.19, -0.49), (0.48, 0.31), (-0.04, -0.83), (0.58, 0.31),
    (-0.10, 0.27), (0.15, -0.26), (-0.62, 0.38), (0.42, -0.40), (0.72, 0.52),
    (0.77, -0.93), (0.48, 0.31), (-0.19, 0.53), (0.58, 0.71), (-0.18, 0.27),
    (0.66, -0.26), (0.58, 0.64), (-0.12, 0.37), (0.15, -0.26), (-0.98, -0.65),
)


def load_table_csv(path=None) -> Tuple[Tuple[float, float], ...]:
    """Read the audit copy of the replay table (packaged CSV by default)."""
    if path is None:
        text = resources.files("fdo").joinpath("data/replay_table.csv").read_text()
        rows = list(csv.DictReader(text.splitlines()))
    else:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    return tuple((float(r["param1"]), float(r["param2"])) for r in rows)


def mantegna_sigma(beta: float) -> float:
    num = math.gamma(1 + beta) * math.sin(math.pi * beta / 2)
    den = math.gamma((1 + beta) / 2) * beta * 2 ** ((beta - 1) / 2)
    return (num / den) ** (1 / beta)


class RandomSource:
    """Common interface; ``draws`` counts every scalar handed out."""

    descriptor = "abstract"

    def __init__(self):
        self.draws = 0

    def next_r(self) -> float:
        raise NotImplementedError

    def next_init(self) -> float:
        """A draw in [-1, 1] for placing bees at start-up."""
        return self.next_r()

    def r_vector(self, n: int) -> np.ndarray:
        return np.array([self.next_r() for _ in range(n)], dtype=float)


class TableSource(RandomSource):
    def __init__(self, table: Optional[Sequence[Tuple[float, float]]] = None):
        super().__init__()
        table = REPLAY_TABLE if table is None else tuple(tuple(row) for row in table)
        self._cells = [float(c) for row in table for c in row]
        self.rows = len(table)
        self.cursor = 0
        self.descriptor = f"table({self.rows} rows)"

    @property
    def remaining(self) -> int:
        return len(self._cells) - self.cursor

    def next_r(self) -> float:
        if self.cursor >= len(self._cells):
            raise TableExhausted(
                f"replay table exhausted after {len(self._cells)} draws"
            )
        value = self._cells[self.cursor]
        self.cursor += 1
        self.draws += 1
        return value


class UniformSource(RandomSource):
    def __init__(self, seed: Optional[int] = None):
        super().__init__()
        self.seed = seed
        self._rng = np.random.default_rng(seed)
        self.descriptor = f"uniform(seed={seed})"

    def next_r(self) -> float:
        self.draws += 1
        return float(self._rng.uniform(-1.0, 1.0))

    def r_vector(self, n: int) -> np.ndarray:
        self.draws += n
        return self._rng.uniform(-1.0, 1.0, size=n)


class LevySource(RandomSource):
    """Mantegna steps ``u / |v|**(1/beta)``, ``u ~ N(0, sigma_u^2)``, ``v ~ N(0, 1)``.

    Initialization draws come from the same generator but stay uniform on
    [-1, 1]; heavy tails are only wanted for the pace rule.
    """

    def __init__(self, seed: Optional[int] = None, beta: float = 1.5):
        super().__init__()
        self.seed = seed
        self.beta = float(beta)
        self.sigma_u = mantegna_sigma(self.beta)
        self._rng = np.random.default_rng(seed)
        self.descriptor = f"levy(seed={seed}, beta={self.beta})"

    def levy_step(self) -> float:
        u = self._rng.normal(0.0, self.sigma_u)
        v = self._rng.normal(0.0, 1.0)
        self.draws += 1
        return float(u / abs(v) ** (1.0 / self.beta))

    def levy_steps(self, n: int) -> np.ndarray:
        """``n`` steps at once; same stream layout as ``n`` calls to ``levy_step``."""
        return np.array([self.levy_step() for _ in range(n)], dtype=float)

    next_r = levy_step

    def next_init(self) -> float:
        self.draws += 1
        return float(self._rng.uniform(-1.0, 1.0))


def make_source(config: FdoConfig) -> RandomSource:
    if config.random_mode is RandomMode.TABLE:
        return TableSource()
    if config.random_mode is RandomMode.LEVY:
        return LevySource(config.seed, config.levy_beta)
    return UniformSource(config.seed)
