"""Exit criteria. Each test records one PASS/FAIL line shown at the end of the run.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import json
import math
import time
import warnings
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import stats

from conftest import ACCEPTANCE_LINES, FIXTURES
from fdo import kernels
from fdo.cli import main
from fdo.engine import pace_for_dimension, run
from fdo.objectives import get_objective, sphere
from fdo.replay import printed_chain, replay, truncate
from fdo.rng import LevySource, UniformSource
from fdo.types import BRANCH_CODES, Branch, Decision, Direction, FdoConfig, SearchSpace

import oracles

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(num, title):
    detail = {"text": ""}
    try:
        yield detail
    except BaseException:
        ACCEPTANCE_LINES.append((num, title, False, detail["text"] or "assertion failed"))
        raise
    ACCEPTANCE_LINES.append((num, title, True, detail["text"]))


def _fresh(result, bee):
    return next(r for r in result.trace.records if r.iteration == 2 and r.bee == bee)


def test_ac01_replay_iteration1():
    with criterion(1, "replay iteration 1 exact") as d:
        t0 = time.perf_counter()
        out = replay()
        elapsed = time.perf_counter() - t0
        fits = [r.fitness for r in out.result.trace.iteration_records(1)]
        _, best, pos = out.result.trace.best_history[0]
        d["text"] = f"fitness {fits}, best {best} at {pos.tolist()}, {elapsed:.3f}s"
        assert fits == [4610.0, 8020.0, 3188.0]
        assert best == 3188.0 and pos.tolist() == [-22.0, 52.0]
        assert elapsed < 1.0


def test_ac02_replay_bee2():
    with criterion(2, "replay iteration 2 bee 2") as d:
        rec = _fresh(replay().result, 2)
        fw_printed = truncate(rec.fw, 3)
        pace, pos, fit = printed_chain([44.0, 78.0], [-22.0, 52.0], fw_printed, rec.r)
        d["text"] = f"fw {rec.fw:.6f} ({fw_printed}), pace {pace.tolist()}, position {pos.tolist()}, fitness {fit:.4f}"
        assert abs(rec.fw - 0.3975) <= 0.0005 and fw_printed == 0.397
        assert np.all(np.abs(pace - [-26.20, 10.32]) <= 0.01)
        assert np.all(np.abs(pos - [17.8, 88.32]) <= 0.01)
        assert abs(fit - 8117.26) <= 0.01


def test_ac03_replay_bee1_oracle_and_report():
    with criterion(3, "replay iteration 2 bee 1 vs oracle") as d:
        out = replay()
        rec = _fresh(out.result, 1)
        fw, pace, cand, fit = oracles.minimize_move([-49.0, 47.0], [-22.0, 52.0], 3188.0, [0.82, -0.22])
        d["text"] = f"fw {rec.fw:.4f}, pace {np.round(rec.pace, 3).tolist()}, candidate fitness {rec.fitness:.2f} (quoted 6124.9 does not follow from the quoted candidate)"
        # 3188/4610 = 0.691540..., quoted as 0.6916 to four places
        assert rec.fw == pytest.approx(fw, rel=1e-15) and abs(rec.fw - 0.6916) <= 1e-4
        np.testing.assert_allclose(rec.pace, pace, rtol=1e-15)
        assert np.all(np.abs(rec.pace - [-18.67, 3.458]) <= 0.005)
        np.testing.assert_allclose(rec.position, cand, rtol=1e-15)
        assert np.all(np.abs(rec.position - [-67.67, 50.458]) <= 0.005)
        # the quoted candidate (-67.67, 50.458) itself scores 7125.2; see the strict xfail below
        assert rec.fitness == pytest.approx(fit, rel=1e-15)
        assert abs(rec.fitness - oracles.sphere([-67.67, 50.458])) <= 0.5
        flagged = {c.quantity: c.printed for c in out.checks if c.status == "equation-inconsistent"}
        assert flagged["iteration 2 bee 1 pace x1"] == -33.82
        assert flagged["iteration 2 bee 1 position x1"] == -82.88
        assert flagged["iteration 2 bee 1 candidate fitness"] == 9414.0
        for needle in ("-33.82", "-82.88", "9414"):
            assert f"| {needle} |" in out.report


def test_ac04_bee3_literal_and_faithful():
    with criterion(4, "third bee: literal flag and rule-faithful") as d:
        lit = replay(True).result
        faithful = replay(False).result
        rec = _fresh(faithful, 3)
        x0 = [-22.0, 52.0]
        oracle_pace = [oracles.pace(x, x, 1.0, r, 3188.0) for x, r in zip(x0, [-0.94, -0.29])]
        oracle_fit = oracles.sphere([x + p for x, (p, _) in zip(x0, oracle_pace)])
        d["text"] = f"literal best {lit.best_fitness} at {(lit.best_position + 0.0).tolist()}; faithful candidate {rec.fitness:.4f}"
        assert lit.best_fitness == 0.0 and np.all(lit.best_position == 0)
        assert all(b == "scaled-random" for _, b in oracle_pace)
        assert rec.branches == (Branch.SCALED_RANDOM,) * 2
        assert rec.fitness == pytest.approx(oracle_fit, rel=1e-15)
        assert rec.fitness < 3188.0


@pytest.mark.xfail(strict=True, reason="6124.9 is not the sphere value of (-67.67, 50.458); the oracle gives 7125.42")
def test_ac03_quoted_bee1_fitness():
    rec = _fresh(replay().result, 1)
    assert abs(rec.fitness - 6124.9) <= 0.1


MONO_SUITE = [
    ("sphere", 2),
    ("sphere", 10),
    ("rastrigin", 10),
    ("negated-sphere", 5),
]


def test_ac05_monotonicity_suite():
    with criterion(5, "best-so-far monotone, 30 seeds x 4 problems") as d:
        t0 = time.perf_counter()
        violations = 0
        runs = 0
        for name, dim in MONO_SUITE:
            obj = get_objective(name)
            for seed in range(30):
                cfg = FdoConfig(population=20, iterations=100, seed=seed, direction=obj.direction)
                hist = run(obj.space(dim), obj, cfg).trace.best_fitness_history()
                runs += 1
                violations += sum(obj.direction.better(a, b) for a, b in zip(hist, hist[1:]))
        elapsed = time.perf_counter() - t0
        d["text"] = f"{runs} runs, {violations} violations, {elapsed:.1f}s"
        assert violations == 0 and runs == 120
        assert elapsed < 30.0


def test_ac06_branch_guard_property():
    with criterion(6, "pace branch guard over 10^4 triples") as d:
        rng = np.random.default_rng(2024)
        n = 10_000
        fw = rng.uniform(-0.5, 1.5, n)
        fw[rng.random(n) < 0.1] = 0.0
        fw[rng.random(n) < 0.1] = 1.0
        r = rng.uniform(-1, 1, n)
        fit = rng.uniform(0, 1e4, n)
        fit[rng.random(n) < 0.1] = 0.0
        x = rng.uniform(-100, 100, n)
        xs = rng.uniform(-100, 100, n)
        bad = 0
        for i in range(n):
            pace, branch = pace_for_dimension(x[i], xs[i], fw[i], r[i], fit[i])
            if fw[i] <= 0 or fw[i] >= 1 or fit[i] == 0:
                ok = branch is Branch.SCALED_RANDOM and abs(pace - x[i] * r[i]) <= 1e-12
            elif r[i] < 0:
                ok = branch is Branch.TOWARD_BEST and abs(pace - (x[i] - xs[i]) * fw[i] * -1) <= 1e-12
            else:
                ok = branch is Branch.AWAY_FROM_BEST and abs(pace - (x[i] - xs[i]) * fw[i]) <= 1e-12
            kp, kb = kernels.pace_vector(x[i:i + 1], xs[i:i + 1], fw[i], r[i:i + 1], fit[i])
            ok = ok and BRANCH_CODES[kb[0]] is branch and kp[0] == pace
            bad += not ok
        d["text"] = f"{n} triples, {bad} violations"
        assert bad == 0


def test_ac07_convergence_sanity():
    with criterion(7, "sphere 10-D convergence, 30 seeds") as d:
        fixture = json.loads((FIXTURES / "convergence_sphere10.json").read_text())
        initial, final = [], []
        for seed in range(30):
            cfg = FdoConfig(population=30, iterations=500, seed=seed)
            res = run(SearchSpace(10, -100, 100), sphere, cfg)
            initial.append(res.initial_best_fitness)
            final.append(res.best_fitness)
        med_i, med_f = float(np.median(initial)), float(np.median(final))
        drift = abs(math.log10(med_f) - math.log10(fixture["median_final_best"]))
        d["text"] = f"median initial {med_i:.4g}, median final {med_f:.3g} (fixture {fixture['median_final_best']:.3g}, drift {drift:.2f} decades)"
        assert med_f < 1e-2 * med_i
        assert drift <= fixture["regression_tolerance_decades"]


def test_ac08_determinism_byte_identical(tmp_path):
    with criterion(8, "replay-paper and seeded run byte-identical") as d:
        for tag in ("a", "b"):
            assert main(["replay-paper", "--out", str(tmp_path / f"replay_{tag}")]) == 0
            assert main(["run", "--objective", "rastrigin", "--dim", "5", "--pop", "10", "--iters", "50",
                         "--seed", "17", "--out", str(tmp_path / f"run_{tag}")]) == 0
        same_replay = (tmp_path / "replay_a" / "replay_trace.csv").read_bytes() == \
            (tmp_path / "replay_b" / "replay_trace.csv").read_bytes()
        same_run = (tmp_path / "run_a" / "trace.csv").read_bytes() == (tmp_path / "run_b" / "trace.csv").read_bytes()
        d["text"] = f"replay identical {same_replay}, run identical {same_run}"
        assert same_replay and same_run


def test_ac09_zero_fitness_guard():
    with criterion(9, "bee at sphere origin survives a full run") as d:
        dim = 5
        cfg = FdoConfig(population=10, iterations=100, seed=3)
        with np.errstate(all="raise"), warnings.catch_warnings():
            warnings.simplefilter("error")
            res = run(SearchSpace(dim, -100, 100), sphere, cfg, initial_positions=[np.zeros(dim)])
        steps = [o for o in res.trace.outcomes if o.bee_index == 0]
        branches = {b for o in steps for b in o.branches}
        d["text"] = f"{len(steps)} steps of the origin bee, branches {sorted(b.value for b in branches)}"
        assert len(steps) == cfg.iterations - 1
        assert branches == {Branch.SCALED_RANDOM}
        assert all(o.decision is Decision.STAYED for o in steps)
        assert res.best_fitness == 0.0


def test_ac10_levy_kurtosis():
    with criterion(10, "Levy heavy tails vs uniform") as d:
        t0 = time.perf_counter()
        levy = LevySource(seed=7, beta=1.5).levy_steps(10**5)
        uni = UniformSource(seed=7).r_vector(10**5)
        elapsed = time.perf_counter() - t0
        k_levy = oracles.kurtosis(levy.tolist(), excess=True)
        k_uni = oracles.kurtosis(uni.tolist(), excess=False)
        d["text"] = f"Levy excess kurtosis {k_levy:.1f}, uniform kurtosis {k_uni:.4f}, draws {elapsed:.2f}s"
        assert k_levy > 10 and stats.kurtosis(levy, fisher=True) > 10
        assert 1.6 <= k_uni <= 2.0
        assert 1.6 <= stats.kurtosis(uni, fisher=False) <= 2.0
        assert elapsed < 5.0


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v"]))
