import numpy as np
import pytest

from conftest import FIXTURES
from fdo.replay import printed_chain, replay, run_replay, truncate
from fdo.types import Branch, Decision

import oracles


@pytest.fixture(scope="module")
def faithful():
    return replay(False)


@pytest.fixture(scope="module")
def literal():
    return replay(True)


def _fresh(result, bee):
    return [r for r in result.trace.records if r.iteration == 2 and r.bee == bee][0]


def test_golden_traces_unchanged(faithful, literal):
    assert faithful.trace_csv == (FIXTURES / "replay_trace.csv").read_text()
    assert literal.trace_csv == (FIXTURES / "replay_trace_literal.csv").read_text()


def test_replay_deterministic():
    assert replay(False).trace_csv == replay(False).trace_csv
    assert replay(True).report == replay(True).report


def test_iteration1(faithful):
    fits = [r.fitness for r in faithful.result.trace.iteration_records(1)]
    assert fits == [4610, 8020, 3188]
    _, best, pos = faithful.result.trace.best_history[0]
    assert best == 3188
    np.testing.assert_array_equal(pos, [-22, 52])


def test_bee2_with_printed_rounding(faithful):
    rec = _fresh(faithful.result, 2)
    assert rec.fw == pytest.approx(0.3975, abs=5e-4)
    pace, pos, fit = printed_chain([44, 78], [-22, 52], truncate(rec.fw, 3), rec.r)
    np.testing.assert_allclose(pace, [-26.20, 10.32], atol=0.01)
    np.testing.assert_allclose(pos, [17.8, 88.32], atol=0.01)
    assert fit == pytest.approx(8117.26, abs=0.01)


def test_bee1_engine_faithful_matches_oracle(faithful):
    rec = _fresh(faithful.result, 1)
    fw, pace, cand, fit = oracles.minimize_move([-49, 47], [-22, 52], 3188, [0.82, -0.22])
    assert rec.fw == fw == pytest.approx(0.6916, abs=1e-4)
    np.testing.assert_allclose(rec.pace, pace, rtol=1e-15)
    np.testing.assert_allclose(rec.pace, [-18.67, 3.458], atol=0.005)
    np.testing.assert_allclose(rec.position, cand, rtol=1e-15)
    assert rec.fitness == pytest.approx(fit, rel=1e-15)
    assert rec.decision is Decision.REJECTED_FRESH


def test_bee1_printed_values_flagged(faithful):
    flagged = {c.quantity: c for c in faithful.checks if not c.enforced}
    assert flagged["iteration 2 bee 1 pace x1"].printed == -33.82
    assert flagged["iteration 2 bee 1 position x1"].printed == -82.88
    assert flagged["iteration 2 bee 1 candidate fitness"].printed == 9414
    assert "equation-inconsistent" in faithful.report
    for needle in ("-33.82", "-82.88", "9414"):
        assert needle in faithful.report


def test_bee3_faithful_improves(faithful):
    rec = _fresh(faithful.result, 3)
    assert rec.branches == (Branch.SCALED_RANDOM,) * 2
    assert rec.fitness == pytest.approx(oracles.sphere([-22 + -22 * -0.94, 52 + 52 * -0.29]), rel=1e-15)
    assert rec.fitness < 3188
    assert rec.decision is Decision.ACCEPTED_FRESH


def test_literal_bee3_declares_zero(literal):
    rec = _fresh(literal.result, 3)
    np.testing.assert_array_equal(rec.pace, [0, 0])
    assert literal.result.best_fitness == 0
    np.testing.assert_array_equal(literal.result.best_position, [0, 0])


def test_all_enforced_fixtures_pass(faithful, literal):
    assert faithful.ok and literal.ok
    assert faithful.failures() == []


def test_replay_results_match_run_replay():
    assert run_replay().best_fitness == replay().result.best_fitness
