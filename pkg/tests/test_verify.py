# --- --- --- Imports --- --- ---
# STD
import json
# 3RD
import pytest
# Project
from gateinvariants import verify
from gateinvariants.config import DEFAULT_TOLERANCES
from gateinvariants.verify import CheckResult, VerifyOptions, run_verification, summarize


SMALL = VerifyOptions(n=40, seed=11, mc_samples=40000, mc_random_gates=2, scatter_n=20000, pe_samples=2000)


@pytest.mark.parametrize("check", [
    verify.check_named_gates,
    verify.check_entropy_routes,
    verify.check_local_invariance,
    verify.check_round_trip,
    verify.check_rank2_edge,
    verify.check_maximal_entropy,
    verify.check_edge_pairs,
    verify.check_lq_monotone,
    verify.check_perfect_entanglers,
    verify.check_polyhedron_edges,
    verify.check_entangling_power_identities,
    verify.check_montecarlo,
    verify.check_scatter,
])
def test_check_passes(check):
    result = check(SMALL, DEFAULT_TOLERANCES)
    assert result.ok, f"{result.name}: {result.error}"


def test_check_scatter_reports_gap_to_published_value():
    result = verify.check_scatter(SMALL, DEFAULT_TOLERANCES)
    m = result.metrics
    assert result.name == "scatter_statistics"
    assert m["published"] == pytest.approx(0.0705)
    assert m["pearson"] >= verify.SCATTER_MIN_PEARSON
    assert m["deviation_from_published"] == pytest.approx(abs(m["pearson"] - 0.0705))
    assert m["reproduces_published"] == 0.0
    assert m["covariance"] > 0.0
    assert "does NOT reproduce" in result.to_model().detail


def test_check_scatter_fails_on_weak_correlation(monkeypatch):
    records, _ = verify.scatter_study(2000, 5, "chamber")
    monkeypatch.setattr(verify, "scatter_study", lambda *args, **kwargs: (records, 0.05))
    result = verify.check_scatter(SMALL, DEFAULT_TOLERANCES)
    assert not result.ok
    assert result.metrics["reproduces_published"] == 1.0


def test_check_montecarlo_at_default_sizes():
    opts = VerifyOptions()
    assert opts.mc_sigmas == 3.0
    result = verify.check_montecarlo(opts, DEFAULT_TOLERANCES)
    assert result.ok, result.error
    assert result.metrics["max_standard_errors"] <= 3.0
    assert result.metrics["max_standard_error"] <= 0.002


def test_check_result_model():
    good = CheckResult.success("a", x=1.0)
    bad = CheckResult.failure("b", "broken", x=float("nan"))
    assert good.ok and not bad.ok
    assert good.to_model().detail == "ok"
    assert bad.to_model().metrics == {"x": None}


def test_scaled_options():
    opts = VerifyOptions.scaled(50, 3)
    assert opts.n == 50 and opts.seed == 3
    assert opts.pe_samples == 1000
    assert opts.mc_samples == 100_000 and opts.scatter_n == 100_000


def test_failing_check_does_not_stop_the_suite(monkeypatch):
    def check_boom(opts:VerifyOptions, tol) -> CheckResult:
        raise RuntimeError("boom")
    monkeypatch.setattr(verify, "CHECKS", (check_boom, verify.check_named_gates))
    results = run_verification(options=SMALL)
    assert [r.name for r in results] == ["boom", "named_gates"]
    assert not results[0].ok and "boom" in results[0].error
    assert results[1].ok

    summary = summarize(results, SMALL)
    assert not summary.ok and summary.passed == 1 and summary.failed == 1
    assert json.loads(summary.model_dump_json())["checks"][0]["ok"] is False
