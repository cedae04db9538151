import json
from pathlib import Path

import pytest

from brownian_polymer import (
    CheckResult,
    Importance,
    ValidationContext,
    ValidationOutputJSONEncoder,
    Verdict,
    available_checks,
    format_results,
    load_config,
    organize_results,
    run_checks,
    save_report,
    validate_suite,
)
from brownian_polymer._types import DEFAULT_SEED
from brownian_polymer.checks import (
    check_free_energy_trend,
    check_functional_equations,
    check_kac_concentration,
    check_kac_mass_trend,
    check_tandem_digamma_limit,
)
from brownian_polymer.models import EULER_GAMMA, EstimateRecord, KacDiagnostic, digamma, free_energy
from brownian_polymer.testing import check_slow_tests_enabled

SLOW_TESTS_ENABLED, DISABLED_SLOW_TESTS_REASON = check_slow_tests_enabled()

EXACT_CHECKS = [check for check in available_checks if check.importance is Importance.EXACT]
MONTE_CARLO_CHECKS = [check for check in available_checks if check.importance is not Importance.EXACT]


@pytest.mark.parametrize("check", EXACT_CHECKS, ids=lambda check: check.__name__)
def test_exact_checks_pass(check):
    result = check(ValidationContext())
    assert result.verdict is Verdict.PASS, result.detail
    assert result.check_function_name == check.__name__


@pytest.mark.skipif(not SLOW_TESTS_ENABLED, reason=DISABLED_SLOW_TESTS_REASON or "")
@pytest.mark.parametrize("check", MONTE_CARLO_CHECKS, ids=lambda check: check.__name__)
def test_monte_carlo_checks_run(check):
    (result,) = run_checks(checks=[check])
    assert result.importance is not Importance.ERROR, result.detail
    assert result.detail


def test_every_suite_has_exact_checks():
    suites = {check.suite for check in EXACT_CHECKS}
    assert suites == {"specialfn", "freeenergy", "environment", "polymer", "queue", "rmt"}


def test_validate_suite_specialfn():
    results = list(validate_suite(suite="specialfn", progress_bar=False))
    assert len(results) == 5
    assert all(result.suite == "specialfn" for result in results)
    assert all(result.verdict is Verdict.PASS for result in results)


@pytest.mark.skipif(not SLOW_TESTS_ENABLED, reason=DISABLED_SLOW_TESTS_REASON or "")
def test_validate_suite_rmt_passes_at_default_seed():
    results = list(validate_suite(suite="rmt", seed=DEFAULT_SEED, progress_bar=False))
    assert len(results) == 6
    failures = {result.check_function_name: result.detail for result in results if result.verdict is not Verdict.PASS}
    assert not failures


def test_validate_suite_threshold_as_string():
    results = list(validate_suite(suite="specialfn", importance_threshold="STATISTICAL", progress_bar=False))
    assert all(result.importance is Importance.EXACT for result in results)


def test_validate_suite_quick_profile_skips_monte_carlo():
    skipped = set(load_config("quick")["SKIP"])
    results = list(validate_suite(suite="polymer", config=load_config("quick"), select=None, progress_bar=False))
    assert results
    assert not skipped & {result.check_function_name for result in results}


def test_validate_suite_unknown_suite():
    with pytest.raises(ValueError):
        list(validate_suite(suite="optics"))


def _raising_check(context):
    raise RuntimeError("broken model")


_raising_check.importance = Importance.EXACT
_raising_check.suite = "rmt"


def test_run_checks_reports_errors():
    (result,) = run_checks(checks=[_raising_check])
    assert result.importance is Importance.ERROR
    assert result.verdict is Verdict.FAIL
    assert result.suite == "rmt"
    assert "RuntimeError" in result.check_function_name and "broken model" in result.check_function_name
    assert "Traceback" in result.detail


RESULTS = [
    CheckResult(detail="a", importance=Importance.EXACT, check_function_name="check_b", suite="queue"),
    CheckResult(
        detail="b", verdict=Verdict.FAIL, importance=Importance.EXACT, check_function_name="check_c", suite="queue"
    ),
    CheckResult(detail="c", importance=Importance.TREND, check_function_name="check_a", suite="polymer"),
]


def test_organize_results():
    organized = organize_results(results=RESULTS, levels=["suite", "importance"])
    assert list(organized) == ["polymer", "queue"]
    assert list(organized["queue"]) == [Importance.EXACT]
    assert [result.check_function_name for result in organized["queue"][Importance.EXACT]] == ["check_c", "check_b"]


def test_organize_results_importance_first():
    organized = organize_results(results=RESULTS, levels=["importance"])
    assert list(organized) == [Importance.EXACT, Importance.TREND]


def test_format_results():
    formatted = format_results(results=RESULTS)
    assert formatted[1] == "brownian-polymer Validation Summary"
    assert "Ran 3 checks, 1 failed:" in formatted
    assert "       2 - EXACT" in formatted
    assert "0  polymer" in formatted
    assert any(line.endswith("check_c - FAIL") for line in formatted)


def test_save_report(tmp_path: Path):
    report_path = tmp_path / "report.txt"
    save_report(report_file_path=report_path, formatted_results=["line one", "line two"])
    assert report_path.read_text() == "line one\nline two\n"
    with pytest.raises(FileExistsError):
        save_report(report_file_path=report_path, formatted_results=["again"])
    save_report(report_file_path=report_path, formatted_results=["again"], overwrite=True)
    assert report_path.read_text() == "again\n"


def test_json_encoder():
    encoded = json.loads(json.dumps(RESULTS[1], cls=ValidationOutputJSONEncoder))
    assert encoded == dict(detail="b", verdict="FAIL", importance="EXACT", check_function_name="check_c", suite="queue")


def _kac_trend(masses, mass_stderr=0.06):
    return [
        KacDiagnostic(m=1.0, n=n, log_xi=0.6, argmax_x=-1.6, mass_window=mass, replicas=8, mass_stderr=mass_stderr)
        for n, mass in zip((16, 32, 48), masses)
    ]


@pytest.mark.parametrize(
    "masses,verdict",
    [
        ((0.30, 0.35, 0.40), Verdict.PASS),
        ((0.346, 0.549, 0.393), Verdict.FAIL),
        ((0.50, 0.45, 0.40), Verdict.FAIL),
    ],
)
def test_kac_mass_trend_requires_every_step_to_increase(monkeypatch, masses, verdict):
    monkeypatch.setattr(
        "brownian_polymer.checks._polymer.kac_concentration", lambda *args, **kwargs: _kac_trend(masses)
    )
    assert check_kac_mass_trend(ValidationContext()).verdict is verdict


@pytest.mark.parametrize(
    "means,verdict",
    [
        ({16: 0.80, 32: 0.86, 64: 0.90}, Verdict.PASS),
        ({16: 0.80, 32: 0.90, 64: 0.86}, Verdict.FAIL),
    ],
)
def test_free_energy_trend_requires_shrinking_error(monkeypatch, means, verdict):
    target = free_energy(1.0).value

    def estimate(beta, n, **kwargs):
        return EstimateRecord(
            mean=target - 1.0 + means[n], stderr=0.03, replicas=400, n=n, dt=0.025, seed=42, quantity="free_energy"
        )

    monkeypatch.setattr("brownian_polymer.checks._polymer.estimate_free_energy", estimate)
    assert check_free_energy_trend(ValidationContext()).verdict is verdict


@pytest.mark.parametrize("xi_gap,verdict", [(0.14, Verdict.PASS), (0.16, Verdict.FAIL)])
def test_kac_concentration_window_has_no_stderr_slack(monkeypatch, xi_gap, verdict):
    diagnostic = KacDiagnostic(
        m=1.0, n=48, log_xi=EULER_GAMMA + xi_gap, argmax_x=-1.6, mass_window=0.4, replicas=8, log_xi_stderr=0.05
    )
    monkeypatch.setattr("brownian_polymer.checks._polymer.kac_concentration", lambda *args, **kwargs: [diagnostic])
    assert check_kac_concentration(ValidationContext()).verdict is verdict


@pytest.mark.parametrize("gap,verdict", [(0.09, Verdict.PASS), (0.12, Verdict.FAIL)])
def test_tandem_digamma_window_has_no_stderr_slack(monkeypatch, gap, verdict):
    def estimate(m, n, **kwargs):
        return EstimateRecord(
            mean=EULER_GAMMA + gap, stderr=0.04, replicas=64, n=n, dt=0.01, seed=42, quantity="queue"
        )

    monkeypatch.setattr("brownian_polymer.checks._queue.estimate_queue", estimate)
    assert check_tandem_digamma_limit(ValidationContext()).verdict is verdict


def test_functional_equations_report_absolute_residual():
    result = check_functional_equations()
    assert result.verdict is Verdict.PASS
    assert "absolute residual" in result.detail


def test_functional_equations_catch_absolute_drift(monkeypatch):
    # an offset of 1.2e-10 above x = 8 stays under 1e-10 once scaled by digamma(7) ~ 1.87
    monkeypatch.setattr(
        "brownian_polymer.checks._specialfn.digamma", lambda x: digamma(x) + (1.2e-10 if x >= 8.0 else 0.0)
    )
    assert check_functional_equations().verdict is Verdict.FAIL
