"""Acceptance gate: every criterion at its stated tolerance and budget.

Each test prints one pass/fail line; the same functions back the CLI's
`report` subcommand.  Sample counts and tolerances are pinned inside
airylab.acceptance; the default seed makes every run reproducible.
"""
import json

from airylab import acceptance


def _run(fn):
    result = fn(seed=acceptance.DEFAULT_SEED)
    print()
    print(result.line())
    print(json.dumps(result.measured, indent=1, default=str))
    assert result.passed, f"criterion {result.cid} failed: {result.measured}"
    return result


def test_criterion_1_variational_identity():
    result = _run(acceptance.criterion_1_variational_identity)
    assert result.measured["max_rel_err"] <= 1e-6


def test_criterion_2_rate_asymptotics():
    result = _run(acceptance.criterion_2_rate_asymptotics)
    assert abs(result.measured["cubic_ratio"] - 1.0 / 12.0) <= 0.01 / 12.0


def test_criterion_3_fredholm_identity():
    result = _run(acceptance.criterion_3_fredholm_identity)
    for point, stats in result.measured.items():
        if isinstance(stats, dict):
            assert stats["sigma_distance"] <= 3.0, point


def test_criterion_4_riccati_matrix_agreement():
    result = _run(acceptance.criterion_4_riccati_matrix)
    assert result.measured["sao_agreement"] >= 0.95
    assert result.measured["hill_agreement"] >= 0.95


def test_criterion_5_wkb_inequality():
    result = _run(acceptance.criterion_5_wkb)
    assert result.measured["violations"] == 0


def test_criterion_6_localization_sandwich():
    result = _run(acceptance.criterion_6_sandwich)
    m = result.measured
    assert m["lower"] <= m["middle"] + 3.0 * (m["lower_stderr"] ** 2 + m["middle_stderr"] ** 2) ** 0.5
    assert m["middle"] <= m["upper"] + 3.0 * (m["middle_stderr"] ** 2 + m["upper_stderr"] ** 2) ** 0.5


def test_criterion_7_ldp_trend():
    result = _run(acceptance.criterion_7_ldp_trend)
    assert result.measured["t16_rel_gap"] <= 0.35


def test_criterion_8_dual_representation():
    result = _run(acceptance.criterion_8_dual_representation)
    assert result.measured["max_rel_err"] <= 1e-6


def test_criterion_9_proxy_bounds():
    _run(acceptance.criterion_9_proxy_bounds)
