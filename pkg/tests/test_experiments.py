"""Sweeps, extrapolation, the ODE residual, the optimizer and the probes."""

import math

import numpy as np
import pytest

from lsilab import (
    Circle,
    FOUR_PI_SQUARED,
    InsufficientDataError,
    PI_SQUARED,
    ParamOutOfRangeError,
    SweepRecord,
    UNIT_CIRCLE,
    UNIT_INTERVAL,
    diaz_probe,
    eigenvalue_check,
    extrapolate_constant,
    minimize_deficit,
    sharpness_sweep,
    wang_ode_residual,
)
from lsilab.experiments import (
    mode_quotient,
    synthesize_coefficients,
    write_probe_csv,
    write_sweep_csv,
)


# ---------------------------------------------------------------------------
# sharpness sweep
# ---------------------------------------------------------------------------

def test_sweep_energy_closed_form():
    records = sharpness_sweep([0.5], 2049)
    assert records[0].energy == pytest.approx(0.25 * PI_SQUARED, abs=1e-7)


def test_sweep_sorted_descending_and_nonnegative_deficits():
    records = sharpness_sweep([0.1, 0.4, 0.2], 2049)
    assert [r.epsilon for r in records] == [0.4, 0.2, 0.1]
    for r in records:
        assert r.deficit >= 0.0
        assert r.entropy > 0.0


def test_sweep_ratio_approaches_sharp_constant():
    records = sharpness_sweep([0.1, 0.05, 0.025], 2049)
    deviations = [abs(r.ratio - PI_SQUARED) for r in records]
    assert deviations == sorted(deviations, reverse=True)
    assert deviations[-1] < 3e-3


def test_sweep_monotone_deviation_invariant():
    records = sharpness_sweep([0.4, 0.2, 0.1, 0.05], 2049)
    deviations = [abs(r.ratio - PI_SQUARED) for r in records]
    assert all(a > b for a, b in zip(deviations, deviations[1:]))


def test_sweep_parameter_validation():
    with pytest.raises(ParamOutOfRangeError):
        sharpness_sweep([0.5], 1025)
    with pytest.raises(ParamOutOfRangeError):
        sharpness_sweep([1.5], 2049)


# ---------------------------------------------------------------------------
# extrapolation
# ---------------------------------------------------------------------------

def test_extrapolate_reaches_pi_squared():
    records = sharpness_sweep([0.1, 0.05, 0.025], 8193)
    constant = extrapolate_constant(records)
    assert constant == pytest.approx(PI_SQUARED, abs=1e-4)


def test_extrapolate_constant_data_is_exact():
    records = [SweepRecord(eps, 1.0, 1.0, 7.25, 0.0) for eps in (0.1, 0.2, 0.4)]
    assert extrapolate_constant(records) == 7.25


def test_extrapolate_rejects_duplicate_epsilons():
    records = [SweepRecord(0.1, 1.0, 1.0, 9.9, 0.0)] * 5
    with pytest.raises(InsufficientDataError):
        extrapolate_constant(records)


# ---------------------------------------------------------------------------
# ODE residual of the exponential-cosine family
# ---------------------------------------------------------------------------

def test_wang_residual_small_at_reference_resolution():
    assert wang_ode_residual(0.2, 2049) <= 1e-6


def test_wang_residual_refinement_gain():
    coarse = wang_ode_residual(0.2, 513)
    fine = wang_ode_residual(0.2, 2049)
    assert coarse / fine >= 8.0


def test_wang_residual_convergence_order():
    coarse = wang_ode_residual(0.2, 513)
    fine = wang_ode_residual(0.2, 2049)
    order = math.log(coarse / fine, 4.0)
    assert order >= 3.5


def test_wang_residual_vanishes_with_eps():
    # f -> 1 and both sides -> 0 as eps -> 0
    assert wang_ode_residual(1e-4, 513) <= 1e-8


def test_wang_residual_validation():
    with pytest.raises(ParamOutOfRangeError):
        wang_ode_residual(0.0, 2049)
    with pytest.raises(ParamOutOfRangeError):
        wang_ode_residual(0.2, 257)


# ---------------------------------------------------------------------------
# deficit minimization
# ---------------------------------------------------------------------------

def test_optimizer_constant_start_converges_immediately():
    result = minimize_deficit(UNIT_INTERVAL, 2, 0, 100, init=[1.0, 0.0])
    assert result.converged
    assert abs(result.best_deficit) <= 1e-12
    assert result.iterations <= 2


def test_optimizer_from_sharpness_member():
    init = [math.sqrt(0.99), math.sqrt(2) * 0.1] + [0.0] * 6
    result = minimize_deficit(UNIT_INTERVAL, 8, 0, 4000, init=init)
    assert result.best_deficit >= -1e-6
    assert result.best_deficit <= 1e-8
    assert result.best_ratio is not None
    assert result.best_ratio <= PI_SQUARED + 1e-3


@pytest.mark.parametrize("seed", [0, 1])
def test_optimizer_interval_contract(seed):
    result = minimize_deficit(UNIT_INTERVAL, 16, seed, 5000)
    assert result.best_deficit >= -1e-6
    assert result.best_ratio is not None
    assert result.best_ratio <= PI_SQUARED + 1e-3
    assert result.iterations <= 5000


def test_optimizer_circle_contract():
    result = minimize_deficit(UNIT_CIRCLE, 9, 2, 4000)
    assert result.best_deficit >= -1e-6
    assert result.best_ratio is not None
    assert result.best_ratio <= FOUR_PI_SQUARED + 1e-3


def test_optimizer_budget_exhaustion_returns_best_so_far():
    result = minimize_deficit(UNIT_INTERVAL, 16, 0, 3)
    assert result.iterations == 3
    assert not result.converged
    assert math.isfinite(result.best_deficit)


def test_optimizer_validation():
    with pytest.raises(ParamOutOfRangeError):
        minimize_deficit(UNIT_INTERVAL, 1, 0, 100)
    with pytest.raises(ParamOutOfRangeError):
        minimize_deficit(Circle(2.0), 4, 0, 100)


def test_synthesize_coefficients_matches_optimizer_basis():
    f = synthesize_coefficients(UNIT_INTERVAL, [1.0, 0.5], 65)
    expected = np.abs(1.0 + 0.5 * np.cos(math.pi * f.x))
    np.testing.assert_allclose(f.values, expected, atol=1e-14)


# ---------------------------------------------------------------------------
# power-mean probe
# ---------------------------------------------------------------------------

def test_probe_constant_trial_has_zero_deficit():
    report = diaz_probe([1.5, 2.0], 1, 3)
    for r in report.results:
        assert abs(r.min_deficit) <= 1e-12
        assert r.argmin_trial == 0


def test_probe_finds_no_counterexample_at_desk_scale():
    report = diaz_probe([1.25, 2.0], 25, 11)
    assert not report.counterexamples
    for r in report.results:
        assert r.min_deficit >= -1e-7
        assert not r.flagged


def test_probe_is_bit_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_probe_csv(diaz_probe([1.5, 2.0], 10, 5), a)
    write_probe_csv(diaz_probe([1.5, 2.0], 10, 5), b)
    assert a.read_bytes() == b.read_bytes()


def test_probe_validation():
    with pytest.raises(ParamOutOfRangeError):
        diaz_probe([1.5], 0, 1)
    with pytest.raises(ParamOutOfRangeError):
        diaz_probe([2.5], 10, 1)


# ---------------------------------------------------------------------------
# spectral-gap check
# ---------------------------------------------------------------------------

def test_eigenvalue_check_matches_first_eigenvalue():
    assert eigenvalue_check(256, 8) == pytest.approx(FOUR_PI_SQUARED, abs=1e-8)


def test_minimizing_mode_is_first_harmonic():
    quotients = [mode_quotient(256, k) for k in range(1, 6)]
    assert quotients[0] == min(quotients)
    assert quotients[0] == pytest.approx(FOUR_PI_SQUARED, abs=1e-8)


def test_second_mode_quotient():
    assert mode_quotient(256, 2) == pytest.approx(16 * math.pi**2, abs=1e-7)


def test_eigenvalue_check_validation():
    with pytest.raises(ParamOutOfRangeError):
        eigenvalue_check(32, 4)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_sweep_csv_shape(tmp_path):
    records = sharpness_sweep([0.2, 0.1], 2049)
    path = tmp_path / "sweep.csv"
    write_sweep_csv(records, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "epsilon,energy,entropy,ratio,deficit"
    assert len(lines) == 3
    assert float(lines[1].split(",")[0]) == 0.2
