"""Re-derive the frozen oracle constants used across the test suite."""

import pytest

import oracles
from test_functionals import (
    CIRCLE_SIN_DEFICIT,
    DENSITY_EXP_DEFICIT,
    DIAZ_Q2_E03_DEFICIT,
    ENTROPY_SHARPNESS,
    ENTROPY_SQRT2_SIN,
    GENERAL_SIN_DEFICIT,
    WEISSLER_EXAMPLE_ENTROPY,
)


def test_sharpness_entropy_constants():
    for eps, frozen in ENTROPY_SHARPNESS.items():
        assert float(oracles.sharpness_entropy(eps)) == pytest.approx(frozen, abs=1e-15)


def test_sine_entropy_constant():
    from mpmath import pi, sin, sqrt

    value = oracles.entropy_squared(lambda x: sqrt(2) * sin(pi * x))
    assert float(value) == pytest.approx(ENTROPY_SQRT2_SIN, abs=1e-15)


def test_circle_sin_deficit_constant():
    assert float(oracles.circle_sin_deficit()) == pytest.approx(CIRCLE_SIN_DEFICIT, abs=1e-15)


def test_general_sin_deficit_constant():
    assert float(oracles.general_sin_deficit()) == pytest.approx(GENERAL_SIN_DEFICIT, abs=1e-12)


def test_density_exp_deficit_constant():
    assert float(oracles.density_exp_deficit()) == pytest.approx(DENSITY_EXP_DEFICIT, abs=1e-16)


def test_diaz_deficit_constant():
    assert float(oracles.diaz_sharpness_deficit(2.0, 0.3)) == pytest.approx(
        DIAZ_Q2_E03_DEFICIT, abs=1e-15
    )


def test_weissler_entropy_constant():
    assert float(oracles.weissler_example_entropy()) == pytest.approx(
        WEISSLER_EXAMPLE_ENTROPY, abs=1e-15
    )
