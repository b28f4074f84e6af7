"""Scalar functionals and inequality deficits.

Each deficit operation returns right-hand side minus left-hand side of
the corresponding inequality, so a nonnegative value means the
inequality holds for that input. Deficits for the proven statements
(interval constant pi^2, circle constant 4*pi^2, their rescaled and
Fisher-information forms, the Fourier-side bound, and the Wirtinger
bound) should never be meaningfully negative; the power-mean deficit
probes an open conjecture, so negative values there are findings, not
errors.

The entropy functional uses the convention t^2 * log t = 0 at t = 0,
with values in [-1e-12, 0] clamped to zero to absorb synthesis
round-off.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import (
    DomainMismatchError,
    NegativeFunctionError,
    NonPositiveFunctionError,
    NotHermitianError,
    NotNormalizedError,
    ParamOutOfRangeError,
    ZeroMassError,
)
from .function_space import (
    Circle,
    FourierSeries,
    GridFunction,
    Interval,
    differentiate,
    integrate,
    is_unit_circle,
    is_unit_interval,
    quadrature_weights,
)

PI_SQUARED = math.pi**2
FOUR_PI_SQUARED = 4.0 * math.pi**2

#: Values below this are rejected as genuinely negative.
NEGATIVE_TOL = 1e-12

#: |integral f^2 - 1| tolerance for the unit-mass preconditions.
NORMALIZATION_TOL = 1e-8

#: Root-mean-square (or mean) values below this count as zero mass.
MASS_TOL = 1e-12


@dataclass(frozen=True)
class FunctionalReport:
    """Bundle of the scalar functionals evaluated for one function.

    ``deficit == energy - constant * (entropy - correction)`` exactly as
    computed by the producing operation; ``correction`` is zero for the
    unit-mass forms. ``ratio`` is energy/entropy when the entropy is
    positive, otherwise None.
    """

    mass: float
    entropy: float
    energy: float
    constant: float
    deficit: float
    ratio: Optional[float]
    correction: float = 0.0

    def to_dict(self) -> dict:
        return {
            "mass": self.mass,
            "entropy": self.entropy,
            "energy": self.energy,
            "constant": self.constant,
            "deficit": self.deficit,
            "ratio": self.ratio,
            "correction": self.correction,
        }

    def csv_row(self) -> str:
        ratio = "" if self.ratio is None else repr(float(self.ratio))
        return (
            f"{float(self.mass)!r},{float(self.entropy)!r},{float(self.energy)!r},"
            f"{float(self.constant)!r},{float(self.deficit)!r},{ratio}"
        )


REPORT_CSV_HEADER = "mass,entropy,energy,constant,deficit,ratio"


def write_report_json(report: FunctionalReport, path: str | Path) -> None:
    with open(path, "w") as handle:
        json.dump(report.to_dict(), handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_report_csv(report: FunctionalReport, path: str | Path) -> None:
    with open(path, "w") as handle:
        handle.write(REPORT_CSV_HEADER + "\n")
        handle.write(report.csv_row() + "\n")


# ---------------------------------------------------------------------------
# Basic functionals
# ---------------------------------------------------------------------------

def _entropy_integrand(values: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values)
    pos = values > 0.0
    out[pos] = values[pos] ** 2 * np.log(values[pos])
    return out


def _check_nonnegative(values: np.ndarray) -> np.ndarray:
    low = float(np.min(values))
    if low < -NEGATIVE_TOL:
        raise NegativeFunctionError(f"minimum value {low:.3e} is below -{NEGATIVE_TOL:.0e}")
    return np.clip(values, 0.0, None)


def entropy(f: GridFunction) -> float:
    """integral of f^2 log f, with 0^2 log 0 = 0."""
    values = _check_nonnegative(f.values)
    w = quadrature_weights(f.domain, f.n)
    return float(w @ _entropy_integrand(values))


def dirichlet_energy(f: GridFunction) -> float:
    """integral of (f')^2, via the module's differentiation."""
    d = differentiate(f).values
    w = quadrature_weights(f.domain, f.n)
    return float(w @ (d * d))


def squared_mass(f: GridFunction) -> float:
    """integral of f^2."""
    w = quadrature_weights(f.domain, f.n)
    return float(w @ (f.values * f.values))


# ---------------------------------------------------------------------------
# Log-Sobolev deficits
# ---------------------------------------------------------------------------

def _unit_mass_deficit(f: GridFunction, constant: float) -> FunctionalReport:
    mass = squared_mass(f)
    if abs(mass - 1.0) > NORMALIZATION_TOL:
        raise NotNormalizedError(
            f"integral of f^2 is {mass!r}, expected 1 within {NORMALIZATION_TOL:.0e}"
        )
    ent = entropy(f)
    energy = dirichlet_energy(f)
    deficit = energy - constant * ent
    ratio = energy / ent if ent > 0.0 else None
    return FunctionalReport(mass, ent, energy, constant, deficit, ratio)


def lsi_deficit_interval(f: GridFunction) -> FunctionalReport:
    """Deficit of pi^2 * integral f^2 log f <= integral (f')^2 on [0, 1].

    Requires unit squared mass and nonnegative values.
    """
    if not is_unit_interval(f.domain):
        raise DomainMismatchError("interval deficit requires the domain [0, 1]")
    return _unit_mass_deficit(f, PI_SQUARED)


def lsi_deficit_circle(f: GridFunction) -> FunctionalReport:
    """Deficit of 4*pi^2 * integral f^2 log f <= integral (f')^2 on the unit circle."""
    if not is_unit_circle(f.domain):
        raise DomainMismatchError("circle deficit requires a circle of circumference 1")
    return _unit_mass_deficit(f, FOUR_PI_SQUARED)


def lsi_deficit_general(f: GridFunction) -> FunctionalReport:
    """Rescaled interval deficit for arbitrary [a, b] and mass.

    With m the root mean square of f, the deficit is
    ``energy - (pi^2/L^2) * (entropy - L * m^2 * log m)``, L = b - a.
    Specializes to the unit-interval form when L = 1 and m = 1.
    """
    if not isinstance(f.domain, Interval):
        raise DomainMismatchError("general deficit requires an interval domain")
    length = f.domain.length
    mass = squared_mass(f)
    m = math.sqrt(max(mass, 0.0) / length)
    if m <= MASS_TOL:
        raise ZeroMassError(f"root mean square {m:.3e} is numerically zero")
    ent = entropy(f)
    energy = dirichlet_energy(f)
    constant = PI_SQUARED / length**2
    correction = length * m * m * math.log(m)
    deficit = energy - constant * (ent - correction)
    ratio = energy / ent if ent > 0.0 else None
    return FunctionalReport(mass, ent, energy, constant, deficit, ratio, correction)


def lsi_deficit_density_form(f: GridFunction) -> FunctionalReport:
    """Fisher-information form: deficit of
    ``(2*pi^2/L^2) * (integral f log f - m log m) <= integral (f')^2 / f``
    with m the mean of f over [a, b].

    Requires strictly positive values (min >= 1e-12). Note the mean
    correction ``m log m`` is not scaled by the interval length; on
    unit-length intervals this deficit equals four times the deficit of
    the square root of f under :func:`lsi_deficit_general`.
    """
    if not isinstance(f.domain, Interval):
        raise DomainMismatchError("density form requires an interval domain")
    values = f.values
    low = float(np.min(values))
    if low < MASS_TOL:
        raise NonPositiveFunctionError(f"minimum value {low:.3e}; need min >= {MASS_TOL:.0e}")
    length = f.domain.length
    w = quadrature_weights(f.domain, f.n)
    mass = float(w @ values)
    m = mass / length
    if m <= MASS_TOL:
        raise ZeroMassError(f"mean {m:.3e} is numerically zero")
    ent = float(w @ (values * np.log(values)))
    d = differentiate(f).values
    fisher = float(w @ (d * d / values))
    constant = 2.0 * PI_SQUARED / length**2
    correction = m * math.log(m)
    deficit = fisher - constant * (ent - correction)
    ratio = fisher / ent if ent > 0.0 else None
    return FunctionalReport(mass, ent, fisher, constant, deficit, ratio, correction)


# ---------------------------------------------------------------------------
# Fourier-side bound
# ---------------------------------------------------------------------------

class WeightPower(str, Enum):
    """Mode weight in the Fourier-side entropy bound."""

    ABS_N = "abs_n"
    N_SQUARED = "n_squared"


#: Tolerance on the conjugate-symmetry defect of coefficient input.
HERMITIAN_TOL = 1e-10


def weissler_bound(series: FourierSeries, power: WeightPower | str) -> float:
    """Fourier-side upper bound on the entropy of a nonnegative function.

    Returns ``sum w(n) |a_n|^2 + M log sqrt(M)`` with ``M = sum |a_n|^2``
    and ``w(n) = |n|`` or ``n^2``. Both the coefficients and the entropy
    they are compared against use the unit-mass measure on the circle,
    so M equals the squared L2 norm.
    """
    power = WeightPower(power)
    defect = series.hermitian_defect()
    scale = max(1.0, float(np.max(np.abs(series.coefficients))))
    if defect > HERMITIAN_TOL * scale:
        raise NotHermitianError(f"conjugate-symmetry defect {defect:.3e}")
    n = np.arange(-series.n_max, series.n_max + 1)
    weights = np.abs(n) if power is WeightPower.ABS_N else n.astype(float) ** 2
    mode_term = float(weights @ (np.abs(series.coefficients) ** 2))
    mass = series.mass()
    norm_term = 0.0 if mass == 0.0 else mass * 0.5 * math.log(mass)
    return mode_term + norm_term


# ---------------------------------------------------------------------------
# Wirtinger deficit
# ---------------------------------------------------------------------------

def wirtinger_deficit(f: GridFunction) -> float:
    """Deficit of pi^2 * integral (f - mean)^2 <= integral (f')^2 on [0, 1].

    Equality holds exactly in the direction cos(pi x).
    """
    if not is_unit_interval(f.domain):
        raise DomainMismatchError("Wirtinger deficit requires the domain [0, 1]")
    w = quadrature_weights(f.domain, f.n)
    mean = float(w @ f.values)  # interval length is 1
    dev = f.values - mean
    return dirichlet_energy(f) - PI_SQUARED * float(w @ (dev * dev))


# ---------------------------------------------------------------------------
# Power-mean conjecture probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiazConfig:
    """Exponent and quadrature resolution for the power-mean deficit."""

    q: float
    n: int = 2049

    def __post_init__(self):
        if not (1.0 < self.q <= 2.0):
            raise ParamOutOfRangeError(f"q must lie in (1, 2], got {self.q}")
        if self.n < 16:
            raise ParamOutOfRangeError(f"quadrature n must be >= 16, got {self.n}")


def diaz_deficit(r: GridFunction, cfg: DiazConfig) -> float:
    """Deficit of the conjectured bound
    ``(integral r^q)^(1/q) <= integral sqrt(r^2 + (q-1) (r')^2 / pi^2)``
    on [0, 1].

    The inequality is open: a negative return value is a candidate
    counterexample, not an error.
    """
    if not is_unit_interval(r.domain):
        raise DomainMismatchError("power-mean deficit requires the domain [0, 1]")
    values = _check_nonnegative(r.values)
    q = cfg.q
    w = quadrature_weights(r.domain, r.n)
    lhs = float(w @ values**q) ** (1.0 / q)
    d = differentiate(r).values
    rhs = float(w @ np.sqrt(values * values + (q - 1.0) * d * d / PI_SQUARED))
    return rhs - lhs
