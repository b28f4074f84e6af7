"""Domains, sampled functions and Fourier representations.

This is the numerical substrate for everything else: uniform grids on
intervals (both endpoints included) and circles (wrap point excluded),
quadrature, differentiation, the closed-form sample families, and the
two-sided Fourier coefficient representation of periodic functions.

Conventions:
  * Interval grid:  x_i = a + i*(b-a)/(N-1), i = 0..N-1.
  * Circle grid:    x_i = i*L/N,             i = 0..N-1 (periodic).
  * Fourier coefficients use the unit-mass measure on the circle,
    a_n = (1/L) * integral of f(x) exp(-2*pi*i*n*x/L), so that
    sum |a_n|^2 equals (1/L) * integral of f^2 (Parseval).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .errors import (
    DomainMismatchError,
    InvalidInputError,
    NotRealValuedError,
    ParamOutOfRangeError,
    TruncationTooLargeError,
    UnknownFamilyError,
)

#: Smallest admissible sample count; keeps the five-point stencils well-defined.
MIN_SAMPLES = 16

#: Absolute tolerance on the imaginary residue of a real-valued synthesis.
IMAG_TOL = 1e-10

#: Tolerance used when an operation requires a specific domain geometry.
GEOM_TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    """Closed interval [a, b] with a < b, both finite."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidInputError("interval endpoints must be finite")
        if not self.a < self.b:
            raise InvalidInputError(f"interval needs a < b, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Circle:
    """Circle of given circumference, coordinates in [0, circumference)."""

    circumference: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "circumference", float(self.circumference))
        if not (math.isfinite(self.circumference) and self.circumference > 0):
            raise InvalidInputError("circle circumference must be positive and finite")

    @property
    def length(self) -> float:
        return self.circumference


Domain = Union[Interval, Circle]

UNIT_INTERVAL = Interval(0.0, 1.0)
UNIT_CIRCLE = Circle(1.0)


def is_unit_interval(domain: Domain) -> bool:
    return (
        isinstance(domain, Interval)
        and abs(domain.a) <= GEOM_TOL
        and abs(domain.b - 1.0) <= GEOM_TOL
    )


def is_unit_circle(domain: Domain) -> bool:
    return isinstance(domain, Circle) and abs(domain.circumference - 1.0) <= GEOM_TOL


def grid_points(domain: Domain, n: int) -> np.ndarray:
    """Sample abscissae of the uniform grid with n points."""
    if isinstance(domain, Interval):
        return np.linspace(domain.a, domain.b, n)
    return np.arange(n) * (domain.circumference / n)


@dataclass(frozen=True)
class GridFunction:
    """Real-valued function sampled on the uniform grid of its domain.

    Immutable: the value array is copied on construction and marked
    read-only, so instances are safe to share across threads.
    """

    domain: Domain
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise InvalidInputError("values must be a one-dimensional array")
        if v.size < MIN_SAMPLES:
            raise InvalidInputError(
                f"need at least {MIN_SAMPLES} samples, got {v.size}"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("all sampled values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return grid_points(self.domain, self.n)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        """Same domain and resolution, new samples."""
        values = np.asarray(values)
        if values.shape != self.values.shape:
            raise InvalidInputError("replacement values must keep the grid size")
        return GridFunction(self.domain, values)


def from_callable(domain: Domain, n: int, fn) -> GridFunction:
    """Sample a callable on the domain's grid."""
    return GridFunction(domain, fn(grid_points(domain, n)))


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def quadrature_weights(domain: Domain, n: int) -> np.ndarray:
    """Weights w such that w @ f.values realizes integrate(f).

    Circle: the periodic trapezoid rule (spectrally accurate on smooth
    periodic integrands). Interval: composite Simpson; when the panel
    count is odd, Simpson covers all but the last panel, which falls
    back to a single trapezoid.
    """
    if isinstance(domain, Circle):
        return np.full(n, domain.circumference / n)
    h = (domain.b - domain.a) / (n - 1)
    w = np.zeros(n)
    head = n if n % 2 == 1 else n - 1  # odd-point Simpson portion
    w[0] = 1.0
    w[head - 1] += 1.0
    w[1:head - 1:2] = 4.0
    w[2:head - 1:2] = 2.0
    w *= h / 3.0
    if head != n:
        w[-2] += h / 2.0
        w[-1] += h / 2.0
    return w


def integrate(f: GridFunction) -> float:
    """Integral of f over its domain (trapezoid on circles, Simpson on intervals)."""
    return float(quadrature_weights(f.domain, f.n) @ f.values)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------

def differentiate(f: GridFunction) -> GridFunction:
    """First derivative on the same grid.

    Circles use spectral differentiation (exact for band-limited data,
    Nyquist mode zeroed on even grids). Intervals use fourth-order
    finite differences: central stencils inside, and least-l1-norm
    closures at the two nodes nearest each end.

    All interval stencils are evaluated on differences of neighbouring
    samples rather than on the raw values; for smooth data those
    subtractions are (near) exact, which keeps the rounding noise of
    repeated differentiation close to the floor set by the float64
    representation of the samples themselves.
    """
    v = f.values
    if isinstance(f.domain, Circle):
        n = f.n
        spectrum = np.fft.rfft(v)
        freqs = np.fft.rfftfreq(n, d=f.domain.circumference / n)
        spectrum *= 2j * np.pi * freqs
        if n % 2 == 0:
            spectrum[-1] = 0.0  # derivative of the Nyquist mode is unrepresentable
        return GridFunction(f.domain, np.fft.irfft(spectrum, n=n))

    h = (f.domain.b - f.domain.a) / (f.n - 1)
    d = np.empty_like(v)
    # interior: (f[i-2] - 8 f[i-1] + 8 f[i+1] - f[i+2]) / 12h
    d[2:-2] = (8.0 * (v[3:-1] - v[1:-3]) - (v[4:] - v[:-4])) / (12.0 * h)
    # One node in: least-l1-norm fourth-order stencil on offsets {-1,1,2,4,5},
    # coefficients (-13/30, 1/12, 1/2, -7/30, 1/12); sum |c| = 4/3 versus 19/6
    # for the contiguous five-point choice.
    d[1] = (
        -13.0 / 30.0 * (v[0] - v[1])
        + 1.0 / 12.0 * (v[2] - v[1])
        + 0.5 * (v[3] - v[1])
        - 7.0 / 30.0 * (v[5] - v[1])
        + 1.0 / 12.0 * (v[6] - v[1])
    ) / h
    d[-2] = -(
        -13.0 / 30.0 * (v[-1] - v[-2])
        + 1.0 / 12.0 * (v[-3] - v[-2])
        + 0.5 * (v[-4] - v[-2])
        - 7.0 / 30.0 * (v[-6] - v[-2])
        + 1.0 / 12.0 * (v[-7] - v[-2])
    ) / h
    # Boundary: least-l1-norm one-sided fourth-order stencil on nodes
    # {0,1,4,7,8}, coefficients (-85/56, 16/9, -7/18, 16/63, -1/8);
    # sum |c| = 4.06 versus 32/3 for the contiguous five-point stencil,
    # which keeps repeated differentiation of float64 samples near the
    # representation-noise floor.
    d[0] = (
        16.0 / 9.0 * (v[1] - v[0])
        - 7.0 / 18.0 * (v[4] - v[0])
        + 16.0 / 63.0 * (v[7] - v[0])
        - 0.125 * (v[8] - v[0])
    ) / h
    d[-1] = -(
        16.0 / 9.0 * (v[-2] - v[-1])
        - 7.0 / 18.0 * (v[-5] - v[-1])
        + 16.0 / 63.0 * (v[-8] - v[-1])
        - 0.125 * (v[-9] - v[-1])
    ) / h
    return GridFunction(f.domain, d)


# ---------------------------------------------------------------------------
# Fourier representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FourierSeries:
    """Two-sided coefficient vector a_n, |n| <= n_max, of a periodic function.

    ``coefficients[k]`` stores a_{k - n_max}. Real-valued functions have
    a_{-n} = conj(a_n); constructors in this module enforce that exactly,
    but hand-built series may violate it, which downstream operations
    detect and reject.
    """

    circumference: float
    coefficients: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.circumference) and self.circumference > 0):
            raise InvalidInputError("circumference must be positive and finite")
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise InvalidInputError("coefficients must have odd length 2*n_max + 1")
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def n_max(self) -> int:
        return (self.coefficients.size - 1) // 2

    def coefficient(self, n: int) -> complex:
        if abs(n) > self.n_max:
            return 0.0 + 0.0j
        return complex(self.coefficients[n + self.n_max])

    def hermitian_defect(self) -> float:
        """max |a_{-n} - conj(a_n)|; zero for real-valued functions."""
        c = self.coefficients
        return float(np.max(np.abs(c[::-1] - np.conj(c))))

    def mass(self) -> float:
        """sum |a_n|^2, the squared L2 norm in the unit-mass measure."""
        return float(np.sum(np.abs(self.coefficients) ** 2))


def fourier_from_dict(circumference: float, entries: dict[int, complex]) -> FourierSeries:
    """Build a series from a sparse {n: a_n} mapping."""
    if not entries:
        raise InvalidInputError("need at least one coefficient")
    n_max = max(abs(n) for n in entries)
    coeffs = np.zeros(2 * n_max + 1, dtype=complex)
    for n, a in entries.items():
        coeffs[n + n_max] = a
    return FourierSeries(circumference, coeffs)


def to_fourier(f: GridFunction, n_max: int) -> FourierSeries:
    """Coefficients a_n = (1/L) * integral f(x) exp(-2*pi*i*n*x/L) dx.

    Computed with the periodic trapezoid rule (one FFT); conjugate
    symmetry is enforced exactly by averaging a_n with conj(a_{-n}).
    """
    if not isinstance(f.domain, Circle):
        raise DomainMismatchError("Fourier analysis needs a circle domain")
    if n_max < 0:
        raise ParamOutOfRangeError("n_max must be nonnegative")
    if 2 * n_max + 1 > f.n:
        raise TruncationTooLargeError(
            f"2*n_max + 1 = {2 * n_max + 1} exceeds the {f.n} grid samples"
        )
    dft = np.fft.fft(f.values) / f.n
    idx = np.arange(-n_max, n_max + 1) % f.n
    coeffs = dft[idx]
    coeffs = 0.5 * (coeffs + np.conj(coeffs[::-1]))
    return FourierSeries(f.domain.circumference, coeffs)


def from_fourier(series: FourierSeries, n: int) -> GridFunction:
    """Pointwise synthesis on the n-point periodic grid.

    The imaginary residue of the synthesis must stay below 1e-10; larger
    residues mean the coefficients do not describe a real function.
    """
    n_max = series.n_max
    if n < 2 * n_max + 1:
        raise TruncationTooLargeError(
            f"need n >= {2 * n_max + 1} samples to hold modes up to {n_max}"
        )
    spectrum = np.zeros(n, dtype=complex)
    idx = np.arange(-n_max, n_max + 1) % n
    np.add.at(spectrum, idx, series.coefficients)
    values = np.fft.ifft(spectrum) * n
    residue = float(np.max(np.abs(values.imag)))
    if residue > IMAG_TOL:
        raise NotRealValuedError(
            f"imaginary residue {residue:.3e} exceeds {IMAG_TOL:.0e}"
        )
    return GridFunction(Circle(series.circumference), values.real)


# ---------------------------------------------------------------------------
# Closed-form sample families
# ---------------------------------------------------------------------------

class Family(str, Enum):
    """Named closed-form families used throughout the experiments."""

    CONSTANT = "constant"
    COSINE_MODE = "cosine_mode"
    SHARPNESS = "sharpness"
    WANG = "wang"
    RANDOM_TRIG = "random_trig"


def _require_unit_interval(domain: Domain, family: Family) -> None:
    if not is_unit_interval(domain):
        raise DomainMismatchError(f"family {family.value} requires the interval [0, 1]")


def sample_family(
    family: Family | str,
    params: Sequence[float],
    domain: Domain,
    n: int,
) -> GridFunction:
    """Exact samples of a named closed-form family.

    Families and parameters:
      CONSTANT     [c]            constant c on any domain
      COSINE_MODE  [k]            cos(k*pi*u) on intervals, cos(2*pi*k*u)
                                  on circles, u the normalized coordinate
      SHARPNESS    [eps]          sqrt(1 - eps^2) + sqrt(2)*eps*cos(pi*x)
                                  on [0, 1], 0 < eps < 1
      WANG         [eps]          exp(-eps*cos(pi*x)) on [0, 1], 0 < eps < 1
      RANDOM_TRIG  [seed, modes]  trigonometric polynomial with N(0,1)/k^2
                                  coefficients drawn from the seed
    """
    try:
        family = Family(family)
    except ValueError:
        raise UnknownFamilyError(f"unknown family {family!r}") from None
    params = list(params)
    x = grid_points(domain, n)

    if family is Family.CONSTANT:
        (c,) = _family_params(family, params, 1)
        if not math.isfinite(c):
            raise ParamOutOfRangeError("constant must be finite")
        return GridFunction(domain, np.full(n, c))

    if family is Family.COSINE_MODE:
        (k,) = _family_params(family, params, 1)
        mode = int(k)
        if mode != k or mode < 1:
            raise ParamOutOfRangeError("cosine mode index must be an integer >= 1")
        u = (x - domain.a) / domain.length if isinstance(domain, Interval) else x / domain.length
        freq = math.pi * mode if isinstance(domain, Interval) else 2.0 * math.pi * mode
        return GridFunction(domain, np.cos(freq * u))

    if family is Family.SHARPNESS:
        (eps,) = _family_params(family, params, 1)
        _check_eps(eps)
        _require_unit_interval(domain, family)
        return GridFunction(domain, math.sqrt(1.0 - eps * eps) + math.sqrt(2.0) * eps * np.cos(math.pi * x))

    if family is Family.WANG:
        (eps,) = _family_params(family, params, 1)
        _check_eps(eps)
        _require_unit_interval(domain, family)
        return GridFunction(domain, np.exp(-eps * np.cos(math.pi * x)))

    # RANDOM_TRIG
    seed, modes = _family_params(family, params, 2)
    seed_i, modes_i = int(seed), int(modes)
    if seed_i != seed or seed_i < 0:
        raise ParamOutOfRangeError("seed must be a nonnegative integer")
    if modes_i != modes or modes_i < 1:
        raise ParamOutOfRangeError("mode count must be an integer >= 1")
    rng = np.random.default_rng(seed_i)
    u = (x - domain.a) / domain.length if isinstance(domain, Interval) else x / domain.length
    values = np.full(n, rng.standard_normal())
    if isinstance(domain, Interval):
        # Cosine-only series: derivative vanishes at both endpoints, which
        # keeps the even reflection of these samples smooth.
        for k in range(1, modes_i + 1):
            values += rng.standard_normal() / k**2 * np.cos(k * math.pi * u)
    else:
        for k in range(1, modes_i + 1):
            a, b = rng.standard_normal(2)
            values += (a * np.cos(2.0 * math.pi * k * u) + b * np.sin(2.0 * math.pi * k * u)) / k**2
    return GridFunction(domain, values)


def _family_params(family: Family, params: list[float], count: int) -> list[float]:
    if len(params) != count:
        raise ParamOutOfRangeError(
            f"family {family.value} takes {count} parameter(s), got {len(params)}"
        )
    return params


def _check_eps(eps: float) -> None:
    if not (0.0 < eps < 1.0):
        raise ParamOutOfRangeError(f"eps must lie in (0, 1), got {eps}")


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def write_grid_csv(f: GridFunction, path: str | Path) -> None:
    """CSV with header ``x,value``; circle grids omit the wrap point."""
    x = f.x
    with open(path, "w", newline="") as handle:
        handle.write("x,value\n")
        for xi, vi in zip(x, f.values):
            handle.write(f"{float(xi)!r},{float(vi)!r}\n")


def read_grid_csv(path: str | Path, kind: str) -> GridFunction:
    """Parse a grid CSV; ``kind`` is ``interval`` or ``circle``.

    The x column must be the uniform grid implied by the domain kind;
    malformed rows are reported with their line number.
    """
    if kind not in ("interval", "circle"):
        raise InvalidInputError(f"unknown domain kind {kind!r}")
    xs: list[float] = []
    vs: list[float] = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        for lineno, row in enumerate(reader, start=1):
            if lineno == 1:
                if [c.strip() for c in row] != ["x", "value"]:
                    raise InvalidInputError(f"{path}: line 1: expected header 'x,value'")
                continue
            if not row:
                continue
            if len(row) != 2:
                raise InvalidInputError(f"{path}: line {lineno}: expected 2 fields, got {len(row)}")
            try:
                xs.append(float(row[0]))
                vs.append(float(row[1]))
            except ValueError:
                raise InvalidInputError(f"{path}: line {lineno}: non-numeric field") from None
    if len(xs) < MIN_SAMPLES:
        raise InvalidInputError(f"{path}: need at least {MIN_SAMPLES} rows, got {len(xs)}")
    x = np.asarray(xs)
    n = x.size
    if kind == "interval":
        domain: Domain = Interval(x[0], x[-1])
    else:
        step = x[1] - x[0]
        if step <= 0:
            raise InvalidInputError(f"{path}: x column must be increasing")
        domain = Circle(step * n)
    expected = grid_points(domain, n)
    if not np.allclose(x, expected, rtol=0.0, atol=1e-9 * max(1.0, domain.length)):
        raise InvalidInputError(f"{path}: x column is not the uniform {kind} grid")
    return GridFunction(domain, np.asarray(vs))


def write_fourier_json(series: FourierSeries, path: str | Path) -> None:
    """JSON form ``{circumference, coefficients: [{n, re, im}]}``."""
    payload = {
        "circumference": series.circumference,
        "coefficients": [
            {"n": n, "re": float(series.coefficient(n).real), "im": float(series.coefficient(n).imag)}
            for n in range(-series.n_max, series.n_max + 1)
        ],
    }
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def read_fourier_json(path: str | Path) -> FourierSeries:
    with open(path) as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: invalid JSON: {exc}") from None
    try:
        circumference = float(payload["circumference"])
        entries = {
            int(item["n"]): complex(float(item["re"]), float(item["im"]))
            for item in payload["coefficients"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"{path}: malformed Fourier series payload: {exc}") from None
    return fourier_from_dict(circumference, entries)
