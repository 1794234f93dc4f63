"""Effective support size of univariate continuous densities.

For a density ``f`` the effective support size of order ``a`` is
``(integral f**a)**(1/(1-a))``, ``exp`` of the differential entropy at order
one and ``1 / sup f`` in the upper limit. The value is a length in the units
of ``x`` and, unlike the discrete case, may fall below 1. It is never
clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import entr

from .core import AlphaLike, AlphaParam
from .errors import DomainError, NormalizationError, UnsupportedFamily
from .quadrature import adaptive_simpson, romberg_piecewise_linear

__all__ = [
    "DensitySpec",
    "Exponential",
    "Gaussian",
    "Grid",
    "Uniform",
    "default_domain",
    "ess_continuous_closed_form",
    "ess_continuous_quadrature",
    "make_density",
]

GRID_MASS_TOL = 1e-6
GAUSSIAN_HALF_WIDTH = 8.0  # in standard deviations
EXPONENTIAL_WIDTH = 40.0  # in units of 1/beta


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite real, got {value!r}")
    return value


@dataclass(frozen=True)
class Gaussian:
    mu: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError("mu must be finite")
        object.__setattr__(self, "sigma2", _positive("sigma2", self.sigma2))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def logpdf(self, x: float) -> float:
        return -0.5 * math.log(2 * math.pi * self.sigma2) - (x - self.mu) ** 2 / (2 * self.sigma2)


@dataclass(frozen=True)
class Exponential:
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "beta", _positive("beta", self.beta))

    def logpdf(self, x: float) -> float:
        if x < 0:
            return -math.inf
        return math.log(self.beta) - self.beta * x


@dataclass(frozen=True)
class Uniform:
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.hi > self.lo):
            raise DomainError(f"need finite lo < hi, got [{self.lo}, {self.hi}]")

    def logpdf(self, x: float) -> float:
        if self.lo <= x <= self.hi:
            return -math.log(self.hi - self.lo)
        return -math.inf


@dataclass(frozen=True, eq=False)
class Grid:
    """Tabulated density, linearly interpolated between strictly ascending points."""

    points: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        x = np.array(self.points, dtype=float)
        f = np.array(self.densities, dtype=float)
        if x.ndim != 1 or x.shape != f.shape or x.size < 2:
            raise DomainError("grid needs two equal-length sequences of at least 2 values")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f))):
            raise DomainError("grid values must be finite")
        if np.any(np.diff(x) <= 0):
            raise DomainError("grid points must be strictly ascending")
        if np.any(f < 0):
            raise DomainError("grid densities must be nonnegative")
        mass = float(np.trapezoid(f, x))
        if abs(mass - 1.0) > GRID_MASS_TOL:
            raise NormalizationError(f"grid density integrates to {mass!r}, not 1")
        x.flags.writeable = False
        f.flags.writeable = False
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "densities", f)

    def __repr__(self) -> str:
        return f"Grid(<{self.points.size} points on [{self.points[0]}, {self.points[-1]}]>)"


DensitySpec = Union[Gaussian, Exponential, Uniform, Grid]

_FAMILIES = {
    "gaussian": (Gaussian, {"mu", "sigma2"}),
    "normal": (Gaussian, {"mu", "sigma2"}),
    "exponential": (Exponential, {"beta"}),
    "uniform": (Uniform, {"lo", "hi"}),
}


def make_density(family: str, **params: float) -> DensitySpec:
    """Construct a named family, e.g. ``make_density("gaussian", sigma2=4)``."""
    try:
        cls, allowed = _FAMILIES[family.lower()]
    except KeyError:
        raise UnsupportedFamily(f"unknown family {family!r}") from None
    unknown = set(params) - allowed
    if unknown:
        raise DomainError(f"unknown parameter(s) for {family}: {', '.join(sorted(unknown))}")
    return cls(**{k: float(v) for k, v in params.items()})


def ess_continuous_closed_form(d: DensitySpec, a: AlphaLike) -> float:
    """Closed-form effective support size for the named families.

    Raises
    ------
    UnsupportedFamily
        For :class:`Grid` densities.
    """
    a = AlphaParam.coerce(a)
    if isinstance(d, Gaussian):
        width = math.sqrt(2 * math.pi * d.sigma2)
        if a.is_inf:
            return width
        if a.is_one:
            return math.sqrt(2 * math.e * math.pi * d.sigma2)
        return width / a.value ** (1.0 / (2.0 * (1.0 - a.value)))
    if isinstance(d, Exponential):
        if a.is_inf:
            return 1.0 / d.beta
        if a.is_one:
            return math.e / d.beta
        return a.value ** (1.0 / (a.value - 1.0)) / d.beta
    if isinstance(d, Uniform):
        return d.hi - d.lo
    raise UnsupportedFamily(f"no closed form for {type(d).__name__}")


def default_domain(d: DensitySpec, a: AlphaLike = None) -> tuple[float, float]:
    """Truncated integration interval for ``d`` at order ``a``.

    ``f**a`` has heavier tails than ``f`` when ``a < 1``, so the interval
    widens by ``1/sqrt(a)`` (Gaussian) or ``1/a`` (Exponential) there.
    """
    a = AlphaParam.coerce(a) if a is not None else None
    stretch = a.value if a is not None and a.kind.name == "FINITE" and a.value < 1 else 1.0
    if isinstance(d, Gaussian):
        half = GAUSSIAN_HALF_WIDTH * d.sigma / math.sqrt(stretch)
        return d.mu - half, d.mu + half
    if isinstance(d, Exponential):
        return 0.0, EXPONENTIAL_WIDTH / (d.beta * stretch)
    if isinstance(d, Uniform):
        return d.lo, d.hi
    if isinstance(d, Grid):
        return float(d.points[0]), float(d.points[-1])
    raise UnsupportedFamily(f"unsupported density {d!r}")


def _sup_density(logpdf, lo, hi, samples=4097):
    from scipy.optimize import minimize_scalar

    xs = np.linspace(lo, hi, samples)
    logs = np.array([logpdf(x) for x in xs])
    k = int(np.argmax(logs))
    best = logs[k]
    left, right = xs[max(k - 1, 0)], xs[min(k + 1, samples - 1)]
    if right > left:
        res = minimize_scalar(lambda x: -logpdf(x), bounds=(left, right), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -res.fun)
    return math.exp(best)


def _integral_tol(tol, a, estimate):
    # Error budget for the integral such that the resulting Ess is off by at
    # most about tol/2, given a rough value of the integral.
    if a.is_one:
        return 0.5 * tol / math.exp(estimate)
    alpha = a.value
    size = estimate ** (1.0 / (1.0 - alpha))
    return 0.5 * tol * abs(1.0 - alpha) * estimate / size


def ess_continuous_quadrature(
    d: DensitySpec,
    a: AlphaLike,
    domain: tuple[float, float] | None = None,
    tol: float = 1e-8,
) -> float:
    """Effective support size of ``d`` by numerical integration.

    Named families use adaptive Simpson quadrature over ``domain`` (by
    default :func:`default_domain`); grid densities use Romberg refinement
    of the trapezoid rule on their own points. At ``ONE`` the differential
    entropy ``-integral f log f`` is integrated with ``0 log 0 = 0``; at
    ``INF`` the result is ``1 / sup f`` over the domain.

    Parameters
    ----------
    d : DensitySpec
    a : AlphaParam or float
    domain : (float, float), optional
        Integration interval for named families. Not accepted for grids.
    tol : float
        Target absolute error of the returned size. It is translated into an
        error budget for the integral from a coarse first estimate.

    Raises
    ------
    QuadratureError
        Refinement hit its depth or size cap before meeting the budget.
    """
    a = AlphaParam.coerce(a)
    if not tol > 0:
        raise DomainError("tol must be positive")

    if isinstance(d, Grid):
        if domain is not None:
            raise DomainError("grid densities are integrated over their own points")
        x, f = d.points, d.densities
        if np.any(f < 0):
            raise DomainError("grid densities must be nonnegative")
        if a.is_inf:
            return 1.0 / float(f.max())
        if a.is_one:
            g = entr
        else:
            alpha = a.value
            g = lambda v: v**alpha  # noqa: E731
        singular = None
        if not a.is_one and np.any(f == 0) and a.value != round(a.value):
            singular = 1.0 + a.value
        estimate = float(np.trapezoid(g(f), x))
        value, _ = romberg_piecewise_linear(
            g, x, f, _integral_tol(tol, a, estimate), singular_order=singular
        )
        return math.exp(value) if a.is_one else value ** (1.0 / (1.0 - a.value))

    if not isinstance(d, (Gaussian, Exponential, Uniform)):
        raise UnsupportedFamily(f"unsupported density {d!r}")
    lo, hi = default_domain(d, a) if domain is None else map(float, domain)
    if not hi > lo:
        raise DomainError(f"empty domain [{lo}, {hi}]")
    logpdf = d.logpdf

    if a.is_inf:
        return 1.0 / _sup_density(logpdf, lo, hi)
    if a.is_one:
        def integrand(x):
            lf = logpdf(x)
            return 0.0 if lf == -math.inf else -math.exp(lf) * lf
    else:
        alpha = a.value

        def integrand(x):
            return math.exp(alpha * logpdf(x))

    xs = np.linspace(lo, hi, 257)
    estimate = float(np.trapezoid([integrand(x) for x in xs], xs))
    value, _ = adaptive_simpson(integrand, lo, hi, _integral_tol(tol, a, estimate))
    return math.exp(value) if a.is_one else value ** (1.0 / (1.0 - a.value))
