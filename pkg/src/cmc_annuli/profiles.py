"""The rotational constant-mean-curvature profile family over the hyperbolic plane.

For mean curvature h in (0, 1/2] and a parameter alpha > 0 there is a
rotational graph of constant mean curvature h whose generating curve starts,
with vertical tangent and height zero, on the circle of hyperbolic radius
rho0(h, alpha) and is defined for all larger radii. Its slope is

    u(rho) = (2h*cosh(rho) - alpha) / sqrt(sinh(rho)^2 - (2h*cosh(rho) - alpha)^2)

and the height profile is the integral of the slope from rho0. The family
splits at alpha = 2h:

    small branch (alpha < 2h): slope >= 0, profile rises from its circle;
    neck (alpha = 2h):         rho0 = 0 and the slope limit at 0 is finite;
    large branch (alpha > 2h): profile dips below zero near its circle, then
                               rises and eventually grows without bound.

Inverse parametrisations by the starting radius are closed forms,
2h*cosh(rho) -/+ sinh(rho); for h < 1/2 the small branch only exists for
starting radii below artanh(2h) (the "hole threshold"), while at h = 1/2 both
branches reach every radius.

Numerics: rho0 is evaluated through the cancellation-free identity
exp(rho0) = (1+2h)/(alpha + sqrt(alpha^2 + 1 - 4h^2)) (one sign of the
exponent per branch), which is h-continuous and reduces to |log(alpha)| at
h = 1/2 exactly. Heights integrate the slope after the substitution
r = rho0 + s^2, which removes the inverse-square-root endpoint singularity;
the transformed integrand has the finite limit
sign * sqrt(2*sinh(rho0) / ((1-4h^2)*cosh(rho0) + 2h*alpha)) at s = 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import HoleTooLargeError
from .hyperbolic import MAX_RADIUS, RadialFunction, check_radius
from .quadrature import adaptive_quad, layer_breakpoints

#: Default absolute tolerance for height quadrature.
DEFAULT_TOL = 1e-10

#: Relative tolerance used to compare a parameter against the branch point 2h.
PARAM_RTOL = 1e-12

#: Radii this close below a profile's starting radius are treated as on it,
#: absorbing round-trip noise of the inverse parametrisations.
_BOUNDARY_SLACK = 1e-12


class Branch(enum.Enum):
    """Position of the parameter relative to the branch point 2h."""

    SMALL = "small"
    NECK = "neck"
    LARGE = "large"


@dataclass(frozen=True)
class MeanCurvature:
    """The constant h in (0, 1/2]; h = 1/2 is the borderline, hole-free case."""

    h: float

    def __post_init__(self):
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h)):
            raise ValueError(f"mean curvature must be a finite number, got {self.h!r}")
        if not 0.0 < self.h <= 0.5:
            raise ValueError(f"mean curvature must lie in (0, 1/2], got {self.h!r}")

    @property
    def is_half(self) -> bool:
        return self.h == 0.5

    def __float__(self) -> float:
        return float(self.h)


@dataclass(frozen=True)
class ProfileParameter:
    """A family parameter alpha > 0 tagged with its branch."""

    alpha: float
    branch: Branch

    @classmethod
    def classify(cls, h, alpha) -> "ProfileParameter":
        h = as_mean_curvature(h)
        alpha = float(alpha)
        if not (math.isfinite(alpha) and alpha > 0.0):
            raise ValueError(f"profile parameter must be positive and finite, got {alpha!r}")
        gap = alpha - 2.0 * h
        if abs(gap) <= PARAM_RTOL * max(alpha, 2.0 * h):
            branch = Branch.NECK
        elif gap < 0.0:
            branch = Branch.SMALL
        else:
            branch = Branch.LARGE
        return cls(alpha, branch)

    def __float__(self) -> float:
        return float(self.alpha)


def as_mean_curvature(h) -> float:
    """Coerce h (float or MeanCurvature) to a validated float."""
    if isinstance(h, MeanCurvature):
        return h.h
    return MeanCurvature(float(h)).h


def as_parameter(h, alpha) -> ProfileParameter:
    """Coerce alpha (float or ProfileParameter) to a branch-tagged parameter."""
    if isinstance(alpha, ProfileParameter):
        return alpha
    return ProfileParameter.classify(h, alpha)


def _small_value(h: float, rho: float) -> float:
    # 2h*cosh(rho) - sinh(rho), in exponential form: exact at h = 1/2 and free
    # of the cosh/sinh cancellation at large rho
    return 0.5 * ((1.0 + 2.0 * h) * math.exp(-rho) - (1.0 - 2.0 * h) * math.exp(rho))


def _large_value(h: float, rho: float) -> float:
    # 2h*cosh(rho) + sinh(rho)
    return 0.5 * ((1.0 + 2.0 * h) * math.exp(rho) - (1.0 - 2.0 * h) * math.exp(-rho))


def hole_threshold(h) -> float:
    """Largest starting radius reached by the small branch.

    Returns artanh(2h) for h < 1/2 (equal to arccosh(1/sqrt(1-4h^2))) and
    math.inf for h = 1/2, where the small branch reaches every radius.
    """
    h = as_mean_curvature(h)
    if h == 0.5:
        return math.inf
    return math.atanh(2.0 * h)


def boundary_radius(h, alpha) -> float:
    """Starting radius rho0 of the profile with parameter alpha.

    Zero exactly when alpha = 2h, strictly decreasing in alpha below 2h and
    strictly increasing above.
    """
    h = as_mean_curvature(h)
    param = as_parameter(h, alpha)
    if param.branch is Branch.NECK:
        return 0.0
    a = param.alpha
    # exp(+/-rho0) = (1+2h)/(alpha + sqrt(alpha^2 + 1 - 4h^2)); 1-2h is exact,
    # so the radicand and the quotient carry no cancellation for any h <= 1/2
    spread = math.sqrt((1.0 - 2.0 * h) * (1.0 + 2.0 * h))
    x = (1.0 + 2.0 * h) / (a + math.hypot(a, spread))
    return abs(math.log(x))


def param_small(h, rho) -> ProfileParameter:
    """Small-branch parameter of the profile starting at radius rho.

    Closed form 2h*cosh(rho) - sinh(rho); defined for rho < artanh(2h) when
    h < 1/2 (raises HoleTooLargeError at or beyond) and for every radius when
    h = 1/2, where it equals exp(-rho) exactly.
    """
    h = as_mean_curvature(h)
    rho = check_radius(rho)
    threshold = hole_threshold(h)
    if rho >= threshold:
        raise HoleTooLargeError(h, rho, threshold)
    value = _small_value(h, rho)
    if value <= 0.0:  # rounding guard; unreachable for rho clearly below threshold
        raise HoleTooLargeError(h, rho, threshold)
    return ProfileParameter.classify(h, value)


def param_large(h, rho) -> ProfileParameter:
    """Large-branch parameter of the profile starting at radius rho.

    Closed form 2h*cosh(rho) + sinh(rho), total on [0, MAX_RADIUS]; equals
    exp(rho) exactly at h = 1/2.
    """
    h = as_mean_curvature(h)
    rho = check_radius(rho)
    return ProfileParameter.classify(h, _large_value(h, rho))


def slope(h, alpha, rho) -> float:
    """Slope u(rho) of the profile, signed infinity on its starting circle.

    The radicand factors as (alpha - small(rho)) * (large(rho) - alpha) with
    the closed-form branch values, so it is evaluated without squaring. On the
    small branch the vertical approach is from +inf, on the large branch from
    -inf; the neck profile has the finite limit 0 at rho = 0 (slope ~ h*rho).
    """
    h = as_mean_curvature(h)
    param = as_parameter(h, alpha)
    rho = check_radius(rho)
    a = param.alpha
    rho0 = boundary_radius(h, param)
    if rho < rho0 - _BOUNDARY_SLACK:
        raise ValueError(
            f"rho = {rho:g} is inside the starting circle rho0 = {rho0:g} "
            "of this profile"
        )
    if param.branch is Branch.NECK:
        if rho == 0.0:
            return 0.0
    elif rho <= rho0:
        return math.inf if param.branch is Branch.SMALL else -math.inf
    radicand = (a - _small_value(h, rho)) * (_large_value(h, rho) - a)
    if radicand <= 0.0:
        # only reachable a few ulp above rho0, where the true slope is vertical
        return math.inf if param.branch is Branch.SMALL else -math.inf
    return (2.0 * h * math.cosh(rho) - a) / math.sqrt(radicand)


def _desingularized_integrand(
    h: float, param: ProfileParameter, rho0: float
) -> Callable[[float], float]:
    """Integrand of the height integral after the substitution r = rho0 + s^2.

    The radicand factors are evaluated as (slack at rho0) + (growth since
    rho0) with the growth in expm1 form, keeping full relative accuracy right
    up to the vertical circle.
    """
    a = param.alpha
    if param.branch is Branch.NECK:
        start = 0.0
    else:
        # lim_{s->0} 2s*u(rho0+s^2), from the linear vanishing of the radicand
        d = (1.0 - 2.0 * h) * (1.0 + 2.0 * h) * math.cosh(rho0) + 2.0 * h * a
        start = math.sqrt(2.0 * math.sinh(rho0) / d)
        if param.branch is Branch.LARGE:
            start = -start

    slack_small = a - _small_value(h, rho0)  # first factor at r = rho0
    slack_large = _large_value(h, rho0) - a  # second factor at r = rho0
    exp_plus, exp_minus = math.exp(rho0), math.exp(-rho0)
    coef_plus, coef_minus = 1.0 + 2.0 * h, 1.0 - 2.0 * h

    def g(s: float) -> float:
        d2 = s * s
        up = math.expm1(d2)
        down = -math.expm1(-d2)
        grow_small = 0.5 * (coef_plus * exp_minus * down + coef_minus * exp_plus * up)
        grow_large = 0.5 * (coef_plus * exp_plus * up + coef_minus * exp_minus * down)
        radicand = (slack_small + grow_small) * (slack_large + grow_large)
        if radicand <= 0.0:
            return start
        r = rho0 + d2
        return 2.0 * s * (2.0 * h * math.cosh(r) - a) / math.sqrt(radicand)

    return g


def _profile_breakpoints(h: float, alpha: float, rho0: float, s_max: float) -> list[float]:
    """Turnover scales of the radicand factors right above the starting circle."""
    return layer_breakpoints(
        (
            (alpha - _small_value(h, rho0), math.cosh(rho0) - 2.0 * h * math.sinh(rho0)),
            (_large_value(h, rho0) - alpha, math.cosh(rho0) + 2.0 * h * math.sinh(rho0)),
        ),
        s_max,
    )


def height(h, alpha, rho, tol: float = DEFAULT_TOL) -> float:
    """Profile height at radius rho, zero on the starting circle.

    Computed by adaptive quadrature of the slope after the desingularizing
    substitution, to absolute tolerance ``tol``. Nonnegative and nondecreasing
    on the small branch; dips below zero near the starting circle on the large
    branch.
    """
    h = as_mean_curvature(h)
    param = as_parameter(h, alpha)
    rho = check_radius(rho)
    rho0 = boundary_radius(h, param)
    if rho < rho0 - _BOUNDARY_SLACK:
        raise ValueError(
            f"rho = {rho:g} is inside the starting circle rho0 = {rho0:g} "
            "of this profile"
        )
    if rho <= rho0:
        return 0.0
    g = _desingularized_integrand(h, param, rho0)
    s_max = math.sqrt(rho - rho0)
    return adaptive_quad(g, 0.0, s_max, tol, points=_profile_breakpoints(h, param.alpha, rho0, s_max))


def sample_profile(h, alpha, rho_max, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Tabulate (rho, height, slope) at n radii from the starting circle to rho_max.

    The first row sits on the starting circle with height exactly zero and the
    vertical-slope sentinel (finite for the neck profile). Heights accumulate
    panel by panel, so consecutive differences equal the single-panel
    quadratures; only the first panel needs the desingularizing substitution.
    """
    h = as_mean_curvature(h)
    param = as_parameter(h, alpha)
    rho_max = check_radius(rho_max, name="rho_max")
    n = int(n)
    if n < 2:
        raise ValueError(f"need at least 2 sample rows, got n = {n}")
    rho0 = boundary_radius(h, param)
    if rho_max <= rho0:
        raise ValueError(
            f"rho_max = {rho_max:g} must exceed the starting radius rho0 = {rho0:g}"
        )

    radii = np.linspace(rho0, rho_max, n)
    heights = np.empty(n)
    heights[0] = 0.0
    g = _desingularized_integrand(h, param, rho0)
    first_s = math.sqrt(radii[1] - rho0)
    heights[1] = adaptive_quad(
        g, 0.0, first_s, tol, points=_profile_breakpoints(h, param.alpha, rho0, first_s)
    )
    for k in range(2, n):
        panel = adaptive_quad(lambda r: slope(h, param, r), radii[k - 1], radii[k], tol)
        heights[k] = heights[k - 1] + panel
    slopes = np.array([slope(h, param, r) for r in radii])
    return np.column_stack([radii, heights, slopes])


@dataclass(frozen=True)
class HeightProfile:
    """An immutable, quadrature-backed profile; safe to share across threads."""

    h: float
    param: ProfileParameter
    rho0: float
    tol: float = DEFAULT_TOL

    def height(self, rho) -> float:
        return height(self.h, self.param, rho, self.tol)

    def slope(self, rho) -> float:
        return slope(self.h, self.param, rho)

    def sample(self, rho_max, n: int) -> np.ndarray:
        return sample_profile(self.h, self.param, rho_max, n, self.tol)

    def as_radial_function(self, upper: float = MAX_RADIUS) -> RadialFunction:
        return RadialFunction(self.height, self.slope, (self.rho0, upper))


def height_profile(h, alpha, tol: float = DEFAULT_TOL) -> HeightProfile:
    """Build a HeightProfile for the given curvature and parameter."""
    h = as_mean_curvature(h)
    param = as_parameter(h, alpha)
    return HeightProfile(h, param, boundary_radius(h, param), tol)
