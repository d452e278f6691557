"""A-priori height envelopes on circular annuli and the non-existence verdict.

Any graph of constant mean curvature h on the annulus a <= rho <= b is pinned
between two vertical translates of family profiles that start on the inner
circle: the large-branch profile bounds it from above once shifted to match
the outer maximum M, and the small-branch profile (which exists for every
annulus at h = 1/2, and for a < artanh(2h) otherwise) bounds it from below
once shifted to the outer minimum m. Both envelopes depend only on the
annulus and the outer boundary values. Inner Dirichlet data that exits the
box at rho = a therefore certifies that no solution exists.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import HoleTooLargeError
from .hyperbolic import MAX_RADIUS, RadialFunction
from .profiles import (
    DEFAULT_TOL,
    ProfileParameter,
    as_mean_curvature,
    height,
    param_large,
    param_small,
    slope,
)


@dataclass(frozen=True)
class Annulus:
    """Circular annulus a <= rho <= b in hyperbolic radii, 0 < a < b."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError(f"annulus radii must be finite, got a={self.a!r}, b={self.b!r}")
        if not 0.0 < a < b:
            raise ValueError(f"annulus needs 0 < a < b, got a={a:g}, b={b:g}")
        if b > MAX_RADIUS:
            raise ValueError(f"outer radius {b:g} exceeds the supported maximum {MAX_RADIUS:g}")


@dataclass(frozen=True)
class OuterBoundaryData:
    """Extremes of the prescribed values on the outer circle rho = b."""

    m: float
    M: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.M)):
            raise ValueError("boundary extremes must be finite")
        if self.m > self.M:
            raise ValueError(f"need m <= M, got m={self.m:g} > M={self.M:g}")


def upper_envelope(h, annulus: Annulus, M: float, tol: float = DEFAULT_TOL) -> RadialFunction:
    """Upper bound for any cmc-h graph on the annulus with outer maximum M.

    The large-branch profile starting at rho = a, vertically translated so its
    value at rho = b equals M. Exists for every annulus and every h.
    """
    h = as_mean_curvature(h)
    beta = param_large(h, annulus.a)
    drop = height(h, beta, annulus.b, tol)

    def value(rho: float) -> float:
        return height(h, beta, rho, tol) - drop + M

    def derivative(rho: float) -> float:
        return slope(h, beta, rho)

    return RadialFunction(value, derivative, (annulus.a, annulus.b))


def lower_envelope(h, annulus: Annulus, m: float, tol: float = DEFAULT_TOL) -> RadialFunction:
    """Lower bound for any cmc-h graph on the annulus with outer minimum m.

    The small-branch profile starting at rho = a, translated so its value at
    rho = b equals m. Raises HoleTooLargeError when h < 1/2 and
    a >= artanh(2h), where no such profile exists.
    """
    h = as_mean_curvature(h)
    alpha = param_small(h, annulus.a)
    drop = height(h, alpha, annulus.b, tol)

    def value(rho: float) -> float:
        return height(h, alpha, rho, tol) - drop + m

    def derivative(rho: float) -> float:
        return slope(h, alpha, rho)

    return RadialFunction(value, derivative, (annulus.a, annulus.b))


@dataclass(frozen=True)
class AprioriBounds:
    """Both envelopes over an annulus; ``lower`` is None when the hole is too large."""

    annulus: Annulus
    upper: RadialFunction
    lower: Optional[RadialFunction]
    beta: ProfileParameter
    alpha: Optional[ProfileParameter]
    hole_ok: bool

    def sample(self, n: int = 256) -> np.ndarray:
        """Tabulate (rho, lower, upper) on a uniform grid; lower is NaN when absent."""
        if n < 2:
            raise ValueError(f"need at least 2 sample rows, got n = {n}")
        radii = np.linspace(self.annulus.a, self.annulus.b, int(n))
        upper = np.array([self.upper.value(r) for r in radii])
        if self.lower is None:
            lower = np.full_like(upper, np.nan)
        else:
            lower = np.array([self.lower.value(r) for r in radii])
        return np.column_stack([radii, lower, upper])


def bounding_box(h, annulus: Annulus, data: OuterBoundaryData, tol: float = DEFAULT_TOL) -> AprioriBounds:
    """Assemble both envelopes; the lower one is omitted when the hole is too large."""
    h = as_mean_curvature(h)
    upper = upper_envelope(h, annulus, data.M, tol)
    beta = param_large(h, annulus.a)
    try:
        lower = lower_envelope(h, annulus, data.m, tol)
        alpha = param_small(h, annulus.a)
        hole_ok = True
    except HoleTooLargeError:
        lower, alpha, hole_ok = None, None, False
    return AprioriBounds(annulus, upper, lower, beta, alpha, hole_ok)


class Verdict(enum.Enum):
    """Outcome of comparing inner Dirichlet data against the envelopes at rho = a."""

    VIOLATES_UPPER = "violates_upper"
    VIOLATES_LOWER = "violates_lower"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FeasibilityResult:
    verdict: Verdict
    threshold_upper: float
    threshold_lower: Optional[float]
    margin: float


def dirichlet_feasibility(
    h,
    annulus: Annulus,
    inner_min: float,
    inner_max: float,
    data: OuterBoundaryData,
    tol: float = DEFAULT_TOL,
) -> FeasibilityResult:
    """Decide whether inner Dirichlet data certifiably admits no cmc-h graph.

    Inner data exceeding the upper envelope at rho = a (or undercutting the
    lower one, when it exists) cannot be attained by any solution, so a
    Violates* verdict certifies non-existence. Inconclusive certifies nothing.
    The margin is the violation size for a Violates* verdict and the (negative)
    distance to the nearest threshold otherwise. Shifting all boundary data by
    one constant shifts the thresholds identically and preserves the verdict.
    """
    if inner_min > inner_max:
        raise ValueError(f"need inner_min <= inner_max, got {inner_min:g} > {inner_max:g}")
    box = bounding_box(h, annulus, data, tol)
    t_upper = box.upper.value(annulus.a)
    t_lower = box.lower.value(annulus.a) if box.lower is not None else None
    if inner_max > t_upper:
        return FeasibilityResult(Verdict.VIOLATES_UPPER, t_upper, t_lower, inner_max - t_upper)
    if t_lower is not None and inner_min < t_lower:
        return FeasibilityResult(Verdict.VIOLATES_LOWER, t_upper, t_lower, t_lower - inner_min)
    margin = inner_max - t_upper
    if t_lower is not None:
        margin = max(margin, t_lower - inner_min)
    return FeasibilityResult(Verdict.INCONCLUSIVE, t_upper, t_lower, margin)
