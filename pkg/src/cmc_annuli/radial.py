"""Radial Dirichlet solver built on the conserved flux, used as an oracle.

Integrating the divergence form of the curvature operator once in rho shows
that every rotational graph with constant mean curvature h satisfies

    sinh(rho) * u'(rho) / sqrt(1 + u'(rho)^2) = 2h*cosh(rho) + C

for some flux constant C, so u' = F / sqrt(sinh^2 - F^2) with
F = 2h*cosh + C. Family profiles are the C = -alpha members, and every radial
solution is a vertical translate of a slope field of this form. Solving the
radial Dirichlet problem on an annulus therefore reduces to a one-dimensional
root find in C, and the achievable drops u(a) - u(b) form an open interval
whose endpoints are exactly the envelope drops of the a-priori estimates.
That makes this module an independent check of both the estimates and their
sharpness in the rotational class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .errors import InfeasibleBoundaryError, InfeasibleFluxError, NonConvergenceError
from .estimates import Annulus
from .hyperbolic import RadialFunction
from .profiles import (
    DEFAULT_TOL,
    _large_value,
    _small_value,
    as_mean_curvature,
    height,
    hole_threshold,
    param_large,
    param_small,
)
from .quadrature import adaptive_quad, layer_breakpoints

@dataclass(frozen=True)
class FeasibleDropInterval:
    """Achievable range of u(a) - u(b) over all radial solutions; open interval."""

    d_min: float
    d_max: float


@dataclass(frozen=True)
class RadialSolution:
    """A radial solution: flux constant, vertical shift, and the height function.

    ``shift`` is the vertical translation relative to the zero-anchored family
    profile with parameter -C when C < 0, and simply u(a) otherwise.
    ``evaluator``(b) reproduces the prescribed outer value exactly.
    """

    C: float
    shift: float
    evaluator: RadialFunction


def feasible_flux_interval(h, annulus: Annulus) -> tuple[float, float]:
    """Open interval of flux constants whose graphs span the whole annulus.

    Both constraints bind at rho = a: sinh - 2h*cosh is increasing and
    -sinh - 2h*cosh decreasing for h <= 1/2, so the interval is
    (-large(a), -small(a)) with the closed-form branch values at a. Its
    closure endpoints are the fluxes of the two extremal profiles starting on
    the inner circle (the upper endpoint is >= 0 when the hole is too large
    for a small-branch profile).
    """
    h = as_mean_curvature(h)
    return (-_large_value(h, annulus.a), -_small_value(h, annulus.a))


def _graph_radicand(h: float, C: float, rho: float) -> float:
    # sinh^2 - F^2 factored through the branch values, avoiding squared cancellation
    return (-_small_value(h, rho) - C) * (_large_value(h, rho) + C)


def _drop_integrand(h: float, C: float, a: float):
    """Integrand of the drop integral after the substitution r = a + s^2.

    The radicand factors are evaluated as (slack at a) + (growth since a) with
    the growth in expm1 form, which keeps full relative accuracy however close
    C sits to an extremal flux; the naive difference form loses the boundary
    layer to rounding.
    """
    slack_small = -_small_value(h, a) - C  # first factor at r = a
    slack_large = _large_value(h, a) + C  # second factor at r = a
    exp_plus, exp_minus = math.exp(a), math.exp(-a)
    coef_plus, coef_minus = 1.0 + 2.0 * h, 1.0 - 2.0 * h

    if slack_small <= 0.0 or slack_large <= 0.0:
        # extremal flux: the radicand vanishes linearly at a
        f_a = 2.0 * h * math.cosh(a) + C
        d = 2.0 * math.sinh(a) * (math.cosh(a) - 2.0 * h * f_a)
        endpoint = 2.0 * f_a / math.sqrt(d)
    else:
        endpoint = 0.0

    def g(s: float) -> float:
        d = s * s
        up = math.expm1(d)
        down = -math.expm1(-d)
        # alpha_small(a) - alpha_small(a + d) and beta_large(a + d) - beta_large(a)
        grow_small = 0.5 * (coef_plus * exp_minus * down + coef_minus * exp_plus * up)
        grow_large = 0.5 * (coef_plus * exp_plus * up + coef_minus * exp_minus * down)
        radicand = (slack_small + grow_small) * (slack_large + grow_large)
        if radicand <= 0.0:
            return endpoint
        r = a + d
        return 2.0 * s * (2.0 * h * math.cosh(r) + C) / math.sqrt(radicand)

    return g


def _layer_breakpoints(h: float, C: float, a: float, s_max: float) -> list[float]:
    """Turnover scales of the near-vertical boundary layer at rho = a."""
    return layer_breakpoints(
        (
            (-_small_value(h, a) - C, math.cosh(a) - 2.0 * h * math.sinh(a)),
            (_large_value(h, a) + C, math.cosh(a) + 2.0 * h * math.sinh(a)),
        ),
        s_max,
    )


def integrate_radial(h, annulus: Annulus, C: float, tol: float = DEFAULT_TOL) -> float:
    """Drop u(a) - u(b) of the radial solution with flux constant C.

    Equals -integral over [a, b] of (2h*cosh + C)/sqrt(sinh^2 - (2h*cosh + C)^2),
    strictly decreasing in C. Raises InfeasibleFluxError when C violates the
    graph condition |2h*cosh(rho) + C| <= sinh(rho) somewhere on the annulus
    (endpoint equality, the vertical extremal profiles, is allowed).
    """
    h = as_mean_curvature(h)
    C = float(C)
    c_lo, c_hi = feasible_flux_interval(h, annulus)
    if not c_lo <= C <= c_hi:
        raise InfeasibleFluxError(
            f"flux constant {C:g} outside the graph interval [{c_lo:g}, {c_hi:g}] "
            f"for the annulus [{annulus.a:g}, {annulus.b:g}]"
        )
    # below the rounding floor the layer at a is indistinguishable from the
    # vertical extremal one; use the latter's clean limit integrand
    floor = 32.0 * 2.220446049250313e-16 * (abs(c_lo) + abs(c_hi))
    if c_hi - C < floor:
        C = c_hi
    elif C - c_lo < floor:
        C = c_lo
    g = _drop_integrand(h, C, annulus.a)
    s_max = math.sqrt(annulus.b - annulus.a)
    return -adaptive_quad(g, 0.0, s_max, tol, points=_layer_breakpoints(h, C, annulus.a, s_max))


def extremal_drops(h, annulus: Annulus, tol: float = DEFAULT_TOL) -> FeasibleDropInterval:
    """Endpoints of the achievable-drop interval.

    d_max is the drop of the large-branch extremal profile; d_min that of the
    small-branch one when the hole admits it, and otherwise the limiting drop
    at the upper end of the flux interval (where no family profile exists but
    the integral still converges).
    """
    h = as_mean_curvature(h)
    beta = param_large(h, annulus.a)
    d_max = -height(h, beta, annulus.b, tol)
    alpha_value = _small_value(h, annulus.a)
    if alpha_value > 0.0 and annulus.a < hole_threshold(h):
        alpha = param_small(h, annulus.a)
        d_min = -height(h, alpha, annulus.b, tol)
    else:
        d_min = integrate_radial(h, annulus, -alpha_value, tol)
    return FeasibleDropInterval(d_min, d_max)


def solve_radial(
    h,
    annulus: Annulus,
    u_a: float,
    u_b: float,
    tol: float = DEFAULT_TOL,
) -> RadialSolution:
    """Solve the radial Dirichlet problem u(a) = u_a, u(b) = u_b.

    Root-finds the flux constant on the strictly monotone drop over the
    closed feasible interval. Raises InfeasibleBoundaryError, with the
    achievable interval attached, when the requested drop lies outside the
    open achievable interval, consistent with the a-priori estimates.
    """
    h = as_mean_curvature(h)
    u_a, u_b = float(u_a), float(u_b)
    target = u_a - u_b
    c_lo, c_hi = feasible_flux_interval(h, annulus)
    span = c_hi - c_lo

    def drop_at(c: float) -> float:
        return integrate_radial(h, annulus, c, tol)

    # extremal fluxes are valid integrands (vertical profiles), so the bracket
    # is the closed interval and exactly the open drop interval is solvable
    f_lo = drop_at(c_lo) - target  # the largest achievable drop residual
    f_hi = drop_at(c_hi) - target
    if not (f_hi < 0.0 < f_lo):
        drops = extremal_drops(h, annulus, tol)
        raise InfeasibleBoundaryError(target, drops.d_min, drops.d_max)

    # The drop has a square-root singularity in C at both bracket ends, so a
    # root find directly in C cannot resolve near-extremal targets to tol.
    # Substituting C = end -/+ t^2 for the nearer end makes the drop Lipschitz
    # in t there (and harmlessly smooth elsewhere).
    near_lower_end = target >= drop_at(0.5 * (c_lo + c_hi))
    if near_lower_end:
        flux_of = lambda t: min(c_lo + t * t, c_hi)  # clamp: fl(sqrt(span))^2 can overshoot
    else:
        flux_of = lambda t: max(c_hi - t * t, c_lo)

    def objective(t: float) -> float:
        return drop_at(flux_of(t)) - target

    t_star = brentq(objective, 0.0, math.sqrt(span), xtol=1e-15, maxiter=200)
    c_star = flux_of(t_star)
    achieved = drop_at(c_star) - target
    if abs(achieved) > tol:
        raise NonConvergenceError(
            f"flux bisection stalled: drop residual {achieved:g} exceeds tolerance {tol:g}"
        )

    a, b = annulus.a, annulus.b
    g = _drop_integrand(h, c_star, a)
    breakpoints = _layer_breakpoints(h, c_star, a, math.sqrt(b - a))
    total = adaptive_quad(g, 0.0, math.sqrt(b - a), tol, points=breakpoints)

    def value(rho: float) -> float:
        rho = float(rho)
        if not a - 1e-12 <= rho <= b + 1e-12:
            raise ValueError(f"rho = {rho:g} outside the annulus [{a:g}, {b:g}]")
        if rho >= b:
            return u_b
        partial = adaptive_quad(g, 0.0, math.sqrt(max(rho - a, 0.0)), tol, points=breakpoints)
        return u_b - (total - partial)

    def derivative(rho: float) -> float:
        f = 2.0 * h * math.cosh(rho) + c_star
        radicand = _graph_radicand(h, c_star, rho)
        if radicand <= 0.0:
            return math.copysign(math.inf, f)
        return f / math.sqrt(radicand)

    if c_star < 0.0:
        shift = u_b - height(h, -c_star, b, tol)
    else:
        shift = u_a  # no family anchor; the inner value fixes the translate
    return RadialSolution(c_star, shift, RadialFunction(value, derivative, (a, b)))
