"""Closed-form density of A sites and its analytic relatives.

The time-t density of A-occupied sites admits the closed form

    rho_A(t; alpha) = (1/(4 theta)) * [ 2 theta + (theta^2 - 1) 2 gamma t
                      + (theta^2 + 1) sinh(2 gamma t) - 2 theta cosh(2 gamma t) ]

with gamma = sqrt(alpha beta) and theta = sqrt(alpha/beta). Evaluating that
expression literally is numerically hostile near alpha in {0, 1} (theta runs
to 0 or infinity and the hyperbolic terms cancel catastrophically). Grouping
terms with the identities gamma*theta = alpha and gamma/theta = beta gives an
algebraically equal but cancellation-free arrangement used throughout:

    rho_A(t; alpha) = alpha t - sinh(gamma t)^2 + (t/2) * (sinhc(2 gamma t) - 1)

where sinhc(y) = sinh(y)/y. Each summand is evaluated to full precision
(sinhc - 1 by a short Taylor polynomial, exact for the reachable range
2 gamma t <= 1), and the arrangement is exact at alpha = 0 (gives 0) and
alpha = 1 (gives t) without special branches.

This module also provides the quadrature route

    rho_A(t; alpha) = integral_0^{gamma t} (sqrt(theta) cosh u - sinh(u)/sqrt(theta))^2 du

which serves as an independent numerical oracle, the time derivative, the
small-t and small-alpha series, and level-set inversion in t.
"""

from __future__ import annotations

import math
import warnings

from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import brentq

from .params import ConsistencyError, DensityTriple, ModelParams, derived


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its evaluation budget before converging."""


# Coefficients of sinh(y)/y - 1 = sum_{k>=1} y^(2k) / (2k+1)!.  Nine terms keep
# the truncation below 1e-17 relative for |y| <= 1, which covers 2*gamma*t.
_SINHC_COEFFS = tuple(1.0 / math.factorial(2 * k + 1) for k in range(9, 0, -1))


def _sinhc_m1(y: float) -> float:
    """sinh(y)/y - 1 without subtractive cancellation, for |y| <= 1."""
    q = y * y
    s = 0.0
    for c in _SINHC_COEFFS:
        s = c + q * s
    return q * s


def _rho_unchecked(a: float, t: float) -> float:
    """Core evaluation without domain validation (analytic in t, so finite
    difference stencils may poke slightly past t = 1)."""
    if a == 0.0:
        return 0.0
    if a == 1.0:
        return t
    x = math.sqrt(a * (1.0 - a)) * t
    sh = math.sinh(x)
    return a * t - sh * sh + 0.5 * t * _sinhc_m1(2.0 * x)


def closed_form_rho_A(params: ModelParams) -> float:
    """Density of A sites at time t for deposition probability alpha."""
    return _rho_unchecked(params.alpha, params.t)


def closed_form_rho_A_reference(params: ModelParams) -> float:
    """Literal theta-form evaluation of the closed form.

    Kept as a cross-check target for the rearranged production path; do not
    use near alpha in {0, 1}, where it loses precision and finally divides
    by zero.
    """
    d = derived(params)
    g, th = d.gamma, d.theta
    t = params.t
    return (
        2.0 * th
        + (th * th - 1.0) * 2.0 * g * t
        + (th * th + 1.0) * math.sinh(2.0 * g * t)
        - 2.0 * th * math.cosh(2.0 * g * t)
    ) / (4.0 * th)


def density_triple(params: ModelParams) -> DensityTriple:
    """All three site fractions (A, B, empty) at (t, alpha).

    rho_B follows from the species swap rho_B(t; alpha) = rho_A(t; 1 - alpha);
    rho_X is the remainder. A remainder below -1e-12 would mean the A and B
    densities overlap, which the model forbids, so it raises.
    """
    rho_a = closed_form_rho_A(params)
    rho_b = closed_form_rho_A(ModelParams(alpha=1.0 - params.alpha, t=params.t))
    rho_x = 1.0 - rho_a - rho_b
    if rho_x < -1e-12:
        raise ConsistencyError(
            f"rho_A + rho_B = {rho_a + rho_b!r} exceeds 1 at {params}"
        )
    rho_x = min(1.0, max(0.0, rho_x))
    return DensityTriple(rho_A=rho_a, rho_B=rho_b, rho_X=rho_x)


def _integrand(u: float, theta: float) -> float:
    r = math.sqrt(theta)
    d = r * math.cosh(u) - math.sinh(u) / r
    return d * d

# QUADPACK's QAGS spends 21 integrand calls per subinterval; this keeps the
# total budget under 1e6 evaluations.
_QUAD_LIMIT = 47_619


def integral_rho_A_with_error(params: ModelParams, abs_tol: float = 1e-12) -> tuple[float, float]:
    """Quadrature evaluation of rho_A plus the integrator's error estimate."""
    if abs_tol < 1e-14:
        raise ValueError(f"abs_tol must be >= 1e-14, got {abs_tol!r}")
    d = derived(params)  # rejects alpha in {0, 1}
    upper = d.gamma * params.t
    if upper == 0.0:
        return 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, err = quad(
                _integrand, 0.0, upper, args=(d.theta,),
                epsabs=abs_tol, epsrel=0.0, limit=_QUAD_LIMIT,
            )
        except IntegrationWarning as w:
            raise QuadratureError(f"quadrature did not converge: {w}") from w
    return value, err


def integral_rho_A(params: ModelParams, abs_tol: float = 1e-12) -> float:
    """rho_A by adaptive quadrature of the squared-hyperbolic integrand.

    Independent numerical oracle for :func:`closed_form_rho_A`. Requires
    alpha strictly inside (0, 1).
    """
    return integral_rho_A_with_error(params, abs_tol)[0]


def rho_A_rate(params: ModelParams) -> float:
    """Time derivative d(rho_A)/dt, evaluated as a perfect square (>= 0).

    The integrand at u = gamma t, times gamma, simplifies to
    (sqrt(alpha) cosh(gamma t) - sqrt(beta) sinh(gamma t))^2, which is
    well defined on all of alpha in [0, 1] and structurally nonnegative.
    """
    a, t = params.alpha, params.t
    x = math.sqrt(a * (1.0 - a)) * t
    d = math.sqrt(a) * math.cosh(x) - math.sqrt(1.0 - a) * math.sinh(x)
    return d * d


def series_rho_A_small_t(params: ModelParams, order: int) -> float:
    """Taylor polynomial of rho_A about t = 0, truncated at t^order.

    Coefficients: alpha, alpha(alpha-1), alpha(1-alpha)/3, -alpha^2(1-alpha)^2/3.
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be in 1..4, got {order!r}")
    a, t = params.alpha, params.t
    ab = a * (1.0 - a)
    coeffs = (a, -ab, ab / 3.0, -(ab * ab) / 3.0)
    total = 0.0
    for p in range(order, 0, -1):
        total = (total + coeffs[p - 1]) * t
    return total


# rho_A(1; alpha) = alpha/3 + (2/5) alpha^2 + (52/105) alpha^3 - (88/567) alpha^4 + ...
_T1_COEFFS = (1.0 / 3.0, 2.0 / 5.0, 52.0 / 105.0, -88.0 / 567.0)


def series_rho_A_t1_small_alpha(alpha: float, order: int) -> float:
    """Expansion of the jammed-state density rho_A(1; alpha) about alpha = 0."""
    if order not in (1, 2, 3, 4):
        raise ValueError(f"order must be in 1..4, got {order!r}")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")
    total = 0.0
    for p in range(order, 0, -1):
        total = (total + _T1_COEFFS[p - 1]) * alpha
    return total


def contour_solve_t(alpha: float, lam: float) -> float | None:
    """Solve rho_A(t; alpha) = lam for t in (0, 1].

    rho_A is strictly increasing in t for alpha > 0, so the root is unique
    when it exists. Returns None when even the jammed state falls short
    (rho_A(1; alpha) < lam); level curves legitimately end there.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha!r}")
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie in (0, 1), got {lam!r}")
    if alpha == 1.0:
        return lam  # rho_A(t; 1) = t
    cap = closed_form_rho_A(ModelParams(alpha=alpha, t=1.0))
    if cap < lam:
        return None
    if cap == lam:
        return 1.0

    def objective(t: float) -> float:
        return closed_form_rho_A(ModelParams(alpha=alpha, t=t)) - lam

    # Bracketed on [0, 1]: objective(0) = -lam < 0 <= objective(1).
    return float(brentq(objective, 0.0, 1.0, xtol=1e-12, maxiter=200))
