"""One-dimensional AB adsorption with a single deposition attempt per site.

Two species deposit on a chain; opposite species may not occupy adjacent
sites, and every site gets exactly one attempt, at a uniform random time.
This package evaluates the resulting species densities four independent
ways — closed form, blocking-event sums, adaptive quadrature, and direct
simulation — plus an exhaustive small-chain enumeration that referees them.
"""

from .analytic import (
    QuadratureError,
    closed_form_rho_A,
    contour_solve_t,
    density_triple,
    integral_rho_A,
    integral_rho_A_with_error,
    rho_A_rate,
    series_rho_A_small_t,
    series_rho_A_t1_small_alpha,
)
from .events import (
    EventIndex,
    EventSumResult,
    GammaTermSpec,
    combined_term,
    event_sum_tail_bound,
    gamma_term,
    hyperbolic_resummation_check,
    prob_main_event,
    prob_ordering,
    rho_A_event_sum,
    simulate_event_frequency,
)
from .oracle import OracleProblem, exact_occupation, window_density
from .params import ConsistencyError, DensityTriple, DerivedParams, ModelParams, derived
from .simulator import (
    STATE_A,
    STATE_B,
    STATE_X,
    DensityEstimate,
    LatticeConfig,
    LatticeRun,
    check_adjacency,
    estimate_density,
    resolve_deposition,
    run_once,
    site_occupation_counts,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams", "DerivedParams", "DensityTriple", "derived", "ConsistencyError",
    "closed_form_rho_A", "density_triple", "integral_rho_A", "integral_rho_A_with_error",
    "rho_A_rate", "series_rho_A_small_t", "series_rho_A_t1_small_alpha",
    "contour_solve_t", "QuadratureError",
    "EventIndex", "GammaTermSpec", "EventSumResult", "prob_ordering", "gamma_term",
    "prob_main_event", "combined_term", "rho_A_event_sum", "event_sum_tail_bound",
    "hyperbolic_resummation_check", "simulate_event_frequency",
    "LatticeConfig", "LatticeRun", "DensityEstimate", "run_once", "estimate_density",
    "site_occupation_counts", "check_adjacency", "resolve_deposition",
    "STATE_A", "STATE_B", "STATE_X",
    "OracleProblem", "exact_occupation", "window_density",
    "__version__",
]
