"""Blocking-chain event machinery behind the closed-form density.

A site ends up holding an A exactly when, on each side, the chain of
neighbors that attempted before it fails to block it. Splitting by the
length and parity of the two chains yields a doubly indexed family of
mutually exclusive events, indexed by (j, k) and a two-letter parity tag:

    'ee'  <->  left chain 2j+2, right chain 2k+2
    'oe'  <->  left chain 2j+1, right chain 2k+2
    'eo'  <->  left chain 2j+2, right chain 2k+1
    'oo'  <->  left chain 2j+1, right chain 2k+1

Every event probability is a short signed combination of the normalized
power terms

    Gamma_{j,k}(m,n) = (gamma t)^(2j+2k+m+n+1) / ((2j+m)! (2k+n)! (2j+2k+m+n+1))

and the double sum over all (j, k) reproduces rho_A. Summing Gamma over
(j, k) for fixed (m, n) collapses to integrals of products of cosh/sinh,
which is the resummation this module can check term by term.

The factorials are kept in log space (a 1200-entry table) so indices into
the hundreds neither overflow nor lose the small terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import ModelParams, derived

_MAX_INDEX = 1200
_LOG_FACT = np.array([math.lgamma(i + 1.0) for i in range(_MAX_INDEX + 1)])

_PARITIES = ("ee", "oe", "eo", "oo")


@dataclass(frozen=True)
class EventIndex:
    """Identifies one main event by chain indices (j, k) and parity pair."""

    j: int
    k: int
    parity: str

    def __post_init__(self):
        if self.j < 0 or self.k < 0:
            raise ValueError(f"event indices must be >= 0, got j={self.j}, k={self.k}")
        if self.parity not in _PARITIES:
            raise ValueError(f"parity must be one of {_PARITIES}, got {self.parity!r}")


@dataclass(frozen=True)
class GammaTermSpec:
    """Arguments of one Gamma term: indices (j, k), parities (m, n), x = gamma*t."""

    j: int
    k: int
    m: int
    n: int
    x: float

    def __post_init__(self):
        if self.j < 0 or self.k < 0:
            raise ValueError(f"indices must be >= 0, got j={self.j}, k={self.k}")
        if self.m not in (0, 1) or self.n not in (0, 1):
            raise ValueError(f"m, n must be 0 or 1, got m={self.m}, n={self.n}")
        if not 0.0 <= self.x <= 0.5:
            raise ValueError(f"x = gamma*t cannot exceed 1/2, got {self.x!r}")


def prob_ordering(j: int, k: int, t: float) -> float:
    """P(t > t_0 > ... > t_-j  and  t > t_0 > ... > t_k) = t^(j+k+1) / (j! k! (j+k+1)).

    The two descending chains share only t_0; integrating over it factors the
    rest, giving the closed product above.
    """
    if j < 0 or k < 0:
        raise ValueError(f"chain lengths must be >= 0, got j={j}, k={k}")
    if j + k > 300:
        raise ValueError(f"j + k must be <= 300, got {j + k}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    denom = math.factorial(j) * math.factorial(k) * (j + k + 1)
    if denom < 2**63:
        return t ** (j + k + 1) / denom
    if t == 0.0:
        return 0.0
    return math.exp(
        (j + k + 1) * math.log(t) - _LOG_FACT[j] - _LOG_FACT[k] - math.log(j + k + 1)
    )


def _gamma(j: int, k: int, m: int, n: int, x: float) -> float:
    if x == 0.0:
        return 0.0
    p = 2 * j + 2 * k + m + n + 1
    return math.exp(
        p * math.log(x) - _LOG_FACT[2 * j + m] - _LOG_FACT[2 * k + n] - math.log(p)
    )


def gamma_term(spec: GammaTermSpec) -> float:
    """One Gamma_{j,k}(m,n) term, via log-space factorials."""
    return _gamma(spec.j, spec.k, spec.m, spec.n, spec.x)


def prob_main_event(idx: EventIndex, params: ModelParams) -> float:
    """Probability of one main event G_{j,k}^{parity}.

    The alpha-dependent prefactors blow up at alpha in {0, 1}, where the
    events are degenerate anyway, so those endpoints are rejected.
    """
    a = params.alpha
    if not 0.0 < a < 1.0:
        raise ValueError(f"event probabilities require alpha in (0, 1), got {a}")
    b = 1.0 - a
    x = math.sqrt(a * b) * params.t
    j, k = idx.j, idx.k
    if idx.parity == "ee":
        return (a / b) ** 1.5 * _gamma(j, k, 1, 1, x)
    if idx.parity == "oe":
        return (a / b) * _gamma(j, k, 0, 1, x) - (math.sqrt(a) / b**1.5) * _gamma(j, k, 1, 1, x)
    if idx.parity == "eo":
        return (a / b) * _gamma(j, k, 1, 0, x) - (math.sqrt(a) / b**1.5) * _gamma(j, k, 1, 1, x)
    # oo
    return (
        math.sqrt(a / b) * _gamma(j, k, 0, 0, x)
        - (_gamma(j, k, 1, 0, x) + _gamma(j, k, 0, 1, x)) / b
        + _gamma(j, k, 1, 1, x) / (math.sqrt(a) * b**1.5)
    )


def combined_term(j: int, k: int, params: ModelParams) -> float:
    """Sum of the four parity probabilities at fixed (j, k).

    Collapses to theta*Gamma(0,0) - Gamma(1,0) - Gamma(0,1) + Gamma(1,1)/theta.
    """
    d = derived(params)
    x = d.gamma * params.t
    return (
        d.theta * _gamma(j, k, 0, 0, x)
        - _gamma(j, k, 1, 0, x)
        - _gamma(j, k, 0, 1, x)
        + _gamma(j, k, 1, 1, x) / d.theta
    )


class EventSumResult(NamedTuple):
    value: float
    tail_bound: float


def _gamma_grid(max_index: int, m: int, n: int, x: float) -> np.ndarray:
    """Gamma_{j,k}(m,n) for all 0 <= j,k <= max_index, as a (M+1, M+1) array."""
    idx = np.arange(max_index + 1)
    lj = 2 * idx[:, None] + m   # row factorial index
    lk = 2 * idx[None, :] + n
    p = lj + lk + 1
    logs = p * math.log(x) - _LOG_FACT[lj] - _LOG_FACT[lk] - np.log(p)
    return np.exp(logs)


def event_sum_tail_bound(params: ModelParams, max_index: int) -> float:
    """Rigorous upper bound on the event mass outside the (j, k) <= max_index box.

    Each combined term is nonnegative and at most
    x * (theta a_j a_k + b_j b_k / theta) with a_j = x^(2j)/(2j)! and
    b_j = x^(2j+1)/(2j+1)!. The a- and b-tails beyond max_index are bounded
    by their first omitted element times a geometric factor (consecutive
    ratios are at most x^2 / ((2M+3)(2M+4)) < 1), and the full-axis sums by
    cosh x and sinh x. A union bound over the two half-plane complements
    gives the result.
    """
    if max_index < 0:
        raise ValueError(f"max_index must be >= 0, got {max_index}")
    d = derived(params)
    x = d.gamma * params.t
    if x == 0.0:
        return 0.0
    m = max_index
    a_head = math.exp((2 * m + 2) * math.log(x) - _LOG_FACT[2 * m + 2])
    b_head = math.exp((2 * m + 3) * math.log(x) - _LOG_FACT[2 * m + 3])
    qa = x * x / ((2 * m + 3) * (2 * m + 4))
    qb = x * x / ((2 * m + 4) * (2 * m + 5))
    tail_a = a_head / (1.0 - qa)
    tail_b = b_head / (1.0 - qb)
    return 2.0 * x * (d.theta * math.cosh(x) * tail_a + math.sinh(x) * tail_b / d.theta)


def rho_A_event_sum(params: ModelParams, max_index: int) -> EventSumResult:
    """rho_A as the truncated double event sum, with a rigorous tail bound.

    Terms are accumulated with exact (Shewchuk) summation over the flattened
    row-major grid; value <= rho_A <= value + tail_bound up to rounding.
    """
    if max_index < 1:
        raise ValueError(f"max_index must be >= 1, got {max_index}")
    d = derived(params)
    x = d.gamma * params.t
    if x == 0.0:
        return EventSumResult(0.0, 0.0)
    grid = (
        d.theta * _gamma_grid(max_index, 0, 0, x)
        - _gamma_grid(max_index, 1, 0, x)
        - _gamma_grid(max_index, 0, 1, x)
        + _gamma_grid(max_index, 1, 1, x) / d.theta
    )
    value = math.fsum(grid.ravel(order="C").tolist())
    return EventSumResult(value, event_sum_tail_bound(params, max_index))


def hyperbolic_resummation_check(x: float, n_terms: int) -> dict[tuple[int, int], float]:
    """Residuals of the four Gamma resummation identities at truncation n_terms.

    For each (m, n) the truncated double sum of Gamma_{j,k}(m,n) over
    0 <= j,k <= n_terms is compared with its closed integral:

        (0,0): x/2 + sinh(2x)/4      (integral of cosh^2)
        (0,1): sinh(x)^2 / 2         (integral of sinh cosh)
        (1,0): sinh(x)^2 / 2
        (1,1): sinh(2x)/4 - x/2      (integral of sinh^2)

    Returns |sum - integral| keyed by (m, n).
    """
    if not 0.0 <= x <= 0.5:
        raise ValueError(f"x must lie in [0, 0.5], got {x!r}")
    if not 1 <= n_terms <= 200:
        raise ValueError(f"n_terms must lie in 1..200, got {n_terms!r}")
    sh2 = math.sinh(x) ** 2
    closed = {
        (0, 0): 0.5 * x + 0.25 * math.sinh(2.0 * x),
        (0, 1): 0.5 * sh2,
        (1, 0): 0.5 * sh2,
        (1, 1): 0.25 * math.sinh(2.0 * x) - 0.5 * x,
    }
    out = {}
    for mn, target in closed.items():
        if x == 0.0:
            out[mn] = 0.0
            continue
        grid = _gamma_grid(n_terms, mn[0], mn[1], x)
        out[mn] = abs(math.fsum(grid.ravel(order="C").tolist()) - target)
    return out


# ---------------------------------------------------------------------------
# Direct Monte Carlo of the defining events (validation of the formulas).
# ---------------------------------------------------------------------------

def _chain_ok(times: np.ndarray, cols: list[int], t: float) -> np.ndarray:
    """Indicator of t > times[cols[0]] > times[cols[1]] > ..."""
    ok = times[:, cols[0]] < t
    for prev, cur in zip(cols, cols[1:]):
        ok &= times[:, cur] < times[:, prev]
    return ok


def _side_conditions(
    times: np.ndarray, is_a: np.ndarray, col0: int, step: int,
    chain_index: int, even: bool, t: float,
) -> np.ndarray:
    """Conditions of one one-sided event, walking from the center with +-1 steps.

    For even parity (chain length 2i+2): descending times through offset 2i+1
    and the type pattern A,B,...,A capped by a second A. For odd parity
    (chain length 2i+1): descending times through offset 2i, one ascending
    comparison to offset 2i+1, alternating types through offset 2i only.
    """
    i = chain_index
    off = lambda o: col0 + step * o
    if even:
        cols = [off(o) for o in range(2 * i + 2)]
        ok = _chain_ok(times, cols, t)
        for o in range(2 * i + 1):
            ok &= is_a[:, off(o)] == (o % 2 == 0)
        ok &= is_a[:, off(2 * i + 1)]
    else:
        cols = [off(o) for o in range(2 * i + 1)]
        ok = _chain_ok(times, cols, t)
        ok &= times[:, off(2 * i)] < times[:, off(2 * i + 1)]
        for o in range(2 * i + 1):
            ok &= is_a[:, off(o)] == (o % 2 == 0)
    return ok


def simulate_event_frequency(
    idx: EventIndex,
    params: ModelParams,
    n_trials: int,
    seed: int = 0,
    chunk: int = 1 << 20,
) -> tuple[float, float]:
    """Monte Carlo frequency of one main event, straight from its definition.

    Draws attempt times and species only for the window of sites the event
    actually constrains (offsets -(2j+1) .. 2k+1) and evaluates the time
    orderings and type patterns directly; nothing is shared with the Gamma
    formulas. Returns (frequency, binomial standard error).
    """
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    j, k = idx.j, idx.k
    left = 2 * j + 1
    width = left + 2 * k + 2  # sites -(2j+1) .. (2k+1)
    center = left
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = n_trials
    while remaining > 0:
        n = min(chunk, remaining)
        times = rng.random((n, width))
        is_a = rng.random((n, width)) < params.alpha
        ok = _side_conditions(
            times, is_a, center, -1, j, idx.parity[0] == "e", params.t
        )
        ok &= _side_conditions(
            times, is_a, center, +1, k, idx.parity[1] == "e", params.t
        )
        hits += int(np.count_nonzero(ok))
        remaining -= n
    freq = hits / n_trials
    stderr = math.sqrt(max(freq * (1.0 - freq), 1e-300) / n_trials)
    return freq, stderr
