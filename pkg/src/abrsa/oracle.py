"""Exhaustive ground truth for small chains.

The deposition outcome of an n-site chain is a deterministic function of
which sites attempt before time t, the order of those attempts, and the
species assigned to each. For small n all three layers can be enumerated
outright:

    sum over subsets S (weight t^|S| (1-t)^(n-|S|))
    sum over orderings of S (weight 1/|S|!)
    sum over species assignments on S (weight alpha^#A beta^#B)

replaying the blocking rule for each triple. Species of sites that never
attempt cannot influence anything and are marginalized away (weight 1),
which is what keeps the species layer at 2^|S| instead of 2^n.

Contributions are accumulated with error-free (Shewchuk) expansions and the
final values rounded with math.fsum, so results are exact sums of the
floating-point weights, independent of enumeration order. That makes the
A/B symmetry under alpha -> 1-alpha bit-reproducible and keeps the
normalization p_A + p_B + p_X = 1 at the 1e-15 level even for n = 12.

This module is deliberately free of anything shared with the analytic or
event-sum routes; it is the referee they are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .events import event_sum_tail_bound
from .params import ModelParams

_HARD_CAP = 12
_EXPANSION_CAP = 256


@dataclass(frozen=True)
class OracleProblem:
    """A finite chain small enough for full enumeration, and a site to watch."""

    n_sites: int
    alpha: float
    t: float
    target_site: int
    boundary: str = "free"

    def __post_init__(self):
        if not 1 <= self.n_sites <= _HARD_CAP:
            raise ValueError(
                f"exact enumeration is capped at n_sites <= {_HARD_CAP}, got {self.n_sites}"
            )
        if self.boundary not in ("free", "periodic"):
            raise ValueError(f"boundary must be 'free' or 'periodic', got {self.boundary!r}")
        if self.boundary == "periodic" and self.n_sites < 3:
            raise ValueError("periodic chains need n_sites >= 3")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t!r}")
        if not 0 <= self.target_site < self.n_sites:
            raise ValueError(
                f"target_site must lie in [0, {self.n_sites}), got {self.target_site}"
            )


@njit(inline="always")
def _grow(exp, length, x):
    """Add x to a nonoverlapping expansion exp[:length]; returns new length."""
    q = x
    idx = 0
    for i in range(length):
        a = exp[i]
        s = a + q
        big = s - a
        err = (a - (s - big)) + (q - big)
        if err != 0.0:
            exp[idx] = err
            idx += 1
        q = s
    if idx >= _EXPANSION_CAP:
        raise RuntimeError("accumulator expansion overflow")
    exp[idx] = q
    return idx + 1


@njit(inline="always")
def _next_permutation(a, k):
    """Advance a[:k] to its lexicographic successor; False when exhausted."""
    i = k - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = k - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    lo, hi = i + 1, k - 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1
    return True


@njit(cache=True)
def _enumerate(n, periodic, alpha, t, target, exp_a, exp_b, exp_x):
    beta = 1.0 - alpha
    apow = np.empty(n + 1, np.float64)
    bpow = np.empty(n + 1, np.float64)
    tpow = np.empty(n + 1, np.float64)
    qpow = np.empty(n + 1, np.float64)
    apow[0] = bpow[0] = tpow[0] = qpow[0] = 1.0
    for i in range(1, n + 1):
        apow[i] = apow[i - 1] * alpha
        bpow[i] = bpow[i - 1] * beta
        tpow[i] = tpow[i - 1] * t
        qpow[i] = qpow[i - 1] * (1.0 - t)
    invfact = np.empty(n + 1, np.float64)
    f = 1.0
    invfact[0] = 1.0
    for i in range(1, n + 1):
        f *= i
        invfact[i] = 1.0 / f

    perm = np.empty(n, np.int64)
    state = np.empty(n, np.uint8)  # 0 empty, 1 A, 2 B
    popcnt = np.empty(1 << n, np.uint8)
    popcnt[0] = 0
    for m in range(1, 1 << n):
        popcnt[m] = popcnt[m >> 1] + (m & 1)

    len_a = len_b = len_x = 0
    for k in range(n + 1):
        base = tpow[k] * qpow[n - k] * invfact[k]
        if base == 0.0:
            continue
        if k == 0:
            len_x = _grow(exp_x, len_x, base)  # nobody attempts; target stays empty
            continue
        mask = (1 << k) - 1
        last = mask << (n - k)
        while True:
            # sites of this subset, ascending = first permutation
            pos = 0
            for s in range(n):
                if (mask >> s) & 1:
                    perm[pos] = s
                    pos += 1
            more = True
            while more:
                for typ_mask in range(1 << k):
                    w = apow[popcnt[typ_mask]] * bpow[k - popcnt[typ_mask]] * base
                    for s in range(n):
                        state[s] = 0
                    for p in range(k):
                        s = perm[p]
                        code = 1 if (typ_mask >> p) & 1 else 2
                        opp = 3 - code
                        left = s - 1
                        right = s + 1
                        if periodic:
                            if left < 0:
                                left = n - 1
                            if right >= n:
                                right = 0
                        blocked = False
                        if left >= 0 and state[left] == opp:
                            blocked = True
                        elif right < n and state[right] == opp:
                            blocked = True
                        if not blocked:
                            state[s] = code
                    final = state[target]
                    if final == 1:
                        len_a = _grow(exp_a, len_a, w)
                    elif final == 2:
                        len_b = _grow(exp_b, len_b, w)
                    else:
                        len_x = _grow(exp_x, len_x, w)
                more = _next_permutation(perm, k)
            if mask == last:
                break
            c = mask & (-mask)
            r = mask + c
            mask = (((r ^ mask) >> 2) // c) | r
    return len_a, len_b, len_x


def exact_occupation(problem: OracleProblem) -> tuple[float, float, float]:
    """Exact (p_A, p_B, p_empty) for the target site at time t."""
    exp_a = np.zeros(_EXPANSION_CAP, np.float64)
    exp_b = np.zeros(_EXPANSION_CAP, np.float64)
    exp_x = np.zeros(_EXPANSION_CAP, np.float64)
    la, lb, lx = _enumerate(
        problem.n_sites,
        problem.boundary == "periodic",
        problem.alpha,
        problem.t,
        problem.target_site,
        exp_a, exp_b, exp_x,
    )
    # fsum of an exact expansion is the correctly rounded exact sum, so the
    # result does not depend on enumeration order.
    return (
        math.fsum(exp_a[:la].tolist()),
        math.fsum(exp_b[:lb].tolist()),
        math.fsum(exp_x[:lx].tolist()),
    )


def matching_truncation(half_width: int) -> int:
    """Largest event index whose blocking chains fit inside the window."""
    return (half_width - 1) // 2


def window_density(alpha: float, t: float, half_width: int) -> tuple[float, float]:
    """Exact center-site density of a free window, with a truncation note.

    Computes p_A for the middle site of a free chain of 2*half_width + 1
    sites. The second value is the event-sum tail bound at the largest index
    the window fully contains; observed gaps to the infinite-chain density
    are of that scale, since they require blocking chains longer than the
    window arm.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"window comparison requires alpha in (0, 1), got {alpha!r}")
    if not 1 <= half_width <= 5:
        raise ValueError(f"half_width must lie in 1..5, got {half_width!r}")
    problem = OracleProblem(
        n_sites=2 * half_width + 1,
        alpha=alpha,
        t=t,
        target_site=half_width,
        boundary="free",
    )
    p_a, _, _ = exact_occupation(problem)
    note = event_sum_tail_bound(
        ModelParams(alpha=alpha, t=t), matching_truncation(half_width)
    )
    return p_a, note
