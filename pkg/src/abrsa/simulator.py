"""Direct stochastic simulation of the single-attempt AB deposition process.

Each site s of a finite chain draws an attempt time t_s uniform on [0, 1]
and a species (A with probability alpha). At its attempt time the site
becomes occupied unless a nearest neighbor already holds the opposite
species; blocked attempts are never retried.

Outcomes are resolved without sorting: whether site s succeeds depends only
on neighbors that attempted strictly earlier (ties broken by site index),
and those dependencies form chains of strictly decreasing attempt times, so
a memoized walk decides every site in O(n) total with O(1) expected chain
length. The resolution is equivalent to replaying attempts in global time
order, which the tests verify against a brute-force sorted replay.

Randomness contract: replica r of a configuration with seed m consumes the
Philox4x64-10 counter-based stream keyed (m, r) — the first n doubles are
the attempt times, the next n decide the species (u < alpha means A). The
same run is therefore reproduced by numpy's Philox generator, by the
batched numba kernel, and under any parallel schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from ._philox import _fill_doubles
from .params import ConsistencyError

STATE_X = 0
STATE_A = 1
STATE_B = 2

_BOUNDARIES = ("periodic", "free")

# Above this size, estimate_density runs replicas one at a time with
# full-size arrays instead of the many-replica batch kernel.
_BATCH_MAX_SITES = 512
_BATCH_CHUNK_BYTES = 1 << 25


@dataclass(frozen=True)
class LatticeConfig:
    """A finite chain, its deposition law, and the sampling/replication plan."""

    n_sites: int
    alpha: float
    sample_times: tuple[float, ...]
    boundary: str = "periodic"
    master_seed: int = 0
    replicas: int = 1

    def __post_init__(self):
        if self.boundary not in _BOUNDARIES:
            raise ValueError(f"boundary must be one of {_BOUNDARIES}, got {self.boundary!r}")
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        if self.boundary == "periodic" and self.n_sites < 3:
            raise ValueError("periodic chains need n_sites >= 3; smaller rings make "
                             "a site its own repeated neighbor")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        times = tuple(float(x) for x in self.sample_times)
        if not times:
            raise ValueError("sample_times must be nonempty")
        if any(not 0.0 <= x <= 1.0 for x in times):
            raise ValueError(f"sample_times must lie in [0, 1], got {times}")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"sample_times must be strictly ascending, got {times}")
        object.__setattr__(self, "sample_times", times)
        if not 0 <= self.master_seed < 2**64:
            raise ValueError(f"master_seed must be a 64-bit unsigned int, got {self.master_seed}")
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")


@dataclass
class LatticeRun:
    """One realization: per-site attempt times, chosen species, and outcomes."""

    n_sites: int
    boundary: str
    sample_times: tuple[float, ...]
    attempt_times: np.ndarray   # float64[n]
    chosen_types: np.ndarray    # uint8[n], STATE_A or STATE_B
    success: np.ndarray         # bool[n], attempt deposited rather than blocked

    def states_at(self, tau: float) -> np.ndarray:
        """Site states (STATE_X / STATE_A / STATE_B) at time tau.

        A site whose attempt time equals tau exactly counts as attempted.
        """
        attempted = self.attempt_times <= tau
        return np.where(self.success & attempted, self.chosen_types, STATE_X).astype(np.uint8)

    @property
    def site_states(self) -> np.ndarray:
        """States at every sample time, shape (len(sample_times), n_sites)."""
        return np.stack([self.states_at(tau) for tau in self.sample_times])

    def density_at(self, tau: float) -> tuple[float, float, float]:
        states = self.states_at(tau)
        n = self.n_sites
        f_a = np.count_nonzero(states == STATE_A) / n
        f_b = np.count_nonzero(states == STATE_B) / n
        return f_a, f_b, 1.0 - f_a - f_b


@dataclass(frozen=True)
class DensityEstimate:
    """Across-replica mean and standard error of the (A, B, empty) fractions."""

    mean: tuple[float, float, float]
    std_error: tuple[float, float, float]
    replicas: int
    n_sites: int

    def __post_init__(self):
        if abs(sum(self.mean) - 1.0) > 1e-12:
            raise ConsistencyError(f"mean fractions sum to {sum(self.mean)!r}, not 1")


@njit(cache=True, nogil=True)
def _resolve(times, species, periodic):
    """Decide which attempts deposit, by memoized dependency walking.

    ``species`` holds per-site codes (STATE_A / STATE_B). state 0 =
    undecided, 1 = occupied, 2 = blocked. A neighbor matters only if it is
    of opposite species and attempted earlier (lexicographic on
    (time, index)); it blocks if it itself ended occupied.
    """
    n = times.shape[0]
    state = np.zeros(n, np.uint8)
    cap = n + 1 if n <= 1_048_576 else 65_536
    stack = np.empty(cap, np.int64)
    for s0 in range(n):
        if state[s0] != 0:
            continue
        top = 0
        stack[0] = s0
        while top >= 0:
            s = stack[top]
            pending = -1
            blocked = False
            for direction in range(2):
                nb = s - 1 if direction == 0 else s + 1
                if nb < 0:
                    nb = n - 1 if periodic else -1
                elif nb >= n:
                    nb = 0 if periodic else -1
                if nb < 0 or species[nb] == species[s]:
                    continue
                if times[nb] < times[s] or (times[nb] == times[s] and nb < s):
                    st = state[nb]
                    if st == 0:
                        pending = nb
                        break
                    if st == 1:
                        blocked = True
            if pending >= 0:
                top += 1
                if top >= cap:
                    raise RuntimeError("deposition dependency chain exceeded stack capacity")
                stack[top] = pending
            else:
                state[s] = 2 if blocked else 1
                top -= 1
    return state == 1


@njit(cache=True, parallel=True)
def _batch_states(master_seed, r_start, n_rep, n_sites, alpha, periodic, taus):
    """States for replicas r_start .. r_start+n_rep-1, shape (n_rep, T, n)."""
    n_tau = taus.shape[0]
    out = np.empty((n_rep, n_tau, n_sites), np.uint8)
    for i in prange(n_rep):
        buf = np.empty(2 * n_sites, np.float64)
        _fill_doubles(np.uint64(master_seed), np.uint64(r_start + i), buf)
        times = buf[:n_sites]
        species = np.empty(n_sites, np.uint8)
        for s in range(n_sites):
            species[s] = STATE_A if buf[n_sites + s] < alpha else STATE_B
        occ = _resolve(times, species, periodic)
        for ti in range(n_tau):
            tau = taus[ti]
            for s in range(n_sites):
                if occ[s] and times[s] <= tau:
                    out[i, ti, s] = species[s]
                else:
                    out[i, ti, s] = 0
    return out


def _replica_generator(master_seed: int, replica_index: int) -> np.random.Generator:
    key = np.array([master_seed, replica_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


_TYPE_DRAW_CHUNK = 1 << 24


def run_once(config: LatticeConfig, replica_index: int = 0) -> LatticeRun:
    """Simulate one replica; a pure function of (master_seed, replica_index, config)."""
    if replica_index < 0:
        raise ValueError(f"replica_index must be >= 0, got {replica_index}")
    n = config.n_sites
    gen = _replica_generator(config.master_seed, replica_index)
    times = gen.random(n)
    # species uniforms are consumed in chunks straight into one-byte codes so
    # a 1e8-site run keeps a single full-size float array alive
    species = np.empty(n, np.uint8)
    buf = np.empty(min(n, _TYPE_DRAW_CHUNK), np.float64)
    for i in range(0, n, _TYPE_DRAW_CHUNK):
        j = min(i + _TYPE_DRAW_CHUNK, n)
        gen.random(out=buf[: j - i])
        species[i:j] = np.where(buf[: j - i] < config.alpha, STATE_A, STATE_B)
    del buf
    success = _resolve(times, species, config.boundary == "periodic")
    return LatticeRun(
        n_sites=n,
        boundary=config.boundary,
        sample_times=config.sample_times,
        attempt_times=times,
        chosen_types=species,
        success=success,
    )


def resolve_deposition(times: np.ndarray, chosen_types: np.ndarray, boundary: str) -> np.ndarray:
    """Outcome flags for externally supplied attempt times and species codes."""
    if boundary not in _BOUNDARIES:
        raise ValueError(f"boundary must be one of {_BOUNDARIES}, got {boundary!r}")
    times = np.ascontiguousarray(times, dtype=np.float64)
    chosen = np.asarray(chosen_types)
    if times.ndim != 1 or chosen.shape != times.shape:
        raise ValueError("times and chosen_types must be equal-length 1-D arrays")
    if not np.isin(chosen, (STATE_A, STATE_B)).all():
        raise ValueError("chosen_types entries must be STATE_A or STATE_B")
    if boundary == "periodic" and times.shape[0] < 3:
        raise ValueError("periodic chains need n_sites >= 3")
    return _resolve(times, chosen.astype(np.uint8), boundary == "periodic")


def _replica_counts(config: LatticeConfig, replica_index: int) -> tuple[np.ndarray, np.ndarray]:
    run = run_once(config, replica_index)
    n_tau = len(config.sample_times)
    counts_a = np.empty(n_tau, np.int64)
    counts_b = np.empty(n_tau, np.int64)
    for ti, tau in enumerate(config.sample_times):
        states = run.states_at(tau)
        counts_a[ti] = np.count_nonzero(states == STATE_A)
        counts_b[ti] = np.count_nonzero(states == STATE_B)
    return counts_a, counts_b


def _batch_chunks(config: LatticeConfig):
    """Yield (r_start, states) chunks covering all replicas, in replica order."""
    n, n_tau = config.n_sites, len(config.sample_times)
    per_replica = max(1, n_tau * n)
    chunk = max(1, _BATCH_CHUNK_BYTES // per_replica)
    taus = np.asarray(config.sample_times, dtype=np.float64)
    r = 0
    while r < config.replicas:
        m = min(chunk, config.replicas - r)
        yield r, _batch_states(
            config.master_seed, r, m, n, config.alpha,
            config.boundary == "periodic", taus,
        )
        r += m


def _all_replica_counts(config: LatticeConfig, max_workers: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-replica A/B counts at each sample time, shape (replicas, T) each."""
    n_tau = len(config.sample_times)
    counts_a = np.empty((config.replicas, n_tau), np.int64)
    counts_b = np.empty((config.replicas, n_tau), np.int64)
    if config.n_sites <= _BATCH_MAX_SITES:
        for r_start, states in _batch_chunks(config):
            m = states.shape[0]
            counts_a[r_start:r_start + m] = np.count_nonzero(states == STATE_A, axis=2)
            counts_b[r_start:r_start + m] = np.count_nonzero(states == STATE_B, axis=2)
    elif max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = pool.map(lambda r: _replica_counts(config, r), range(config.replicas))
            for r, (ca, cb) in enumerate(results):  # map preserves replica order
                counts_a[r] = ca
                counts_b[r] = cb
    else:
        for r in range(config.replicas):
            counts_a[r], counts_b[r] = _replica_counts(config, r)
    return counts_a, counts_b


def estimate_density(config: LatticeConfig, max_workers: int = 1) -> list[DensityEstimate]:
    """Across-replica density estimates, one per sample time.

    Deterministic given (config, master_seed): replica streams are fixed by
    index and the reduction is ordered by replica index regardless of how
    many workers execute.
    """
    counts_a, counts_b = _all_replica_counts(config, max_workers)
    n = config.n_sites
    rep = config.replicas
    frac_a = counts_a / n
    frac_b = counts_b / n
    frac_x = (n - counts_a - counts_b) / n
    out = []
    for ti in range(len(config.sample_times)):
        means = (float(frac_a[:, ti].mean()), float(frac_b[:, ti].mean()),
                 float(frac_x[:, ti].mean()))
        if rep > 1:
            errs = tuple(
                float(f[:, ti].std(ddof=1) / math.sqrt(rep))
                for f in (frac_a, frac_b, frac_x)
            )
        else:
            errs = (0.0, 0.0, 0.0)
        out.append(DensityEstimate(mean=means, std_error=errs, replicas=rep, n_sites=n))
    return out


def site_occupation_counts(config: LatticeConfig) -> tuple[np.ndarray, np.ndarray]:
    """Per-site A and B occupation counts summed over replicas, shape (T, n).

    Integer accumulation in replica order; used to compare individual site
    statistics (edge effects, small-lattice laws) against exact values.
    """
    n_tau, n = len(config.sample_times), config.n_sites
    if n > _BATCH_MAX_SITES:
        raise ValueError(f"per-site counting is for small chains (n <= {_BATCH_MAX_SITES})")
    counts_a = np.zeros((n_tau, n), np.int64)
    counts_b = np.zeros((n_tau, n), np.int64)
    for _, states in _batch_chunks(config):
        counts_a += np.count_nonzero(states == STATE_A, axis=0)
        counts_b += np.count_nonzero(states == STATE_B, axis=0)
    return counts_a, counts_b


def check_adjacency(run: LatticeRun) -> bool:
    """True when no A site neighbors a B site at any recorded sample time."""
    for tau in run.sample_times:
        states = run.states_at(tau)
        left, right = states[:-1], states[1:]
        bad = ((left == STATE_A) & (right == STATE_B)) | ((left == STATE_B) & (right == STATE_A))
        if bad.any():
            return False
        if run.boundary == "periodic" and run.n_sites > 1:
            a, b = states[-1], states[0]
            if {int(a), int(b)} == {STATE_A, STATE_B}:
                return False
    return True
