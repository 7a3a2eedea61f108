"""Model parameters and derived quantities for the AB deposition process.

The process is controlled by two numbers: ``alpha``, the probability that a
site's single deposition attempt carries an A particle (B has probability
``1 - alpha``), and ``t``, the fraction of process time elapsed. Everything
downstream is a function of the pair ``(alpha, t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class ConsistencyError(RuntimeError):
    """An internal identity failed far beyond rounding; signals a bug."""


@dataclass(frozen=True)
class ModelParams:
    """Deposition probability ``alpha`` and process time ``t``, both in [0, 1]."""

    alpha: float
    t: float

    def __post_init__(self):
        for name, v in (("alpha", self.alpha), ("t", self.t)):
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValueError(f"{name} must be a finite real, got {v!r}")
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "t", float(self.t))

    @property
    def beta(self) -> float:
        return 1.0 - self.alpha


@dataclass(frozen=True)
class DerivedParams:
    """gamma = sqrt(alpha*beta) and theta = sqrt(alpha/beta).

    theta diverges at alpha=1 and vanishes at alpha=0, so construction is
    restricted to alpha strictly inside (0, 1).
    """

    gamma: float
    theta: float


def derived(params: ModelParams) -> DerivedParams:
    a = params.alpha
    if not 0.0 < a < 1.0:
        raise ValueError(f"derived parameters require alpha in (0, 1), got {a}")
    return DerivedParams(gamma=math.sqrt(a * (1.0 - a)), theta=math.sqrt(a / (1.0 - a)))


@dataclass(frozen=True)
class DensityTriple:
    """Fractions of sites holding A, holding B, and still empty (X)."""

    rho_A: float
    rho_B: float
    rho_X: float

    def __post_init__(self):
        for name, v in (("rho_A", self.rho_A), ("rho_B", self.rho_B), ("rho_X", self.rho_X)):
            if not -1e-12 <= v <= 1.0 + 1e-12:
                raise ValueError(f"{name}={v!r} outside [0, 1]")
        s = self.rho_A + self.rho_B + self.rho_X
        if abs(s - 1.0) > 1e-12:
            raise ConsistencyError(f"density components sum to {s!r}, not 1")
