"""Seeded random instance generation for property sweeps.

Entries are drawn log-uniform (the natural scale for geometric-mean
constrained vectors) and rescaled so the geometric mean lands exactly on
the requested gamma.
"""

from __future__ import annotations

import numpy as np

from .core import CoefficientVector, DCMatrix
from .errors import DomainError

__all__ = ["random_vector", "random_matrix", "spawn_rng"]


def spawn_rng(seed: int, index: int) -> np.random.Generator:
    """Deterministic per-trial generator derived from a master seed."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def random_vector(
    rng: np.random.Generator,
    n: int,
    gamma: float,
    spread: float = 2.0,
) -> CoefficientVector:
    """Log-uniform entries over [exp(-spread), exp(spread)], rescaled to gamma."""
    if n < 2 or gamma <= 0.0 or spread <= 0.0:
        raise DomainError("need n >= 2, gamma > 0, spread > 0")
    logs = rng.uniform(-spread, spread, size=n)
    logs -= np.mean(logs)
    entries = gamma * np.exp(logs)
    return CoefficientVector(tuple(entries))


def random_matrix(
    rng: np.random.Generator,
    n: int,
    alpha: float,
    beta: float,
    spread: float = 1.0,
) -> DCMatrix:
    """Random member of the family with geometric means exactly (alpha, beta)."""
    if n < 2 or alpha <= 0.0 or beta <= 0.0:
        raise DomainError("need n >= 2 and positive alpha, beta")
    la = rng.uniform(-spread, spread, size=n)
    la -= np.mean(la)
    lb = rng.uniform(-spread, spread, size=n)
    lb -= np.mean(lb)
    return DCMatrix(
        tuple(alpha * np.exp(la)),
        tuple(beta * np.exp(lb)),
    )
