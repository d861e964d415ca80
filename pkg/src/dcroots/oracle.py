"""Closed-form ground truth: ideal-case roots/counts and symmetric-mean bounds.

The all-gamma vector has explicit roots -gamma + exp(2 pi i k / n), so
counts reduce to a cosine comparison.  The Maclaurin chain and the
product lower bound are the inequality backbone the localization bounds
lean on; both are exposed for direct property testing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CountReport, geometric_mean
from .errors import DomainError
from .roots import RootSet

__all__ = [
    "IdealSpectrum",
    "ideal_vector",
    "ideal_roots",
    "ideal_counts",
    "maclaurin_chain",
    "product_bound_check",
]

# cos(2 pi k / n) can hit gamma exactly (n = 6 or 12 with gamma = 1/2);
# the tie belongs on the axis, not in the open half-plane.
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class IdealSpectrum:
    """Explicit spectrum data of the all-gamma vector."""

    n: int
    gamma: float
    roots: tuple[complex, ...]
    kappa_plus: int
    kappa_bar: int

    @property
    def nu_plus(self) -> int:
        return 2 * self.kappa_plus + 1

    @property
    def nu_bar(self) -> int:
        return 2 * self.kappa_bar + 1


def ideal_vector(n: int, gamma: float):
    from .core import CoefficientVector

    if n < 2 or gamma <= 0.0:
        raise DomainError("need n >= 2 and gamma > 0")
    return CoefficientVector((gamma,) * n)


def _cosines(n: int) -> np.ndarray:
    return np.cos(2.0 * np.pi * np.arange(n) / n)


def ideal_roots(n: int, gamma: float) -> RootSet:
    """The exact root set {-gamma + exp(2 pi i k / n)} with tiny residuals."""
    if n < 2 or gamma <= 0.0:
        raise DomainError("need n >= 2 and gamma > 0")
    ks = np.arange(n)
    roots = -gamma + np.exp(2j * np.pi * ks / n)
    res = np.abs((roots + gamma) ** n - 1.0)
    order = np.lexsort((roots.imag, roots.real))
    return RootSet(
        tuple(map(complex, roots[order])),
        tuple(map(float, res[order])),
        method="eigensolver",
    )


def ideal_spectrum(n: int, gamma: float) -> IdealSpectrum:
    cos = _cosines(n)
    strict = int(np.sum(cos > gamma + _TIE_TOL))
    loose = int(np.sum(cos >= gamma - _TIE_TOL))
    rs = ideal_roots(n, gamma)
    if gamma >= 1.0:
        return IdealSpectrum(n, gamma, rs.roots, kappa_plus=-1, kappa_bar=-1)
    return IdealSpectrum(
        n, gamma, rs.roots, kappa_plus=(strict - 1) // 2, kappa_bar=(loose - 1) // 2
    )


def ideal_counts(n: int, gamma: float) -> CountReport:
    """Counts of the ideal vector by the cosine criterion, ties on the axis."""
    if n < 2 or gamma <= 0.0:
        raise DomainError("need n >= 2 and gamma > 0")
    cos = _cosines(n)
    plus = int(np.sum(cos > gamma + _TIE_TOL))
    zero = int(np.sum(np.abs(cos - gamma) <= _TIE_TOL))
    return CountReport(
        nu_minus=n - plus - zero,
        nu_zero=zero,
        nu_plus=plus,
        method="eigensolver",
        tol=_TIE_TOL,
        max_residual=0.0,
    )


def maclaurin_chain(x) -> np.ndarray:
    """The nonincreasing sequence S_1 >= S_2^(1/2) >= ... >= geometric mean.

    S_k is the k-th elementary symmetric polynomial divided by C(n, k).
    """
    xs = np.asarray(x, dtype=float)
    if xs.size == 0 or np.any(xs <= 0.0):
        raise DomainError("maclaurin chain needs strictly positive entries")
    n = xs.size
    if n > 25:
        raise DomainError("maclaurin chain capped at n = 25")
    # Incremental recurrence for elementary symmetric polynomials.
    sig = np.zeros(n + 1)
    sig[0] = 1.0
    for xj in xs:
        sig[1:] += xj * sig[:-1].copy()
    chain = np.empty(n)
    for k in range(1, n + 1):
        sk = sig[k] / math.comb(n, k)
        chain[k - 1] = sk ** (1.0 / k)
    return chain


def product_bound_check(t) -> tuple[float, float]:
    """(prod(1 + t_k), (1 + T)^n) with T the geometric mean; lhs >= rhs."""
    ts = np.asarray(t, dtype=float)
    if ts.size == 0 or np.any(ts < 0.0):
        raise DomainError("product bound needs nonnegative entries")
    lhs = float(np.prod(1.0 + ts))
    if np.any(ts == 0.0):
        tbar = 0.0
    else:
        tbar = geometric_mean(ts)
    rhs = (1.0 + tbar) ** ts.size
    return lhs, rhs
