"""Evaluation of P(z) = prod(z + c_k), its derivative, and expansions.

The factored form is kept for stable evaluation; the expanded monomial
form exists only to feed coefficient-based cross-checks, since expanded
coefficients are ill-conditioned for clustered entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CoefficientVector
from .errors import CapacityError

__all__ = [
    "PolyEval",
    "eval_p",
    "eval_dp_dz",
    "eval_with_derivative",
    "char_poly_value",
    "expand_coefficients",
    "log_eval_p",
    "reciprocal_sum",
    "eval_p_minus_one",
]

_MAX_EXPAND = 64


@dataclass(frozen=True)
class PolyEval:
    """Value and z-derivative of P at one point."""

    value: complex
    dvalue: complex


def _entries(c) -> np.ndarray:
    if isinstance(c, CoefficientVector):
        return c.as_array()
    return np.asarray(c, dtype=float)


def eval_p(z: complex, c) -> complex:
    """prod(z + c_k), accumulated in ascending-entry order.

    The fixed order gives reproducible bit patterns across runs.
    """
    acc = complex(1.0)
    for ck in _entries(c):
        acc *= z + ck
    return acc


def eval_dp_dz(z: complex, c) -> complex:
    """Exact product-rule derivative sum_k prod_{j != k}(z + c_j).

    Prefix/suffix products keep it exact at factor zeros, where the
    logarithmic form P * sum 1/(z + c_k) breaks down.
    """
    ent = _entries(c)
    n = len(ent)
    f = z + ent
    pre = np.empty(n + 1, dtype=complex)
    suf = np.empty(n + 1, dtype=complex)
    pre[0] = 1.0
    for k in range(n):
        pre[k + 1] = pre[k] * f[k]
    suf[n] = 1.0
    for k in range(n - 1, -1, -1):
        suf[k] = suf[k + 1] * f[k]
    return complex(np.sum(pre[:n] * suf[1:]))


def eval_with_derivative(z: complex, c) -> PolyEval:
    return PolyEval(eval_p(z, c), eval_dp_dz(z, c))


def char_poly_value(lam: complex, c) -> complex:
    """Characteristic polynomial prod(c_k - lam) - 1 of the reduced matrix.

    Identical arithmetic path to eval_p(-lam, c) - 1.
    """
    return eval_p(-lam, c) - 1.0


def log_eval_p(z: complex, c) -> complex:
    """sum log(z + c_k): overflow-safe log of P for extreme entry spreads."""
    f = z + _entries(c).astype(complex)
    return complex(np.sum(np.log(f)))


def reciprocal_sum(z: complex, c) -> complex:
    """sum 1/(z + c_k) = P'/P, finite wherever no factor vanishes."""
    f = z + _entries(c).astype(complex)
    return complex(np.sum(1.0 / f))


def _cexpm1(s: complex) -> complex:
    """exp(s) - 1 for complex s, accurate near 0 and safe for large |Re s|."""
    x, y = s.real, s.imag
    ex = np.exp(min(x, 709.0))
    re = np.expm1(min(x, 709.0)) * np.cos(y) + (np.cos(y) - 1.0)
    im = ex * np.sin(y)
    return complex(re, im)


def eval_p_minus_one(z: complex, c) -> complex:
    """P(z) - 1 evaluated as expm1(sum log(z + c_k)).

    Accurate near P = 1 and overflow-safe for extreme entry spreads; an
    exact zero factor falls back to the direct product.
    """
    f = z + _entries(c).astype(complex)
    if np.any(f == 0.0):
        return eval_p(z, c) - 1.0
    s = complex(np.sum(np.log(f)))
    return _cexpm1(s)


def expand_coefficients(c) -> np.ndarray:
    """Monomial coefficients of prod(z + c_k) - 1, highest power first.

    Leading coefficient is 1, the coefficient of z^(n-k) is the k-th
    elementary symmetric polynomial, and the constant term is gamma^n - 1.
    """
    ent = _entries(c)
    n = len(ent)
    if n > _MAX_EXPAND:
        raise CapacityError(f"expansion capped at degree {_MAX_EXPAND}, got {n}")
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    for k, ck in enumerate(ent):
        coeffs[1 : k + 2] += ck * coeffs[0 : k + 1].copy()
    coeffs[-1] -= 1.0
    return coeffs
