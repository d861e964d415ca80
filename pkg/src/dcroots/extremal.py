"""Constructions hitting prescribed right-half root counts.

A single huge outer entry M gamma, balanced by a tiny entry gamma/A so
the geometric mean stays gamma, pushes all but one root far left: the
count drops to one.  Running the homotopy path from that vector back to
the all-gamma vector then passes through every odd count up to the
ideal maximum, and each intermediate vector lifts to a doubly cyclic
matrix with the same spectrum count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import CoefficientVector, DCMatrix, to_multiset
from .errors import ConstructionError, DomainError
from .homotopy import find_t_for_count, from_multiset, multiset_at, plan_full_path
from .oracle import ideal_counts, ideal_vector
from .roots import classify, solve_all_roots

__all__ = [
    "ExtensionRecipe",
    "extension_recipe",
    "recipe_vector",
    "circle_minimum",
    "construct_nu_one",
    "construct_with_count",
    "matrix_with_count",
]


@dataclass(frozen=True)
class ExtensionRecipe:
    """The scaled ingredients of the count-one construction.

    Interior entries rescaled by 1/gamma give b-values with
    multiplicities; beta_sep is half the smallest of (first b-value)/2
    and the gaps between distinct b-values.  M is the outer scale, A the
    balancing inner reciprocal, G = 1/gamma.
    """

    b_values: tuple[float, ...]
    b_mults: tuple[int, ...]
    beta_sep: float
    M: float
    A: float
    G: float

    @property
    def n(self) -> int:
        return sum(self.b_mults) + 2


def extension_recipe(
    n: int,
    gamma: float,
    c_interior: CoefficientVector | None = None,
    m_scale: float = 1.0,
) -> ExtensionRecipe:
    """Compute the b-frame ingredients; m_scale multiplies the outer value."""
    if n < 5:
        raise DomainError("the two-extreme construction needs n >= 5")
    if not (0.0 < gamma < 1.0):
        raise DomainError("need 0 < gamma < 1")
    if c_interior is None:
        c_interior = CoefficientVector((gamma,) * (n - 2))
    if c_interior.n != n - 2:
        raise DomainError(f"interior vector must have length {n - 2}")
    dm = to_multiset(c_interior)
    b_vals = tuple(v / gamma for v in dm.values)
    b_mults = dm.mults
    gaps = [b_vals[i + 1] - b_vals[i] for i in range(len(b_vals) - 1)]
    two_beta = min([b_vals[0] / 2.0] + gaps)
    beta = two_beta / 2.0
    g = 1.0 / gamma
    # Products in log-space: the outer scale reaches ~1e18 for small gamma.
    log_b_prod = sum(m * math.log(v) for v, m in zip(b_vals, b_mults))
    log_gn_term = n * math.log(g) - (n - 1) * math.log(beta)
    log_m = math.log(8.0) + max(math.log(b_vals[-1]), log_gn_term)
    m_outer = math.exp(log_m) * m_scale
    a_inner = m_outer * math.exp(log_b_prod)
    return ExtensionRecipe(
        b_values=b_vals,
        b_mults=b_mults,
        beta_sep=beta,
        M=m_outer,
        A=a_inner,
        G=g,
    )


def recipe_vector(recipe: ExtensionRecipe, gamma: float) -> CoefficientVector:
    """(gamma/A, interior, M gamma): geometric mean exactly gamma by balance."""
    interior = [
        gamma * v for v, m in zip(recipe.b_values, recipe.b_mults) for _ in range(m)
    ]
    return CoefficientVector(
        tuple([gamma / recipe.A] + interior + [recipe.M * gamma])
    )


def circle_minimum(recipe: ExtensionRecipe, points: int = 256) -> float:
    """min |P_M(w)| over the circles |w + b_j| = beta around each interior b.

    P_M is the b-frame polynomial with entries (1/A, b-values, M); the
    construction needs this minimum to clear 2 G^n.  Evaluated in
    log-magnitude to survive the extreme entry spread.
    """
    entries = np.array(
        [1.0 / recipe.A]
        + [v for v, m in zip(recipe.b_values, recipe.b_mults) for _ in range(m)]
        + [recipe.M]
    )
    angles = np.exp(2j * np.pi * np.arange(points) / points)
    best = np.inf
    for bj in recipe.b_values:
        ws = -bj + recipe.beta_sep * angles
        logmag = np.sum(np.log(np.abs(ws[:, None] + entries[None, :])), axis=1)
        best = min(best, float(np.exp(np.min(logmag))))
    return best


def construct_nu_one(
    n: int,
    gamma: float,
    c_interior: CoefficientVector | None = None,
) -> CoefficientVector:
    """A vector with exactly one closed-right-half root, verified.

    The outer scale is a sufficient threshold, so verification failure is
    answered by doubling it, up to 8 times.
    """
    if n < 2:
        raise DomainError("need n >= 2")
    if not (0.0 < gamma < 1.0):
        raise DomainError("need 0 < gamma < 1")
    if n <= 4:
        return ideal_vector(n, gamma)
    last_counts = None
    for attempt in range(9):
        recipe = extension_recipe(n, gamma, c_interior, m_scale=2.0**attempt)
        c_ext = recipe_vector(recipe, gamma)
        # The lone right root sits near gamma^n/... which undercuts the
        # default axis band for large n; it is still fully accurate in
        # relative terms, so verify with a much tighter band.
        rep = classify(solve_all_roots(c_ext), tol=1e-13)
        last_counts = rep
        if rep.nu_plus == 1 and rep.nu_bar == 1:
            return c_ext
    raise ConstructionError(
        "count-one construction failed verification after 8 doublings",
        counts=last_counts,
    )


def construct_with_count(n: int, gamma: float, k: int) -> CoefficientVector:
    """A vector with right-half count exactly k, for any odd k in range."""
    if k % 2 == 0 or k < 1:
        raise DomainError("achievable counts are odd and positive")
    k_max = ideal_counts(n, gamma).nu_plus
    if k > k_max:
        raise DomainError(f"count {k} exceeds the ideal maximum {k_max}")
    if k == k_max:
        return ideal_vector(n, gamma)
    if k == 1:
        c = construct_nu_one(n, gamma)
    else:
        c = None
    if c is None:
        c0 = construct_nu_one(n, gamma)
        plan = plan_full_path(c0)
        t = find_t_for_count(plan, c0, k)
        c = from_multiset(multiset_at(plan, c0, t))
    rep = classify(solve_all_roots(c), tol=1e-13)
    if rep.nu_plus != k:
        raise ConstructionError(
            f"constructed vector verified at count {rep.nu_plus}, wanted {k}",
            counts=rep,
        )
    return c


def mild_vector_with_count(n: int, gamma: float, k: int, edge: float = 0.98) -> CoefficientVector:
    """A count-k vector sampled near the end of its plateau on the path.

    Late plateau samples have the smallest entry spread achieving count
    k, which matters when the vector must survive a dense eigensolve
    after lifting to a matrix.
    """
    if k % 2 == 0 or k < 1:
        raise DomainError("achievable counts are odd and positive")
    k_max = ideal_counts(n, gamma).nu_plus
    if k > k_max:
        raise DomainError(f"count {k} exceeds the ideal maximum {k_max}")
    if k == k_max or n <= 4:
        return ideal_vector(n, gamma)
    from .homotopy import detect_crossings

    c0 = construct_nu_one(n, gamma)
    plan = plan_full_path(c0)
    events = detect_crossings(plan, c0)
    k0 = classify(solve_all_roots(c0), tol=1e-13).nu_plus
    edges = [0.0] + [ev.t_star for ev in events] + [plan.T]
    counts = [k0]
    for ev in events:
        counts.append(counts[-1] + ev.jump)
    if k not in counts:
        raise ConstructionError(
            f"path plateaus {counts} never realize count {k}", counts=counts
        )
    i = counts.index(k)
    a, b = edges[i], edges[i + 1]
    t = a + edge * (b - a)
    c = from_multiset(multiset_at(plan, c0, t))
    rep = classify(solve_all_roots(c), tol=1e-13)
    if rep.nu_plus != k:
        raise ConstructionError(
            f"plateau sample verified at count {rep.nu_plus}, wanted {k}",
            counts=rep,
        )
    return c


def matrix_with_count(n: int, alpha: float, beta: float, k: int) -> DCMatrix:
    """A doubly cyclic matrix with exactly k eigenvalues left of the axis.

    Requires alpha < beta: with alpha > beta no member has a left-half
    eigenvalue, and alpha = beta puts only the eigenvalue 0 on the
    closed left side.
    """
    if alpha <= 0.0 or beta <= 0.0:
        raise DomainError("alpha and beta must be positive")
    if alpha >= beta:
        raise DomainError(
            "alpha >= beta admits no strictly left-half eigenvalues "
            "(alpha = beta: only the eigenvalue 0 on the closed left side)"
        )
    c = construct_with_count(n, alpha / beta, k)
    m = DCMatrix(tuple(beta * x for x in c.entries), (beta,) * n)
    found = _left_eigencount(m.matrix(), c.d_upper / c.d_lower)
    if found != k:
        raise ConstructionError(
            f"lifted matrix shows {found} left-half eigenvalues, wanted {k}",
            counts=found,
        )
    return m


def _left_eigencount(x: np.ndarray, spread: float) -> int:
    """Number of eigenvalues with negative real part, precision-escalating.

    The diagonal spread is invariant under balancing, so small
    eigenvalues of extreme lifts are ill-conditioned beyond double
    precision; those cases are re-solved in extended precision sized to
    the spread.
    """
    eig = np.linalg.eigvals(x)
    n = x.shape[0]
    norm = float(np.max(np.abs(x)))
    # Eigenvalues within eps * norm * spread of the axis are unresolved.
    fuzz = 64.0 * np.finfo(float).eps * norm
    if spread < 1e8 and not np.any(np.abs(eig.real) < fuzz):
        return int(np.sum(eig.real < 0.0))
    import mpmath

    old_dps = mpmath.mp.dps
    try:
        mpmath.mp.dps = max(50, 25 + int(math.log10(max(spread, 1.0))))
        a = mpmath.matrix([[mpmath.mpf(v) for v in row] for row in x.tolist()])
        es = mpmath.eig(a, left=False, right=False)
        return sum(1 for e in es if mpmath.re(e) < 0)
    finally:
        mpmath.mp.dps = old_dps
