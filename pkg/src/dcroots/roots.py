"""Root solving and half-plane counting for prod(z + c_k) = 1.

Two deliberately independent counting routes live here: an algebraic one
(simultaneous Aberth-Ehrlich iteration plus Newton refinement, then sign
classification) and an analytic one (argument-principle contour
quadrature).  Each validates the other; they share no root data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import CoefficientVector, CountReport
from .errors import ContourError, DomainError, SolverError
from .poly import eval_p_minus_one, reciprocal_sum

__all__ = [
    "RootSet",
    "solve_all_roots",
    "classify",
    "count_by_contour",
    "count_right_half",
    "positive_real_root",
    "imaginary_axis_modulus_root",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RootSet:
    """All n roots with per-root certified residuals |P(root) - 1|."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    method: str

    @property
    def n(self) -> int:
        return len(self.roots)

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def near_axis(self, tol: float = 1e-9) -> tuple[int, ...]:
        """Indices of roots flagged as numerically on the imaginary axis."""
        return tuple(i for i, w in enumerate(self.roots) if abs(w.real) <= tol)

    def to_json_list(self) -> list[dict]:
        return [
            {"re": w.real, "im": w.imag, "residual": r}
            for w, r in zip(self.roots, self.residuals)
        ]


def _cexpm1_vec(s: np.ndarray) -> np.ndarray:
    """Vectorized exp(s) - 1 for complex s, accurate near 0, overflow-capped."""
    x = np.minimum(s.real, 709.0)
    y = s.imag
    ex = np.exp(x)
    return (np.expm1(x) * np.cos(y) + (np.cos(y) - 1.0)) + 1j * (ex * np.sin(y))


def _p_minus_one_and_ratio(w: np.ndarray, ent: np.ndarray):
    """(P(w)-1, P'(w)/P(w)) for a batch of points, factored and log-safe."""
    diff = w[:, None] + ent[None, :]
    bad = diff == 0.0
    if np.any(bad):
        # Nudge exact factor hits off the singularity by one ulp-scale step.
        diff = np.where(bad, diff + 1e-300, diff)
    s = np.sum(np.log(diff), axis=1)
    ratio = np.sum(1.0 / diff, axis=1)
    return _cexpm1_vec(s), ratio


def _aberth_pass(w: np.ndarray, ent: np.ndarray, iters: int) -> np.ndarray:
    n = len(w)
    for _ in range(iters):
        pm1, ratio = _p_minus_one_and_ratio(w, ent)
        # Newton correction for P - 1 = 0; P' = P * ratio and P = pm1 + 1.
        denom = (pm1 + 1.0) * ratio
        small = np.abs(denom) < 1e-300
        denom = np.where(small, 1e-300, denom)
        newton = pm1 / denom
        pair = w[:, None] - w[None, :]
        np.fill_diagonal(pair, np.inf)
        repulse = np.sum(1.0 / pair, axis=1)
        delta = newton / (1.0 - newton * repulse)
        w = w - delta
        if np.max(np.abs(delta) / (1.0 + np.abs(w))) < 1e-14:
            break
    return w


def _newton_polish(w: np.ndarray, ent: np.ndarray, iters: int = 12) -> np.ndarray:
    for _ in range(iters):
        pm1, ratio = _p_minus_one_and_ratio(w, ent)
        denom = (pm1 + 1.0) * ratio
        small = np.abs(denom) < 1e-300
        denom = np.where(small, 1e-300, denom)
        step = pm1 / denom
        w = w - step
        if np.max(np.abs(step) / (1.0 + np.abs(w))) < 0.25 * _EPS:
            break
    return w


def _shifted_cluster_roots(ent: np.ndarray, j: int):
    """Roots of P - 1 near -ent[j], solved in the shifted variable s = z + ent[j].

    When a root is closer to -c_j than double spacing can resolve,
    evaluating z + c_j directly is pure cancellation; the shifted
    polynomial s^m * prod(c_i - c_j + s) - 1 keeps full accuracy.
    Returns (roots, residuals) of the m cluster roots.
    """
    cj = ent[j]
    cluster = np.abs(ent - cj) <= 1e-12 * cj
    m = int(np.sum(cluster))
    others = ent[~cluster] - cj
    log_radius = -np.sum(np.log(np.abs(others))) / m
    r0 = math.exp(max(min(log_radius, 700.0), -700.0))
    ks = np.arange(m)
    s = r0 * np.exp(2j * np.pi * (ks + 0.31) / m)
    for _ in range(80):
        logs = m * np.log(s) + np.sum(np.log(others[None, :] + s[:, None]), axis=1)
        pm1 = _cexpm1_vec(logs)
        ratio = m / s + np.sum(1.0 / (others[None, :] + s[:, None]), axis=1)
        step = pm1 / ((pm1 + 1.0) * ratio)
        s = s - step
        if np.max(np.abs(step) / np.abs(s)) < 0.25 * _EPS:
            break
    logs = m * np.log(s) + np.sum(np.log(others[None, :] + s[:, None]), axis=1)
    res = np.abs(_cexpm1_vec(logs))
    return -cj + s, res


def rescue_clusters(
    w: np.ndarray, res: np.ndarray, ent: np.ndarray, tol: float = 1e-10
) -> tuple[np.ndarray, np.ndarray]:
    """Re-solve cluster-hugging roots in shifted coordinates.

    A root within 1e-6 relative of -c_j cannot certify |P - 1| in raw
    coordinates when c_j is extreme; the shifted solve replaces the
    nearest current roots and reports the shifted-frame residual.
    Returns updated copies of (w, res).
    """
    if not np.any(res > tol):
        return w, res
    w = w.copy()
    res = res.copy()
    done_clusters = set()
    for i in np.nonzero(res > tol)[0]:
        j = int(np.argmin(np.abs(w[i] + ent)))
        if abs(w[i] + ent[j]) > 1e-6 * ent[j]:
            continue
        key = round(math.log(ent[j]) * 1e12)
        if key in done_clusters:
            continue
        done_clusters.add(key)
        cl_roots, cl_res = _shifted_cluster_roots(ent, j)
        order = np.argsort(np.abs(w + ent[j]))[: len(cl_roots)]
        # Keep identity: pair replaced and replacement roots in a common
        # lexicographic order; both sets sit in the same tiny neighborhood.
        lhs = order[np.lexsort((w[order].imag, w[order].real))]
        rhs = np.lexsort((cl_roots.imag, cl_roots.real))
        w[lhs] = cl_roots[rhs]
        res[lhs] = cl_res[rhs]
    return w, res


def solve_all_roots(
    c: CoefficientVector,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> RootSet:
    """All n roots of prod(z + c_k) = 1 by Aberth-Ehrlich iteration.

    Seeds sit on a circle of radius max(1, D_upper); refinement runs
    until |P - 1| <= tol or iterations are exhausted, with one retry from
    perturbed seeds.  Roots hugging a coefficient cluster (where the
    factored evaluation cancels catastrophically) are re-solved in
    shifted coordinates and certified there.
    """
    ent = c.as_array()
    n = c.n
    if n < 2:
        raise DomainError("root solving needs n >= 2")
    radius = max(1.0, c.d_upper)
    ks = np.arange(n)
    seeds = radius * np.exp(2j * np.pi * (ks + 0.29) / n + 0.4j)
    # Far seeds contract by roughly (1 - 1/n) per sweep, so the global
    # phase needs about n log(radius) sweeps before local convergence.
    global_iters = max(max_iter, 100 + int(2.0 * n * math.log(radius)))
    best = None
    for attempt in range(2):
        w = seeds if attempt == 0 else seeds * (1.0 + 1e-3 * (attempt + ks / n))
        w = _aberth_pass(w, ent, global_iters)
        w = _newton_polish(w, ent)
        pm1, _ = _p_minus_one_and_ratio(w, ent)
        res = np.abs(pm1)
        w, res = rescue_clusters(w, res, ent, tol)
        if best is None or np.max(res) < np.max(best[1]):
            best = (w.copy(), res.copy())
        if np.max(res) <= tol:
            break
    w, res = best
    if np.max(res) > 1e-8:
        raise SolverError(
            f"root solver failed to certify all roots (worst |P-1| = {np.max(res):.3g})",
            residuals=res,
        )
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    res = res[order]
    return RootSet(tuple(map(complex, w)), tuple(map(float, res)), method="eigensolver")


def classify(roots: RootSet, tol: float = 1e-9) -> CountReport:
    """Count roots by sign of real part; |Re| <= tol is attributed to the axis.

    A root within tol of the axis is flagged rather than silently pushed
    to one side: crossing events legitimately place roots there.
    """
    if tol <= 0.0:
        raise DomainError("classification tolerance must be positive")
    minus = zero = plus = 0
    for w in roots.roots:
        if abs(w.real) <= tol:
            zero += 1
        elif w.real > 0.0:
            plus += 1
        else:
            minus += 1
    return CountReport(
        nu_minus=minus,
        nu_zero=zero,
        nu_plus=plus,
        method=roots.method,
        tol=tol,
        max_residual=roots.max_residual,
    )


def _boundary_pieces(region) -> list[tuple]:
    """Parametrized smooth boundary pieces (z(u), z'(u)) on [0, 1], ccw."""
    p = region.params
    if region.kind == "disk":
        radius = p["radius"]
        return [
            (
                lambda u: radius * cmath.exp(2j * math.pi * u),
                lambda u: radius * 2j * math.pi * cmath.exp(2j * math.pi * u),
            )
        ]
    if region.kind == "half-disk":
        h, radius = p["h"], p["radius"]
        if not (-radius < h < radius):
            raise DomainError("half-disk needs |h| < radius")
        y0 = math.sqrt(radius * radius - h * h)
        phi0 = math.atan2(-y0, h)
        phi1 = math.atan2(y0, h)
        # Chord top->bottom (downward on the left edge) then ccw arc.
        chord = (
            lambda u: complex(h, y0 - 2.0 * y0 * u),
            lambda u: complex(0.0, -2.0 * y0),
        )
        arc = (
            lambda u: radius * cmath.exp(1j * (phi0 + (phi1 - phi0) * u)),
            lambda u: radius
            * 1j
            * (phi1 - phi0)
            * cmath.exp(1j * (phi0 + (phi1 - phi0) * u)),
        )
        return [chord, arc]
    if region.kind == "box":
        x0, x1 = -p["re_lo"], p["re_hi"]
        y1 = p["im_hi"]
        corners = [
            complex(x0, -y1),
            complex(x1, -y1),
            complex(x1, y1),
            complex(x0, y1),
        ]
        pieces = []
        for a, b in zip(corners, corners[1:] + corners[:1]):
            pieces.append(
                (
                    lambda u, a=a, b=b: a + (b - a) * u,
                    lambda u, a=a, b=b: b - a,
                )
            )
        return pieces
    raise DomainError(f"contour counting not defined for region {region.kind!r}")


def _winding_integral(c: CoefficientVector, pieces, panels: int) -> float:
    """Re of (1/2 pi i) contour integral of P'/(P-1) with trapezoid panels."""
    total = 0.0 + 0.0j
    for zfun, dzfun in pieces:
        us = np.linspace(0.0, 1.0, panels + 1)
        zs = np.array([zfun(u) for u in us])
        dzs = np.array([dzfun(u) for u in us])
        pm1, ratio = _p_minus_one_and_ratio(zs, c.as_array())
        # P'/(P-1) = ratio * (1 + 1/(P-1)), kept in the cancellation-free form.
        integrand = ratio * (pm1 + 1.0) / pm1 * dzs
        total += np.trapezoid(integrand, us)
    return (total / (2j * np.pi)).real


def count_by_contour(
    c: CoefficientVector,
    region=None,
    tol: float = 1e-9,
) -> int:
    """Argument-principle root count inside a region, by adaptive quadrature.

    Panel count doubles until two successive winding values differ by less
    than 0.05; the result must land within 0.25 of an integer.  The
    precondition that no root sits within 10 tol of the contour is
    checked against the algebraic solver (the count itself never uses
    that root data).
    """
    from .bounds import half_disk

    if region is None:
        region = half_disk(h=1e-7, radius=1.0)
    pieces = _boundary_pieces(region)
    guard = solve_all_roots(c)
    samples = np.concatenate(
        [np.array([zf(u) for u in np.linspace(0.0, 1.0, 257)]) for zf, _ in pieces]
    )
    dmin = min(
        float(np.min(np.abs(samples - w))) for w in guard.roots
    )
    if dmin < 10.0 * tol:
        raise ContourError(
            f"a root lies {dmin:.3g} from the contour; shrink the region margin"
        )
    prev = None
    panels = 64
    # A root at distance dmin makes a peak of that width on the boundary;
    # start fine enough to resolve it, or coarse agreement can lie.
    if dmin < 0.05:
        while panels < 8.0 / dmin and panels < (1 << 16):
            panels *= 2
    while panels <= 1 << 18:
        val = _winding_integral(c, pieces, panels)
        if prev is not None and abs(val - prev) < 0.05:
            k = round(val)
            if abs(val - k) > 0.25:
                raise ContourError(f"winding value {val:.4f} is not integer-like")
            return int(k)
        prev = val
        panels *= 2
    raise ContourError("quadrature failed to converge to an integer count")


def count_right_half(c: CoefficientVector, tol: float = 1e-9) -> int:
    """Contour count over the right half-disk with an auto-chosen wall offset."""
    from .bounds import half_disk

    guard = solve_all_roots(c)
    res = sorted(abs(w.real) for w in guard.roots if abs(w.real) > 20.0 * tol)
    h = 0.5 * res[0] if res else 1e-6
    h = min(h, 1e-4)
    return count_by_contour(c, half_disk(h=h, radius=1.0), tol=tol)


def positive_real_root(c: CoefficientVector, tol: float = 1e-12) -> float:
    """The unique root of P(x) = 1 in (0, 1), for gamma < 1.

    P is strictly increasing on [0, infinity) with P(0) = gamma^n < 1 and
    P(1) > 1, so bisection brackets it; Newton finishes.
    """
    if c.gamma >= 1.0:
        raise DomainError("positive real root exists only for gamma < 1")
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if eval_p_minus_one(mid, c).real > 0.0:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    for _ in range(30):
        f = eval_p_minus_one(x, c).real
        if abs(f) <= tol:
            break
        df = ((f + 1.0) * reciprocal_sum(x, c)).real
        x -= f / df
    if abs(eval_p_minus_one(x, c).real) > tol:
        raise SolverError("positive real root failed to certify")
    return float(x)


def imaginary_axis_modulus_root(c: CoefficientVector, tol: float = 1e-12) -> float:
    """The unique Y > 0 with prod(Y^2 + c_k^2) = 1, for gamma < 1.

    h(y) = prod(y^2 + c_k^2) is even and increasing on [0, infinity) with
    h(0) = gamma^(2n) < 1 < h(1).
    """
    if c.gamma >= 1.0:
        raise DomainError("imaginary-axis modulus root exists only for gamma < 1")
    ent2 = c.as_array() ** 2

    def hm1(y: float) -> float:
        return float(np.expm1(np.sum(np.log(y * y + ent2))))

    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if hm1(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    y = 0.5 * (lo + hi)
    for _ in range(30):
        f = hm1(y)
        if abs(f) <= tol:
            break
        dh = (f + 1.0) * float(np.sum(2.0 * y / (y * y + ent2)))
        y -= f / dh
    if abs(hm1(y)) > tol:
        raise SolverError("imaginary-axis modulus root failed to certify")
    return float(y)
