"""Explicit localization constants and regions for right-half-plane roots.

Everything here is closed-form arithmetic: the zero-free inner radius d,
the box/wall regions, the dimension-free improved annulus for gamma >=
1/2, and the explicit implicit-function-theorem trust radii used by the
trajectory step-soundness check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "RegionSpec",
    "IFTConstants",
    "inner_radius",
    "delta_square",
    "epsilon_wall",
    "improved_annulus",
    "outside_ellipsoid",
    "ift_constants",
    "default_rho",
    "disk",
    "annulus",
    "box_region",
    "wall_region",
    "half_disk",
    "ellipsoid_exterior",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class RegionSpec:
    """A named plane region with a total membership predicate."""

    kind: str
    params: dict

    def contains(self, z: complex) -> bool:
        x, y = z.real, z.imag
        p = self.params
        if self.kind == "disk":
            return abs(z) <= p["radius"]
        if self.kind == "annulus":
            return p["r_in"] < abs(z) < p["r_out"]
        if self.kind == "box":
            inside = (-p["re_lo"] < x < p["re_hi"]) and abs(y) < p["im_hi"]
            in_delta_square = abs(x) <= p["delta"] and abs(y) <= p["delta"]
            return inside and not in_delta_square
        if self.kind == "wall":
            return abs(x) <= p["epsilon"] and p["delta"] <= abs(y) <= p["im_hi"]
        if self.kind == "half-disk":
            return x >= p["h"] and abs(z) <= p["radius"]
        if self.kind == "half-plane":
            return x >= p["re_min"]
        if self.kind == "ellipsoid-exterior":
            lhs = x * x / p["ax2"] + y * y / p["ay2"]
            return lhs >= p["level"]
        raise DomainError(f"unknown region kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


def disk(radius: float) -> RegionSpec:
    return RegionSpec("disk", {"radius": float(radius)})


def annulus(r_in: float, r_out: float) -> RegionSpec:
    return RegionSpec("annulus", {"r_in": float(r_in), "r_out": float(r_out)})


def half_disk(h: float, radius: float = 1.0) -> RegionSpec:
    """Right half-disk {Re z >= h, |z| <= radius}: the contour-count region."""
    return RegionSpec("half-disk", {"h": float(h), "radius": float(radius)})


def _check_window(gamma: float, d_lower: float, d_upper: float):
    if not (0.0 < d_lower <= gamma <= d_upper):
        raise DomainError("need 0 < D_lower <= gamma <= D_upper")


def inner_radius(gamma: float, d_upper: float, n: int) -> float:
    """Zero-free disk radius d = (1 - gamma^n) (1 + D_upper)^(-n)."""
    if not (0.0 < gamma < 1.0):
        raise DomainError("inner radius defined for 0 < gamma < 1")
    if d_upper < gamma:
        raise DomainError("need d_upper >= gamma")
    return (1.0 - gamma**n) * (1.0 + d_upper) ** (-n)


def delta_square(gamma: float, d_upper: float, n: int) -> float:
    """Half-width delta = (2/3) d of the excluded square at the origin."""
    return (2.0 / 3.0) * inner_radius(gamma, d_upper, n)


def epsilon_wall(gamma: float, d_lower: float, d_upper: float, n: int) -> float:
    """Width of the strip along the axis where roots provably move right.

    Evaluated at the sqrt(3)-inflated window, matching how the bound is
    applied along extended paths.
    """
    _check_window(gamma, d_lower, d_upper)
    if gamma >= 1.0:
        raise DomainError("wall width defined for gamma < 1")
    delt = delta_square(gamma, _SQRT3 * d_upper, n)
    return min(d_lower / 12.0, delt * delt / (4.0 * (1.0 + _SQRT3 * d_upper)))


def box_region(gamma: float, d_lower: float, d_upper: float, n: int) -> RegionSpec:
    """Localization box for roots with Re >= -D_lower/3, minus the delta square."""
    return RegionSpec(
        "box",
        {
            "re_lo": d_lower / 3.0,
            "re_hi": 1.0,
            "im_hi": 1.0,
            "delta": delta_square(gamma, d_upper, n),
        },
    )


def wall_region(gamma: float, d_lower: float, d_upper: float, n: int) -> RegionSpec:
    """Thin strip |Re| <= epsilon, delta <= |Im| <= 1 along the axis."""
    return RegionSpec(
        "wall",
        {
            "epsilon": epsilon_wall(gamma, d_lower, d_upper, n),
            "delta": delta_square(gamma, _SQRT3 * d_upper, n),
            "im_hi": 1.0,
        },
    )


def improved_annulus(gamma: float, d_lower: float) -> tuple[float, float]:
    """Dimension-free annulus (4/5) D_lower (1-gamma) < |z| < (3/2) sqrt(1-gamma).

    Valid for gamma >= 1/2 only.
    """
    if not (0.5 <= gamma < 1.0):
        raise DomainError("improved annulus requires 1/2 <= gamma < 1")
    if d_lower <= 0.0 or d_lower > gamma:
        raise DomainError("need 0 < d_lower <= gamma")
    r_in = 0.8 * d_lower * (1.0 - gamma)
    r_out = 1.5 * math.sqrt(1.0 - gamma)
    return r_in, r_out


def ellipsoid_exterior(gamma: float, d_lower: float) -> RegionSpec:
    """Exterior of x^2/(1-gamma)^2 + y^2/(1-gamma) < (3/4) D_lower^2."""
    if not (0.5 <= gamma < 1.0):
        raise DomainError("ellipsoid bound requires 1/2 <= gamma < 1")
    return RegionSpec(
        "ellipsoid-exterior",
        {
            "ax2": (1.0 - gamma) ** 2,
            "ay2": 1.0 - gamma,
            "level": 0.75 * d_lower * d_lower,
        },
    )


def outside_ellipsoid(z: complex, gamma: float, d_lower: float) -> bool:
    return ellipsoid_exterior(gamma, d_lower).contains(z)


@dataclass(frozen=True)
class IFTConstants:
    """Explicit implicit-function-theorem trust radii for root trajectories.

    kappa bounds how far a root can move within a time-ball of radius r.
    The constants are deliberately conservative; the safety knob only
    ever shrinks them.
    """

    M0: float
    M1: float
    M2: float
    Omega: float
    kappa: float
    r: float

    def __post_init__(self):
        if min(self.M0, self.M1, self.M2, self.Omega, self.kappa, self.r) <= 0.0:
            raise DomainError("IFT constants must all be positive")


def default_rho(gamma: float, d_lower: float, d_upper: float, n: int) -> float:
    """Half the minimum of the wall width and log(3)/(2n)."""
    eps = epsilon_wall(gamma, d_lower, d_upper, n)
    return 0.5 * min(eps, math.log(3.0) / (2.0 * n))


def ift_constants(
    gamma: float,
    d_lower: float,
    d_upper: float,
    n: int,
    rho: float | None = None,
    safety: float = 1.0,
) -> IFTConstants:
    """Derivative bounds M0..M2, simple-root margin Omega, radii kappa and r."""
    _check_window(gamma, d_lower, d_upper)
    if gamma >= 1.0:
        raise DomainError("IFT constants defined for gamma < 1")
    rho_max = default_rho(gamma, d_lower, d_upper, n)
    if rho is None:
        rho = rho_max
    if not (0.0 < rho <= rho_max):
        raise DomainError(f"rho must lie in (0, {rho_max:.3g}]")
    if not (0.0 < safety <= 1.0):
        raise DomainError("safety factor must lie in (0, 1]")
    m0 = 2.0**n * (1.0 + d_upper) ** n
    m1 = n * n * m0 * (1.0 + 36.0 / d_lower**2)
    m2 = 216.0 * n**3 * (1.0 + d_upper) * (1.0 + m1 / d_lower + m0 / d_lower**2)
    omega = n * d_lower / (6.0 * (1.0 + d_upper) ** 2)
    kappa = 0.5 * min(rho, omega / (8.0 * m2))
    r = 0.5 * min(kappa * omega / (8.0 * (m1 + m2)), rho)
    return IFTConstants(
        M0=m0, M1=m1, M2=m2, Omega=omega, kappa=safety * kappa, r=safety * r
    )
