"""Domain types and the matrix-level reduction.

A doubly cyclic matrix has positive diagonal ``a`` and negative entries
``-b_k`` along an n-cycle permutation pattern.  Conjugating by a diagonal
matrix reduces the spectral-sign question to the coefficient vector
``c_k = a_k / beta`` (beta = geometric mean of b), whose single scalar
invariant is its own geometric mean gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "CoefficientVector",
    "DMultiset",
    "DCMatrix",
    "CountReport",
    "geometric_mean",
    "to_multiset",
    "from_multiset",
    "reduce_matrix",
    "shift_cycle",
]


def geometric_mean(entries) -> float:
    """Geometric mean of strictly positive reals, computed in log-space.

    Log-space accumulation avoids overflow/underflow for extreme entries
    (the extremal constructions produce spreads of many orders of
    magnitude).
    """
    xs = np.asarray(entries, dtype=float)
    if xs.size == 0:
        raise DomainError("geometric mean of empty sequence")
    if np.any(xs <= 0.0) or not np.all(np.isfinite(xs)):
        raise DomainError("geometric mean requires strictly positive finite entries")
    return float(np.exp(np.mean(np.log(xs))))


@dataclass(frozen=True)
class CoefficientVector:
    """Ascending positive reals with cached geometric mean.

    Entries are canonicalized ascending at construction, so multiset
    logic downstream never branches on ordering.
    """

    entries: tuple[float, ...]
    gamma: float = field(init=False)

    def __post_init__(self):
        ent = tuple(sorted(float(x) for x in self.entries))
        if len(ent) == 0:
            raise DomainError("empty coefficient vector")
        if any((not math.isfinite(x)) or x <= 0.0 for x in ent):
            raise DomainError("coefficient entries must be strictly positive")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "gamma", geometric_mean(ent))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def d_lower(self) -> float:
        """Smallest entry (the D_* of the parameter window)."""
        return self.entries[0]

    @property
    def d_upper(self) -> float:
        """Largest entry (the D^* of the parameter window)."""
        return self.entries[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def to_json_dict(self) -> dict:
        return {"entries": list(self.entries)}

    @classmethod
    def from_json_dict(cls, obj) -> "CoefficientVector":
        return cls(tuple(obj["entries"]))


@dataclass(frozen=True)
class DMultiset:
    """Distinct values with multiplicities: the compressed form of c.

    ``q = len(values) - 1`` is the diversity (number of gaps); the
    homotopy path planner reduces it to zero.
    """

    values: tuple[float, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        ms = tuple(int(m) for m in self.mults)
        if len(vals) != len(ms) or len(vals) == 0:
            raise DomainError("values and mults must be nonempty and aligned")
        if any(v <= 0.0 or not math.isfinite(v) for v in vals):
            raise DomainError("multiset values must be strictly positive")
        if any(m <= 0 for m in ms):
            raise DomainError("multiplicities must be positive integers")
        if any(vals[i] >= vals[i + 1] for i in range(len(vals) - 1)):
            raise DomainError("multiset values must be strictly ascending")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "mults", ms)

    @property
    def n(self) -> int:
        return sum(self.mults)

    @property
    def q(self) -> int:
        return len(self.values) - 1

    def to_json_dict(self) -> dict:
        return {"values": list(self.values), "mults": list(self.mults)}

    @classmethod
    def from_json_dict(cls, obj) -> "DMultiset":
        return cls(tuple(obj["values"]), tuple(obj["mults"]))


def to_multiset(c: CoefficientVector) -> DMultiset:
    """Group equal entries of an ascending vector into (value, mult) pairs.

    Grouping is exact: entries meant to be equal are produced bit-identical
    by the path formulas, and epsilon-grouping would silently change the
    diversity.
    """
    values: list[float] = []
    mults: list[int] = []
    for x in c.entries:
        if values and x == values[-1]:
            mults[-1] += 1
        else:
            values.append(x)
            mults.append(1)
    return DMultiset(tuple(values), tuple(mults))


def from_multiset(d: DMultiset) -> CoefficientVector:
    """Expand a multiset back to the ascending coefficient vector."""
    ent: list[float] = []
    for v, m in zip(d.values, d.mults):
        ent.extend([v] * m)
    return CoefficientVector(tuple(ent))


def shift_cycle(n: int) -> tuple[int, ...]:
    """The standard n-cycle k -> k+1 (mod n)."""
    return tuple((k + 1) % n for k in range(n))


def _is_n_cycle(perm: tuple[int, ...]) -> bool:
    n = len(perm)
    if sorted(perm) != list(range(n)):
        return False
    seen = 0
    k = 0
    for _ in range(n):
        k = perm[k]
        seen += 1
        if k == 0:
            break
    return k == 0 and seen == n


@dataclass(frozen=True)
class DCMatrix:
    """Doubly cyclic matrix: diag(a) minus diag(b) times an n-cycle permutation.

    ``perm[i]`` is the column carrying the ``-b_i`` entry in row ``i``;
    the default is the shift cycle, giving the superdiagonal-plus-corner
    pattern.  The characteristic polynomial does not depend on which
    n-cycle is used.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    perm: tuple[int, ...] = ()

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b = tuple(float(x) for x in self.b)
        if len(a) != len(b) or len(a) < 2:
            raise DomainError("a and b must have equal length n >= 2")
        if any(x <= 0.0 or not math.isfinite(x) for x in a + b):
            raise DomainError("a and b entries must be strictly positive")
        perm = tuple(self.perm) if self.perm else shift_cycle(len(a))
        if not _is_n_cycle(perm):
            raise DomainError("perm must be a single n-cycle")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "perm", perm)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def alpha(self) -> float:
        return geometric_mean(self.a)

    @property
    def beta(self) -> float:
        return geometric_mean(self.b)

    def matrix(self) -> np.ndarray:
        x = np.diag(np.asarray(self.a, dtype=float))
        for i, j in enumerate(self.perm):
            x[i, j] -= self.b[i]
        return x

    def to_json_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "perm": list(self.perm)}

    @classmethod
    def from_json_dict(cls, obj) -> "DCMatrix":
        return cls(tuple(obj["a"]), tuple(obj["b"]), tuple(obj.get("perm", ())))


def reduce_matrix(m: DCMatrix) -> tuple[CoefficientVector, float]:
    """Reduce a doubly cyclic matrix to its coefficient vector.

    Returns ``(c, beta)`` with ``c_k = a_k / beta`` sorted ascending.  The
    left-half-plane eigenvalue count of the matrix equals the open
    right-half-plane root count of ``prod(z + c_k) = 1`` under the sign
    flip ``z = -lambda``.
    """
    beta = m.beta
    c = CoefficientVector(tuple(x / beta for x in m.a))
    return c, beta


@dataclass(frozen=True)
class CountReport:
    """Root counts of prod(z + c_k) = 1 by half-plane, with certification."""

    nu_minus: int
    nu_zero: int
    nu_plus: int
    method: str
    tol: float
    max_residual: float

    def __post_init__(self):
        if min(self.nu_minus, self.nu_zero, self.nu_plus) < 0:
            raise DomainError("counts must be nonnegative")

    @property
    def nu_bar(self) -> int:
        return self.nu_zero + self.nu_plus

    @property
    def n(self) -> int:
        return self.nu_minus + self.nu_zero + self.nu_plus

    def to_json_dict(self) -> dict:
        return {
            "counts": {
                "minus": self.nu_minus,
                "zero": self.nu_zero,
                "plus": self.nu_plus,
                "bar": self.nu_bar,
            },
            "method": self.method,
            "tol": self.tol,
            "max_residual": self.max_residual,
        }

    @classmethod
    def from_json_dict(cls, obj) -> "CountReport":
        counts = obj["counts"]
        return cls(
            nu_minus=int(counts["minus"]),
            nu_zero=int(counts["zero"]),
            nu_plus=int(counts["plus"]),
            method=obj.get("method", "eigensolver"),
            tol=float(obj.get("tol", 1e-9)),
            max_residual=float(obj.get("max_residual", 0.0)),
        )
