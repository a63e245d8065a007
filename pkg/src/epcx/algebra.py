"""
Two-dimensional commutative algebra with structure polynomial X^2 + beta*X + alpha.

Elements are written z = x + i*y with i^2 = -alpha - beta*i. The classical
complex numbers are (alpha, beta) = (1, 0), hyperbolic numbers (-1, 0) and dual
numbers (0, 0).

The fields of :class:`GC` may be numpy arrays; every function in this module is
written with plain arithmetic so that it broadcasts elementwise. Grid code
relies on this to treat a whole sampled field as a single ``GC``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NotElliptic, SingularElement

Real = Union[float, np.ndarray]

#: Absolute threshold on |x^2 - beta*x*y + alpha*y^2| below which ``inv`` refuses.
INV_EPS = 1e-14


@dataclass(frozen=True)
class AlgebraParams:
    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def discriminant(self) -> float:
        """4*alpha - beta**2; positive exactly in the elliptic case."""
        return 4.0 * self.alpha - self.beta**2

    @property
    def elliptic(self) -> bool:
        return self.discriminant > 0.0

    @property
    def lemma1_admissible(self) -> bool:
        # alpha*beta^2 - 4*alpha^2 = alpha*(beta^2 - 4*alpha)
        return self.alpha != 0.0 and self.beta**2 != 4.0 * self.alpha

    def require_elliptic(self) -> None:
        if not self.elliptic:
            raise NotElliptic(
                f"(alpha, beta) = ({self.alpha}, {self.beta}) is not elliptic: "
                f"4*alpha - beta^2 = {self.discriminant} <= 0"
            )

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class GC:
    """A generalized complex number x + i*y.

    Addition, subtraction and scaling by reals do not depend on the algebra
    parameters and are available as operators. Products between two elements
    need the parameters and go through :func:`mul`.
    """

    x: Real = 0.0
    y: Real = 0.0

    def __add__(self, other: "GC") -> "GC":
        if not isinstance(other, GC):
            return NotImplemented
        return GC(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "GC") -> "GC":
        if not isinstance(other, GC):
            return NotImplemented
        return GC(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "GC":
        return GC(-self.x, -self.y)

    def __mul__(self, s) -> "GC":
        if isinstance(s, GC):
            raise TypeError("GC * GC depends on the algebra; use mul(z1, z2, params)")
        return GC(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "GC":
        if isinstance(s, GC):
            raise TypeError("GC / GC depends on the algebra; use mul(z1, inv(z2, p), p)")
        return GC(self.x / s, self.y / s)

    def __abs__(self):
        """Euclidean norm sqrt(x^2 + y^2)."""
        return np.hypot(self.x, self.y)

    def astuple(self) -> tuple:
        return (self.x, self.y)

    @classmethod
    def of(cls, value) -> "GC":
        """Coerce a GC, a real number or an (x, y) pair."""
        if isinstance(value, GC):
            return value
        if isinstance(value, (int, float, np.floating, np.integer)):
            return cls(float(value), 0.0)
        x, y = value
        return cls(float(x), float(y))


ZERO = GC(0.0, 0.0)
ONE = GC(1.0, 0.0)
I = GC(0.0, 1.0)


@dataclass(frozen=True)
class NormConstants:
    """Constants with k1*|z|_(alpha,beta) <= |z| <= k2*|z|_(alpha,beta)."""

    k1: float
    k2: float


def mul(z1: GC, z2: GC, p: AlgebraParams) -> GC:
    a = p.alpha
    b = p.beta
    return GC(
        z1.x * z2.x - a * z1.y * z2.y,
        z1.x * z2.y + z2.x * z1.y - b * z1.y * z2.y,
    )


def conj(z: GC) -> GC:
    """Coordinate conjugation x - i*y.

    For beta != 0 this is *not* multiplicative:
    conj(z1*z2) - conj(z1)*conj(z2) = (0, 2*beta*y1*y2).
    """
    return GC(z.x, -z.y)


def quadratic_form(z: GC, p: AlgebraParams) -> Real:
    """Q(z) = x^2 - beta*x*y + alpha*y^2, the multiplicative norm form."""
    return z.x * z.x - p.beta * z.x * z.y + p.alpha * z.y * z.y


def inv(z: GC, p: AlgebraParams, eps: float = INV_EPS) -> GC:
    q = quadratic_form(z, p)
    if np.any(np.abs(q) <= eps):
        raise SingularElement(f"element {z} is not invertible (|Q| <= {eps})")
    return GC((z.x - p.beta * z.y) / q, -z.y / q)


def norm_ab(z: GC, p: AlgebraParams) -> Real:
    """The parameter-dependent norm sqrt(x^2 - beta*x*y + alpha*y^2)."""
    p.require_elliptic()
    # scale by max(|x|, |y|) first, as hypot does, so tiny or huge z neither underflow nor overflow
    s = np.maximum(np.abs(z.x), np.abs(z.y))
    safe = np.where(s > 0, s, 1.0)
    q = quadratic_form(GC(z.x / safe, z.y / safe), p)
    # q >= 0 in the elliptic case; clip roundoff below zero
    return s * np.sqrt(np.maximum(q, 0.0))


def equivalence_constants(p: AlgebraParams) -> NormConstants:
    """Sharp constants relating the euclidean norm and ``norm_ab``.

    The squared norm is the quadratic form of [[1, -beta/2], [-beta/2, alpha]],
    whose eigenvalues are ((1 + alpha) +- sqrt((1 - alpha)^2 + beta^2)) / 2.
    Then k1 = 1/sqrt(lambda_max) and k2 = 1/sqrt(lambda_min).
    """
    p.require_elliptic()
    a, b = p.alpha, p.beta
    root = math.hypot(1.0 - a, b)
    lam_max = 0.5 * ((1.0 + a) + root)
    # lam_min via the product lam_min*lam_max = alpha - beta^2/4 avoids cancellation
    lam_min = (a - 0.25 * b * b) / lam_max
    return NormConstants(k1=1.0 / math.sqrt(lam_max), k2=1.0 / math.sqrt(lam_min))


def ihat(p: AlgebraParams) -> GC:
    """(beta + 2i) / sqrt(4*alpha - beta^2); squares to -1 in the elliptic case."""
    p.require_elliptic()
    s = math.sqrt(p.discriminant)
    return GC(p.beta / s, 2.0 / s)


def tilde(z: GC) -> GC:
    """z~ = y - i*x, the rotated coordinate used by the Cauchy kernels."""
    return GC(z.y, -z.x)
