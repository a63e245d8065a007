"""
Holomorphic polynomials in the generator Z(x, y) = -y + i*x.

Z is annihilated by the Cauchy-Riemann operator for every (alpha, beta) and
the product rule keeps the class closed, so every ``HoloPoly`` is holomorphic
by construction. Note that z~ = y - i*x equals -Z.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

import numpy as np

from .algebra import GC, I, ZERO, AlgebraParams, mul
from .errors import DegreeOverflow, ParamsMismatch
from .grid import ComplexField, Disk, GridSpec, Rect
from .realpoly import RealPoly

DEGREE_CAP = 64


def generator(X, Y) -> GC:
    """Z(x, y) = -y + i*x."""
    return GC(-Y, X)


class HoloPoly:
    """f(x, y) = sum_k c_k * Z(x, y)^k with GC coefficients c_0 .. c_n."""

    __slots__ = ("coeffs", "params")

    def __init__(self, coeffs: Iterable, params: AlgebraParams):
        cs = [GC.of(c) for c in coeffs]
        while cs and cs[-1].x == 0.0 and cs[-1].y == 0.0:
            cs.pop()
        if len(cs) - 1 > DEGREE_CAP:
            raise DegreeOverflow(f"degree {len(cs) - 1} exceeds cap {DEGREE_CAP}")
        self.coeffs: tuple[GC, ...] = tuple(GC(float(c.x), float(c.y)) for c in cs)
        self.params = params

    # construction helpers

    @classmethod
    def zero(cls, params: AlgebraParams) -> "HoloPoly":
        return cls([], params)

    @classmethod
    def constant(cls, c, params: AlgebraParams) -> "HoloPoly":
        return cls([c], params)

    @classmethod
    def Z(cls, params: AlgebraParams) -> "HoloPoly":
        return cls([ZERO, GC(1.0, 0.0)], params)

    @classmethod
    def from_json(cls, obj: dict, params: AlgebraParams) -> "HoloPoly":
        return cls([tuple(c) for c in obj["coeffs"]], params)

    def to_json(self) -> dict:
        return {"coeffs": [[c.x, c.y] for c in self.coeffs]}

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __repr__(self):
        cs = ", ".join(f"({c.x:g}, {c.y:g})" for c in self.coeffs)
        return f"HoloPoly([{cs}], alpha={self.params.alpha:g}, beta={self.params.beta:g})"

    def __eq__(self, other):
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return self.params == other.params and self.coeffs == other.coeffs

    __hash__ = None

    # evaluation

    def __call__(self, X, Y) -> GC:
        """Horner evaluation at arrays of coordinates."""
        X = np.asarray(X, dtype=float)
        Y = np.asarray(Y, dtype=float)
        if not self.coeffs:
            return GC(np.zeros_like(X + Y), np.zeros_like(X + Y))
        z = generator(X, Y)
        top = self.coeffs[-1]
        acc = GC(np.full(np.broadcast(X, Y).shape, top.x), np.full(np.broadcast(X, Y).shape, top.y))
        for c in reversed(self.coeffs[:-1]):
            acc = mul(acc, z, self.params) + c
        return acc

    def eval(self, pt) -> GC:
        v = self(pt[0], pt[1])
        return GC(float(v.x), float(v.y))

    # algebra

    def _check(self, other: "HoloPoly") -> None:
        if other.params != self.params:
            raise ParamsMismatch("HoloPoly operands use different algebra parameters")

    def __add__(self, other):
        if isinstance(other, (GC, int, float)):
            other = HoloPoly.constant(other, self.params)
        if not isinstance(other, HoloPoly):
            return NotImplemented
        return add_poly(self, other)

    __radd__ = __add__

    def __neg__(self):
        return HoloPoly([-c for c in self.coeffs], self.params)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HoloPoly):
            return mul_poly(self, other)
        if isinstance(other, GC):
            return HoloPoly([mul(c, other, self.params) for c in self.coeffs], self.params)
        if isinstance(other, (int, float, np.floating)):
            return HoloPoly([c * float(other) for c in self.coeffs], self.params)
        return NotImplemented

    __rmul__ = __mul__

    def real_parts(self) -> tuple[RealPoly, RealPoly]:
        """Expand into real polynomials (u, v) with f = u + i*v."""
        p = self.params
        u, v = RealPoly.constant(0.0), RealPoly.constant(0.0)
        zu, zv = -RealPoly.y(), RealPoly.x()
        for c in reversed(self.coeffs):
            # (u + i v) * (zu + i zv) + c
            u, v = (u * zu - p.alpha * (v * zv) + c.x,
                    u * zv + v * zu - p.beta * (v * zv) + c.y)
        return u, v


def evaluate(f: HoloPoly, pt) -> GC:
    return f.eval(pt)


def add_poly(f: HoloPoly, g: HoloPoly) -> HoloPoly:
    f._check(g)
    n = max(len(f.coeffs), len(g.coeffs))
    fc = list(f.coeffs) + [ZERO] * (n - len(f.coeffs))
    gc = list(g.coeffs) + [ZERO] * (n - len(g.coeffs))
    return HoloPoly([a + b for a, b in zip(fc, gc)], f.params)


def mul_poly(f: HoloPoly, g: HoloPoly) -> HoloPoly:
    f._check(g)
    if f.is_zero() or g.is_zero():
        return HoloPoly.zero(f.params)
    if f.degree + g.degree > DEGREE_CAP:
        raise DegreeOverflow(f"product degree {f.degree + g.degree} exceeds cap {DEGREE_CAP}")
    out = [ZERO] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + mul(a, b, f.params)
    return HoloPoly(out, f.params)


def derive(f: HoloPoly) -> HoloPoly:
    """Complex derivative; equals d_z f because d_z Z = i."""
    p = f.params
    return HoloPoly([mul(c * float(k), I, p) for k, c in enumerate(f.coeffs)][1:], p)


def to_field(f: HoloPoly, grid: GridSpec) -> ComplexField:
    X, Y = grid.coords()
    return ComplexField.from_gc(grid, f(X, Y), f.params)


Region = Union[GridSpec, Disk, Rect]


def region_points(region: Region, n: int = 257) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(region, GridSpec):
        return region.coords()
    return region.sample(n)


def sup_norm(f: Union[HoloPoly, ComplexField], region: Region = None, n: int = 257) -> float:
    """Largest euclidean modulus over the samples of ``region``.

    For a ComplexField the region defaults to its own grid; a Disk/Rect region
    then masks the grid nodes.
    """
    if isinstance(f, ComplexField):
        mag = f.magnitude()
        if region is None or isinstance(region, GridSpec):
            return float(mag.max())
        X, Y = f.grid.coords()
        return float(mag[region.contains(X, Y)].max())
    X, Y = region_points(region, n)
    return float(np.max(abs(f(X, Y))))


def exp_partial_sums(params: AlgebraParams, degrees: Sequence[int]) -> list[HoloPoly]:
    """Partial sums of sum_n Z^n / n! truncated at each requested degree."""
    return [HoloPoly([1.0 / math.factorial(k) for k in range(d + 1)], params) for d in degrees]
