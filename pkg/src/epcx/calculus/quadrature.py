"""
Circle contours and the Cauchy-type integral formulas of the elliptic algebra.

On z = c + r(cos t, sin t) the differential dz~ = dy - i dx equals
r (cos t + i sin t) dt, and the trapezoid rule on the uniform t grid is
spectrally accurate for the smooth periodic integrands used here. Sums run in
node order through ``numpy.sum`` (pairwise), so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from scipy.interpolate import RectBivariateSpline

from ..algebra import GC, I, AlgebraParams, ihat, inv, mul, tilde
from ..errors import ZetaOnContour
from ..grid import ComplexField
from ..holo import HoloPoly
from .stencils import d_zbar

ON_CONTOUR_EPS = 1e-9


@dataclass(frozen=True)
class Contour:
    center: tuple[float, float]
    radius: float
    n_nodes: int = 512

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0:
            raise ValueError("contour radius must be positive")
        if self.n_nodes < 16:
            raise ValueError("a contour needs at least 16 nodes")

    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n_nodes) / self.n_nodes

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        t = self.angles()
        return self.center[0] + self.radius * np.cos(t), self.center[1] + self.radius * np.sin(t)

    def with_nodes(self, n: int) -> "Contour":
        return Contour(self.center, self.radius, n)

    @property
    def length(self) -> float:
        return 2.0 * math.pi * self.radius


def contour_integral(f_on_contour: Union[GC, Sequence[GC]], c: Contour, p: AlgebraParams) -> GC:
    """Trapezoid-rule value of the path integral of f dz~ around ``c``."""
    if not isinstance(f_on_contour, GC):
        f_on_contour = GC(np.array([z.x for z in f_on_contour]), np.array([z.y for z in f_on_contour]))
    t = c.angles()
    dzt = GC(np.cos(t), np.sin(t)) * (c.radius * 2.0 * np.pi / c.n_nodes)
    s = mul(f_on_contour, dzt, p)
    return GC(float(np.sum(s.x)), float(np.sum(s.y)))


def _guard_ihat(p: AlgebraParams) -> GC:
    ih = ihat(p)
    sq = mul(ih, ih, p)
    if abs(sq.x + 1.0) > 1e-12 or abs(sq.y) > 1e-12:
        raise AssertionError(f"ihat^2 = {sq} deviates from -1; parameter plumbing is broken")
    return ih


def _check_inside(c: Contour, zeta) -> None:
    X, Y = c.nodes()
    d = np.hypot(X - zeta[0], Y - zeta[1])
    if d.min() < ON_CONTOUR_EPS:
        raise ZetaOnContour(f"zeta = {tuple(zeta)} lies on the contour")
    if math.hypot(zeta[0] - c.center[0], zeta[1] - c.center[1]) >= c.radius:
        raise ValueError(f"zeta = {tuple(zeta)} is not inside the contour")


def _sampler(f) -> Callable[[np.ndarray, np.ndarray], GC]:
    if isinstance(f, HoloPoly):
        return f
    if isinstance(f, ComplexField):
        return field_interpolator(f)
    return f


def field_interpolator(f: ComplexField) -> Callable[[np.ndarray, np.ndarray], GC]:
    """Bicubic spline interpolation of both components of a sampled field."""
    xs, ys = f.grid.axes()
    su = RectBivariateSpline(xs, ys, f.x, kx=3, ky=3)
    sv = RectBivariateSpline(xs, ys, f.y, kx=3, ky=3)
    return lambda X, Y: GC(su(X, Y, grid=False), sv(X, Y, grid=False))


def _kernel_integral(f, c: Contour, zeta, power: int, p: AlgebraParams) -> GC:
    X, Y = c.nodes()
    fv = _sampler(f)(X, Y)
    k = inv(tilde(GC(X - zeta[0], Y - zeta[1])), p)
    if power == 2:
        k = mul(k, k, p)
    return contour_integral(mul(fv, k, p), c, p)


def cauchy_eval(f: Union[HoloPoly, ComplexField], c: Contour, zeta) -> GC:
    """f(zeta) from the boundary values via (1 / (2 pi ihat)) * integral f / (z - zeta)~ dz~."""
    p = f.params
    ih = _guard_ihat(p)
    _check_inside(c, zeta)
    total = _kernel_integral(f, c, zeta, 1, p)
    # 1/ihat = -ihat
    return mul(total, -ih, p) / (2.0 * math.pi)


def derivative_via_contour(f: Union[HoloPoly, ComplexField], c: Contour, zeta) -> GC:
    """f'(zeta) = -(i / (2 pi ihat)) * integral f / ((z - zeta)~)^2 dz~."""
    p = f.params
    ih = _guard_ihat(p)
    _check_inside(c, zeta)
    total = _kernel_integral(f, c, zeta, 2, p)
    return mul(mul(total, I, p), ih, p) / (2.0 * math.pi)


def cauchy_pompeiu_eval(f: ComplexField, c: Contour, zeta, exclusion: float = 3.0) -> GC:
    """Boundary term plus area term of the Cauchy-Pompeiu representation.

    The area integral of d_zbar(f) / (z - zeta)~ uses one h^2 cell per grid
    node inside the disk, skipping nodes within ``exclusion * h`` of zeta.
    Because the kernel is odd about zeta, the skipped disk only contributes
    at second order in h. Boundary values come from bicubic interpolation of
    the samples, so the grid must cover the closed disk.
    """
    p = f.params
    ih = _guard_ihat(p)
    _check_inside(c, zeta)
    g = f.grid
    cx, cy = c.center
    if g.x0 > cx - c.radius or g.x1 < cx + c.radius or g.y0 > cy - c.radius or g.y1 < cy + c.radius:
        raise ValueError("field grid does not cover the contour disk")
    boundary = _kernel_integral(f, c, zeta, 1, p)

    X, Y = g.coords()
    inside = np.hypot(X - cx, Y - cy) < c.radius
    inside &= np.hypot(X - zeta[0], Y - zeta[1]) >= exclusion * g.h
    dzb = d_zbar(f).value
    k = inv(tilde(GC(X[inside] - zeta[0], Y[inside] - zeta[1])), p)
    s = mul(GC(dzb.x[inside], dzb.y[inside]), k, p)
    area = GC(float(np.sum(s.x)), float(np.sum(s.y))) * (g.h * g.h)

    inv_ih = -ih
    return mul(boundary, inv_ih, p) / (2.0 * math.pi) - mul(area, inv_ih, p) / math.pi
