"""Interior estimate for the complex derivative and the uniform-limit (Weierstrass) check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from ..algebra import equivalence_constants, norm_ab
from ..grid import ComplexField, Disk, GridSpec, Rect
from ..holo import HoloPoly, derive, sup_norm, to_field
from .quadrature import Contour, _sampler, cauchy_eval, contour_integral
from .stencils import cr_residual

HOLDS_SLACK = 1e-9


@dataclass(frozen=True)
class InteriorEstimate:
    lhs: float
    rhs: float
    holds: bool
    dist: float
    sup: float
    factor: float


def interior_estimate_check(
    f: HoloPoly,
    domain: Union[Disk, Rect, GridSpec],
    zeta,
    n_samples: int = 257,
) -> InteriorEstimate:
    """Compare |f'(zeta)| with K2 sqrt(alpha) / (K1^2 dist(zeta, boundary)) * sup |f|.

    ``dist`` is exact for disks and rectangles; the supremum is taken over
    samples that include the boundary.
    """
    p = f.params
    nc = equivalence_constants(p)
    if isinstance(domain, GridSpec):
        domain = Rect.of_grid(domain)
    dist = domain.dist_to_boundary(zeta)
    if dist <= 0:
        raise ValueError(f"zeta = {tuple(zeta)} is not interior")
    sup = sup_norm(f, domain, n_samples)
    factor = nc.k2 * math.sqrt(p.alpha) / (nc.k1**2 * dist)
    lhs = float(abs(derive(f).eval(zeta)))
    rhs = factor * sup
    return InteriorEstimate(lhs, rhs, lhs <= rhs * (1.0 + HOLDS_SLACK), dist, sup, factor)


@dataclass
class WeierstrassReport:
    differences: list
    ratios: list
    geometric: bool
    limit_residual: float
    residual_tol: float
    residual_ok: bool
    cauchy_errors: list = field(default_factory=list)
    cauchy_ok: Optional[bool] = None
    path_bounds: list = field(default_factory=list)
    path_bounds_ok: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return (
            self.geometric
            and self.residual_ok
            and self.cauchy_ok is not False
            and self.path_bounds_ok is not False
        )


def _as_field(f, grid: GridSpec) -> ComplexField:
    if isinstance(f, ComplexField):
        if f.grid != grid:
            raise ValueError("sampled sequence element lives on a different grid")
        return f
    return to_field(f, grid)


def weierstrass_check(
    seq: Sequence[Union[HoloPoly, ComplexField]],
    compact: GridSpec,
    disk: Optional[Disk] = None,
    q_max: float = 0.5,
    residual_tol: Optional[float] = None,
    stencil_order: int = 4,
    cauchy_tol: float = 1e-8,
    n_probes: int = 10,
) -> WeierstrassReport:
    """Numerical evidence that a uniformly convergent holomorphic sequence has a holomorphic limit.

    (a) sup-norm differences between consecutive elements on the compact set
        must shrink by at least ``q_max`` each step;
    (b) the CR residual of the last element (the stand-in for the limit) must
        stay below ``residual_tol`` (default 5 h^2). Fourth-order stencils are
        used by default so that the residual resolves well below h^2;
    (c) (elliptic only) the Cauchy integral of the last element reproduces its
        point values at ``n_probes`` interior points, and each path integral
        of f - f_n obeys |int (f - f_n) dz~|_(a,b) <= sup|f - f_n| l(C) / K1^2.
    """
    if len(seq) < 3:
        raise ValueError("need at least three sequence elements")
    params = seq[0].params
    fields_ = [_as_field(f, compact) for f in seq]
    X, Y = compact.coords()
    mask = disk.contains(X, Y) if disk is not None else np.ones(compact.shape, dtype=bool)

    diffs = []
    for a, b in zip(fields_[:-1], fields_[1:]):
        diffs.append(float((b - a).magnitude()[mask].max()))
    ratios = []
    for d0, d1 in zip(diffs[:-1], diffs[1:]):
        ratios.append(0.0 if d0 == 0.0 and d1 == 0.0 else (d1 / d0 if d0 > 0 else math.inf))
    geometric = all(r <= q_max for r in ratios)

    h = compact.h
    rtol = 5.0 * h * h if residual_tol is None else residual_tol
    resid = cr_residual(fields_[-1], mask=mask, order=stencil_order)
    report = WeierstrassReport(diffs, ratios, geometric, resid, rtol, resid <= rtol)

    if not params.elliptic:
        return report

    if disk is not None:
        center, rad = disk.center, disk.radius
    else:
        r = Rect.of_grid(compact)
        center, rad = r.center, r.inradius
    contour = Contour(center, 0.9 * rad, 512)
    limit = seq[-1]
    sample_limit = _sampler(limit)
    errs = []
    for k in range(n_probes):
        t = 2.0 * math.pi * k / n_probes + 0.3
        rho = contour.radius * (0.2 + 0.4 * k / max(1, n_probes - 1))
        zeta = (center[0] + rho * math.cos(t), center[1] + rho * math.sin(t))
        direct = sample_limit(np.array(zeta[0]), np.array(zeta[1]))
        errs.append(float(abs(cauchy_eval(limit, contour, zeta) - direct)))
    report.cauchy_errors = errs
    report.cauchy_ok = max(errs) <= cauchy_tol

    k1 = equivalence_constants(params).k1
    Xc, Yc = contour.nodes()
    fl = sample_limit(Xc, Yc)
    bounds = []
    for f in seq[:-1]:
        fn = _sampler(f)(Xc, Yc)
        diff = fl - fn
        lhs = float(norm_ab(contour_integral(diff, contour, params), params))
        rhs = float(np.max(abs(diff))) * contour.length / k1**2
        bounds.append((lhs, rhs))
    report.path_bounds = bounds
    report.path_bounds_ok = all(l <= r * (1.0 + 1e-12) for l, r in bounds)
    return report
