"""Finite-difference partial derivatives and the Cauchy-Riemann operators.

Order 2 uses central differences inside and one-sided second-order stencils on
the edges (``numpy.gradient`` with ``edge_order=2``), so quadratics are
differentiated exactly. Order 4 uses five-point central differences with
one-sided fourth-order stencils on the two outermost rows.
"""

from __future__ import annotations

import numpy as np

from ..algebra import GC, I, mul
from ..errors import GridTooSmall
from ..grid import ComplexField

_EDGE4 = (
    np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
    np.array([-3.0, -10.0, 18.0, -6.0, 1.0]),
)


def partial(arr: np.ndarray, h: float, axis: int, order: int = 2) -> np.ndarray:
    if arr.shape[axis] < 5:
        raise GridTooSmall("need at least 5 nodes along each differentiated axis")
    if order == 2:
        return np.gradient(arr, h, axis=axis, edge_order=2)
    if order != 4:
        raise ValueError("order must be 2 or 4")
    f = np.moveaxis(arr, axis, 0)
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    head = f[:5]
    tail = f[::-1][:5]
    for row, w in enumerate(_EDGE4):
        out[row] = np.tensordot(w, head, axes=1) / (12.0 * h)
        out[-1 - row] = -np.tensordot(w, tail, axes=1) / (12.0 * h)
    return np.moveaxis(out, 0, axis)


def field_partials(f: ComplexField, order: int = 2) -> tuple[GC, GC]:
    """(f_x, f_y) as GC arrays."""
    h = f.grid.h
    fx = GC(partial(f.x, h, 0, order), partial(f.y, h, 0, order))
    fy = GC(partial(f.x, h, 1, order), partial(f.y, h, 1, order))
    return fx, fy


def d_zbar(f: ComplexField, order: int = 2) -> ComplexField:
    """Cauchy-Riemann operator (d_x + i d_y) / 2."""
    fx, fy = field_partials(f, order)
    r = (fx + mul(I, fy, f.params)) * 0.5
    return ComplexField.from_gc(f.grid, r, f.params)


def d_z(f: ComplexField, order: int = 2) -> ComplexField:
    """Conjugate Cauchy-Riemann operator (d_x - i d_y) / 2."""
    fx, fy = field_partials(f, order)
    r = (fx - mul(I, fy, f.params)) * 0.5
    return ComplexField.from_gc(f.grid, r, f.params)


def cr_residual(f: ComplexField, mask: np.ndarray = None, collar: int = 2, order: int = 2) -> float:
    """max |d_zbar f| (euclidean) over nodes in ``mask`` and outside the edge collar."""
    mag = d_zbar(f, order).magnitude()
    m = f.grid.collar_mask(collar)
    if mask is not None:
        m = m & mask
    if not m.any():
        return 0.0
    return float(mag[m].max())
