"""Real bivariate polynomials sum c[i, j] x^i y^j, used as scalar coefficient descriptors."""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.signal import convolve2d


class RealPoly:
    __slots__ = ("coef",)

    def __init__(self, coef):
        c = np.atleast_2d(np.asarray(coef, dtype=float))
        if c.ndim != 2:
            raise ValueError("RealPoly coefficients must form a 2-D array")
        self.coef = _trim(c)

    @classmethod
    def constant(cls, c: float) -> "RealPoly":
        return cls([[c]])

    @classmethod
    def x(cls) -> "RealPoly":
        return cls([[0.0], [1.0]])

    @classmethod
    def y(cls) -> "RealPoly":
        return cls([[0.0, 1.0]])

    def __call__(self, X, Y):
        return P.polyval2d(X, Y, self.coef)

    def is_zero(self) -> bool:
        return not np.any(self.coef)

    def is_constant(self) -> bool:
        return self.coef.shape == (1, 1)

    def _coerce(self, other) -> "RealPoly":
        if isinstance(other, RealPoly):
            return other
        if isinstance(other, (int, float, np.floating)):
            return RealPoly.constant(float(other))
        raise TypeError(f"cannot combine RealPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        nx = max(self.coef.shape[0], o.coef.shape[0])
        ny = max(self.coef.shape[1], o.coef.shape[1])
        return RealPoly(_pad(self.coef, nx, ny) + _pad(o.coef, nx, ny))

    __radd__ = __add__

    def __neg__(self):
        return RealPoly(-self.coef)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealPoly):
            return RealPoly(convolve2d(self.coef, other.coef))
        if isinstance(other, (int, float, np.floating)):
            return RealPoly(self.coef * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RealPoly):
            return NotImplemented
        return self.coef.shape == other.coef.shape and np.array_equal(self.coef, other.coef)

    def __repr__(self):
        return f"RealPoly({self.coef.tolist()!r})"

    def to_json(self) -> dict:
        return {"poly": self.coef.tolist()}


def _pad(c: np.ndarray, nx: int, ny: int) -> np.ndarray:
    out = np.zeros((nx, ny))
    out[: c.shape[0], : c.shape[1]] = c
    return out


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.argwhere(c != 0.0)
    if nz.size == 0:
        return np.zeros((1, 1))
    nx, ny = nz.max(axis=0) + 1
    return c[:nx, :ny].copy()
