"""Uniform rectangular grids, sampled GC-valued fields, and simple planar domains.

Arrays are indexed ``[i, j]`` with ``x = x0 + i*h`` and ``y = y0 + j*h``
(``numpy.meshgrid(..., indexing="ij")``), so the first axis is x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .algebra import GC, AlgebraParams
from .errors import GridTooSmall, ParamsMismatch

MIN_NODES = 5


@dataclass(frozen=True)
class GridSpec:
    x0: float
    y0: float
    nx: int
    ny: int
    h: float

    def __post_init__(self):
        if self.nx < MIN_NODES or self.ny < MIN_NODES:
            raise GridTooSmall(f"grid needs at least {MIN_NODES} nodes per axis, got {self.nx}x{self.ny}")
        if not self.h > 0:
            raise ValueError("grid spacing must be positive")

    @property
    def x1(self) -> float:
        return self.x0 + (self.nx - 1) * self.h

    @property
    def y1(self) -> float:
        return self.y0 + (self.ny - 1) * self.h

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (self.x0 + self.h * np.arange(self.nx), self.y0 + self.h * np.arange(self.ny))

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        xs, ys = self.axes()
        return np.meshgrid(xs, ys, indexing="ij")

    def collar_mask(self, collar: int = 2) -> np.ndarray:
        """True on nodes at least ``collar`` cells away from the grid edge."""
        m = np.zeros(self.shape, dtype=bool)
        m[collar : self.nx - collar, collar : self.ny - collar] = True
        return m

    @classmethod
    def covering(cls, x0: float, y0: float, x1: float, y1: float, h: float, pad: int = 0) -> "GridSpec":
        """Smallest grid with spacing h whose nodes include both corners (plus ``pad`` cells)."""
        nx = int(round((x1 - x0) / h)) + 1 + 2 * pad
        ny = int(round((y1 - y0) / h)) + 1 + 2 * pad
        return cls(x0 - pad * h, y0 - pad * h, nx, ny, h)

    def to_json(self) -> dict:
        return {"x0": self.x0, "y0": self.y0, "nx": self.nx, "ny": self.ny, "h": self.h}


@dataclass(frozen=True)
class Disk:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")

    @property
    def inradius(self) -> float:
        return self.radius

    def dist_to_boundary(self, pt) -> float:
        return self.radius - math.hypot(pt[0] - self.center[0], pt[1] - self.center[1])

    def contains(self, X, Y) -> np.ndarray:
        return np.hypot(X - self.center[0], Y - self.center[1]) <= self.radius

    def shrink(self, offset: float) -> "Disk":
        return Disk(self.center, self.radius - offset)

    def bounds(self) -> tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.radius
        return (cx - r, cy - r, cx + r, cy + r)

    def sample(self, n: int = 257) -> tuple[np.ndarray, np.ndarray]:
        """Polar samples that include the centre and the bounding circle."""
        th = np.linspace(0.0, 2 * np.pi, 4 * n, endpoint=False)
        rr = np.linspace(0.0, self.radius, n)
        R, T = np.meshgrid(rr, th, indexing="ij")
        return self.center[0] + R * np.cos(T), self.center[1] + R * np.sin(T)

    def to_json(self) -> dict:
        return {"disk": {"center": list(self.center), "radius": self.radius}}


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("rectangle must have positive extent")

    @property
    def center(self) -> tuple[float, float]:
        return (0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    @property
    def inradius(self) -> float:
        return 0.5 * min(self.x1 - self.x0, self.y1 - self.y0)

    def dist_to_boundary(self, pt) -> float:
        x, y = pt
        return min(x - self.x0, self.x1 - x, y - self.y0, self.y1 - y)

    def contains(self, X, Y) -> np.ndarray:
        return (X >= self.x0) & (X <= self.x1) & (Y >= self.y0) & (Y <= self.y1)

    def shrink(self, offset: float) -> "Rect":
        return Rect(self.x0 + offset, self.y0 + offset, self.x1 - offset, self.y1 - offset)

    def bounds(self) -> tuple[float, float, float, float]:
        return (self.x0, self.y0, self.x1, self.y1)

    def sample(self, n: int = 257) -> tuple[np.ndarray, np.ndarray]:
        xs = np.linspace(self.x0, self.x1, n)
        ys = np.linspace(self.y0, self.y1, n)
        return np.meshgrid(xs, ys, indexing="ij")

    @classmethod
    def of_grid(cls, grid: GridSpec) -> "Rect":
        return cls(grid.x0, grid.y0, grid.x1, grid.y1)

    def to_json(self) -> dict:
        return {"rect": {"x0": self.x0, "y0": self.y0, "x1": self.x1, "y1": self.y1}}


Domain = Union[Disk, Rect]


def domain_from_json(obj: dict) -> Domain:
    if "disk" in obj:
        d = obj["disk"]
        return Disk((float(d["center"][0]), float(d["center"][1])), float(d["radius"]))
    r = obj["rect"]
    return Rect(float(r["x0"]), float(r["y0"]), float(r["x1"]), float(r["y1"]))


@dataclass(frozen=True)
class ComplexField:
    """GC-valued samples on a grid; ``x``/``y`` hold the two component arrays."""

    grid: GridSpec
    x: np.ndarray
    y: np.ndarray
    params: AlgebraParams

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        x = np.broadcast_to(x, self.grid.shape).copy() if x.shape != self.grid.shape else x
        y = np.broadcast_to(y, self.grid.shape).copy() if y.shape != self.grid.shape else y
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("field samples must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def value(self) -> GC:
        return GC(self.x, self.y)

    @classmethod
    def from_gc(cls, grid: GridSpec, z: GC, params: AlgebraParams) -> "ComplexField":
        return cls(grid, z.x, z.y, params)

    @classmethod
    def from_function(cls, grid: GridSpec, fn: Callable[[np.ndarray, np.ndarray], GC], params: AlgebraParams):
        X, Y = grid.coords()
        return cls.from_gc(grid, fn(X, Y), params)

    def magnitude(self) -> np.ndarray:
        return np.hypot(self.x, self.y)

    def check_compatible(self, other: "ComplexField") -> None:
        if other.params != self.params:
            raise ParamsMismatch("fields carry different algebra parameters")
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")

    def __add__(self, other: "ComplexField") -> "ComplexField":
        self.check_compatible(other)
        return ComplexField(self.grid, self.x + other.x, self.y + other.y, self.params)

    def __sub__(self, other: "ComplexField") -> "ComplexField":
        self.check_compatible(other)
        return ComplexField(self.grid, self.x - other.x, self.y - other.y, self.params)
