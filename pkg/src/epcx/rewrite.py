"""
Translation between the real first-order system

    u_t = a11 u_x + a12 u_y + a21 v_x + a22 v_y + c1 u + c2 v + c3
    v_t = b11 u_x + b12 u_y + b21 v_x + b22 v_y + d1 u + d2 v + d3

and the complex operator form w_t = L w with w = u + i v, plus synthesis of
the systems whose operator is associated to the Cauchy-Riemann operator.

Scalar descriptors are floats, :class:`~epcx.realpoly.RealPoly` instances or
numpy arrays sampled on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Optional, Union

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .algebra import GC, AlgebraParams
from .calculus.operator import OperatorCoeffs, lower
from .errors import AlphaZero, Lemma1Inadmissible, SolveFailure
from .grid import ComplexField, GridSpec
from .holo import HoloPoly
from .realpoly import RealPoly

Scalar = Union[float, RealPoly, np.ndarray]

#: Unknown ordering of the 8x8 system (matches the column order of the matrix).
UNKNOWNS = ("a11", "a12", "b12", "a21", "b21", "a22", "b11", "b22")
FREE = ("a11", "a12", "b11", "b12")


@dataclass
class RealCoeffs:
    a11: Scalar = 0.0
    a12: Scalar = 0.0
    a21: Scalar = 0.0
    a22: Scalar = 0.0
    b11: Scalar = 0.0
    b12: Scalar = 0.0
    b21: Scalar = 0.0
    b22: Scalar = 0.0
    c1: Scalar = 0.0
    c2: Scalar = 0.0
    c3: Scalar = 0.0
    d1: Scalar = 0.0
    d2: Scalar = 0.0
    d3: Scalar = 0.0

    @classmethod
    def names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_dict(self) -> dict:
        return {n: getattr(self, n) for n in self.names()}

    def is_constant(self) -> bool:
        return all(_is_const(v) for v in self.as_dict().values())

    def sample(self, grid: GridSpec) -> "RealCoeffs":
        """Lower every descriptor to an array on ``grid``."""
        return RealCoeffs(**{n: _sample(v, grid) for n, v in self.as_dict().items()})

    def replace(self, **changes) -> "RealCoeffs":
        d = self.as_dict()
        d.update(changes)
        return RealCoeffs(**d)

    def to_json(self) -> dict:
        return {n: _scalar_json(v) for n, v in self.as_dict().items()}

    @classmethod
    def from_json(cls, obj: dict) -> "RealCoeffs":
        return cls(**{n: scalar_from_json(v) for n, v in obj.items()})


def _is_const(v) -> bool:
    return isinstance(v, (int, float, np.floating)) or (isinstance(v, RealPoly) and v.is_constant())


def _const_value(v) -> float:
    return float(v.coef[0, 0]) if isinstance(v, RealPoly) else float(v)


def _sample(v, grid: GridSpec) -> np.ndarray:
    if isinstance(v, RealPoly):
        X, Y = grid.coords()
        return v(X, Y)
    if isinstance(v, np.ndarray):
        if v.shape != grid.shape:
            raise ValueError(f"sampled descriptor has shape {v.shape}, grid is {grid.shape}")
        return v
    return np.full(grid.shape, float(v))


def _scalar_json(v):
    if isinstance(v, RealPoly):
        return v.to_json()
    if isinstance(v, np.ndarray):
        return {"samples": v.tolist()}
    return float(v)


def scalar_from_json(v) -> Scalar:
    if isinstance(v, dict):
        if "poly" in v:
            return RealPoly(v["poly"])
        return np.asarray(v["samples"], dtype=float)
    return float(v)


def _require_alpha(p: AlgebraParams) -> None:
    if p.alpha == 0.0:
        raise AlphaZero("the complex rewriting divides by alpha; alpha must be nonzero")


def _lowered_real(rc: RealCoeffs, grid: Optional[GridSpec]) -> dict:
    if rc.is_constant():
        return {n: _const_value(v) for n, v in rc.as_dict().items()}
    if grid is None:
        raise ValueError("a grid is required for non-constant coefficients")
    return rc.sample(grid).as_dict()


def real_to_complex(rc: RealCoeffs, p: AlgebraParams, grid: Optional[GridSpec] = None) -> OperatorCoeffs:
    """Coefficients A..G of the complex rewriting, evaluated pointwise.

    Constant systems give constant GC coefficients; anything else is sampled
    on ``grid`` and returned as ComplexField coefficients.
    """
    _require_alpha(p)
    r = _lowered_real(rc, grid)
    a11, a12, a21, a22 = r["a11"], r["a12"], r["a21"], r["a22"]
    b11, b12, b21, b22 = r["b11"], r["b12"], r["b21"], r["b22"]
    c1, c2, c3, d1, d2, d3 = r["c1"], r["c2"], r["c3"], r["d1"], r["d2"], r["d3"]
    ia = 1.0 / p.alpha
    ba = p.beta / p.alpha

    A = GC(
        0.5 * (a11 + 2 * ba * a12 - b12 - ba * a21 + b21 + ia * a22),
        0.5 * (b11 + ia * a12 + ba * b12 - ia * a21 + ia * b22),
    )
    B = GC(
        0.5 * (a11 + b12 + ba * a21 - b21 + ia * a22),
        0.5 * (b11 - ia * a12 + ia * a21 + ba * b12 + ia * b22),
    )
    C = GC(
        0.5 * (a11 - 2 * ba * a12 + b12 - ba * a21 + b21 - ia * a22),
        0.5 * (b11 - ia * a12 - ia * a21 - ba * b12 - ia * b22),
    )
    D = GC(
        0.5 * (a11 - b12 + ba * a21 - b21 - ia * a22),
        0.5 * (b11 + ia * a12 + ia * a21 - ba * b12 - ia * b22),
    )
    E = GC(0.5 * (c1 - ba * c2 + d2), 0.5 * (-ia * c2 + d1))
    F = GC(0.5 * (c1 + ba * c2 - d2), 0.5 * (ia * c2 + d1))
    G = GC(c3, d3)

    out = dict(A=A, B=B, C=C, D=D, E=E, F=F, G=G)
    if rc.is_constant():
        return OperatorCoeffs(p, **{k: GC(float(v.x), float(v.y)) for k, v in out.items()})
    return OperatorCoeffs(p, **{k: ComplexField.from_gc(grid, v, p) for k, v in out.items()})


def coefficient_matrix(p: AlgebraParams) -> np.ndarray:
    """Rows: Re/Im of 2A, 2B, 2C, 2D. Columns: the unknowns in ``UNKNOWNS`` order."""
    _require_alpha(p)
    ia = 1.0 / p.alpha
    ba = p.beta / p.alpha
    return np.array(
        [
            [1, 2 * ba, -1, -ba, 1, ia, 0, 0],
            [0, ia, ba, -ia, 0, 0, 1, ia],
            [1, 0, 1, ba, -1, ia, 0, 0],
            [0, -ia, ba, ia, 0, 0, 1, ia],
            [1, -2 * ba, 1, -ba, 1, -ia, 0, 0],
            [0, -ia, -ba, -ia, 0, 0, 1, -ia],
            [1, 0, -1, ba, -1, -ia, 0, 0],
            [0, ia, -ba, ia, 0, 0, 1, -ia],
        ],
        dtype=float,
    )


def determinant(p: AlgebraParams) -> float:
    """det of the 8x8 matrix from its LU factorization (partial pivoting)."""
    lu, piv = lu_factor(coefficient_matrix(p))
    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    return float((-1.0) ** swaps * np.prod(np.diag(lu)))


def det_check(p: AlgebraParams) -> float:
    """det * alpha^4 / (-256); equals 1 when the closed form holds."""
    return determinant(p) * p.alpha**4 / -256.0


def complex_to_real(oc: OperatorCoeffs, p: AlgebraParams, grid: Optional[GridSpec] = None) -> RealCoeffs:
    """Invert :func:`real_to_complex`.

    The eight principal coefficients come from one LU factorization of the
    8x8 matrix applied to every grid node; c_i, d_i follow from E, F, G in
    closed form.
    """
    _require_alpha(p)
    if oc.params != p:
        raise ValueError("operator coefficients use different algebra parameters")
    grid = grid or oc.grid
    constant = all(d is None or isinstance(d, GC) or (isinstance(d, HoloPoly) and d.is_constant())
                   for _, d in oc.items())
    vals = {}
    for name, d in oc.items():
        if d is None:
            vals[name] = GC(0.0, 0.0)
        elif constant:
            vals[name] = d if isinstance(d, GC) else (d.coeffs[0] if d.coeffs else GC(0.0, 0.0))
        else:
            if grid is None:
                raise ValueError("a grid is required for non-constant coefficients")
            vals[name] = lower(d, grid, p)
    shape = () if constant else grid.shape

    rhs = np.stack(
        [np.broadcast_to(2.0 * np.asarray(c, dtype=float), shape).ravel()
         for n in ("A", "B", "C", "D") for c in (vals[n].x, vals[n].y)]
    )
    lu = lu_factor(coefficient_matrix(p))
    sol = lu_solve(lu, rhs)
    if not np.all(np.isfinite(sol)):
        raise SolveFailure("non-finite solution of the 8x8 coefficient system")
    out = {name: sol[k].reshape(shape) for k, name in enumerate(UNKNOWNS)}

    E, F, G = vals["E"], vals["F"], vals["G"]
    c1 = E.x + F.x
    d1 = E.y + F.y
    c2 = p.alpha * (F.y - E.y)
    d2 = p.beta / p.alpha * c2 - (F.x - E.x)
    extra = dict(c1=c1, c2=c2, c3=G.x, d1=d1, d2=d2, d3=G.y)
    for k, v in extra.items():
        out[k] = np.broadcast_to(np.asarray(v, dtype=float), shape).copy()
    if constant:
        out = {k: float(v) for k, v in out.items()}
    return RealCoeffs(**out)


def synthesize(
    free: dict,
    A: Union[HoloPoly, GC],
    E: Union[HoloPoly, GC],
    G: Union[HoloPoly, GC],
    p: AlgebraParams,
    grid: Optional[GridSpec] = None,
) -> RealCoeffs:
    """Real systems whose complex form is associated to the Cauchy-Riemann operator.

    ``free`` holds any subset of a11, a12, b11, b12 (missing ones are zero);
    these may be arbitrary, even noisy samples. The remaining ten
    coefficients follow from the holomorphic A, E, G:

        a21 = -alpha A2 + a12         a22 = alpha A1 - alpha a11 - beta a12
        b21 = A1 - beta A2 + b12      b22 = alpha A2 - alpha b11 - beta b12
        c1 = Re E, d1 = Im E, c2 = -alpha d1, d2 = c1 - beta d1
        c3 = Re G, d3 = Im G

    Without a grid and without sampled inputs the result is exact, with
    RealPoly descriptors; otherwise everything is sampled on ``grid``.
    """
    if not p.lemma1_admissible:
        raise Lemma1Inadmissible(f"alpha*beta^2 - 4*alpha^2 = 0 for ({p.alpha}, {p.beta})")
    unknown = set(free) - set(FREE)
    if unknown:
        raise ValueError(f"only {FREE} are free, got {sorted(unknown)}")
    parts = {}
    for name, h in (("A", A), ("E", E), ("G", G)):
        if isinstance(h, HoloPoly):
            if h.params != p:
                raise ValueError(f"{name} uses different algebra parameters")
            parts[name] = h.real_parts()
        else:
            z = GC.of(h)
            parts[name] = (z.x, z.y)
    fr = {n: free.get(n, 0.0) for n in FREE}

    sampled = grid is not None or any(isinstance(v, np.ndarray) for v in fr.values())
    if sampled:
        if grid is None:
            raise ValueError("sampled free coefficients need a grid")
        lo = lambda v: _sample(v, grid)  # noqa: E731
        fr = {n: lo(v) for n, v in fr.items()}
        parts = {n: (lo(u), lo(v)) for n, (u, v) in parts.items()}
    else:
        fr = {n: (RealPoly(v.coef) if isinstance(v, RealPoly) else float(v)) for n, v in fr.items()}

    a, b = p.alpha, p.beta
    A1, A2 = parts["A"]
    E1, E2 = parts["E"]
    G1, G2 = parts["G"]
    a11, a12, b11, b12 = fr["a11"], fr["a12"], fr["b11"], fr["b12"]
    return RealCoeffs(
        a11=a11,
        a12=a12,
        a21=-a * A2 + a12,
        a22=a * A1 - a * a11 - b * a12,
        b11=b11,
        b12=b12,
        b21=A1 - b * A2 + b12,
        b22=a * A2 - a * b11 - b * b12,
        c1=E1,
        c2=-a * E2,
        c3=G1,
        d1=E2,
        d2=E1 - b * E2,
        d3=G2,
    )
