"""
The first-order operator

    L w = A d_z w + B conj(d_z w) + C d_zbar w + D conj(d_zbar w) + E w + F conj(w) + G

and numerical checks of whether it is associated to the Cauchy-Riemann
operator (maps holomorphic functions to holomorphic functions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from ..algebra import GC, I, AlgebraParams, conj, mul
from ..errors import Lemma1Inadmissible, ParamsMismatch
from ..grid import ComplexField, GridSpec
from ..holo import HoloPoly, to_field
from .stencils import d_z, d_zbar

Descriptor = Union[None, GC, HoloPoly, ComplexField]

NAMES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass
class OperatorCoeffs:
    """Coefficients A..G; each is None (zero), a constant GC, a HoloPoly or a sampled field."""

    params: AlgebraParams
    A: Descriptor = None
    B: Descriptor = None
    C: Descriptor = None
    D: Descriptor = None
    E: Descriptor = None
    F: Descriptor = None
    G: Descriptor = None

    def __post_init__(self):
        grid = None
        for name in NAMES:
            d = getattr(self, name)
            if d is None:
                continue
            if isinstance(d, (tuple, list, int, float)):
                d = GC.of(d)
                setattr(self, name, d)
            if isinstance(d, (HoloPoly, ComplexField)) and d.params != self.params:
                raise ParamsMismatch(f"coefficient {name} uses different algebra parameters")
            if isinstance(d, ComplexField):
                if grid is not None and d.grid != grid:
                    raise ValueError("sampled coefficients must share one grid")
                grid = d.grid

    @property
    def grid(self) -> Optional[GridSpec]:
        for name in NAMES:
            d = getattr(self, name)
            if isinstance(d, ComplexField):
                return d.grid
        return None

    def items(self):
        return [(n, getattr(self, n)) for n in NAMES]


def lower(d: Descriptor, grid: GridSpec, params: AlgebraParams) -> Optional[GC]:
    """Sample a descriptor on ``grid``; constants stay scalar GC (they broadcast)."""
    if d is None:
        return None
    if isinstance(d, GC):
        return d
    if isinstance(d, HoloPoly):
        if d.params != params:
            raise ParamsMismatch("coefficient uses different algebra parameters")
        return to_field(d, grid).value
    if isinstance(d, ComplexField):
        if d.params != params:
            raise ParamsMismatch("coefficient uses different algebra parameters")
        if d.grid != grid:
            raise ValueError("sampled coefficient lives on a different grid")
        return d.value
    raise TypeError(f"unsupported coefficient descriptor {type(d).__name__}")


def apply_L(L: OperatorCoeffs, f: ComplexField) -> ComplexField:
    if f.params != L.params:
        raise ParamsMismatch("field and operator use different algebra parameters")
    p = L.params
    grid = f.grid
    w = f.value
    need_dz = L.A is not None or L.B is not None
    need_dzb = L.C is not None or L.D is not None
    dz = d_z(f).value if need_dz else None
    dzb = d_zbar(f).value if need_dzb else None
    terms = {
        "A": lambda: dz,
        "B": lambda: conj(dz),
        "C": lambda: dzb,
        "D": lambda: conj(dzb),
        "E": lambda: w,
        "F": lambda: conj(w),
    }
    acc = GC(np.zeros(grid.shape), np.zeros(grid.shape))
    for name, arg in terms.items():
        c = lower(getattr(L, name), grid, p)
        if c is not None:
            acc = acc + mul(c, arg(), p)
    g = lower(L.G, grid, p)
    if g is not None:
        acc = acc + g
    return ComplexField.from_gc(grid, acc, p)


def default_probes(params: AlgebraParams) -> list[HoloPoly]:
    """The holomorphic test functions 0, 1, i, (-beta - i) Z, Z and -Z^2."""
    p = params
    Z = HoloPoly.Z(p)
    return [
        HoloPoly.zero(p),
        HoloPoly.constant(1.0, p),
        HoloPoly.constant(I, p),
        Z * GC(-p.beta, -1.0),
        Z,
        -(Z * Z),
    ]


def association_residual(
    L: OperatorCoeffs,
    tests: Optional[Sequence[HoloPoly]] = None,
    grid: Optional[GridSpec] = None,
    collar: int = 2,
) -> float:
    """max over probes w of the interior sup of |d_zbar(L w)|.

    Vanishes up to O(h^2) exactly when L is associated. The two outermost
    rows are excluded because both L and the outer d_zbar use one-sided
    stencils there.
    """
    grid = grid or L.grid
    if grid is None:
        raise ValueError("a grid is required when no coefficient is sampled")
    tests = default_probes(L.params) if tests is None else tests
    mask = grid.collar_mask(collar)
    worst = 0.0
    for w in tests:
        r = d_zbar(apply_L(L, to_field(w, grid))).magnitude()
        worst = max(worst, float(r[mask].max()))
    return worst


@dataclass(frozen=True)
class Violation:
    coefficient: str
    condition: str
    magnitude: float


@dataclass
class Verdict:
    associated: bool
    violations: list = field(default_factory=list)
    tol: float = 0.0
    holo_tol: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "associated": self.associated,
            "tol": self.tol,
            "holo_tol": self.holo_tol,
            "violations": [
                {"coefficient": v.coefficient, "condition": v.condition, "magnitude": v.magnitude}
                for v in self.violations
            ],
        }


def _sup(d: Descriptor, grid: Optional[GridSpec]) -> float:
    if d is None:
        return 0.0
    if isinstance(d, GC):
        return float(abs(d))
    if isinstance(d, HoloPoly):
        if d.is_zero():
            return 0.0
        if d.is_constant():
            return float(abs(d.coeffs[0]))
        g = grid or GridSpec(-1.0, -1.0, 65, 65, 1.0 / 32)
        return float(to_field(d, g).magnitude().max())
    return float(d.magnitude().max())


def sontutschke_verdict(
    L: OperatorCoeffs,
    tol: float = 1e-9,
    holo_tol: Optional[float] = None,
    grid: Optional[GridSpec] = None,
    collar: int = 2,
) -> Verdict:
    """Check B = F = 0 and holomorphy of A, E, G.

    Constants and HoloPoly coefficients pass the holomorphy test structurally.
    Sampled coefficients are differentiated numerically and compared against
    ``holo_tol`` (default 5*h^2 of their grid).
    """
    p = L.params
    if not p.lemma1_admissible:
        raise Lemma1Inadmissible(
            f"alpha*beta^2 - 4*alpha^2 = 0 for (alpha, beta) = ({p.alpha}, {p.beta})"
        )
    grid = grid or L.grid
    violations = []
    for name in ("B", "F"):
        m = _sup(getattr(L, name), grid)
        if m > tol:
            violations.append(Violation(name, f"{name} ≠ 0", m))
    used_holo_tol = None
    for name in ("A", "E", "G"):
        d = getattr(L, name)
        if not isinstance(d, ComplexField):
            continue
        h = d.grid.h
        ht = 5.0 * h * h if holo_tol is None else holo_tol
        used_holo_tol = ht
        r = d_zbar(d).magnitude()[d.grid.collar_mask(collar)].max()
        if r > ht:
            violations.append(Violation(name, f"{name} not holomorphic", float(r)))
    return Verdict(not violations, violations, tol, used_holo_tol)
