"""Cauchy-Riemann operators, the operator L, Cauchy quadrature and interior estimates."""

from .estimates import InteriorEstimate, WeierstrassReport, interior_estimate_check, weierstrass_check
from .operator import (
    OperatorCoeffs,
    Verdict,
    Violation,
    apply_L,
    association_residual,
    default_probes,
    sontutschke_verdict,
)
from .quadrature import (
    Contour,
    cauchy_eval,
    cauchy_pompeiu_eval,
    contour_integral,
    derivative_via_contour,
    field_interpolator,
)
from .stencils import cr_residual, d_z, d_zbar, partial

__all__ = [
    "Contour",
    "InteriorEstimate",
    "OperatorCoeffs",
    "Verdict",
    "Violation",
    "WeierstrassReport",
    "apply_L",
    "association_residual",
    "cauchy_eval",
    "cauchy_pompeiu_eval",
    "contour_integral",
    "cr_residual",
    "d_z",
    "d_zbar",
    "default_probes",
    "derivative_via_contour",
    "field_interpolator",
    "interior_estimate_check",
    "partial",
    "sontutschke_verdict",
    "weierstrass_check",
]
