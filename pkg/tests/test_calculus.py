import math

import numpy as np
import pytest

from epcx.algebra import GC, I, ONE, AlgebraParams, equivalence_constants, ihat, mul
from epcx.calculus import (
    Contour,
    OperatorCoeffs,
    apply_L,
    association_residual,
    cauchy_eval,
    cauchy_pompeiu_eval,
    contour_integral,
    cr_residual,
    d_z,
    d_zbar,
    derivative_via_contour,
    interior_estimate_check,
    partial,
    sontutschke_verdict,
    weierstrass_check,
)
from epcx.convergence import observed_orders
from epcx.errors import GridTooSmall, Lemma1Inadmissible, NotElliptic, ParamsMismatch, ZetaOnContour
from epcx.grid import ComplexField, Disk, GridSpec, Rect
from epcx.holo import HoloPoly, derive, exp_partial_sums, to_field

P21 = AlgebraParams(2.0, 1.0)
GRID = GridSpec.covering(-1, -1, 1, 1, 1 / 16)


def field(f, grid=GRID):
    return to_field(f, grid)


# stencils

def test_partial_exact_on_quadratics():
    X, Y = GRID.coords()
    f = 3 * X**2 - X * Y + 2 * Y**2 + X
    np.testing.assert_allclose(partial(f, GRID.h, 0), 6 * X - Y + 1, atol=1e-11)
    np.testing.assert_allclose(partial(f, GRID.h, 1), -X + 4 * Y, atol=1e-11)


def test_partial_fourth_order_exact_on_quartics():
    X, Y = GRID.coords()
    f = X**4 - 2 * X**3 * Y + Y**4
    np.testing.assert_allclose(partial(f, GRID.h, 0, order=4), 4 * X**3 - 6 * X**2 * Y, atol=1e-10)
    np.testing.assert_allclose(partial(f, GRID.h, 1, order=4), -2 * X**3 + 4 * Y**3, atol=1e-10)


def test_grid_too_small():
    with pytest.raises(GridTooSmall):
        GridSpec(0, 0, 4, 10, 0.1)


def test_d_zbar_of_generator_vanishes():
    Z = HoloPoly.Z(P21)
    assert d_zbar(field(Z)).magnitude().max() <= 1e-10


def test_d_z_of_minus_z_squared():
    X, Y = GRID.coords()
    Z = HoloPoly.Z(P21)
    f = field(-(Z * Z))
    g = d_z(f)
    np.testing.assert_allclose(g.x, 2 * P21.alpha * X, atol=1e-10)
    np.testing.assert_allclose(g.y, 2 * (P21.beta * X + Y), atol=1e-10)


def test_constant_field_derivatives_vanish():
    f = field(HoloPoly.constant((2, -1), P21))
    assert d_z(f).magnitude().max() <= 1e-12
    assert d_zbar(f).magnitude().max() <= 1e-12


def test_d_zbar_of_x_is_half():
    X, Y = GRID.coords()
    g = d_zbar(ComplexField(GRID, X, 0 * X, P21))
    np.testing.assert_allclose(g.x, 0.5, atol=1e-12)
    np.testing.assert_allclose(g.y, 0.0, atol=1e-12)


def test_operators_commute_on_cubics():
    X, Y = GRID.coords()
    f = ComplexField(GRID, X**3 - X * Y**2 + Y, 2 * X**2 * Y - Y**3, P21)
    a = d_z(d_zbar(f))
    b = d_zbar(d_z(f))
    assert np.max(np.hypot(a.x - b.x, a.y - b.y)) <= 1e-9


def test_cr_residual_order_two():
    f = HoloPoly([(0.3, -0.2), (1, 0.5), (0, 1), (-0.5, 0.2), (0.1, 0.1)], P21)
    hs = [1 / 16, 1 / 32, 1 / 64]
    errs = [cr_residual(field(f, GridSpec.covering(-1, -1, 1, 1, h))) for h in hs]
    assert min(observed_orders(hs, errs)) >= 1.9


# operator L

def test_apply_L_examples():
    Z = field(HoloPoly.Z(P21))
    r = apply_L(OperatorCoeffs(P21, A=ONE), Z)
    np.testing.assert_allclose(r.x, 0.0, atol=1e-12)
    np.testing.assert_allclose(r.y, 1.0, atol=1e-12)
    r = apply_L(OperatorCoeffs(P21, G=(1, 2)), Z)
    assert np.all(r.x == 1.0) and np.all(r.y == 2.0)
    r = apply_L(OperatorCoeffs(P21, E=ONE), Z)
    np.testing.assert_array_equal(r.x, Z.x)


def test_apply_L_params_mismatch():
    with pytest.raises(ParamsMismatch):
        apply_L(OperatorCoeffs(AlgebraParams(1, 0), A=ONE), field(HoloPoly.Z(P21)))


def test_association_residual_zero_operator():
    assert association_residual(OperatorCoeffs(P21), grid=GRID) == 0.0


def test_association_residual_b_probe():
    Z = HoloPoly.Z(P21)
    grid = GridSpec.covering(-0.5, -0.5, 0.5, 0.5, 1 / 64)
    r = association_residual(OperatorCoeffs(P21, B=ONE), [-(Z * Z)], grid)
    assert r == pytest.approx(2 * P21.alpha, rel=1e-9)


def test_association_residual_holomorphic_coefficients_with_noise():
    rng = np.random.default_rng(0)
    A = HoloPoly([(1, 0.2), (0.3, -0.1)], P21)
    E = HoloPoly([(0.5, 0.5), (0, 0.2)], P21)
    G = HoloPoly([(0, 1), (0.4, 0)], P21)
    errs, hs = [], [1 / 32, 1 / 64]
    for h in hs:
        g = GridSpec.covering(-0.5, -0.5, 0.5, 0.5, h)
        C = ComplexField(g, rng.uniform(-1, 1, g.shape), rng.uniform(-1, 1, g.shape), P21)
        D = ComplexField(g, rng.uniform(-1, 1, g.shape), rng.uniform(-1, 1, g.shape), P21)
        errs.append(association_residual(OperatorCoeffs(P21, A=A, C=C, D=D, E=E, G=G)))
    assert errs[-1] <= 5 * hs[-1] ** 2
    assert observed_orders(hs, errs)[0] >= 1.9


def test_verdict_examples():
    A = HoloPoly([(1, 0), (0, 1)], P21)
    v = sontutschke_verdict(OperatorCoeffs(P21, A=A, E=HoloPoly.Z(P21)))
    assert v.associated and not v.violations
    v = sontutschke_verdict(OperatorCoeffs(P21, F=(0.5, 0)))
    assert not v.associated
    assert [(x.coefficient, x.condition, x.magnitude) for x in v.violations] == [("F", "F ≠ 0", 0.5)]


def test_verdict_anti_holomorphic_coefficient():
    X, Y = GRID.coords()
    conj_z = ComplexField(GRID, -Y, -X, P21)
    v = sontutschke_verdict(OperatorCoeffs(P21, A=conj_z))
    assert not v.associated
    (x,) = v.violations
    assert x.condition == "A not holomorphic"
    # d_zbar of (-y, -x) is (0, -1) exactly
    assert x.magnitude == pytest.approx(1.0, abs=1e-10)


def test_verdict_inadmissible():
    with pytest.raises(Lemma1Inadmissible):
        sontutschke_verdict(OperatorCoeffs(AlgebraParams(1, 2)))


# contour quadrature

def test_contour_integral_of_one_vanishes():
    c = Contour((0.2, 0.1), 0.7, 64)
    r = contour_integral(GC(np.ones(64), np.zeros(64)), c, P21)
    assert abs(r) <= 1e-14
    r = contour_integral(GC(np.zeros(64), np.zeros(64)), c, P21)
    assert r == GC(0.0, 0.0)


def test_kernel_normalization():
    from epcx.algebra import inv, tilde

    c = Contour((0.0, 0.0), 1.0, 256)
    X, Y = c.nodes()
    zeta = (0.3, -0.2)
    k = inv(tilde(GC(X - zeta[0], Y - zeta[1])), P21)
    r = contour_integral(k, c, P21)
    expect = ihat(P21) * (2 * math.pi)
    assert abs(r - expect) <= 1e-10


def test_cauchy_eval_examples():
    c = Contour((0.0, 0.0), 1.0, 512)
    one = HoloPoly.constant(1, P21)
    Z = HoloPoly.Z(P21)
    for zeta in [(0.0, 0.0), (0.3, 0.4), (-0.6, 0.1)]:
        assert abs(cauchy_eval(one, c, zeta) - ONE) <= 1e-8
    assert abs(cauchy_eval(Z, c, (0.0, 0.0)) - Z.eval((0.0, 0.0))) <= 1e-8
    f = -(Z * Z)
    zeta = (0.5 * math.cos(1.0), 0.5 * math.sin(1.0))
    assert abs(cauchy_eval(f, c, zeta) - f.eval(zeta)) <= 1e-6


def test_cauchy_eval_spectral_decay():
    f = HoloPoly([(1, 0), (0.5, 0.5), (0.2, -0.3), (0.1, 0.1)], P21)
    c = Contour((0.0, 0.0), 1.0)
    zeta = (0.4, 0.2)
    errs = [float(abs(cauchy_eval(f, c.with_nodes(n), zeta) - f.eval(zeta))) for n in (16, 24, 32, 40)]
    # geometric: each step of 8 nodes gains a factor at least 10
    assert all(e1 <= 0.1 * e0 or e1 <= 1e-14 for e0, e1 in zip(errs, errs[1:]))


def test_cauchy_errors():
    c = Contour((0.0, 0.0), 1.0, 64)
    with pytest.raises(ZetaOnContour):
        cauchy_eval(HoloPoly.Z(P21), c, (1.0, 0.0))
    with pytest.raises(ValueError):
        cauchy_eval(HoloPoly.Z(P21), c, (2.0, 0.0))
    with pytest.raises(NotElliptic):
        cauchy_eval(HoloPoly.Z(AlgebraParams(-1, 0)), c, (0.0, 0.0))


def test_derivative_via_contour():
    c = Contour((0.0, 0.0), 1.0, 512)
    Z = HoloPoly.Z(P21)
    assert abs(derivative_via_contour(Z, c, (0.2, -0.3)) - I) <= 1e-8
    assert abs(derivative_via_contour(HoloPoly.constant(1, P21), c, (0.2, 0.3))) <= 1e-12
    f = -(Z * Z)
    c = Contour((0.0, 0.0), 0.5, 512)
    zeta = (0.1, 0.2)
    assert abs(derivative_via_contour(f, c, zeta) - derive(f).eval(zeta)) <= 1e-6


def test_cauchy_pompeiu_holomorphic_matches_cauchy():
    g = GridSpec.covering(-1, -1, 1, 1, 1 / 32)
    f = HoloPoly([(0.2, 0.1), (1, -0.5), (0.3, 0.3)], P21)
    c = Contour((0.0, 0.0), 0.8, 512)
    zeta = (0.2, -0.1)
    cp = cauchy_pompeiu_eval(to_field(f, g), c, zeta)
    assert abs(cp - f.eval(zeta)) <= 1e-8


def test_cauchy_pompeiu_non_holomorphic():
    g = GridSpec.covering(-1, -1, 1, 1, 1 / 64)
    X, Y = g.coords()
    c = Contour((0.0, 0.0), 0.8, 512)
    zeta = (0.2, -0.1)
    cp = cauchy_pompeiu_eval(ComplexField(g, X.copy(), 0 * X, P21), c, zeta)
    assert abs(cp - GC(0.2, 0.0)) <= 5e-2
    cp = cauchy_pompeiu_eval(ComplexField(g, 0 * X, 0 * X, P21), c, zeta)
    assert cp == GC(0.0, 0.0)


def test_cauchy_pompeiu_grid_must_cover():
    g = GridSpec.covering(-0.5, -0.5, 0.5, 0.5, 1 / 32)
    with pytest.raises(ValueError):
        cauchy_pompeiu_eval(to_field(HoloPoly.Z(P21), g), Contour((0, 0), 0.8), (0.1, 0.1))


# interior estimates

def test_interior_estimate_classical_equality():
    p = AlgebraParams(1.0, 0.0)
    est = interior_estimate_check(HoloPoly.Z(p), Disk((0, 0), 1.0), (0.0, 0.0))
    assert est.lhs == pytest.approx(1.0, abs=1e-12)
    assert est.rhs == pytest.approx(1.0, abs=1e-12)
    assert est.holds


def test_interior_estimate_constant():
    est = interior_estimate_check(HoloPoly.constant((1, 0), P21), Rect(-1, -1, 1, 1), (0.3, 0.2))
    assert est.lhs == 0.0 and est.holds


def test_interior_estimate_random_points():
    Z = HoloPoly.Z(P21)
    f = -(Z * Z)
    dom = Disk((0, 0), 1.0)
    rng = np.random.default_rng(12)
    for _ in range(100):
        r, t = 0.99 * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi)
        assert interior_estimate_check(f, dom, (r * math.cos(t), r * math.sin(t))).holds


def test_interior_estimate_factor():
    nc = equivalence_constants(P21)
    est = interior_estimate_check(HoloPoly.Z(P21), GridSpec(-1, -1, 17, 17, 0.125), (0.5, 0.0))
    assert est.dist == pytest.approx(0.5)
    assert est.factor == pytest.approx(nc.k2 * math.sqrt(2) / (nc.k1**2 * 0.5))


def test_y_partial_bound():
    # d_y f = ((beta + i) / alpha) f' and |d_y f| <= K2 / (K1 sqrt(alpha)) |f'|
    rng = np.random.default_rng(4)
    for a, b in [(2, 1), (5, -3)]:
        p = AlgebraParams(a, b)
        nc = equivalence_constants(p)
        f = HoloPoly([tuple(rng.uniform(-1, 1, 2)) for _ in range(4)], p)
        df = derive(f)
        eps = 1e-6
        for _ in range(10):
            x, y = rng.uniform(-1, 1, 2)
            fy = (f.eval((x, y + eps)) - f.eval((x, y - eps))) / (2 * eps)
            pred = mul(GC(b / a, 1 / a), df.eval((x, y)), p)
            assert abs(fy - pred) <= 1e-7
            assert abs(pred) <= nc.k2 / (nc.k1 * math.sqrt(a)) * abs(df.eval((x, y))) * (1 + 1e-12)


# Weierstrass

def test_weierstrass_exponential():
    seq = exp_partial_sums(P21, [2, 4, 8, 16])
    rep = weierstrass_check(seq, GridSpec.covering(-0.5, -0.5, 0.5, 0.5, 1 / 64), Disk((0, 0), 0.5))
    assert rep.geometric and rep.residual_ok and rep.cauchy_ok and rep.path_bounds_ok
    assert rep.passed


def test_weierstrass_constant_sequence():
    f = HoloPoly([(1, 1), (0.5, 0)], P21)
    g = GridSpec.covering(-0.5, -0.5, 0.5, 0.5, 1 / 32)
    rep = weierstrass_check([f, f, f], g)
    assert rep.differences == [0.0, 0.0]
    assert rep.limit_residual == pytest.approx(cr_residual(to_field(f, g), order=4))


def test_weierstrass_sampled_fields():
    g = GridSpec.covering(-0.5, -0.5, 0.5, 0.5, 1 / 64)
    seq = [to_field(f, g) for f in exp_partial_sums(P21, [2, 4, 8, 16])]
    rep = weierstrass_check(seq, g, Disk((0, 0), 0.5), cauchy_tol=1e-6)
    assert rep.passed


def test_weierstrass_needs_three():
    with pytest.raises(ValueError):
        weierstrass_check(exp_partial_sums(P21, [1, 2]), GRID)
