import numpy as np
import pytest

from epcx.algebra import GC, AlgebraParams
from epcx.calculus import OperatorCoeffs, apply_L, sontutschke_verdict
from epcx.errors import AlphaZero, Lemma1Inadmissible
from epcx.grid import ComplexField, GridSpec
from epcx.holo import HoloPoly
from epcx.realpoly import RealPoly
from epcx.rewrite import (
    UNKNOWNS, RealCoeffs, coefficient_matrix, complex_to_real, det_check, determinant, real_to_complex, synthesize,
)

import oracles

P21 = AlgebraParams(2.0, 1.0)
GRID = GridSpec.covering(-1, -1, 1, 1, 1 / 16)


def random_rc(rng):
    return RealCoeffs(**{n: float(v) for n, v in zip(RealCoeffs.names(), rng.uniform(-1, 1, 14))})


def gc_close(a, b, tol=1e-12):
    a = a if a is not None else GC(0.0, 0.0)
    b = b if b is not None else GC(0.0, 0.0)
    return abs(a - b) <= tol


def test_zero_maps_to_zero():
    oc = real_to_complex(RealCoeffs(), P21)
    assert all(gc_close(d, GC(0.0, 0.0), 0.0) for _, d in oc.items())
    rc = complex_to_real(OperatorCoeffs(P21), P21)
    assert all(v == 0.0 for v in rc.as_dict().values())


def test_zero_order_examples():
    for ab in [(2, 1), (-1, 0.5), (0.3, -2)]:
        p = AlgebraParams(*ab)
        oc = real_to_complex(RealCoeffs(c1=1.0, d2=1.0), p)
        assert gc_close(oc.E, GC(1.0, 0.0)) and gc_close(oc.F, GC(0.0, 0.0))
    oc = real_to_complex(RealCoeffs(c3=2.0, d3=-3.0), P21)
    assert oc.G == GC(2.0, -3.0)


def test_alpha_zero():
    with pytest.raises(AlphaZero):
        real_to_complex(RealCoeffs(), AlgebraParams(0, 1))
    with pytest.raises(AlphaZero):
        coefficient_matrix(AlgebraParams(0, 1))


@pytest.mark.parametrize("ab", [(1, 0), (2, 1), (3, -1), (-2, 0.5)])
def test_complex_form_matches_real_system(ab):
    # dual route: the real right-hand side of the system equals L(u + iv)
    p = AlgebraParams(*ab)
    rng = np.random.default_rng(21)
    X, Y = GRID.coords()
    for _ in range(10):
        rc = random_rc(rng)
        cu, cv = rng.uniform(-1, 1, 6), rng.uniform(-1, 1, 6)
        u = cu[0] + cu[1] * X + cu[2] * Y + cu[3] * X**2 + cu[4] * X * Y + cu[5] * Y**2
        v = cv[0] + cv[1] * X + cv[2] * Y + cv[3] * X**2 + cv[4] * X * Y + cv[5] * Y**2
        ux, uy = cu[1] + 2 * cu[3] * X + cu[4] * Y, cu[2] + cu[4] * X + 2 * cu[5] * Y
        vx, vy = cv[1] + 2 * cv[3] * X + cv[4] * Y, cv[2] + cv[4] * X + 2 * cv[5] * Y
        du, dv = oracles.real_rhs(rc.as_dict(), u, v, ux, uy, vx, vy)
        Lw = apply_L(real_to_complex(rc, p), ComplexField(GRID, u, v, p))
        np.testing.assert_allclose(Lw.x, du, atol=1e-10)
        np.testing.assert_allclose(Lw.y, dv, atol=1e-10)


@pytest.mark.parametrize("ab", [(1, 0), (2, 1), (3, -1)])
def test_round_trip(ab):
    p = AlgebraParams(*ab)
    rng = np.random.default_rng(22)
    for _ in range(100):
        rc = random_rc(rng)
        back = complex_to_real(real_to_complex(rc, p), p)
        for n in rc.names():
            assert abs(getattr(back, n) - getattr(rc, n)) <= 1e-10
        oc = OperatorCoeffs(p, **{k: tuple(rng.uniform(-1, 1, 2)) for k in "ABCDEFG"})
        again = real_to_complex(complex_to_real(oc, p), p)
        for (k, a), (_, b) in zip(oc.items(), again.items()):
            assert gc_close(a, b, 1e-10), k


def test_round_trip_sampled():
    rng = np.random.default_rng(23)
    rc = RealCoeffs(**{n: rng.uniform(-1, 1, GRID.shape) for n in RealCoeffs.names()})
    oc = real_to_complex(rc, P21, GRID)
    back = complex_to_real(oc, P21)
    for n in rc.names():
        np.testing.assert_allclose(getattr(back, n), getattr(rc, n), atol=1e-10)


def test_determinant_examples():
    assert determinant(AlgebraParams(2.0, 0.7)) == pytest.approx(-16.0, rel=1e-12)
    assert determinant(AlgebraParams(1.0, 0.0)) == pytest.approx(-256.0, rel=1e-12)
    assert det_check(AlgebraParams(3.3, -4.1)) == pytest.approx(1.0, abs=1e-9)


def test_determinant_against_numpy():
    for ab in [(0.5, 2), (7, -1)]:
        p = AlgebraParams(*ab)
        assert determinant(p) == pytest.approx(np.linalg.det(coefficient_matrix(p)), rel=1e-10)


def test_matrix_columns_match_forward_map():
    # column k of the matrix is 2*(A, B, C, D) produced by unit coefficient k
    p = AlgebraParams(1.7, 0.4)
    M = coefficient_matrix(p)
    for k, name in enumerate(UNKNOWNS):
        oc = real_to_complex(RealCoeffs(**{name: 1.0}), p)
        col = [2 * c for n in "ABCD" for c in getattr(oc, n).astuple()]
        np.testing.assert_allclose(M[:, k], col, atol=1e-14)


def test_synthesize_example():
    rc = synthesize({}, GC(1, 0), GC(0, 0), GC(0, 0), P21)
    d = {n: float(v) if not isinstance(v, RealPoly) else float(v.coef[0, 0]) for n, v in rc.as_dict().items()}
    assert (d["a21"], d["a22"], d["b21"], d["b22"]) == (0.0, 2.0, 1.0, 0.0)
    assert all(d[n] == 0.0 for n in ("c1", "c2", "c3", "d1", "d2", "d3"))
    oc = real_to_complex(rc, P21)
    assert gc_close(oc.A, GC(1.0, 0.0)) and gc_close(oc.B, GC(0.0, 0.0))


def test_synthesize_zero():
    z = HoloPoly.zero(P21)
    rc = synthesize({}, z, z, z, P21)
    for v in rc.sample(GRID).as_dict().values():
        assert np.all(v == 0.0)


def test_synthesize_inadmissible():
    with pytest.raises(Lemma1Inadmissible):
        synthesize({}, GC(1, 0), GC(0, 0), GC(0, 0), AlgebraParams(1, 2))


@pytest.mark.parametrize("ab", [(2, 1), (-1, 0.5), (5, 3)])
def test_synthesized_systems_are_associated(ab):
    p = AlgebraParams(*ab)
    rng = np.random.default_rng(24)
    for _ in range(5):
        A, E, G = (HoloPoly([tuple(rng.uniform(-1, 1, 2)) for _ in range(3)], p) for _ in range(3))
        free = {n: rng.uniform(-1, 1, GRID.shape) for n in ("a11", "a12", "b11", "b12")}
        oc = real_to_complex(synthesize(free, A, E, G, p, GRID), p, GRID)
        assert oc.B.magnitude().max() <= 1e-10
        assert oc.F.magnitude().max() <= 1e-10
        X, Y = GRID.coords()
        for name, h in (("A", A), ("E", E), ("G", G)):
            ref = h(X, Y)
            got = getattr(oc, name)
            assert np.max(np.hypot(got.x - ref.x, got.y - ref.y)) <= 1e-10
        assert sontutschke_verdict(oc).associated


def test_synthesize_exact_polynomial_path():
    A = HoloPoly([(1, 0.5), (0.2, -0.3)], P21)
    rc = synthesize({"a11": 0.4, "b12": RealPoly([[0, 1], [1, 0]])}, A, GC(0.5, 0.3), GC(0, 1), P21)
    X, Y = GRID.coords()
    oc = real_to_complex(rc, P21, GRID)
    assert oc.B.magnitude().max() <= 1e-12
    ref = A(X, Y)
    np.testing.assert_allclose(oc.A.x, ref.x, atol=1e-12)
    np.testing.assert_allclose(oc.A.y, ref.y, atol=1e-12)


def test_synthesize_cross_module_recovery():
    rc = synthesize({"a11": 0.2, "a12": -0.1, "b11": 0.3, "b12": 0.5}, GC(1, 0.3), GC(0.5, 0.3), GC(1, -1), P21)
    back = complex_to_real(real_to_complex(rc, P21), P21)
    for n in rc.names():
        v = getattr(rc, n)
        v = float(v.coef[0, 0]) if isinstance(v, RealPoly) else v
        assert getattr(back, n) == pytest.approx(v, abs=1e-12)


def test_realcoeffs_json():
    rc = RealCoeffs(a11=1.5, b12=RealPoly([[0, 1]]))
    back = RealCoeffs.from_json(rc.to_json())
    assert back.a11 == 1.5 and back.b12 == RealPoly([[0, 1]])
