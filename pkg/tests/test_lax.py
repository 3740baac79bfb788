"""
Tests for Lax matrices, the quad solver and lattice propagation.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import least_squares

from lawson_forge.core.errors import SpectralDegeneracyError
from lawson_forge.core.lax import (
    CHECK_POINTS,
    alpha_squared,
    beta_squared,
    check_lattice,
    commutation_residual,
    dU_dgamma,
    eval_U,
    eval_V,
    labeling_defects,
    propagate,
    quad_equation_residuals,
    solve_quad,
    solve_quad_reverse,
    vertex_function,
)
from lawson_forge.core.models import CauchyData, QuadLax, SpectralPoint, UEdgeData, VEdgeData

angles = st.floats(min_value=-1.3, max_value=1.3, allow_nan=False)
moduli = st.floats(min_value=0.0, max_value=0.4, allow_nan=False)
phases = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)
positives = st.floats(min_value=0.85, max_value=1.2, allow_nan=False)
u_edges = st.builds(lambda r, t, u: UEdgeData(r * complex(math.cos(t), math.sin(t)), u), moduli, phases, positives)
v_edges = st.builds(lambda r, t, v: VEdgeData(r * complex(math.cos(t), math.sin(t)), v), moduli, phases, positives)


def test_eval_U_at_one():
    U = eval_U(UEdgeData(1.0, 1.0), SpectralPoint(0.0))
    np.testing.assert_allclose(U.m, np.array([[1, -2], [2, 1]]) / math.sqrt(5), atol=1e-15)


def test_normalizers_constant_data():
    U, V = UEdgeData(1.0, 1.0), VEdgeData(1.0, 1.0)
    assert alpha_squared(U, SpectralPoint(0.0)) == pytest.approx(5.0)
    assert beta_squared(V, SpectralPoint(0.0)) == pytest.approx(1.0)
    assert alpha_squared(U, SpectralPoint(math.pi / 4)) == pytest.approx(3.0)
    assert beta_squared(V, SpectralPoint(math.pi / 4)) == pytest.approx(3.0)


def test_degenerate_V_at_one():
    with pytest.raises(SpectralDegeneracyError):
        eval_V(VEdgeData(0.0, 1.0), SpectralPoint(0.0))


def test_degenerate_U_at_half_turn():
    with pytest.raises(SpectralDegeneracyError):
        eval_U(UEdgeData(0.0, 1.0), SpectralPoint(math.pi / 2))


def test_edge_data_validation():
    with pytest.raises(ValueError):
        UEdgeData(0.5, 0.0)
    with pytest.raises(ValueError):
        VEdgeData(float("nan"), 1.0)


@given(u_edges, angles)
def test_U_is_unit_quaternion(e, gamma):
    U = eval_U(e, SpectralPoint(gamma))
    assert U.structure_defect <= 1e-12
    assert U.det() == pytest.approx(1.0, abs=1e-12)


@given(v_edges, st.floats(min_value=0.1, max_value=math.pi - 0.1))
def test_V_is_unit_quaternion(e, gamma):
    V = eval_V(e, SpectralPoint(gamma))
    assert V.structure_defect <= 1e-12
    assert V.det() == pytest.approx(1.0, abs=1e-12)


def test_dU_matches_finite_difference():
    e = UEdgeData(0.3 - 0.2j, 1.2)
    h = 1e-6
    fd = (eval_U(e, SpectralPoint(h)).m - eval_U(e, SpectralPoint(-h)).m) / (2 * h)
    np.testing.assert_allclose(dU_dgamma(e).m, fd, atol=1e-8)


def test_constant_quad_is_fixed():
    U, V = UEdgeData(1.0, 1.0), VEdgeData(1.0, 1.0)
    Up, Vp = solve_quad(U, V)
    assert Up.a == pytest.approx(1.0)
    assert Up.u == pytest.approx(1.0)
    assert Vp.b == pytest.approx(1.0)
    assert Vp.v == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(u_edges, v_edges)
def test_solved_quad_commutes(U, V):
    Up, Vp = solve_quad(U, V)
    q = QuadLax(U, V, Up, Vp)
    assert U.u * Up.u == pytest.approx(V.v * Vp.v, rel=1e-10)
    assert max(quad_equation_residuals(q)) <= 1e-9
    assert max(labeling_defects(q)) <= 1e-9 * max(U.label, V.label)
    # commutation away from the points the solver is checked at
    extra = [SpectralPoint(g) for g in (0.4, 1.1, 2.5)]
    assert commutation_residual(q, CHECK_POINTS) <= 1e-9
    assert commutation_residual(q, extra) <= 1e-9


def test_reverse_solver_recovers_lower_left():
    U, V = UEdgeData(0.2 + 0.1j, 0.9), VEdgeData(-0.3j, 1.1)
    Up, Vp = solve_quad(U, V)
    U0, V0 = solve_quad_reverse(Up, Vp)
    assert U0.a == pytest.approx(U.a, abs=1e-9)
    assert U0.u == pytest.approx(U.u, abs=1e-9)
    assert V0.b == pytest.approx(V.b, abs=1e-9)
    assert V0.v == pytest.approx(V.v, abs=1e-9)


def _commutation_oracle(U, V):
    """Root-find (a′, b′, v′) on the matrix commutation at λ = e^{±iπ/6} with u′ = vv′/u."""

    def residual(x):
        vp = x[4]
        quad = QuadLax(U, V, UEdgeData(complex(x[0], x[1]), V.v * vp / U.u), VEdgeData(complex(x[2], x[3]), vp))
        out = []
        for s in CHECK_POINTS:
            diff = (eval_V(quad.Vp, s) * eval_U(quad.U, s)).m - (eval_U(quad.Up, s) * eval_V(quad.V, s)).m
            out.extend(diff.real.ravel())
            out.extend(diff.imag.ravel())
        return np.array(out)

    start = np.array([U.a.real, U.a.imag, V.b.real, V.b.imag, U.u])
    fit = least_squares(residual, start, bounds=([-np.inf] * 4 + [1e-3], [np.inf] * 5),
                        xtol=1e-15, ftol=1e-15, gtol=1e-15)
    return complex(fit.x[0], fit.x[1]), V.v * fit.x[4] / U.u, complex(fit.x[2], fit.x[3]), fit.x[4]


def test_solver_matches_root_finding_oracle():
    rng = np.random.default_rng(2024)
    spectral = [SpectralPoint(g) for g in rng.uniform(0.15, 1.3, 20) * rng.choice([-1.0, 1.0], 20)]
    for _ in range(100):
        U = UEdgeData(complex(*rng.uniform(-0.25, 0.25, 2)), rng.uniform(0.88, 1.15))
        V = VEdgeData(complex(*rng.uniform(-0.25, 0.25, 2)), rng.uniform(0.88, 1.15))
        Up, Vp = solve_quad(U, V)
        ap, up, bp, vp = _commutation_oracle(U, V)
        assert Up.a == pytest.approx(ap, abs=1e-8)
        assert Up.u == pytest.approx(up, abs=1e-8)
        assert Vp.b == pytest.approx(bp, abs=1e-8)
        assert Vp.v == pytest.approx(vp, abs=1e-8)
        # commuting at two spectral points is enough for every λ on the circle
        assert commutation_residual(QuadLax(U, V, Up, Vp), spectral) <= 1e-9


def test_solver_on_recorded_quad():
    U, V = UEdgeData(0.5 + 0.2j, 1.3), VEdgeData(-0.1 + 0.7j, 0.8)
    Up, Vp = solve_quad(U, V)
    assert Up.u == pytest.approx(0.69439, abs=1e-5)
    assert Vp.v == pytest.approx(1.12839, abs=1e-5)
    assert U.u * Up.u == pytest.approx(V.v * Vp.v, rel=1e-12)
    assert commutation_residual(QuadLax(U, V, Up, Vp), CHECK_POINTS) <= 1e-12
    ap, up, bp, vp = _commutation_oracle(U, V)
    assert (Up.a, Up.u, Vp.b, Vp.v) == (pytest.approx(ap, abs=1e-8), pytest.approx(up, abs=1e-8),
                                        pytest.approx(bp, abs=1e-8), pytest.approx(vp, abs=1e-8))


def test_propagate_shapes_and_invariants(random_lattice):
    lat = random_lattice
    assert (lat.width, lat.height) == (5, 4)
    assert lat.a.shape == (4, 4) and lat.b.shape == (5, 3)
    check = check_lattice(lat)
    assert check.passes()
    assert check.alpha_spread <= 1e-9 and check.beta_spread <= 1e-9


def test_propagate_keeps_cauchy_data():
    cauchy = CauchyData.random(4, 3, seed=5, a_abs_max=0.4, u_range=(0.85, 1.2), v_range=(0.85, 1.2))
    lat = propagate(cauchy)
    assert lat.cauchy == cauchy


def test_vertex_function_closes(random_lattice):
    w, defect = vertex_function(random_lattice)
    assert w[0, 0] == 1.0
    assert np.all(w > 0)
    assert defect <= 1e-10


def test_propagate_on_single_quad_is_solve_quad():
    cauchy = CauchyData.random(2, 2, seed=4)
    q = propagate(cauchy).quad(0, 0)
    Up, Vp = solve_quad(q.U, q.V)
    assert (q.Up.a, q.Up.u) == (Up.a, Up.u)
    assert (q.Vp.b, q.Vp.v) == (Vp.b, Vp.v)


def test_single_row_window():
    lat = propagate(CauchyData.constant(4, 1))
    assert lat.a.shape == (3, 1)
    assert lat.b.shape == (4, 0)
    assert check_lattice(lat).passes()
