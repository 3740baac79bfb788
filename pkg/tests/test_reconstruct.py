"""
Tests for recovering Lax data from nets.
"""

import math

import numpy as np
import pytest

from lawson_forge.core.algebra import exp_k
from lawson_forge.core.errors import InconsistentGaussMapError, NotCMCQuadError, NotIntegrableError, NotOnSphereError
from lawson_forge.core.lax import check_lattice
from lawson_forge.core.models import DEFAULT_TOLERANCES, Ambient
from lawson_forge.geometry.faces import face_points
from lawson_forge.surfaces.immersion import immerse_r3_lattice, immerse_s3
from lawson_forge.surfaces.reconstruct import (
    _check_edge_angles,
    _Setting,
    reconstruct_net,
    reconstruct_quad_r3,
    reconstruct_quad_s3,
)


def assert_same_lattice(got, expected, atol=1e-8):
    assert (got.width, got.height) == (expected.width, expected.height)
    np.testing.assert_allclose(got.a, expected.a, atol=atol)
    np.testing.assert_allclose(got.u, expected.u, atol=atol)
    np.testing.assert_allclose(got.b, expected.b, atol=atol)
    np.testing.assert_allclose(got.v, expected.v, atol=atol)


def test_r3_round_trip(random_lattice, r3_net):
    report = reconstruct_net(r3_net.F_hat, r3_net.N_hat, Ambient.R3)
    assert report.gamma1 is None
    assert report.mean_curvature == 1.0
    assert not report.transposed
    assert report.passes()
    assert_same_lattice(report.lattice, random_lattice)
    assert check_lattice(report.lattice).passes()


def test_minimal_round_trip(random_lattice, minimal_net):
    report = reconstruct_net(minimal_net.F, minimal_net.N, Ambient.S3)
    assert report.gamma1 == math.pi / 4
    assert report.mean_curvature == 0.0
    assert report.passes()
    assert_same_lattice(report.lattice, random_lattice)


def test_cmc_round_trip_measures_gamma(random_lattice, cmc_net):
    report = reconstruct_net(cmc_net.F, cmc_net.N, Ambient.S3)
    assert report.gamma1 == pytest.approx(math.pi / 6, abs=1e-9)
    assert report.mean_curvature == pytest.approx(1 / math.sqrt(3), abs=1e-8)
    assert_same_lattice(report.lattice, random_lattice, atol=1e-7)


def test_cmc_round_trip_with_given_gamma(random_lattice, cmc_net):
    report = reconstruct_net(cmc_net.F, cmc_net.N, Ambient.S3, gamma1=math.pi / 6)
    assert report.gamma1 == math.pi / 6
    assert_same_lattice(report.lattice, random_lattice)


def test_transposed_net_is_detected(random_lattice, r3_net):
    F = np.swapaxes(r3_net.F_hat, 0, 1)
    N = np.swapaxes(r3_net.N_hat, 0, 1)
    report = reconstruct_net(F, N, Ambient.R3)
    assert report.transposed
    assert_same_lattice(report.lattice, random_lattice)


def test_reconstruction_reproduces_net(cmc_net):
    report = reconstruct_net(cmc_net.F, cmc_net.N, Ambient.S3, gamma1=math.pi / 6)
    again = immerse_s3(report.lattice, math.pi / 6, base=report.base)
    np.testing.assert_allclose(again.F, cmc_net.F, atol=1e-9)
    np.testing.assert_allclose(again.N, cmc_net.N, atol=1e-9)


def test_rotated_base_frame_shifts_phases_on_a_checkerboard(random_lattice, r3_net):
    plain = reconstruct_net(r3_net.F_hat, r3_net.N_hat, Ambient.R3)
    theta = 0.3
    report = reconstruct_net(r3_net.F_hat, r3_net.N_hat, Ambient.R3, base=exp_k(theta) * plain.base[0])
    assert report.passes()
    got = report.lattice
    np.testing.assert_allclose(got.u, random_lattice.u, atol=1e-9)
    np.testing.assert_allclose(got.v, random_lattice.v, atol=1e-9)
    # frames alternate between exp_k(θ)Φ and exp_k(−θ)Φ, so an edge starting at (m, n) picks up e^{±2iθ}
    m, n = np.indices(got.a.shape)
    np.testing.assert_allclose(got.a, random_lattice.a * np.exp(2j * theta * (-1.0) ** (m + n)), atol=1e-9)
    m, n = np.indices(got.b.shape)
    np.testing.assert_allclose(got.b, random_lattice.b * np.exp(2j * theta * (-1.0) ** (m + n)), atol=1e-9)


def test_single_quads(constant_lattice):
    net = immerse_r3_lattice(constant_lattice)
    quad = reconstruct_quad_r3(face_points(net.F_hat, 0, 0), face_points(net.N_hat, 0, 0))
    expected = constant_lattice.quad(0, 0)
    assert quad.U.a == pytest.approx(expected.U.a, abs=1e-9)
    assert quad.U.u == pytest.approx(expected.U.u, abs=1e-9)
    assert quad.Vp.b == pytest.approx(expected.Vp.b, abs=1e-9)
    assert quad.Vp.v == pytest.approx(expected.Vp.v, abs=1e-9)

    s3 = immerse_s3(constant_lattice, math.pi / 6)
    quad, gamma1 = reconstruct_quad_s3(face_points(s3.F, 0, 0), face_points(s3.N, 0, 0))
    assert gamma1 == pytest.approx(math.pi / 6, abs=1e-9)
    assert quad.Up.u == pytest.approx(1.0, abs=1e-8)


def test_tilted_normal_is_inconsistent_gauss_map(constant_lattice):
    net = immerse_r3_lattice(constant_lattice)
    points, normals = face_points(net.F_hat, 0, 0), face_points(net.N_hat, 0, 0)
    tangent = np.cross(normals[0], points[1] - points[0])
    normals[0] = normals[0] + 0.01 * tangent / np.linalg.norm(tangent)
    normals[0] /= np.linalg.norm(normals[0])
    with pytest.raises(InconsistentGaussMapError):
        reconstruct_quad_r3(points, normals)


def test_perturbed_vertex_is_not_integrable(r3_net):
    F = r3_net.F_hat.copy()
    F[2, 2] += 1e-3 * r3_net.N_hat[2, 2]
    with pytest.raises(NotIntegrableError) as info:
        reconstruct_net(F, r3_net.N_hat, Ambient.R3)
    assert info.value.location in {(1, 1), (2, 1), (1, 2), (2, 2)}


def test_off_sphere_net(minimal_net):
    with pytest.raises(NotOnSphereError):
        reconstruct_net(1.01 * minimal_net.F, minimal_net.N, Ambient.S3)


def test_sphere_nets_must_be_rescaled(minimal_net):
    with pytest.raises(ValueError):
        reconstruct_net(minimal_net.F, minimal_net.N, Ambient.SPHERE)


def test_shape_mismatch(r3_net):
    with pytest.raises(ValueError):
        reconstruct_net(r3_net.F_hat, r3_net.N_hat[:-1], Ambient.R3)


def test_sphere_edges_check_both_angles(constant_lattice):
    net = immerse_s3(constant_lattice, math.pi / 4)
    setting = _Setting(Ambient.S3, math.pi / 4, 0.0, DEFAULT_TOLERANCES)
    dF, f0, n0 = net.F[1, 0] - net.F[0, 0], net.F[0, 0], net.N[0, 0]
    # constant data at γ₁ = π/4: α² = 3, cos θ = 1/√3 and cos χ = −1/√3
    _check_edge_angles(setting, dF, f0, n0, 1 / math.sqrt(3), -1 / math.sqrt(3), (0, 0))
    with pytest.raises(NotCMCQuadError, match="angle χ"):
        _check_edge_angles(setting, dF, -f0, n0, 1 / math.sqrt(3), -1 / math.sqrt(3), (0, 0))
    with pytest.raises(NotCMCQuadError, match="angle θ"):
        _check_edge_angles(setting, dF, f0, -n0, 1 / math.sqrt(3), -1 / math.sqrt(3), (0, 0))
