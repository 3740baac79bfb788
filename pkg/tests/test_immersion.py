"""
Tests for the ℝ³, 𝕊³ and 2-sphere immersion formulas.
"""

import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from lawson_forge.core.algebra import Quaternion
from lawson_forge.core.errors import (
    AssociatedFamilyRequestError,
    InvalidSpectralAngleError,
    SphereRadiusOverflowError,
)
from lawson_forge.core.lax import propagate
from lawson_forge.core.models import EUCLIDEAN_POINT, Ambient, CauchyData, SpectralPoint
from lawson_forge.geometry.faces import net_curvatures, net_face_defects
from lawson_forge.geometry.metric import net_cross_ratios
from lawson_forge.reporting.verification import verify_net
from lawson_forge.surfaces.immersion import (
    NetS3,
    christoffel_dual_r3,
    christoffel_dual_s3,
    expected_cross_ratios,
    expected_edge_lengths_r3,
    expected_edge_lengths_s3,
    immerse_r3_lattice,
    immerse_s3,
    quad_faces,
    scale_to_sphere,
)


def _lengths(points):
    d1 = points[1:, :] - points[:-1, :]
    d2 = points[:, 1:] - points[:, :-1]
    return np.sum(d1 ** 2, axis=-1), np.sum(d2 ** 2, axis=-1)


def test_quad_faces_order():
    assert quad_faces(3, 2) == [((0, 0), (1, 0), (1, 1), (0, 1)), ((1, 0), (2, 0), (2, 1), (1, 1))]


def test_r3_constant_data_vertices(constant_lattice):
    net = immerse_r3_lattice(constant_lattice)
    np.testing.assert_allclose(net.F_hat[0, 0], [0, 0, 0.5], atol=1e-12)
    np.testing.assert_allclose(net.N_hat[0, 0], [0, 0, -1], atol=1e-12)
    np.testing.assert_allclose(net.F_hat[1, 0], [-0.4, 0, -0.3], atol=1e-12)
    np.testing.assert_allclose(net.N_hat[1, 0], [0.8, 0, 0.6], atol=1e-12)
    h, v = _lengths(net.F_hat)
    np.testing.assert_allclose(h, 0.8, atol=1e-12)
    np.testing.assert_allclose(v, 4.0, atol=1e-12)


def test_r3_edge_lengths_follow_lax_data(random_lattice, r3_net):
    h, v = _lengths(r3_net.F_hat)
    eh, ev = expected_edge_lengths_r3(random_lattice)
    np.testing.assert_allclose(h, eh, atol=1e-10)
    np.testing.assert_allclose(v, ev, atol=1e-10)


def test_r3_gauss_map_and_dual(r3_net):
    np.testing.assert_allclose(np.linalg.norm(r3_net.N_hat, axis=-1), 1.0, atol=1e-12)
    np.testing.assert_allclose(christoffel_dual_r3(r3_net), r3_net.F_hat + r3_net.N_hat)
    assert r3_net.mean_curvature == 1.0
    assert r3_net.ambient is Ambient.R3


def test_r3_cross_ratios(random_lattice, r3_net):
    np.testing.assert_allclose(net_cross_ratios(r3_net.F_hat), expected_cross_ratios(random_lattice, EUCLIDEAN_POINT),
                               atol=1e-9)


def test_r3_constant_cross_ratio(constant_lattice):
    np.testing.assert_allclose(expected_cross_ratios(constant_lattice, EUCLIDEAN_POINT), -0.2)


def test_r3_rejects_associated_family(random_lattice):
    with pytest.raises(AssociatedFamilyRequestError):
        immerse_r3_lattice(random_lattice, gamma=0.3)


def test_s3_constant_data(constant_lattice):
    net = immerse_s3(constant_lattice, math.pi / 4)
    np.testing.assert_allclose(net.F[0, 0], [0, 0, math.sqrt(0.5), math.sqrt(0.5)], atol=1e-12)
    h, v = _lengths(net.F)
    np.testing.assert_allclose(h, 4 / 3, atol=1e-12)
    np.testing.assert_allclose(v, 4 / 3, atol=1e-12)
    np.testing.assert_allclose(net_cross_ratios(net.F), -1.0, atol=1e-9)


@pytest.mark.parametrize("gamma1", [math.pi / 4, math.pi / 6, 0.2, 1.2])
def test_s3_net_lies_on_sphere(random_lattice, gamma1):
    net = immerse_s3(random_lattice, gamma1)
    np.testing.assert_allclose(np.linalg.norm(net.F, axis=-1), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(net.N, axis=-1), 1.0, atol=1e-12)
    np.testing.assert_allclose(np.sum(net.F * net.N, axis=-1), 0.0, atol=1e-12)
    h, v = _lengths(net.F)
    eh, ev = expected_edge_lengths_s3(random_lattice, gamma1)
    np.testing.assert_allclose(h, eh, atol=1e-10)
    np.testing.assert_allclose(v, ev, atol=1e-10)
    np.testing.assert_allclose(net_cross_ratios(net.F), expected_cross_ratios(random_lattice, SpectralPoint(gamma1)),
                               atol=1e-9)


def test_s3_mean_curvature(minimal_net, cmc_net):
    assert minimal_net.mean_curvature == 0.0
    assert cmc_net.mean_curvature == pytest.approx(1 / math.sqrt(3))
    np.testing.assert_array_equal(christoffel_dual_s3(minimal_net), minimal_net.N)
    np.testing.assert_allclose(cmc_net.dual(), cmc_net.F + cmc_net.N * math.sqrt(3))


def test_s3_negative_branch(random_lattice):
    net = immerse_s3(random_lattice, math.pi / 5, negative_branch=True)
    assert net.negative_branch
    assert net.provenance["negative_branch"] is True
    np.testing.assert_allclose(np.linalg.norm(net.F, axis=-1), 1.0, atol=1e-12)


def test_s3_provenance(random_lattice, minimal_net):
    assert minimal_net.provenance["lattice"] == random_lattice.digest()
    assert minimal_net.provenance["gamma"] == math.pi / 4
    assert (minimal_net.provenance["width"], minimal_net.provenance["height"]) == (5, 4)


@pytest.mark.parametrize("gamma1", [0.0, math.pi / 2, -0.1, 2.0])
def test_s3_rejects_spectral_angle(random_lattice, gamma1):
    with pytest.raises(InvalidSpectralAngleError):
        immerse_s3(random_lattice, gamma1)


def test_sphere_family_member(cmc_net):
    sphere = scale_to_sphere(cmc_net)
    assert sphere.mean_curvature == pytest.approx(0.5)
    assert sphere.kappa == pytest.approx(0.75)
    assert sphere.mean_curvature ** 2 + sphere.kappa == pytest.approx(1.0)
    np.testing.assert_allclose(np.linalg.norm(sphere.F, axis=-1), sphere.radius, atol=1e-12)
    assert sphere.provenance["scale"] == 1.0


def test_sphere_scale(minimal_net):
    sphere = scale_to_sphere(minimal_net, scale=2.0)
    assert sphere.radius == pytest.approx(2.0)
    assert sphere.mean_curvature == 0.0
    assert sphere.kappa == pytest.approx(0.25)


def test_sphere_radius_overflow():
    tiny = NetS3(np.zeros((2, 2, 4)), np.zeros((2, 2, 4)), 1e-14)
    with pytest.raises(SphereRadiusOverflowError):
        scale_to_sphere(tiny)


@pytest.mark.parametrize("seed", range(20))
def test_r3_nets_of_random_data_are_circular_cmc(seed):
    lat = propagate(CauchyData.random(8, 8, seed=seed))
    net = immerse_r3_lattice(lat)
    planar, circular = net_face_defects(net.F_hat)
    assert np.max(planar) < 1e-9
    assert np.max(circular) < 1e-9
    H, _ = net_curvatures(net.F_hat, net.N_hat)
    np.testing.assert_allclose(H, 1.0, atol=1e-8)
    report = verify_net(net, lat)
    assert report.passed, report.summary()


@pytest.mark.parametrize("seed", range(0, 20, 4))
def test_s3_nets_of_random_data_are_circular(seed):
    net = immerse_s3(propagate(CauchyData.random(8, 8, seed=seed)), math.pi / 4)
    planar, circular = net_face_defects(net.F)
    assert np.max(planar) < 1e-9
    assert np.max(circular) < 1e-9


def test_r3_constant_data_faces_are_flat():
    net = immerse_r3_lattice(propagate(CauchyData.constant(6, 6)))
    planar, circular = net_face_defects(net.F_hat)
    assert np.max(planar) < 1e-12
    assert np.max(circular) < 1e-12


def test_r3_base_frame_moves_net_rigidly(random_lattice, r3_net):
    q = Quaternion.from_coefficients(0.3, -0.5, 0.7, 0.2)
    q = q / q.norm()
    turned = immerse_r3_lattice(random_lattice, base=q)
    points = r3_net.F_hat.reshape(-1, 3)
    moved = turned.F_hat.reshape(-1, 3)
    np.testing.assert_allclose(pdist(moved), pdist(points), atol=1e-10)
    # normals turn with the vertices
    np.testing.assert_allclose(np.einsum("ij,ij->i", moved - moved[0], turned.N_hat.reshape(-1, 3)),
                               np.einsum("ij,ij->i", points - points[0], r3_net.N_hat.reshape(-1, 3)),
                               atol=1e-10)


def test_s3_base_frames_move_net_rigidly(random_lattice, cmc_net):
    p = Quaternion.from_coefficients(0.1, 0.8, -0.4, 0.3)
    q = Quaternion.from_coefficients(-0.6, 0.2, 0.5, 0.5)
    turned = immerse_s3(random_lattice, math.pi / 6, base=(p / p.norm(), q / q.norm()))
    np.testing.assert_allclose(pdist(turned.F.reshape(-1, 4)), pdist(cmc_net.F.reshape(-1, 4)), atol=1e-10)
    np.testing.assert_allclose(np.linalg.norm(turned.F, axis=-1), 1.0, atol=1e-12)
