"""
Tests for the Lawson pair, the sphere family and the Euclidean limit.
"""

import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from lawson_forge.core.errors import ProvenanceMismatchError
from lawson_forge.core.lax import alpha_squared, propagate
from lawson_forge.core.models import CauchyData, SpectralPoint, UEdgeData
from lawson_forge.surfaces.lawson import (
    calapso_labeling_check,
    euclidean_limit,
    family_ratio_defect,
    label_map,
    lawson_pair,
    model_products,
    sphere_family,
)

FAMILY = [math.pi / 4, math.pi / 6, math.pi / 12]


def test_lawson_pair_is_isometric(random_lattice):
    pair = lawson_pair(random_lattice)
    assert pair.isometry_defect <= 1e-8
    assert pair.model_defect <= 1e-8
    assert pair.passes()
    assert pair.s3.mean_curvature == 0.0


def test_lawson_pair_of_constant_data():
    pair = lawson_pair(CauchyData.constant(3, 3))
    np.testing.assert_allclose(pair.products_r3.horizontal, -1.0, atol=1e-10)
    np.testing.assert_allclose(pair.products_r3.vertical, 1.0, atol=1e-10)
    np.testing.assert_allclose(pair.products_s3.horizontal, -1.0, atol=1e-10)


def test_model_products(random_lattice):
    mp = model_products(random_lattice, 0.5)
    np.testing.assert_allclose(mp.horizontal, -0.5 * random_lattice.u ** 2)
    np.testing.assert_allclose(mp.vertical, 0.5 * random_lattice.v ** 2)


def test_sphere_family_conserves_curvature(random_lattice):
    members = sphere_family(random_lattice, FAMILY)
    assert [m.gamma1 for m in members] == FAMILY
    for m in members:
        assert m.conservation_defect <= 1e-12
        assert m.curvature_defect <= 1e-8
    assert members[0].conformal_ratios is None
    assert family_ratio_defect(members) <= 1e-8


def test_constant_family_member(constant_lattice):
    members = sphere_family(constant_lattice, [math.pi / 6])
    member = members[0]
    assert member.H == pytest.approx(0.5)
    assert member.kappa == pytest.approx(0.75)
    np.testing.assert_allclose(member.products.horizontal, -0.5, atol=1e-10)
    np.testing.assert_allclose(member.products.vertical, 0.5, atol=1e-10)
    np.testing.assert_allclose(member.conformal_ratios.horizontal, -1.0, atol=1e-10)


def test_sphere_family_scale(random_lattice):
    members = sphere_family(random_lattice, [math.pi / 5], scale=2.0)
    assert members[0].net.scale == 2.0
    assert members[0].conservation_defect <= 1e-12


def test_calapso_shift_of_constant_labels(constant_lattice):
    e = UEdgeData(1.0, 1.0)
    assert alpha_squared(e, SpectralPoint(math.pi / 4)) == pytest.approx(3.0)
    assert alpha_squared(e, SpectralPoint(math.pi / 6)) == pytest.approx(4.0)
    assert label_map(1 / 3, 0.0, 0.5) == pytest.approx(1 / 4)

    members = sphere_family(constant_lattice, [math.pi / 4, math.pi / 6])
    report = calapso_labeling_check(members[0], members[1], constant_lattice)
    assert (report.H, report.H_prime) == (pytest.approx(0.0), pytest.approx(0.5))
    assert report.passes()


@given(st.floats(min_value=0.05, max_value=5.0), st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.0, max_value=1.0))
def test_label_map_is_inverted_by_swapping_curvatures(a, H, H_prime):
    assume(1.0 + 2.0 * (H_prime - H) * a > 0.1)
    assert label_map(label_map(a, H, H_prime), H_prime, H) == pytest.approx(a, rel=1e-10)


def test_calapso_labels_on_random_family(random_lattice):
    members = sphere_family(random_lattice, FAMILY)
    for a, b in combinations(members, 2):
        assert calapso_labeling_check(a, b, random_lattice).max_defect <= 1e-12


def test_calapso_rejects_foreign_member(random_lattice, constant_lattice):
    ours = sphere_family(random_lattice, [math.pi / 4])[0]
    theirs = sphere_family(constant_lattice, [math.pi / 6])[0]
    with pytest.raises(ProvenanceMismatchError):
        calapso_labeling_check(ours, theirs, random_lattice)


def test_euclidean_limit_converges(random_lattice):
    gammas = [0.025, 1e-3, 1e-4, 1e-5]
    rows = euclidean_limit(random_lattice, gammas)
    assert [r.gamma for r in rows] == gammas
    assert rows[0].ratio is None
    defects = [r.defect for r in rows]
    assert all(b < a for a, b in zip(defects, defects[1:]))
    assert defects[-1] < 1e-5
    assert rows[-1].ratio == pytest.approx(defects[-1] / defects[-2])


def test_euclidean_limit_constant_data_decreases():
    lat = propagate(CauchyData.constant(4, 4))
    rows = euclidean_limit(lat, [0.2, 0.1, 0.05, 0.025])
    defects = [r.defect for r in rows]
    assert all(b < a for a, b in zip(defects, defects[1:]))


def test_euclidean_limit_of_constant_base_vertex():
    lat = propagate(CauchyData.constant(1, 1))
    rows = euclidean_limit(lat, [0.1])
    # (0, 0, sin γ)/sin 2γ against (0, 0, ½)
    assert rows[0].defect == pytest.approx(abs(1 / (2 * math.cos(0.1)) - 0.5), abs=1e-12)


@pytest.mark.parametrize("gammas", [[math.pi / 8, math.pi / 4], [0.0], [1.0], [0.3, 0.3]])
def test_euclidean_limit_rejects_angles(random_lattice, gammas):
    with pytest.raises(ValueError):
        euclidean_limit(random_lattice, gammas)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_lawson_pair_on_random_data(seed):
    cauchy = CauchyData.random(3, 3, seed=seed, a_abs_max=0.4, u_range=(0.85, 1.2), v_range=(0.85, 1.2))
    assert lawson_pair(cauchy).passes()
