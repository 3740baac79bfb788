"""
Tests for the quaternion algebra.
"""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lawson_forge.core.algebra import (
    ONE,
    I,
    J,
    K,
    Quaternion,
    cross_ratio,
    embed_r3,
    embed_r4,
    exp_k,
    inner_r4,
    project_r3,
    project_r4,
)
from lawson_forge.core.errors import (
    DegenerateQuadrilateralError,
    NotImaginaryError,
    NotQuaternionMatrixError,
)

coefficient = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quaternions = st.builds(Quaternion.from_coefficients, coefficient, coefficient, coefficient, coefficient)


def test_basis_relations():
    assert (I * I).allclose(-ONE)
    assert (J * J).allclose(-ONE)
    assert (K * K).allclose(-ONE)
    assert (I * J).allclose(K)
    assert (J * K).allclose(I)
    assert (K * I).allclose(J)
    assert (I * J * K).allclose(-ONE)


def test_basis_matrices():
    np.testing.assert_allclose(I.m, [[0, -1j], [-1j, 0]])
    np.testing.assert_allclose(J.m, [[0, -1], [1, 0]])
    np.testing.assert_allclose(K.m, [[-1j, 0], [0, 1j]])


def test_project_r4_puts_real_part_last():
    np.testing.assert_allclose(project_r4(ONE), [0, 0, 0, 1])
    np.testing.assert_allclose(project_r4(embed_r4([1, 2, 3, 4])), [1, 2, 3, 4])


def test_embed_project_r3():
    np.testing.assert_allclose(project_r3(embed_r3([1.5, -2.0, 0.25])), [1.5, -2.0, 0.25])


def test_project_r3_rejects_real_part():
    with pytest.raises(NotImaginaryError):
        project_r3(ONE + I)


def test_projection_rejects_non_quaternion_matrix():
    with pytest.raises(NotQuaternionMatrixError):
        project_r4(Quaternion([[1, 0], [0, 2]]))


def test_inner_product():
    assert inner_r4(I, I) == pytest.approx(1.0)
    assert inner_r4(I, J) == pytest.approx(0.0)
    assert inner_r4(embed_r4([1, 2, 3, 4]), embed_r4([1, 1, 1, 1])) == pytest.approx(10.0)


def test_exp_k():
    assert exp_k(0.0).allclose(ONE)
    assert exp_k(math.pi / 2).allclose(K)
    np.testing.assert_allclose(project_r4(exp_k(math.pi / 4)), [0, 0, math.sqrt(0.5), math.sqrt(0.5)])


def test_inverse_and_adjoint_agree_on_unit_quaternions():
    q = exp_k(0.3) * Quaternion.from_coefficients(0.6, 0.0, 0.8, 0.0)
    assert q.inverse().allclose(q.adjoint())


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Quaternion.from_coefficients(0, 0, 0, 0).inverse()


def test_quaternion_rejects_bad_shape():
    with pytest.raises(ValueError):
        Quaternion(np.eye(3))


def test_unit_square_cross_ratio():
    square = [embed_r3(p) for p in ([0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0])]
    assert cross_ratio(*square).allclose(-ONE)


def test_degenerate_cross_ratio():
    p = embed_r3([0, 0, 0])
    with pytest.raises(DegenerateQuadrilateralError):
        cross_ratio(p, p, embed_r3([1, 1, 0]), embed_r3([0, 1, 0]))


def test_cross_ratio_is_conjugated_by_similarities():
    rng = np.random.default_rng(8)
    for _ in range(10):
        quad = [Quaternion.from_coefficients(*rng.normal(size=4)) for _ in range(4)]
        p, r = (Quaternion.from_coefficients(*rng.normal(size=4)) for _ in range(2))
        p, r = p / p.norm(), r / r.norm()
        q = cross_ratio(*quad)
        moved = cross_ratio(*(p * x * r for x in quad))
        # p(q)p⁻¹ keeps the real part and the length of the imaginary part
        assert moved.real == pytest.approx(q.real, rel=1e-9, abs=1e-11)
        assert moved.imaginary.norm() == pytest.approx(q.imaginary.norm(), rel=1e-9, abs=1e-11)
        assert moved.allclose(p * q * p.inverse(), atol=1e-9 * max(1.0, q.norm()))


@given(quaternions, quaternions)
def test_norm_is_multiplicative(p, q):
    assert (p * q).norm() == pytest.approx(p.norm() * q.norm(), rel=1e-9, abs=1e-9)


@given(quaternions)
def test_det_is_squared_norm(q):
    assert q.det().real == pytest.approx(q.norm() ** 2, rel=1e-9, abs=1e-9)
    assert abs(q.det().imag) <= 1e-9 * max(1.0, q.norm() ** 2)
