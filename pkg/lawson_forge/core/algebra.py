"""
Quaternionic and SU(2) linear algebra.

Quaternions are stored as 2×2 complex matrices in the basis

    𝕚 = [[0, -i], [-i, 0]],  𝕛 = [[0, -1], [1, 0]],  𝕜 = [[-i, 0], [0, i]],  𝟙 = identity,

so that ℝ³ is the imaginary quaternions and 𝕊³ the unit quaternions. Real
coefficients (x₀, x₁, x₂, x₃) of q = x₀𝟙 + x₁𝕚 + x₂𝕛 + x₃𝕜 are a view on the
matrix. The vector-valued helpers (`*_array`) work on stacks of shape (..., 2, 2).
"""

import math
from typing import Iterable, Tuple, Union

import numpy as np

from .errors import (
    DegenerateQuadrilateralError,
    NotImaginaryError,
    NotQuaternionMatrixError,
)

Scalar = Union[int, float, complex]

_ONE = np.array([[1, 0], [0, 1]], dtype=complex)
_I = np.array([[0, -1j], [-1j, 0]], dtype=complex)
_J = np.array([[0, -1], [1, 0]], dtype=complex)
_K = np.array([[-1j, 0], [0, 1j]], dtype=complex)


def coefficients_array(m: np.ndarray) -> np.ndarray:
    """Complex coefficients (x₀, x₁, x₂, x₃) of stacked matrices; real for real quaternions"""
    m11, m12, m21, m22 = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
    x0 = (m11 + m22) / 2
    x1 = 1j * (m12 + m21) / 2
    x2 = (m21 - m12) / 2
    x3 = (m22 - m11) / 2j
    return np.stack([x0, x1, x2, x3], axis=-1)


def structure_defect_array(m: np.ndarray) -> np.ndarray:
    """How far each matrix is from the real-quaternion form m21 = -conj(m12), m22 = conj(m11)"""
    d1 = np.abs(m[..., 1, 0] + np.conj(m[..., 0, 1]))
    d2 = np.abs(m[..., 1, 1] - np.conj(m[..., 0, 0]))
    return np.maximum(d1, d2)


def embed_r3_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return (x[..., 0, None, None] * _I + x[..., 1, None, None] * _J
            + x[..., 2, None, None] * _K)


def embed_r4_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return embed_r3_array(x[..., :3]) + x[..., 3, None, None] * _ONE


def project_r4_array(m: np.ndarray) -> np.ndarray:
    """(X₁, X₂, X₃, X₄) with X₄ the 𝟙-coefficient; no structure check"""
    c = coefficients_array(m).real
    return np.concatenate([c[..., 1:], c[..., :1]], axis=-1)


def project_r3_array(m: np.ndarray) -> np.ndarray:
    return coefficients_array(m).real[..., 1:]


def adjoint_array(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


class Quaternion:
    """Immutable quaternion held as its 2×2 complex matrix"""

    __slots__ = ("_m",)

    def __init__(self, m):
        arr = np.array(m, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"quaternion matrix must be 2×2, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("quaternion matrix holds non-finite entries")
        arr.setflags(write=False)
        self._m = arr

    @classmethod
    def from_coefficients(cls, x0: float, x1: float, x2: float, x3: float) -> "Quaternion":
        return cls(x0 * _ONE + x1 * _I + x2 * _J + x3 * _K)

    @property
    def m(self) -> np.ndarray:
        return self._m

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        c = coefficients_array(self._m).real
        return float(c[0]), float(c[1]), float(c[2]), float(c[3])

    @property
    def real(self) -> float:
        return float(((self._m[0, 0] + self._m[1, 1]) / 2).real)

    @property
    def imaginary(self) -> "Quaternion":
        return Quaternion(self._m - self.real * _ONE)

    @property
    def structure_defect(self) -> float:
        return float(structure_defect_array(self._m))

    def det(self) -> complex:
        m = self._m
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (√det for real quaternions)"""
        return float(math.sqrt(0.5 * np.sum(np.abs(self._m) ** 2)))

    def adjoint(self) -> "Quaternion":
        return Quaternion(adjoint_array(self._m))

    def inverse(self) -> "Quaternion":
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("quaternion is not invertible")
        m = self._m
        return Quaternion(np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self._m @ other._m)
        if isinstance(other, (int, float, complex, np.number)):
            return Quaternion(self._m * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Quaternion(other * self._m)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return Quaternion(self._m / other)
        return NotImplemented

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self._m + other._m)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self._m - other._m)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self._m)

    def __eq__(self, other) -> bool:
        return isinstance(other, Quaternion) and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash(self._m.tobytes())

    def __repr__(self) -> str:
        x0, x1, x2, x3 = self.coefficients
        return f"Quaternion({x0:.6g} + {x1:.6g}𝕚 + {x2:.6g}𝕛 + {x3:.6g}𝕜)"

    def allclose(self, other: "Quaternion", atol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self._m - other._m)) <= atol)


ONE = Quaternion(_ONE)
I = Quaternion(_I)
J = Quaternion(_J)
K = Quaternion(_K)
SIGMA3 = Quaternion(np.diag([1.0, -1.0]).astype(complex))   # i𝕜


def exp_k(theta: float) -> Quaternion:
    """exp(θ𝕜) = cos θ 𝟙 + sin θ 𝕜 = diag(e^{-iθ}, e^{iθ})"""
    return Quaternion(np.diag([complex(math.cos(theta), -math.sin(theta)),
                               complex(math.cos(theta), math.sin(theta))]))


def embed_r3(v: Iterable[float]) -> Quaternion:
    x = np.asarray(list(v), dtype=float)
    if x.shape != (3,):
        raise ValueError(f"expected 3 components, got {x.shape}")
    return Quaternion(embed_r3_array(x))


def project_r3(q: Quaternion, tol: float = 1e-12) -> np.ndarray:
    defect = q.structure_defect
    if defect > tol * max(q.norm(), 1.0):
        raise NotQuaternionMatrixError(defect)
    c = coefficients_array(q.m).real
    if abs(c[0]) > tol * max(float(np.linalg.norm(c)), np.finfo(float).tiny):
        raise NotImaginaryError(float(c[0]))
    return c[1:].copy()


def embed_r4(v: Iterable[float]) -> Quaternion:
    x = np.asarray(list(v), dtype=float)
    if x.shape != (4,):
        raise ValueError(f"expected 4 components, got {x.shape}")
    return Quaternion(embed_r4_array(x))


def project_r4(q: Quaternion, tol: float = 1e-12) -> np.ndarray:
    defect = q.structure_defect
    if defect > tol * max(q.norm(), 1.0):
        raise NotQuaternionMatrixError(defect)
    return project_r4_array(q.m)


def inner_r4(x: Quaternion, y: Quaternion) -> float:
    """⟨X, Y⟩ = ½ Re tr(X Y†); tr(X X†) = 2‖X‖² in this representation"""
    return float(0.5 * np.trace(x.m @ adjoint_array(y.m)).real)


def cross_ratio(q1: Quaternion, q2: Quaternion, q3: Quaternion, q4: Quaternion,
                tol: float = 1e-14) -> Quaternion:
    """(q1 - q2)(q2 - q3)⁻¹(q3 - q4)(q4 - q1)⁻¹ for the vertex order (F, F₁, F₁₂, F₂)"""
    diffs = {"q1-q2": q1 - q2, "q2-q3": q2 - q3, "q3-q4": q3 - q4, "q4-q1": q4 - q1}
    scale = max(d.norm() for d in diffs.values())
    for name, d in diffs.items():
        if scale == 0.0 or abs(d.det()) <= tol * scale ** 2:
            raise DegenerateQuadrilateralError(name)
    return (diffs["q1-q2"] * diffs["q2-q3"].inverse()
            * diffs["q3-q4"] * diffs["q4-q1"].inverse())
