"""
Vertex frames integrating a lattice of Lax data.

Φ₁ = 𝒰Φ and Φ₂ = 𝒱Φ with Φ(0, 0) = 𝟙 unless another base is given, plus the
γ-derivative field at γ = 0 needed by the Euclidean immersion.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .algebra import (
    ONE,
    SIGMA3,
    K,
    Quaternion,
    embed_r3,
    exp_k,
    project_r3,
)
from .errors import DegenerateEdgeError, SpectralDegeneracyError
from .lax import dU_dgamma, dV_dgamma, eval_U, eval_V
from .models import EUCLIDEAN_POINT, LatticeLax, SpectralPoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameField:
    """Φ at every vertex for one spectral point; phi has shape (M, N, 2, 2)"""
    point: SpectralPoint
    phi: np.ndarray

    def __post_init__(self):
        arr = np.array(self.phi, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "phi", arr)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.phi.shape[0], self.phi.shape[1]

    def at(self, m: int, n: int) -> Quaternion:
        return Quaternion(self.phi[m, n])

    def unitarity_defect(self) -> float:
        eye = np.eye(2)
        gram = self.phi @ np.conj(np.swapaxes(self.phi, -1, -2))
        det = np.linalg.det(self.phi)
        return float(max(np.max(np.abs(gram - eye)), np.max(np.abs(det - 1.0))))


@dataclass(frozen=True)
class FrameWithDerivative:
    """Frame at γ = 0 together with Φ̇ = ∂Φ/∂γ at γ = 0, Φ̇(0, 0) = 0"""
    frame: FrameField
    dphi: np.ndarray

    def __post_init__(self):
        arr = np.array(self.dphi, dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "dphi", arr)


def _edge_matrices(lat: LatticeLax, s: SpectralPoint):
    M, N = lat.width, lat.height
    Um = np.empty((M - 1, N, 2, 2), dtype=complex)
    Vm = np.empty((M, N - 1, 2, 2), dtype=complex)
    for m in range(M - 1):
        for n in range(N):
            try:
                Um[m, n] = eval_U(lat.horizontal(m, n), s).m
            except SpectralDegeneracyError as exc:
                raise SpectralDegeneracyError(s.gamma, exc.squared, (m, n)) from exc
    for m in range(M):
        for n in range(N - 1):
            try:
                Vm[m, n] = eval_V(lat.vertical(m, n), s).m
            except SpectralDegeneracyError as exc:
                raise SpectralDegeneracyError(s.gamma, exc.squared, (m, n)) from exc
    return Um, Vm


def integrate_frame(lat: LatticeLax, s: SpectralPoint, base: Quaternion = ONE) -> FrameField:
    """Integrate along the bottom row with 𝒰, then up every column with 𝒱"""
    M, N = lat.width, lat.height
    Um, Vm = _edge_matrices(lat, s)
    phi = np.empty((M, N, 2, 2), dtype=complex)
    phi[0, 0] = base.m
    for m in range(M - 1):
        phi[m + 1, 0] = Um[m, 0] @ phi[m, 0]
    for n in range(N - 1):
        phi[:, n + 1] = Vm[:, n] @ phi[:, n]
    return FrameField(s, phi)


def frame_defect(lat: LatticeLax, field: FrameField) -> float:
    """Largest ‖Φ₁ − 𝒰Φ‖ or ‖Φ₂ − 𝒱Φ‖ over all edges (path independence)"""
    Um, Vm = _edge_matrices(lat, field.point)
    phi = field.phi
    worst = 0.0
    if lat.width > 1:
        worst = max(worst, float(np.max(np.abs(phi[1:, :] - Um @ phi[:-1, :]))))
    if lat.height > 1:
        worst = max(worst, float(np.max(np.abs(phi[:, 1:] - Vm @ phi[:, :-1]))))
    return worst


def integrate_frame_with_derivative(lat: LatticeLax, base: Quaternion = ONE) -> FrameWithDerivative:
    """Product rule Φ̇₁ = 𝒰̇Φ + 𝒰Φ̇ (and the 𝒱 analogue) at γ = 0"""
    M, N = lat.width, lat.height
    for m in range(M):
        for n in range(N - 1):
            if lat.vertical(m, n).euclidean_degenerate:
                raise DegenerateEdgeError((m, n))

    field = integrate_frame(lat, EUCLIDEAN_POINT, base)
    Um, Vm = _edge_matrices(lat, EUCLIDEAN_POINT)
    dU = np.array([[dU_dgamma(lat.horizontal(m, n)).m for n in range(N)]
                   for m in range(M - 1)], dtype=complex).reshape(M - 1, N, 2, 2)
    dV = np.array([[dV_dgamma(lat.vertical(m, n)).m for n in range(N - 1)]
                   for m in range(M)], dtype=complex).reshape(M, N - 1, 2, 2)

    phi = field.phi
    dphi = np.zeros((M, N, 2, 2), dtype=complex)
    for m in range(M - 1):
        dphi[m + 1, 0] = dU[m, 0] @ phi[m, 0] + Um[m, 0] @ dphi[m, 0]
    for n in range(N - 1):
        dphi[:, n + 1] = dV[:, n] @ phi[:, n] + Vm[:, n] @ dphi[:, n]
    return FrameWithDerivative(field, dphi)


def derivative_defect(lat: LatticeLax, fd: FrameWithDerivative) -> float:
    """Largest violation of the product rule on horizontal edges above the bottom row"""
    M, N = lat.width, lat.height
    phi, dphi = fd.frame.phi, fd.dphi
    worst = 0.0
    for n in range(N):
        for m in range(M - 1):
            e = lat.horizontal(m, n)
            expected = dU_dgamma(e).m @ phi[m, n] + eval_U(e, EUCLIDEAN_POINT).m @ dphi[m, n]
            worst = max(worst, float(np.max(np.abs(dphi[m + 1, n] - expected))))
    return worst


def gauge_psi(field: FrameField, gamma: Optional[float] = None) -> FrameField:
    """Ψ = exp(−γ/2·𝕜)Φ = diag(e^{iγ/2}, e^{−iγ/2})Φ; γ defaults to the field's own"""
    g = field.point.gamma if gamma is None else gamma
    return FrameField(field.point, exp_k(-g / 2).m @ field.phi)


def twist_defect(field: FrameField, twisted: FrameField) -> float:
    """‖Φ(−λ) − σ₃Φ(λ)σ₃‖ for frames at γ and γ + π"""
    s3 = SIGMA3.m
    return float(np.max(np.abs(twisted.phi - s3 @ field.phi @ s3)))


def frame_for_normal(normal, tol: float = 1e-9) -> Quaternion:
    """
    A unit quaternion Φ with −Φ⁻¹𝕜Φ = N̂ for a unit vector N̂ ∈ ℝ³.

    With t = −N̂ as an imaginary unit quaternion, r = 𝟙 − 𝕜t satisfies
    r t r⁻¹ = 𝕜; the antipodal case t = −𝕜 is served by 𝕚.
    """
    n = np.asarray(normal, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > tol:
        raise ValueError(f"normal must be a unit vector, got norm {np.linalg.norm(n)!r}")
    t = embed_r3(-n)
    r = ONE - K * t
    norm = r.norm()
    if norm < 1e-8:
        return Quaternion.from_coefficients(0.0, 1.0, 0.0, 0.0)
    return r / norm


def frame_pair_for_sphere(F: Quaternion, N: Quaternion, gamma1: float) -> Tuple[Quaternion, Quaternion]:
    """
    (φ, φ′) with F = φ′⁻¹Mφ and N = −φ′⁻¹𝕜Mφ, M = exp(γ₁𝕜).

    F⁻¹N = −φ⁻¹𝕜φ is imaginary, so φ is a frame for it and φ′ = MφF⁻¹.
    """
    n_hat = project_r3(F.inverse() * N, tol=1e-9)
    n_hat = n_hat / np.linalg.norm(n_hat)
    phi = frame_for_normal(n_hat)
    phi_prime = exp_k(gamma1) * phi * F.inverse()
    return phi, phi_prime
