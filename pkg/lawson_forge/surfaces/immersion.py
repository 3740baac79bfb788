"""
Immersion formulas.

The CMC-1 net in ℝ³ with its Gauss map and Christoffel dual, the CMC/minimal
net in 𝕊³, and the rescaled nets of the sphere family, all read off vertex
frames of one lattice of Lax data.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.algebra import ONE, K, Quaternion, adjoint_array, exp_k, project_r3_array, project_r4_array
from ..core.errors import (
    AssociatedFamilyRequestError,
    InvalidSpectralAngleError,
    SphereRadiusOverflowError,
)
from ..core.frames import FrameWithDerivative, integrate_frame, integrate_frame_with_derivative
from ..core.lax import alpha_squared, beta_squared
from ..core.models import EUCLIDEAN_POINT, Ambient, LatticeLax, SpectralPoint

logger = logging.getLogger(__name__)


def quad_faces(width: int, height: int) -> List[Tuple[Tuple[int, int], ...]]:
    """Vertex index quadruples (F, F₁, F₁₂, F₂) of every elementary quad, row by row"""
    return [((m, n), (m + 1, n), (m + 1, n + 1), (m, n + 1))
            for n in range(height - 1) for m in range(width - 1)]


@dataclass(frozen=True)
class NetR3:
    """CMC-1 net F̂ with dual F̌ = F̂ + N̂ and unit Gauss map N̂; arrays are (M, N, 3)"""
    F_hat: np.ndarray
    F_check: np.ndarray
    N_hat: np.ndarray
    provenance: Dict[str, object] = field(default_factory=dict)

    ambient = Ambient.R3

    @property
    def shape(self) -> Tuple[int, int]:
        return self.F_hat.shape[0], self.F_hat.shape[1]

    @property
    def points(self) -> np.ndarray:
        return self.F_hat

    @property
    def normals(self) -> np.ndarray:
        return self.N_hat

    @property
    def faces(self):
        return quad_faces(*self.shape)

    @property
    def mean_curvature(self) -> float:
        return 1.0

    def dual(self) -> np.ndarray:
        return self.F_check


@dataclass(frozen=True)
class NetS3:
    """Net F in 𝕊³ with Gauss map N; arrays are (M, N, 4) with X₄ the 𝟙-coefficient"""
    F: np.ndarray
    N: np.ndarray
    gamma1: float
    negative_branch: bool = False
    provenance: Dict[str, object] = field(default_factory=dict)

    ambient = Ambient.S3

    @property
    def shape(self) -> Tuple[int, int]:
        return self.F.shape[0], self.F.shape[1]

    @property
    def points(self) -> np.ndarray:
        return self.F

    @property
    def normals(self) -> np.ndarray:
        return self.N

    @property
    def faces(self):
        return quad_faces(*self.shape)

    @property
    def mean_curvature(self) -> float:
        """cot 2γ₁; exactly 0 at γ₁ = π/4"""
        if abs(self.gamma1 - math.pi / 4) < 1e-15:
            return 0.0
        return math.cos(2 * self.gamma1) / math.sin(2 * self.gamma1)

    def dual(self) -> np.ndarray:
        """F* = F + N/H, or N for minimal nets"""
        H = self.mean_curvature
        if abs(H) < 1e-12:
            return self.N
        return self.F + self.N / H


@dataclass(frozen=True)
class SphereNet:
    """F^{γ₁} = ρF/sin 2γ₁ on the sphere of curvature κ = sin²(2γ₁)/ρ²"""
    F: np.ndarray
    N: np.ndarray
    gamma1: float
    scale: float = 1.0
    provenance: Dict[str, object] = field(default_factory=dict)

    ambient = Ambient.SPHERE

    @property
    def shape(self) -> Tuple[int, int]:
        return self.F.shape[0], self.F.shape[1]

    @property
    def points(self) -> np.ndarray:
        return self.F

    @property
    def normals(self) -> np.ndarray:
        return self.N

    @property
    def faces(self):
        return quad_faces(*self.shape)

    @property
    def radius(self) -> float:
        return self.scale / math.sin(2 * self.gamma1)

    @property
    def kappa(self) -> float:
        return 1.0 / self.radius ** 2

    @property
    def mean_curvature(self) -> float:
        if abs(self.gamma1 - math.pi / 4) < 1e-15:
            return 0.0
        return math.cos(2 * self.gamma1) / self.scale

    def dual(self) -> np.ndarray:
        H = self.mean_curvature
        if abs(H) < 1e-12:
            return self.N
        return self.F + self.N / H


def _provenance(lat: LatticeLax, **extra) -> Dict[str, object]:
    prov: Dict[str, object] = {"lattice": lat.digest(), "width": lat.width, "height": lat.height}
    prov.update(extra)
    return prov


def immerse_r3(fd: FrameWithDerivative, provenance: Optional[Dict[str, object]] = None) -> NetR3:
    """N̂ = −Φ⁻¹𝕜Φ, F̂ = −Φ⁻¹Φ̇ − ½N̂, F̌ = F̂ + N̂, all at γ = 0"""
    phi, dphi = fd.frame.phi, fd.dphi
    phi_inv = adjoint_array(phi)
    n_mat = -phi_inv @ K.m @ phi
    f_mat = -phi_inv @ dphi - 0.5 * n_mat
    N_hat = project_r3_array(n_mat)
    F_hat = project_r3_array(f_mat)
    prov = {"gamma": 0.0}
    prov.update(provenance or {})
    return NetR3(F_hat, F_hat + N_hat, N_hat, prov)


def immerse_r3_lattice(lat: LatticeLax, gamma: float = 0.0, base: Quaternion = ONE) -> NetR3:
    """Euclidean net of a lattice; only γ = 0 gives a circular Koenigs net"""
    if gamma != 0.0:
        raise AssociatedFamilyRequestError(gamma)
    fd = integrate_frame_with_derivative(lat, base)
    return immerse_r3(fd, _provenance(lat))


def immerse_s3(lat: LatticeLax, gamma1: float, negative_branch: bool = False,
               base: Tuple[Quaternion, Quaternion] = (ONE, ONE)) -> NetS3:
    """
    F = Φ(λ₁)⁻¹MΦ(λ₂), N = −Φ(λ₁)⁻¹𝕜MΦ(λ₂) with M = exp((γ₁−γ₂)/2·𝕜).

    λ₂ = λ₁⁻¹ by default; `negative_branch` selects λ₂ = −λ₁⁻¹. `base` is the
    pair (φ, φ′) of base frames at λ₂ and λ₁.
    """
    if not (0.0 < gamma1 < math.pi / 2):
        raise InvalidSpectralAngleError(gamma1)
    gamma2 = (math.pi - gamma1) if negative_branch else -gamma1
    phi_base, phi_prime_base = base
    frame1 = integrate_frame(lat, SpectralPoint(gamma1), phi_prime_base)
    frame2 = integrate_frame(lat, SpectralPoint(gamma2), phi_base)
    M = exp_k((gamma1 - gamma2) / 2).m
    inv1 = adjoint_array(frame1.phi)
    f_mat = inv1 @ M @ frame2.phi
    n_mat = -inv1 @ K.m @ M @ frame2.phi
    prov = _provenance(lat, gamma=gamma1, negative_branch=negative_branch)
    return NetS3(project_r4_array(f_mat), project_r4_array(n_mat), gamma1, negative_branch, prov)


def scale_to_sphere(net: NetS3, scale: float = 1.0) -> SphereNet:
    """F^{γ₁} = ρF/sin(2γ₁); N is unchanged"""
    sin2 = math.sin(2 * net.gamma1)
    if not sin2 > 1e-12:
        raise SphereRadiusOverflowError(net.gamma1)
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale!r}")
    prov = dict(net.provenance)
    prov["scale"] = scale
    return SphereNet(net.F * (scale / sin2), net.N, net.gamma1, scale, prov)


def expected_edge_lengths_r3(lat: LatticeLax) -> Tuple[np.ndarray, np.ndarray]:
    """‖dF̂₀₁‖² = 4u²/α(1)² and ‖dF̂₀₂‖² = 4v²/β(1)²"""
    s = EUCLIDEAN_POINT
    h = np.array([[4 * lat.u[m, n] ** 2 / alpha_squared(lat.horizontal(m, n), s)
                   for n in range(lat.height)] for m in range(lat.width - 1)]).reshape(lat.width - 1, lat.height)
    v = np.array([[4 * lat.v[m, n] ** 2 / beta_squared(lat.vertical(m, n), s)
                   for n in range(lat.height - 1)] for m in range(lat.width)]).reshape(lat.width, lat.height - 1)
    return h, v


def expected_edge_lengths_s3(lat: LatticeLax, gamma1: float) -> Tuple[np.ndarray, np.ndarray]:
    """‖dF₀₁‖² = 4u² sin²(2γ₁)/α(λ₁)², ‖dF₀₂‖² = 4v² sin²(2γ₁)/β(λ₁)²"""
    s = SpectralPoint(gamma1)
    sin2 = math.sin(2 * gamma1) ** 2
    h = np.array([[4 * lat.u[m, n] ** 2 * sin2 / alpha_squared(lat.horizontal(m, n), s)
                   for n in range(lat.height)] for m in range(lat.width - 1)]).reshape(lat.width - 1, lat.height)
    v = np.array([[4 * lat.v[m, n] ** 2 * sin2 / beta_squared(lat.vertical(m, n), s)
                   for n in range(lat.height - 1)] for m in range(lat.width)]).reshape(lat.width, lat.height - 1)
    return h, v


def expected_cross_ratios(lat: LatticeLax, s: SpectralPoint) -> np.ndarray:
    """−β²/α² per quad at the construction's spectral point, shape (M-1, N-1)"""
    out = np.zeros((lat.width - 1, lat.height - 1))
    for (m, n), q in lat.quads():
        out[m, n] = -beta_squared(q.V, s) / alpha_squared(q.U, s)
    return out


def christoffel_dual_r3(net: NetR3) -> np.ndarray:
    """F̌ = F̂ + N̂"""
    return net.F_check


def christoffel_dual_s3(net) -> np.ndarray:
    """F* = F + N/H for H ≠ 0, else N; works for NetS3 and SphereNet"""
    return net.dual()
