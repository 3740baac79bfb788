"""
Recovery of Lax data from a net and its Gauss map.

Every edge determines its (a, u) or (b, v) once the frame at its start
vertex is known: the metric product fixes u or v, the edge length fixes the
normalizer, and the edge read in the frame fixes a or b. Frames are carried
along with the recovered Lax matrices, and frames arriving at a vertex along
different paths must agree.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..core.algebra import I, J, K, Quaternion, embed_r3, embed_r4, exp_k, project_r3, project_r4
from ..core.errors import (
    DegenerateDualEdgeError,
    DegenerateFaceAreaError,
    DegenerateFaceError,
    InconsistentGaussMapError,
    LawsonForgeError,
    NotCMCQuadError,
    NotEdgeParallelError,
    NotIntegrableError,
    NotOnSphereError,
    TrapezoidOrientationError,
)
from ..core.frames import frame_for_normal, frame_pair_for_sphere
from ..core.lax import CHECK_POINTS, alpha, beta, commutation_residual, eval_U, eval_V, labeling_defects
from ..core.models import (
    DEFAULT_TOLERANCES,
    EUCLIDEAN_POINT,
    Ambient,
    LatticeLax,
    QuadLax,
    SpectralPoint,
    Tolerances,
    UEdgeData,
    VEdgeData,
)
from ..geometry.faces import PlanarQuad, curvatures, face_points

logger = logging.getLogger(__name__)

FramePair = Tuple[Quaternion, Quaternion]


@dataclass(frozen=True)
class _Setting:
    """Ambient-specific pieces of the edge formulas"""
    ambient: Ambient
    gamma1: float
    H: float
    tol: Tolerances

    @property
    def minimal(self) -> bool:
        return self.ambient is Ambient.S3 and self.H == 0.0

    @property
    def point(self) -> SpectralPoint:
        return EUCLIDEAN_POINT if self.ambient is Ambient.R3 else SpectralPoint(self.gamma1)

    @property
    def conjugate_point(self) -> SpectralPoint:
        return EUCLIDEAN_POINT if self.ambient is Ambient.R3 else SpectralPoint(-self.gamma1)

    @property
    def sin2(self) -> float:
        return 1.0 if self.ambient is Ambient.R3 else math.sin(2 * self.gamma1)

    @property
    def cos2(self) -> float:
        return 0.0 if self.ambient is Ambient.R3 else math.cos(2 * self.gamma1)

    @property
    def product_factor(self) -> float:
        """ss₁ = −u²·factor and ss₂ = v²·factor"""
        if self.ambient is Ambient.R3 or self.minimal:
            return 1.0
        return self.cos2

    def quaternion(self, x: np.ndarray) -> Quaternion:
        return embed_r3(x) if self.ambient is Ambient.R3 else embed_r4(x)

    def dual_edge(self, dF: np.ndarray, dN: np.ndarray) -> np.ndarray:
        if self.ambient is Ambient.R3:
            return dF + dN
        if self.minimal:
            return dN
        return dF + dN / self.H

    def mismatch(self, detail: str, defect: float) -> LawsonForgeError:
        if self.ambient is Ambient.R3:
            return InconsistentGaussMapError(defect)
        return NotCMCQuadError(f"{detail} (defect {defect:.3e})")


def _metric_product(setting: _Setting, dF: np.ndarray, dN: np.ndarray,
                    location: Tuple[int, int], direction: int) -> float:
    dual = setting.dual_edge(dF, dN)
    length, dual_length = np.linalg.norm(dF), np.linalg.norm(dual)
    if dual_length <= 1e-14 * max(length, 1.0):
        raise DegenerateDualEdgeError(location, direction)
    return float(np.sign(dF @ dual) * length / dual_length)


def _check_edge_angles(setting: _Setting, dF, f0, n0, cos_theta: float, cos_chi: float,
                       location: Tuple[int, int]) -> None:
    """cos θ = ⟨dF, N⟩/‖dF‖ and cos χ = ⟨dF, F⟩/‖dF‖ must match the Lax data"""
    length = float(np.linalg.norm(dF))
    for name, measured, expected in (("θ", float(dF @ n0) / length, cos_theta),
                                     ("χ", float(dF @ f0) / length, cos_chi)):
        if abs(measured - expected) > setting.tol.angle:
            raise NotCMCQuadError(f"angle {name} on edge {location} is {measured:.12g}, expected {expected:.12g}")


def _recover_u(setting: _Setting, dF, dN, f0, n0, phi: Quaternion, phi_prime: Quaternion,
               location: Tuple[int, int]) -> UEdgeData:
    length = float(np.linalg.norm(dF))
    if length == 0.0:
        raise DegenerateFaceError("zero-length edge")
    ss = _metric_product(setting, dF, dN, location, 1)
    u2 = -ss / setting.product_factor
    if not u2 > 0:
        raise TrapezoidOrientationError(1, ss)
    u = math.sqrt(u2)
    al = 2 * u * setting.sin2 / length
    X = (phi_prime * setting.quaternion(dF) * phi.inverse()).m
    e = UEdgeData(X[1, 0] * al / (1j * length), u)

    # X = −k·𝒰(λ)†𝕚 with k = ‖dF‖
    model = -length * (eval_U(e, setting.point).adjoint() * I).m
    defect = float(np.max(np.abs(X - model))) / length
    if defect > setting.tol.gauss_map:
        raise setting.mismatch(f"horizontal edge {location} off the Lax form", defect)
    if setting.ambient is not Ambient.R3:
        _check_edge_angles(setting, dF, f0, n0, (1 / u + setting.cos2 * u) / al,
                           -u * setting.sin2 / alpha(e, setting.point), location)
    return e


def _recover_v(setting: _Setting, dF, dN, f0, n0, phi: Quaternion, phi_prime: Quaternion,
               location: Tuple[int, int]) -> VEdgeData:
    length = float(np.linalg.norm(dF))
    if length == 0.0:
        raise DegenerateFaceError("zero-length edge")
    ss = _metric_product(setting, dF, dN, location, 2)
    v2 = ss / setting.product_factor
    if not v2 > 0:
        raise TrapezoidOrientationError(2, ss)
    v = math.sqrt(v2)
    be = 2 * v * setting.sin2 / length
    X = (phi_prime * setting.quaternion(dF) * phi.inverse()).m
    e = VEdgeData(X[1, 0] * be / length, v)

    # X = k·𝒱(λ)†𝕛
    model = length * (eval_V(e, setting.point).adjoint() * J).m
    defect = float(np.max(np.abs(X - model))) / length
    if defect > setting.tol.gauss_map:
        raise setting.mismatch(f"vertical edge {location} off the Lax form", defect)
    if setting.ambient is not Ambient.R3:
        _check_edge_angles(setting, dF, f0, n0, -(1 / v - setting.cos2 * v) / be,
                           -v * setting.sin2 / beta(e, setting.point), location)
    return e


@dataclass(frozen=True)
class ReconstructionReport:
    """Recovered lattice with its per-quad residuals and the gauge that produced it"""
    lattice: LatticeLax
    ambient: Ambient
    gamma1: Optional[float]
    mean_curvature: float
    commutation: np.ndarray      # (M-1, N-1)
    labeling: np.ndarray         # (M-1, N-1)
    frame_consistency: float
    base: FramePair
    transposed: bool = False

    @property
    def max_residual(self) -> float:
        arrays = [a for a in (self.commutation, self.labeling) if a.size]
        worst = max((float(np.max(a)) for a in arrays), default=0.0)
        return max(worst, self.frame_consistency)

    def passes(self, tol: float = 1e-8) -> bool:
        return self.max_residual <= tol


def _check_sphere(points: np.ndarray, normals: np.ndarray, tol: Tolerances) -> None:
    norms = np.linalg.norm(points, axis=-1)
    normal_norms = np.linalg.norm(normals, axis=-1)
    orth = np.abs(np.sum(points * normals, axis=-1))
    defect = float(max(np.max(np.abs(norms - 1)), np.max(np.abs(normal_norms - 1)), np.max(orth)))
    if defect > tol.on_sphere:
        raise NotOnSphereError(defect)


def _gauss_map_mismatch(ambient: Ambient, exc: LawsonForgeError) -> LawsonForgeError:
    """Error raised for a Gauss map that is not edge-parallel to its quad or collapses it"""
    if ambient is Ambient.R3:
        defect = getattr(exc, "defect", None)
        return InconsistentGaussMapError(defect if defect is not None else math.inf)
    return NotCMCQuadError(str(exc))


def _face_curvatures(points: np.ndarray, normals: np.ndarray, ambient: Ambient, located: bool,
                     tol: Tolerances) -> np.ndarray:
    M, N = points.shape[0], points.shape[1]
    H = np.zeros((M - 1, N - 1))
    for m in range(M - 1):
        for n in range(N - 1):
            try:
                f = PlanarQuad.from_points(face_points(points, m, n))
                H[m, n], _ = curvatures(f, face_points(normals, m, n), tol.parallel)
            except LawsonForgeError as exc:
                if located:
                    raise NotIntegrableError((m, n), str(exc)) from exc
                if isinstance(exc, (NotEdgeParallelError, DegenerateFaceAreaError)):
                    raise _gauss_map_mismatch(ambient, exc) from exc
                raise
    return H


def _measure_setting(points, normals, ambient: Ambient, gamma1: Optional[float],
                     located: bool, tol: Tolerances) -> _Setting:
    if ambient is Ambient.R3:
        H = _face_curvatures(points, normals, ambient, located, tol)
        if H.size:
            worst = np.unravel_index(int(np.argmax(np.abs(H - 1.0))), H.shape)
            defect = float(abs(H[worst] - 1.0))
            if defect > tol.reconstruct_curvature:
                if located:
                    raise NotIntegrableError((int(worst[0]), int(worst[1])),
                                             f"mean curvature {H[worst]:.12g} is not 1")
                raise InconsistentGaussMapError(defect)
        return _Setting(Ambient.R3, 0.0, 1.0, tol)

    _check_sphere(points, normals, tol)
    if gamma1 is None:
        H = _face_curvatures(points, normals, ambient, located, tol)
        if not H.size:
            raise NotCMCQuadError("no face to measure the mean curvature on; pass gamma1")
        ref = float(H.flat[0])
        worst = np.unravel_index(int(np.argmax(np.abs(H - ref))), H.shape)
        if abs(H[worst] - ref) > tol.reconstruct_curvature:
            detail = f"mean curvature {H[worst]:.12g} differs from {ref:.12g}"
            if located:
                raise NotIntegrableError((int(worst[0]), int(worst[1])), detail)
            raise NotCMCQuadError(detail)
        H_measured = float(np.mean(H))
        if abs(H_measured) < 1e-9:
            gamma1, H_measured = math.pi / 4, 0.0
        else:
            gamma1 = 0.5 * math.atan2(1.0, H_measured)
    elif not (0.0 < gamma1 < math.pi / 2):
        raise NotCMCQuadError(f"γ₁ = {gamma1!r} outside (0, π/2)")
    if abs(gamma1 - math.pi / 4) < 1e-15:
        H_exact = 0.0
    else:
        H_exact = math.cos(2 * gamma1) / math.sin(2 * gamma1)
    logger.debug("reconstructing in 𝕊³ with γ₁=%.15g (H=%.15g)", gamma1, H_exact)
    return _Setting(Ambient.S3, gamma1, H_exact, tol)


def _base_frames(setting: _Setting, F0: np.ndarray, N0: np.ndarray,
                 base) -> FramePair:
    tol = setting.tol
    if setting.ambient is Ambient.R3:
        phi = base if base is not None else frame_for_normal(N0 / np.linalg.norm(N0))
        if isinstance(phi, tuple):
            phi = phi[0]
        predicted = project_r3(-(phi.inverse() * K * phi), tol=1e-9)
        defect = float(np.max(np.abs(predicted - N0)))
        if defect > tol.gauss_map:
            raise InconsistentGaussMapError(defect)
        return phi, phi

    if base is None:
        phi, phi_prime = frame_pair_for_sphere(embed_r4(F0), embed_r4(N0), setting.gamma1)
    else:
        phi, phi_prime = base
    M = exp_k(setting.gamma1)
    F_pred = project_r4(phi_prime.inverse() * M * phi, tol=1e-9)
    N_pred = project_r4(-(phi_prime.inverse() * K * M * phi), tol=1e-9)
    defect = float(max(np.max(np.abs(F_pred - F0)), np.max(np.abs(N_pred - N0))))
    if defect > tol.gauss_map:
        raise NotCMCQuadError(f"base frames do not represent the base vertex (defect {defect:.3e})")
    return phi, phi_prime


def _quad_location(kind: str, m: int, n: int, M: int, N: int) -> Tuple[int, int]:
    if kind == "h":
        return min(m, max(M - 2, 0)), min(max(n - 1, 0), max(N - 2, 0))
    return min(max(m - 1, 0), max(M - 2, 0)), min(n, max(N - 2, 0))


def _reconstruct(points: np.ndarray, normals: np.ndarray, setting: _Setting, base,
                 located: bool) -> Tuple[LatticeLax, FramePair, float]:
    M, N = points.shape[0], points.shape[1]
    tol = setting.tol
    phi0, phi_prime0 = _base_frames(setting, points[0, 0], normals[0, 0], base)
    s1, s2 = setting.point, setting.conjugate_point

    phi = np.empty((M, N), dtype=object)
    phi_prime = np.empty((M, N), dtype=object)
    phi[0, 0], phi_prime[0, 0] = phi0, phi_prime0
    a = np.zeros((M - 1, N), dtype=complex)
    u = np.ones((M - 1, N))
    b = np.zeros((M, N - 1), dtype=complex)
    v = np.ones((M, N - 1))
    consistency = 0.0

    def edge(kind: str, m: int, n: int):
        if kind == "h":
            p1, q1 = points[m + 1, n], normals[m + 1, n]
        else:
            p1, q1 = points[m, n + 1], normals[m, n + 1]
        dF = p1 - points[m, n]
        dN = q1 - normals[m, n]
        recover = _recover_u if kind == "h" else _recover_v
        try:
            return recover(setting, dF, dN, points[m, n], normals[m, n], phi[m, n], phi_prime[m, n],
                           (m, n))
        except (InconsistentGaussMapError, NotCMCQuadError, DegenerateFaceError) as exc:
            if located:
                raise NotIntegrableError(_quad_location(kind, m, n, M, N), str(exc)) from exc
            raise

    def transport(e, kind: str, m: int, n: int) -> FramePair:
        evaluate = eval_U if kind == "h" else eval_V
        return evaluate(e, s2) * phi[m, n], evaluate(e, s1) * phi_prime[m, n]

    for m in range(M - 1):
        e = edge("h", m, 0)
        a[m, 0], u[m, 0] = e.a, e.u
        phi[m + 1, 0], phi_prime[m + 1, 0] = transport(e, "h", m, 0)
    for n in range(N - 1):
        for m in range(M):
            e = edge("v", m, n)
            b[m, n], v[m, n] = e.b, e.v
            phi[m, n + 1], phi_prime[m, n + 1] = transport(e, "v", m, n)
    for n in range(1, N):
        for m in range(M - 1):
            e = edge("h", m, n)
            a[m, n], u[m, n] = e.a, e.u
            arrived, arrived_prime = transport(e, "h", m, n)
            disagreement = max(float(np.max(np.abs(arrived.m - phi[m + 1, n].m))),
                               float(np.max(np.abs(arrived_prime.m - phi_prime[m + 1, n].m))))
            consistency = max(consistency, disagreement)
            if disagreement > tol.reconstruct_consistency:
                raise NotIntegrableError((m, n - 1), f"frames disagree by {disagreement:.3e}")
    return LatticeLax(M, N, a, u, b, v), (phi0, phi_prime0), consistency


def _residuals(lat: LatticeLax, setting: _Setting) -> Tuple[np.ndarray, np.ndarray]:
    points = CHECK_POINTS
    if setting.ambient is Ambient.S3:
        points = points + (setting.point, setting.conjugate_point)
    commutation = np.zeros((lat.width - 1, lat.height - 1))
    labeling = np.zeros((lat.width - 1, lat.height - 1))
    for (m, n), q in lat.quads():
        commutation[m, n] = commutation_residual(q, points)
        labeling[m, n] = max(labeling_defects(q))
    return commutation, labeling


def _as_net(points, normals, dim: int) -> Tuple[np.ndarray, np.ndarray]:
    p = np.asarray(points, dtype=float)
    q = np.asarray(normals, dtype=float)
    if p.ndim != 3 or p.shape[-1] != dim or q.shape != p.shape:
        raise ValueError(f"expected matching (M, N, {dim}) vertex and normal arrays, "
                         f"got {p.shape} and {q.shape}")
    return p, q


def _quad_as_net(points, normals, dim: int) -> Tuple[np.ndarray, np.ndarray]:
    """(F, F₁, F₁₂, F₂) rearranged as a 2×2 vertex grid"""
    p = np.asarray(points, dtype=float)
    q = np.asarray(normals, dtype=float)
    if p.shape != (4, dim) or q.shape != (4, dim):
        raise ValueError(f"a quad needs 4 points and 4 normals in dimension {dim}")
    order = [[0, 3], [1, 2]]
    return p[order], q[order]


def reconstruct_quad_r3(points, normals, frame: Optional[Quaternion] = None,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> QuadLax:
    """Lax data of one CMC-1 quad with Gauss map; `frame` is Φ at F"""
    p, q = _quad_as_net(points, normals, 3)
    setting = _measure_setting(p, q, Ambient.R3, None, False, tol)
    lat, _, _ = _reconstruct(p, q, setting, frame, located=False)
    return lat.quad(0, 0)


def reconstruct_quad_s3(points, normals, frames: Optional[FramePair] = None,
                        tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[QuadLax, float]:
    """Lax data and γ₁ of one CMC quad in 𝕊³; `frames` is (φ, φ′) at F"""
    p, q = _quad_as_net(points, normals, 4)
    setting = _measure_setting(p, q, Ambient.S3, None, False, tol)
    lat, _, _ = _reconstruct(p, q, setting, frames, located=False)
    return lat.quad(0, 0), setting.gamma1


def reconstruct_net(points, normals, ambient: Ambient, base=None,
                    gamma1: Optional[float] = None,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> ReconstructionReport:
    """
    Recover the whole lattice of a net with its Gauss map.

    `base` is Φ at (0, 0) in ℝ³ or the pair (φ, φ′) in 𝕊³; by default it is
    built from the base vertex. Nets whose two directions are swapped relative
    to the crossing/embedded trapezoid convention are transposed first.
    """
    if ambient is Ambient.SPHERE:
        raise ValueError("rescale sphere nets to the unit 𝕊³ before reconstruction")
    p, q = _as_net(points, normals, 3 if ambient is Ambient.R3 else 4)
    setting = _measure_setting(p, q, ambient, gamma1, True, tol)

    transposed = False
    if p.shape[0] > 1 and p.shape[1] > 1:
        h = _metric_product(setting, p[1, 0] - p[0, 0], q[1, 0] - q[0, 0], (0, 0), 1)
        w = _metric_product(setting, p[0, 1] - p[0, 0], q[0, 1] - q[0, 0], (0, 0), 2)
        if h / setting.product_factor > 0 and w / setting.product_factor < 0:
            logger.warning("net directions follow the opposite trapezoid convention; transposing")
            p, q = np.swapaxes(p, 0, 1), np.swapaxes(q, 0, 1)
            transposed = True

    lat, frames, consistency = _reconstruct(p, q, setting, base, located=True)
    commutation, labeling = _residuals(lat, setting)
    logger.info("reconstructed %dx%d lattice (max commutation residual %.3e)",
                lat.width, lat.height, float(np.max(commutation)) if commutation.size else 0.0)
    return ReconstructionReport(
        lattice=lat,
        ambient=ambient,
        gamma1=None if ambient is Ambient.R3 else setting.gamma1,
        mean_curvature=setting.H,
        commutation=commutation,
        labeling=labeling,
        frame_consistency=consistency,
        base=frames,
        transposed=transposed,
    )
