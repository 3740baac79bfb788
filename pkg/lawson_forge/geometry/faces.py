"""
Face geometry of quad nets in ℝ³ and ℝ⁴.

Planarity and circularity defects, signed and mixed areas of planar quads,
and the mixed-area mean and Gauss curvatures of a face with its parallel
Gauss-map face. Vertex order is always (F, F₁, F₁₂, F₂).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..core.errors import (
    DegenerateFaceAreaError,
    DegenerateFaceError,
    NotEdgeParallelError,
    PlanarityError,
)

logger = logging.getLogger(__name__)

PLANARITY_GUARD = 1e-8
AREA_GUARD = 1e-14


def _as_quad(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    if p.ndim != 2 or p.shape[0] != 4 or p.shape[1] not in (3, 4):
        raise ValueError(f"a quad needs 4 points in ℝ³ or ℝ⁴, got shape {p.shape}")
    return p


def _scale(p: np.ndarray) -> float:
    return float(np.max(np.linalg.norm(p[1:] - p[0], axis=1)))


def planarity_defect(points) -> float:
    """
    Volume of the parallelepiped on p₂−p₁, p₃−p₁, p₄−p₁ divided by scale³.

    The volume is the product of the singular values of the edge matrix, so
    round-off in a flat face stays at round-off level in both ℝ³ and ℝ⁴.
    """
    p = _as_quad(points)
    scale = _scale(p)
    if scale == 0.0:
        raise DegenerateFaceError("coincident points")
    d = p[1:] - p[0]
    volume = float(np.prod(np.linalg.svd(d, compute_uv=False)))
    return volume / scale ** 3


def circularity_defect(points) -> float:
    """Distance of p₄ to the circumcircle of p₁, p₂, p₃, relative to the circumradius"""
    p = _as_quad(points)
    a, b = p[1] - p[0], p[2] - p[0]
    gram = np.array([[a @ a, a @ b], [a @ b, b @ b]])
    if abs(np.linalg.det(gram)) <= 1e-14 * (a @ a) * (b @ b) or (a @ a) * (b @ b) == 0.0:
        raise DegenerateFaceError("collinear triple")
    x, y = np.linalg.solve(gram, 0.5 * np.array([a @ a, b @ b]))
    center = p[0] + x * a + y * b
    radius = float(np.linalg.norm(center - p[0]))

    w = p[3] - center
    coeffs = np.linalg.solve(gram, np.array([w @ a, w @ b]))
    w_par = coeffs[0] * a + coeffs[1] * b
    w_perp = w - w_par
    dist = np.hypot(np.linalg.norm(w_par) - radius, np.linalg.norm(w_perp))
    return float(dist / radius)


def face_defects(points) -> Tuple[float, float]:
    """(planarity, circularity); both vanish for a circular quad"""
    return planarity_defect(points), circularity_defect(points)


def _plane_basis(p: np.ndarray, normal: Optional[np.ndarray]) -> np.ndarray:
    """Orthonormal (e₁, e₂) spanning the face; in ℝ³ with e₁ × e₂ = normal"""
    e1 = p[1] - p[0]
    if normal is not None:
        n = normal / np.linalg.norm(normal)
        e1 = e1 - (e1 @ n) * n
        e1 = e1 / np.linalg.norm(e1)
        return np.stack([e1, np.cross(n, e1)])

    e1 = e1 / np.linalg.norm(e1)
    for k in (3, 2):
        e2 = p[k] - p[0]
        e2 = e2 - (e2 @ e1) * e1
        norm = np.linalg.norm(e2)
        if norm > 1e-12 * _scale(p):
            return np.stack([e1, e2 / norm])
    raise DegenerateFaceError("collinear triple")


@dataclass(frozen=True)
class PlanarQuad:
    """
    Planar quad with an orthonormal basis of its plane.

    In ℝ³ the basis is oriented by `normal`; without one, by the vertex order
    through (p₂ − p₁) × (p₄ − p₁). In ℝ⁴ the basis comes from Gram–Schmidt
    on the same two edges.
    """
    vertices: np.ndarray
    basis: np.ndarray
    planarity: float

    @classmethod
    def from_points(cls, points, normal=None, tol: float = PLANARITY_GUARD) -> "PlanarQuad":
        p = _as_quad(points)
        defect = planarity_defect(p)
        if defect > tol:
            raise PlanarityError(defect)
        n = None
        if normal is not None:
            if p.shape[1] != 3:
                raise ValueError("an orientation normal is only meaningful in ℝ³")
            n = np.asarray(normal, dtype=float)
        if p.shape[1] == 3 and n is None:
            n = np.cross(p[1] - p[0], p[3] - p[0])
            if np.linalg.norm(n) <= 1e-12 * _scale(p) ** 2:
                n = np.cross(p[2] - p[0], p[3] - p[1])
            if np.linalg.norm(n) == 0.0:
                raise DegenerateFaceError("collinear triple")
        if _scale(p) == 0.0:
            raise DegenerateFaceError("coincident points")
        basis = _plane_basis(p, n)
        for arr in (p, basis):
            arr.setflags(write=False)
        return cls(p, basis, defect)

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    @property
    def scale(self) -> float:
        return _scale(self.vertices)

    def coordinates(self, points=None) -> np.ndarray:
        """Plane coordinates of these (or other, parallel) vertices"""
        p = self.vertices if points is None else np.asarray(points, dtype=float)
        return p @ self.basis.T


def _shoelace(xy: np.ndarray) -> float:
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def signed_area(quad: PlanarQuad) -> float:
    return _shoelace(quad.coordinates())


def area_in_plane_of(quad: PlanarQuad, points) -> float:
    """Signed area of a parallel polygon measured in `quad`'s oriented plane"""
    return _shoelace(quad.coordinates(points))


def edge_parallel_defects(f, fp) -> np.ndarray:
    """Relative orthogonal residual of each edge of fp against the matching edge of f"""
    p, q = np.asarray(f, dtype=float), np.asarray(fp, dtype=float)
    out = np.zeros(4)
    for i in range(4):
        e = p[(i + 1) % 4] - p[i]
        ep = q[(i + 1) % 4] - q[i]
        ne, nep = np.linalg.norm(e), np.linalg.norm(ep)
        if ne == 0.0 or nep == 0.0:
            continue
        e_hat = e / ne
        out[i] = np.linalg.norm(ep - (ep @ e_hat) * e_hat) / nep
    return out


def _vertices(face) -> np.ndarray:
    if isinstance(face, PlanarQuad):
        return face.vertices
    return _as_quad(face)


def _check_parallel(f: PlanarQuad, fp: np.ndarray, tol: float) -> None:
    defects = edge_parallel_defects(f.vertices, fp)
    worst = int(np.argmax(defects))
    if defects[worst] > tol:
        raise NotEdgeParallelError(worst, float(defects[worst]))


def mixed_area(f: PlanarQuad, fp, tol: float = 1e-9) -> float:
    """A(f, f′) = ¼(A(f + f′) − A(f − f′)), both measured in f's oriented plane

    `fp` may be a PlanarQuad or raw vertices, so a face collapsed to a point
    is allowed.
    """
    q = _vertices(fp)
    if f.dimension != q.shape[1]:
        raise ValueError("faces live in different dimensions")
    _check_parallel(f, q, tol)
    plus = area_in_plane_of(f, f.vertices + q)
    minus = area_in_plane_of(f, f.vertices - q)
    return 0.25 * (plus - minus)


def steiner_defect(f: PlanarQuad, fp, eps: float) -> float:
    """|A(f + εf′) − A(f) − 2εA(f, f′) − ε²A(f′)| with every area in f's plane"""
    q = _vertices(fp)
    lhs = area_in_plane_of(f, f.vertices + eps * q)
    rhs = (signed_area(f) + 2 * eps * mixed_area(f, fp)
           + eps ** 2 * area_in_plane_of(f, q))
    return abs(lhs - rhs)


def curvatures(f_face: PlanarQuad, n_face, tol: float = 1e-9) -> Tuple[float, float]:
    """H = −A(F, N)/A(F) and K = A(N)/A(F)"""
    area = signed_area(f_face)
    if abs(area) <= AREA_GUARD * f_face.scale ** 2:
        raise DegenerateFaceAreaError(area)
    H = -mixed_area(f_face, n_face, tol) / area
    K = area_in_plane_of(f_face, _vertices(n_face)) / area
    return H, K


def face_points(points: np.ndarray, m: int, n: int) -> np.ndarray:
    """Vertices (F, F₁, F₁₂, F₂) of quad (m, n) of an (M, N, d) vertex array"""
    return np.stack([points[m, n], points[m + 1, n], points[m + 1, n + 1], points[m, n + 1]])


def net_face_defects(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Planarity and circularity defects of every face, each of shape (M-1, N-1)"""
    M, N = points.shape[0], points.shape[1]
    planar = np.zeros((M - 1, N - 1))
    circular = np.zeros((M - 1, N - 1))
    for m in range(M - 1):
        for n in range(N - 1):
            planar[m, n], circular[m, n] = face_defects(face_points(points, m, n))
    return planar, circular


def net_curvatures(points: np.ndarray, normals: np.ndarray,
                   tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray]:
    """Per-face (H, K) of a net and its Gauss map, each of shape (M-1, N-1)"""
    M, N = points.shape[0], points.shape[1]
    H = np.zeros((M - 1, N - 1))
    K = np.zeros((M - 1, N - 1))
    for m in range(M - 1):
        for n in range(N - 1):
            f = PlanarQuad.from_points(face_points(points, m, n))
            H[m, n], K[m, n] = curvatures(f, face_points(normals, m, n), tol)
    return H, K
