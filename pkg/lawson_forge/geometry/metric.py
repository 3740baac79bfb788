"""
Koenigs duality and the discrete conformal metric.

Metric products s·sᵢ between a net and its Christoffel dual, the vertex
function s they determine up to black-white rescaling, edge labelings, the
cross-ratio check and per-edge angle products.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from ..core.algebra import cross_ratio, embed_r3, embed_r4
from ..core.errors import (
    CrossRatioNotScalarError,
    DegenerateDualEdgeError,
    NonKoenigsError,
)
from .faces import face_points

logger = logging.getLogger(__name__)


def _edges(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Horizontal differences (M-1, N, d) and vertical differences (M, N-1, d)"""
    return points[1:, :] - points[:-1, :], points[:, 1:] - points[:, :-1]


@dataclass(frozen=True)
class MetricProducts:
    """s·s₁ on horizontal edges, shape (M-1, N), and s·s₂ on vertical edges, shape (M, N-1)"""
    horizontal: np.ndarray
    vertical: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.vertical.shape[0], self.horizontal.shape[1]

    def compatibility_defect(self) -> float:
        """Largest relative |(ss₁)(s₂s₁₂) − (ss₂)(s₁s₁₂)| over all quads"""
        h, v = self.horizontal, self.vertical
        if h.shape[1] < 2 or v.shape[0] < 2:
            return 0.0
        lhs = h[:, :-1] * h[:, 1:]
        rhs = v[:-1, :] * v[1:, :]
        return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(lhs), np.abs(rhs))))

    def max_relative_difference(self, other: "MetricProducts") -> float:
        worst = 0.0
        for a, b in ((self.horizontal, other.horizontal), (self.vertical, other.vertical)):
            if a.shape != b.shape:
                raise ValueError(f"metric products of different shapes {a.shape} and {b.shape}")
            if a.size:
                worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(np.abs(a), np.abs(b)))))
        return worst

    def scaled(self, factor: float) -> "MetricProducts":
        return MetricProducts(self.horizontal * factor, self.vertical * factor)


def metric_products(points: np.ndarray, dual: np.ndarray) -> MetricProducts:
    """s·sᵢ = ±‖dF₀ᵢ‖/‖dF*₀ᵢ‖, negative where the dual edge is anti-parallel"""
    dF1, dF2 = _edges(np.asarray(points, dtype=float))
    dS1, dS2 = _edges(np.asarray(dual, dtype=float))
    out = []
    for direction, (d, ds) in enumerate(((dF1, dS1), (dF2, dS2)), start=1):
        norms = np.linalg.norm(d, axis=-1)
        dual_norms = np.linalg.norm(ds, axis=-1)
        guard = 1e-14 * max(float(np.max(norms)) if norms.size else 0.0, 1.0)
        bad = np.argwhere(dual_norms <= guard)
        if bad.size:
            m, n = (int(i) for i in bad[0])
            raise DegenerateDualEdgeError((m, n), direction)
        sign = np.sign(np.sum(d * ds, axis=-1))
        out.append(sign * norms / dual_norms)
    return MetricProducts(out[0], out[1])


def extract_metric(mp: MetricProducts, s00: float = 1.0, tol: float = 1e-8) -> np.ndarray:
    """
    Vertex function s with s(0, 0) = s00 and s·sᵢ = mp on every edge.

    Built along the bottom row then up every column; the remaining edges are
    checked, which is the Koenigs condition on every quad.
    """
    if s00 == 0.0:
        raise ValueError("s(0, 0) must be nonzero")
    M, N = mp.shape
    for name, arr in (("horizontal", mp.horizontal), ("vertical", mp.vertical)):
        zero = np.argwhere(arr == 0.0)
        if zero.size:
            m, n = (int(i) for i in zero[0])
            raise NonKoenigsError((m, n), float("inf"))
    s = np.zeros((M, N))
    s[0, 0] = s00
    for m in range(M - 1):
        s[m + 1, 0] = mp.horizontal[m, 0] / s[m, 0]
    for n in range(N - 1):
        s[:, n + 1] = mp.vertical[:, n] / s[:, n]

    if M > 1:
        rel = np.abs(s[:-1, :] * s[1:, :] / mp.horizontal - 1.0)
        worst = np.unravel_index(int(np.argmax(rel)), rel.shape)
        if rel[worst] > tol:
            raise NonKoenigsError((int(worst[0]), int(worst[1])), float(rel[worst]))
    return s


def black_vertices(shape: Tuple[int, int]) -> np.ndarray:
    m, n = np.indices(shape)
    return (m + n) % 2 == 0


def black_white_rescale(s: np.ndarray, black: float, white: float) -> np.ndarray:
    """s ↦ black·s on (m + n) even, white·s elsewhere; edge products scale by black·white"""
    return np.where(black_vertices(s.shape), black * s, white * s)


def products_of(s: np.ndarray) -> MetricProducts:
    return MetricProducts(s[:-1, :] * s[1:, :], s[:, :-1] * s[:, 1:])


@dataclass(frozen=True)
class EdgeLabeling:
    """A = ‖dF₀₁‖²/(ss₁) per horizontal edge and B = ‖dF₀₂‖²/(ss₂) per vertical edge"""
    A_edges: np.ndarray   # (M-1, N)
    B_edges: np.ndarray   # (M, N-1)

    @staticmethod
    def _spread(arr: np.ndarray, axis: int) -> float:
        if arr.size == 0:
            return 0.0
        scale = np.maximum(np.max(np.abs(arr), axis=axis), np.finfo(float).tiny)
        return float(np.max(np.ptp(arr, axis=axis) / scale))

    @property
    def a_spread(self) -> float:
        """A must not change along a column of horizontal edges"""
        return self._spread(self.A_edges, axis=1)

    @property
    def b_spread(self) -> float:
        return self._spread(self.B_edges, axis=0)

    @property
    def A(self) -> np.ndarray:
        """One value per column m"""
        return np.mean(self.A_edges, axis=1)

    @property
    def B(self) -> np.ndarray:
        """One value per row n"""
        return np.mean(self.B_edges, axis=0)

    def passes(self, tol: float = 1e-8) -> bool:
        return self.a_spread <= tol and self.b_spread <= tol


def edge_labelings(points: np.ndarray, s: np.ndarray) -> EdgeLabeling:
    dF1, dF2 = _edges(np.asarray(points, dtype=float))
    mp = products_of(s)
    A = np.sum(dF1 ** 2, axis=-1) / mp.horizontal
    B = np.sum(dF2 ** 2, axis=-1) / mp.vertical
    return EdgeLabeling(A, B)


def _to_quaternion(p: np.ndarray):
    return embed_r3(p) if p.shape[0] == 3 else embed_r4(p)


def face_cross_ratio_real_check(points, tol: float = 1e-9) -> Tuple[complex, bool]:
    """
    Quaternionic cross-ratio of a face reduced to its scalar.

    Returns (x₀ + i‖Im‖, x₀ < 0); a circular face has a real cross-ratio and
    an embedded one a negative cross-ratio.
    """
    p = np.asarray(points, dtype=float)
    q = [_to_quaternion(p[i]) for i in range(4)]
    cr = cross_ratio(*q)
    x0, x1, x2, x3 = cr.coefficients
    imag = float(np.linalg.norm([x1, x2, x3]))
    magnitude = cr.norm()
    if imag > tol * magnitude:
        raise CrossRatioNotScalarError(imag / magnitude)
    return complex(x0, imag), x0 < 0


def net_cross_ratios(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Real cross-ratio of every face, shape (M-1, N-1)"""
    M, N = points.shape[0], points.shape[1]
    out = np.zeros((M - 1, N - 1))
    for m in range(M - 1):
        for n in range(N - 1):
            value, _ = face_cross_ratio_real_check(face_points(points, m, n), tol)
            out[m, n] = value.real
    return out


def edge_normal_products(points: np.ndarray, normals: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """⟨dF₀ᵢ, N⟩ with N taken at the edge's start vertex"""
    dF1, dF2 = _edges(np.asarray(points, dtype=float))
    N = np.asarray(normals, dtype=float)
    return np.sum(dF1 * N[:-1, :], axis=-1), np.sum(dF2 * N[:, :-1], axis=-1)


def edge_angle_cosines(points: np.ndarray, normals: np.ndarray) -> Dict[str, np.ndarray]:
    """
    Angle cosines of each edge at its start vertex F.

    cos θ = ⟨dF, N⟩/‖dF‖ against the Gauss map; cos χ = ⟨dF, F⟩/‖dF‖ against
    the position vector, meaningful for nets on the unit sphere.
    """
    F = np.asarray(points, dtype=float)
    dF1, dF2 = _edges(F)
    n1, n2 = edge_normal_products(F, normals)
    l1, l2 = np.linalg.norm(dF1, axis=-1), np.linalg.norm(dF2, axis=-1)
    return {
        "cos_theta_1": n1 / l1,
        "cos_theta_2": n2 / l2,
        "cos_chi_1": np.sum(dF1 * F[:-1, :], axis=-1) / l1,
        "cos_chi_2": np.sum(dF2 * F[:, :-1], axis=-1) / l2,
    }


def trapezoid_signs(mp: MetricProducts) -> Tuple[bool, bool]:
    """
    (crossing, embedded) classification of the quads (F, F₁, F*₁, F*) and (F, F₂, F*₂, F*).

    True when every horizontal product is negative (crossing trapezoids) and,
    respectively, every vertical product is positive (embedded ones).
    """
    crossing = bool(np.all(mp.horizontal < 0)) if mp.horizontal.size else True
    embedded = bool(np.all(mp.vertical > 0)) if mp.vertical.size else True
    if not (crossing and embedded):
        logger.info("trapezoid signs: crossing=%s embedded=%s", crossing, embedded)
    return crossing, embedded
