"""
Data models for lawson-forge.

Edge-based Lax data, spectral points, lattices of Lax data, Cauchy data and
the tolerance configuration shared by every module.
"""

import hashlib
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Iterator, List, Tuple

import numpy as np


class Ambient(Enum):
    """Ambient space of a net"""
    R3 = "r3"
    S3 = "s3"
    SPHERE = "sphere"


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral parameter λ = e^{iγ}, stored through γ so that |λ| = 1 exactly"""
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"spectral angle must be finite, got {self.gamma!r}")

    @property
    def lam(self) -> complex:
        return complex(math.cos(self.gamma), math.sin(self.gamma))

    @property
    def cos2(self) -> float:
        """λ² + λ⁻² = 2 cos 2γ, halved"""
        return math.cos(2.0 * self.gamma)


EUCLIDEAN_POINT = SpectralPoint(0.0)


@dataclass(frozen=True)
class UEdgeData:
    """Lax content of a horizontal edge"""
    a: complex
    u: float

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "u", float(self.u))
        if not (math.isfinite(self.a.real) and math.isfinite(self.a.imag) and math.isfinite(self.u)):
            raise ValueError(f"non-finite U edge data {self!r}")
        if self.u <= 0:
            raise ValueError(f"u must be positive, got {self.u!r}")

    @property
    def label(self) -> float:
        """|a|² + u² + u⁻², the λ-independent part of α²"""
        return abs(self.a) ** 2 + self.u ** 2 + self.u ** -2


@dataclass(frozen=True)
class VEdgeData:
    """Lax content of a vertical edge"""
    b: complex
    v: float

    def __post_init__(self):
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "v", float(self.v))
        if not (math.isfinite(self.b.real) and math.isfinite(self.b.imag) and math.isfinite(self.v)):
            raise ValueError(f"non-finite V edge data {self!r}")
        if self.v <= 0:
            raise ValueError(f"v must be positive, got {self.v!r}")

    @property
    def label(self) -> float:
        """|b|² + v² + v⁻², the λ-independent part of β²"""
        return abs(self.b) ** 2 + self.v ** 2 + self.v ** -2

    @property
    def euclidean_degenerate(self) -> bool:
        """β(1) = 0 exactly when b = 0 and v = 1"""
        return self.label - 2.0 <= 0.0


@dataclass(frozen=True)
class QuadLax:
    """Lax data on one elementary quad (F, F₁, F₁₂, F₂)"""
    U: UEdgeData    # edge 0 → 1
    V: VEdgeData    # edge 0 → 2
    Up: UEdgeData   # edge 2 → 12
    Vp: VEdgeData   # edge 1 → 12


@dataclass(frozen=True)
class CauchyData:
    """Initial data: the bottom row of horizontal edges and the left column of vertical edges"""
    row0: Tuple[UEdgeData, ...]
    col0: Tuple[VEdgeData, ...]

    def __post_init__(self):
        object.__setattr__(self, "row0", tuple(self.row0))
        object.__setattr__(self, "col0", tuple(self.col0))

    @property
    def width(self) -> int:
        return len(self.row0) + 1

    @property
    def height(self) -> int:
        return len(self.col0) + 1

    @classmethod
    def constant(cls, width: int, height: int, a: complex = 1.0, u: float = 1.0,
                 b: complex = 1.0, v: float = 1.0) -> "CauchyData":
        if width < 1 or height < 1:
            raise ValueError("window dimensions must be at least 1")
        return cls(tuple(UEdgeData(a, u) for _ in range(width - 1)),
                   tuple(VEdgeData(b, v) for _ in range(height - 1)))

    @classmethod
    def random(cls, width: int, height: int, seed: int = 0, a_abs_max: float = 0.6,
               u_range: Tuple[float, float] = (0.75, 1.35),
               v_range: Tuple[float, float] = (0.75, 1.35)) -> "CauchyData":
        """Reproducible random admissible data; numpy's Generator keeps seeds portable"""
        if width < 1 or height < 1:
            raise ValueError("window dimensions must be at least 1")
        rng = np.random.default_rng(seed)

        def draw_complex() -> complex:
            radius = a_abs_max * math.sqrt(rng.uniform())
            angle = rng.uniform(0.0, 2.0 * math.pi)
            return complex(radius * math.cos(angle), radius * math.sin(angle))

        row0 = tuple(UEdgeData(draw_complex(), rng.uniform(*u_range)) for _ in range(width - 1))
        col0 = tuple(VEdgeData(draw_complex(), rng.uniform(*v_range)) for _ in range(height - 1))
        return cls(row0, col0)

    def euclidean_degenerate_edges(self) -> List[Tuple[int, int]]:
        return [(0, n) for n, e in enumerate(self.col0) if e.euclidean_degenerate]


@dataclass(frozen=True)
class LatticeLax:
    """
    Lax data on every edge of an M×N window.

    Horizontal edge (m, n) joins vertex (m, n) to (m+1, n); vertical edge
    (m, n) joins (m, n) to (m, n+1). Arrays are indexed [m, n].
    """
    width: int
    height: int
    a: np.ndarray   # complex, (M-1, N)
    u: np.ndarray   # real, (M-1, N)
    b: np.ndarray   # complex, (M, N-1)
    v: np.ndarray   # real, (M, N-1)

    def __post_init__(self):
        M, N = self.width, self.height
        expected = {"a": (M - 1, N), "u": (M - 1, N), "b": (M, N - 1), "v": (M, N - 1)}
        for name, shape in expected.items():
            arr = np.array(getattr(self, name), dtype=complex if name in "ab" else float)
            if arr.shape != shape:
                raise ValueError(f"lattice array {name} has shape {arr.shape}, expected {shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"lattice array {name} holds non-finite values")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if np.any(self.u <= 0) or np.any(self.v <= 0):
            raise ValueError("u and v must be positive on every edge")

    def horizontal(self, m: int, n: int) -> UEdgeData:
        return UEdgeData(self.a[m, n], self.u[m, n])

    def vertical(self, m: int, n: int) -> VEdgeData:
        return VEdgeData(self.b[m, n], self.v[m, n])

    def quad(self, m: int, n: int) -> QuadLax:
        return QuadLax(self.horizontal(m, n), self.vertical(m, n),
                       self.horizontal(m, n + 1), self.vertical(m + 1, n))

    def quads(self) -> Iterator[Tuple[Tuple[int, int], QuadLax]]:
        for n in range(self.height - 1):
            for m in range(self.width - 1):
                yield (m, n), self.quad(m, n)

    @property
    def cauchy(self) -> CauchyData:
        return CauchyData(tuple(self.horizontal(m, 0) for m in range(self.width - 1)),
                          tuple(self.vertical(0, n) for n in range(self.height - 1)))

    def digest(self) -> str:
        """Content hash used as provenance for derived nets"""
        h = hashlib.sha256()
        h.update(f"{self.width}x{self.height}".encode())
        for arr in (self.a, self.u, self.b, self.v):
            h.update(np.ascontiguousarray(arr).tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds; defaults are the documented acceptance tolerances"""
    compare: float = 1e-10
    imaginary: float = 1e-12
    quaternion_structure: float = 1e-12
    singular: float = 1e-14
    determinant: float = 1e-12
    uu_vv: float = 1e-10
    commutation: float = 1e-9
    solver_residual: float = 1e-10
    labeling: float = 1e-9
    frame: float = 1e-11
    frame_derivative: float = 1e-9
    planarity: float = 1e-9
    circularity: float = 1e-9
    parallel: float = 1e-9
    curvature: float = 1e-8
    edge_length: float = 1e-10
    cross_ratio: float = 1e-9
    christoffel: float = 1e-10
    unit_norm: float = 1e-12
    metric: float = 1e-8
    labeling_spread: float = 1e-8
    angle: float = 1e-9
    gauss_map: float = 1e-9
    reconstruct_curvature: float = 1e-6
    reconstruct_consistency: float = 1e-8
    calapso: float = 1e-10
    pole: float = 1e-9
    on_sphere: float = 1e-9

    def scaled(self, factor: float) -> "Tolerances":
        """Uniformly relaxed (factor > 1) or tightened copy"""
        if not (factor > 0 and math.isfinite(factor)):
            raise ValueError(f"tolerance factor must be positive, got {factor!r}")
        return replace(self, **{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT_TOLERANCES = Tolerances()
