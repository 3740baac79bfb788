"""
Wavefront OBJ export.

ℝ³ nets are written as they are; nets in 𝕊³ (or on a sphere) are first sent
to ℝ³ by stereographic projection from (0, 0, 0, −1).
"""

import logging
from typing import List

import numpy as np

from ..core.errors import PoleProximityError
from ..core.models import Ambient
from .net_loader import NetFile, quad_indices

logger = logging.getLogger(__name__)

POLE_GUARD = 1e-9


def stereographic(points: np.ndarray, radius: float = 1.0, guard: float = POLE_GUARD) -> np.ndarray:
    """(X₁, X₂, X₃)/(1 + X₄) on the unit sphere; sphere nets are normalized by `radius` first"""
    p = np.asarray(points, dtype=float).reshape(-1, 4) / radius
    denom = 1.0 + p[:, 3]
    close = np.flatnonzero(denom < guard)
    if close.size:
        raise PoleProximityError(int(close[0]))
    return p[:, :3] / denom[:, None]


def _format(x: float) -> str:
    return "%.17g" % x


class ObjExporter:
    """Turns net files into OBJ text"""

    @staticmethod
    def vertices_of(net_file: NetFile) -> np.ndarray:
        """Vertex positions in ℝ³, listed in net-file order"""
        M, N = net_file.shape
        flat = net_file.vertices.transpose(1, 0, 2).reshape(M * N, -1)
        if net_file.ambient is Ambient.R3:
            return flat
        radius = float(np.linalg.norm(flat[0])) if net_file.ambient is Ambient.SPHERE else 1.0
        return stereographic(flat, radius)

    @staticmethod
    def to_obj(net_file: NetFile) -> str:
        M, N = net_file.shape
        lines: List[str] = [f"# lawson-forge {net_file.ambient.value} net {M}x{N}"]
        for x, y, z in ObjExporter.vertices_of(net_file):
            lines.append(f"v {_format(x)} {_format(y)} {_format(z)}")
        for face in quad_indices(M, N):
            lines.append("f " + " ".join(str(i + 1) for i in face))
        return "\n".join(lines) + "\n"

    @staticmethod
    def export(net_file: NetFile, path: str) -> None:
        text = ObjExporter.to_obj(net_file)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("exported %s to %s", net_file.ambient.value, path)
