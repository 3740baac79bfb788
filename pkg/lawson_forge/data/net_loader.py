"""
Native JSON net files.

A net file carries one net with its Gauss map, the quad faces, optionally the
Lax data it was built from, and provenance. Vertices are listed with m
running fastest, so vertex (m, n) has index n·M + m.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.errors import NetFormatError
from ..core.models import Ambient, LatticeLax

logger = logging.getLogger(__name__)

NET_FORMAT = "lawson-forge-net"
LAX_FORMAT = "lawson-forge-lax"
FORMAT_VERSION = 1


def vertex_index(m: int, n: int, width: int) -> int:
    return n * width + m


def quad_indices(width: int, height: int) -> List[List[int]]:
    """0-based (F, F₁, F₁₂, F₂) indices of every face"""
    return [[vertex_index(m, n, width), vertex_index(m + 1, n, width),
             vertex_index(m + 1, n + 1, width), vertex_index(m, n + 1, width)]
            for n in range(height - 1) for m in range(width - 1)]


def _flatten(arr: np.ndarray) -> List[List[float]]:
    """(M, N, d) → list of rows in vertex-index order"""
    M, N = arr.shape[0], arr.shape[1]
    return [[float(x) for x in arr[m, n]] for n in range(N) for m in range(M)]


def _unflatten(rows, width: int, height: int, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(rows, dtype=float)
    if arr.shape != (width * height, dim):
        raise NetFormatError(f"{name} has shape {arr.shape}, expected ({width * height}, {dim})")
    if not np.all(np.isfinite(arr)):
        raise NetFormatError(f"{name} holds non-finite values")
    return arr.reshape(height, width, dim).transpose(1, 0, 2).copy()


def _edge_list(arr: np.ndarray, complex_valued: bool) -> List[Any]:
    rows, cols = arr.shape
    out = []
    for n in range(cols):
        for m in range(rows):
            x = arr[m, n]
            out.append([float(x.real), float(x.imag)] if complex_valued else float(x))
    return out


def _edge_array(values, shape, complex_valued: bool, name: str) -> np.ndarray:
    rows, cols = shape
    if not isinstance(values, list) or len(values) != rows * cols:
        raise NetFormatError(f"lax.{name} must list {rows * cols} edges")
    arr = np.zeros(shape, dtype=complex if complex_valued else float)
    for k, x in enumerate(values):
        m, n = k % rows if rows else 0, k // rows if rows else 0
        if complex_valued:
            if not (isinstance(x, list) and len(x) == 2):
                raise NetFormatError(f"lax.{name}[{k}] must be [re, im]")
            arr[m, n] = complex(float(x[0]), float(x[1]))
        else:
            arr[m, n] = float(x)
    return arr


def lattice_to_dict(lat: LatticeLax) -> Dict[str, Any]:
    return {
        "width": lat.width,
        "height": lat.height,
        "a": _edge_list(lat.a, True),
        "u": _edge_list(lat.u, False),
        "b": _edge_list(lat.b, True),
        "v": _edge_list(lat.v, False),
    }


def lattice_from_dict(d: Dict[str, Any]) -> LatticeLax:
    try:
        M, N = int(d["width"]), int(d["height"])
        a = _edge_array(d["a"], (M - 1, N), True, "a")
        u = _edge_array(d["u"], (M - 1, N), False, "u")
        b = _edge_array(d["b"], (M, N - 1), True, "b")
        v = _edge_array(d["v"], (M, N - 1), False, "v")
        return LatticeLax(M, N, a, u, b, v)
    except (KeyError, TypeError) as exc:
        raise NetFormatError(f"malformed lax data: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, NetFormatError):
            raise
        raise NetFormatError(f"invalid lax data: {exc}") from exc


@dataclass
class NetFile:
    """One net of any ambient with its normals, ready to be written"""
    ambient: Ambient
    vertices: np.ndarray              # (M, N, 3) or (M, N, 4)
    normals: np.ndarray
    lattice: Optional[LatticeLax] = None
    provenance: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        dim = 3 if self.ambient is Ambient.R3 else 4
        if self.vertices.ndim != 3 or self.vertices.shape[-1] != dim:
            raise NetFormatError(f"{self.ambient.value} vertices need {dim} components, got shape {self.vertices.shape}")
        if self.normals.shape != self.vertices.shape:
            raise NetFormatError("normal array does not match the vertex array")
        if self.lattice is not None and (self.lattice.width, self.lattice.height) != self.shape:
            raise NetFormatError("embedded lax data does not match the net dimensions")

    @property
    def shape(self):
        return self.vertices.shape[0], self.vertices.shape[1]

    @property
    def faces(self) -> List[List[int]]:
        return quad_indices(*self.shape)

    @classmethod
    def from_net(cls, net, lattice: Optional[LatticeLax] = None,
                 provenance: Optional[Dict[str, Any]] = None) -> "NetFile":
        prov = dict(net.provenance)
        prov.update(provenance or {})
        return cls(net.ambient, np.array(net.points), np.array(net.normals), lattice, prov)

    def to_dict(self) -> Dict[str, Any]:
        M, N = self.shape
        d = {
            "format": NET_FORMAT,
            "version": FORMAT_VERSION,
            "ambient": self.ambient.value,
            "width": M,
            "height": N,
            "vertices": _flatten(self.vertices),
            "normals": _flatten(self.normals),
            "faces": self.faces,
            "provenance": self.provenance,
        }
        if self.lattice is not None:
            d["lax"] = lattice_to_dict(self.lattice)
        return d

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "NetFile":
        if not isinstance(d, dict) or d.get("format") != NET_FORMAT:
            raise NetFormatError("not a lawson-forge net file")
        if d.get("version") != FORMAT_VERSION:
            raise NetFormatError(f"unsupported net file version {d.get('version')!r}")
        try:
            ambient = Ambient(d["ambient"])
            M, N = int(d["width"]), int(d["height"])
            if M < 1 or N < 1:
                raise NetFormatError(f"invalid dimensions {M}×{N}")
            dim = 3 if ambient is Ambient.R3 else 4
            vertices = _unflatten(d["vertices"], M, N, dim, "vertices")
            normals = _unflatten(d["normals"], M, N, dim, "normals")
            faces = d["faces"]
            provenance = d.get("provenance", {})
        except (KeyError, TypeError) as exc:
            raise NetFormatError(f"malformed net file: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, NetFormatError):
                raise
            raise NetFormatError(f"invalid net file: {exc}") from exc
        if faces != quad_indices(M, N):
            if any(not (0 <= i < M * N) for face in faces for i in face):
                raise NetFormatError("face index out of bounds")
            raise NetFormatError("face list does not match the grid layout")
        lattice = lattice_from_dict(d["lax"]) if "lax" in d else None
        return cls(ambient, vertices, normals, lattice, provenance)


class NetLoader:
    """Handles reading and writing of native net and lax data files"""

    @staticmethod
    def dumps(data: Dict[str, Any]) -> str:
        # repr floats are the shortest exact representation
        return json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    @staticmethod
    def _read(path: str) -> Any:
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except FileNotFoundError as exc:
            raise NetFormatError(f"could not find file {path}") from exc
        except json.JSONDecodeError as exc:
            raise NetFormatError(f"invalid JSON in {path}: {exc}") from exc

    @staticmethod
    def save_net(net_file: NetFile, path: str) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(NetLoader.dumps(net_file.to_dict()))
        logger.info("wrote %s net %dx%d to %s", net_file.ambient.value, *net_file.shape, path)

    @staticmethod
    def load_net(path: str) -> NetFile:
        """
        Load a net file

        Raises:
            NetFormatError: missing file, bad JSON or schema violations
        """
        return NetFile.from_dict(NetLoader._read(path))

    @staticmethod
    def save_lattice(lat: LatticeLax, path: str, provenance: Optional[Dict[str, Any]] = None) -> None:
        d = {"format": LAX_FORMAT, "version": FORMAT_VERSION, "lax": lattice_to_dict(lat),
             "provenance": provenance or {}}
        with open(path, "w", encoding="utf-8") as f:
            f.write(NetLoader.dumps(d))

    @staticmethod
    def load_lattice(path: str) -> LatticeLax:
        d = NetLoader._read(path)
        if not isinstance(d, dict) or d.get("format") != LAX_FORMAT:
            raise NetFormatError("not a lawson-forge lax data file")
        if "lax" not in d:
            raise NetFormatError("malformed lax data file: missing 'lax'")
        return lattice_from_dict(d["lax"])
