"""
lawson-forge package

Discrete constant mean curvature nets from quaternionic Lax pairs: CMC-1
nets in ℝ³, minimal and CMC nets in 𝕊³, the discrete Lawson correspondence
between them, geometric verification and reconstruction of Lax data.

Modules:
- core: quaternion algebra, Lax data, quad solver, frames
- geometry: face defects, mixed areas, curvatures, metric products, labelings
- surfaces: immersion formulas, reconstruction, Lawson correspondence
- data: run configuration, net files, OBJ export
- reporting: verification reports

Usage:
    from lawson_forge import CauchyData, propagate, lawson_pair
    pair = lawson_pair(propagate(CauchyData.random(6, 6, seed=1)))
    print(pair.isometry_defect)
"""

# Core components
from .core import (
    Ambient,
    SpectralPoint,
    UEdgeData,
    VEdgeData,
    QuadLax,
    CauchyData,
    LatticeLax,
    Tolerances,
    DEFAULT_TOLERANCES,
    Quaternion,
    solve_quad,
    propagate,
)

# Surfaces
from .surfaces import (
    immerse_r3_lattice,
    immerse_s3,
    scale_to_sphere,
    reconstruct_net,
    lawson_pair,
    sphere_family,
    euclidean_limit,
)

# Data components
from .data import ConfigLoader, RunConfig, NetFile, NetLoader, ObjExporter

# Reporting
from .reporting import VerificationReport, verify_net

# Main application class
from .main import LawsonForgeApp

__version__ = "1.0.0"

__all__ = [
    # Data models
    "Ambient",
    "SpectralPoint",
    "UEdgeData",
    "VEdgeData",
    "QuadLax",
    "CauchyData",
    "LatticeLax",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "Quaternion",

    # Lax data
    "solve_quad",
    "propagate",

    # Nets
    "immerse_r3_lattice",
    "immerse_s3",
    "scale_to_sphere",
    "reconstruct_net",
    "lawson_pair",
    "sphere_family",
    "euclidean_limit",

    # Files and reports
    "ConfigLoader",
    "RunConfig",
    "NetFile",
    "NetLoader",
    "ObjExporter",
    "VerificationReport",
    "verify_net",

    # Main application
    "LawsonForgeApp",
]
