"""
Core module for lawson-forge.

Contains the quaternion algebra, edge-based Lax data, the quad solver and
vertex frames.
"""

from .models import (
    Ambient,
    SpectralPoint,
    EUCLIDEAN_POINT,
    UEdgeData,
    VEdgeData,
    QuadLax,
    CauchyData,
    LatticeLax,
    Tolerances,
    DEFAULT_TOLERANCES,
)

from .algebra import (
    Quaternion,
    ONE,
    I,
    J,
    K,
    exp_k,
    embed_r3,
    project_r3,
    embed_r4,
    project_r4,
    inner_r4,
    cross_ratio,
)

from .lax import (
    eval_U,
    eval_V,
    alpha,
    beta,
    solve_quad,
    solve_quad_reverse,
    propagate,
    check_lattice,
    vertex_function,
)

from .frames import (
    FrameField,
    FrameWithDerivative,
    integrate_frame,
    integrate_frame_with_derivative,
)

__all__ = [
    "Ambient",
    "SpectralPoint",
    "EUCLIDEAN_POINT",
    "UEdgeData",
    "VEdgeData",
    "QuadLax",
    "CauchyData",
    "LatticeLax",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "exp_k",
    "embed_r3",
    "project_r3",
    "embed_r4",
    "project_r4",
    "inner_r4",
    "cross_ratio",
    "eval_U",
    "eval_V",
    "alpha",
    "beta",
    "solve_quad",
    "solve_quad_reverse",
    "propagate",
    "check_lattice",
    "vertex_function",
    "FrameField",
    "FrameWithDerivative",
    "integrate_frame",
    "integrate_frame_with_derivative",
]
