"""
Surfaces module for lawson-forge.

Immersion of Lax lattices as nets in ℝ³, 𝕊³ and spheres, reconstruction of
Lax data from nets, and the Lawson correspondence between them.
"""

from .immersion import (
    NetR3,
    NetS3,
    SphereNet,
    immerse_r3,
    immerse_r3_lattice,
    immerse_s3,
    scale_to_sphere,
    christoffel_dual_r3,
    christoffel_dual_s3,
)

from .reconstruct import (
    ReconstructionReport,
    reconstruct_quad_r3,
    reconstruct_quad_s3,
    reconstruct_net,
)

from .lawson import (
    LawsonPair,
    FamilyMember,
    CalapsoReport,
    ConvergenceRow,
    lawson_pair,
    sphere_family,
    family_ratio_defect,
    calapso_labeling_check,
    euclidean_limit,
)

__all__ = [
    "NetR3",
    "NetS3",
    "SphereNet",
    "immerse_r3",
    "immerse_r3_lattice",
    "immerse_s3",
    "scale_to_sphere",
    "christoffel_dual_r3",
    "christoffel_dual_s3",
    "ReconstructionReport",
    "reconstruct_quad_r3",
    "reconstruct_quad_s3",
    "reconstruct_net",
    "LawsonPair",
    "FamilyMember",
    "CalapsoReport",
    "ConvergenceRow",
    "lawson_pair",
    "sphere_family",
    "family_ratio_defect",
    "calapso_labeling_check",
    "euclidean_limit",
]
