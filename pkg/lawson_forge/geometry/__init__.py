"""
Geometry module for lawson-forge.

Verification kernel for quad nets: face defects, areas, curvatures, metric
products, conformal factor and edge labelings. Knows nothing of Lax data.
"""

from .faces import (
    PlanarQuad,
    face_defects,
    signed_area,
    mixed_area,
    curvatures,
    steiner_defect,
    face_points,
    net_face_defects,
    net_curvatures,
)

from .metric import (
    MetricProducts,
    EdgeLabeling,
    metric_products,
    extract_metric,
    black_white_rescale,
    edge_labelings,
    face_cross_ratio_real_check,
    net_cross_ratios,
    edge_normal_products,
    edge_angle_cosines,
    trapezoid_signs,
)

__all__ = [
    "PlanarQuad",
    "face_defects",
    "signed_area",
    "mixed_area",
    "curvatures",
    "steiner_defect",
    "face_points",
    "net_face_defects",
    "net_curvatures",
    "MetricProducts",
    "EdgeLabeling",
    "metric_products",
    "extract_metric",
    "black_white_rescale",
    "edge_labelings",
    "face_cross_ratio_real_check",
    "net_cross_ratios",
    "edge_normal_products",
    "edge_angle_cosines",
    "trapezoid_signs",
]
