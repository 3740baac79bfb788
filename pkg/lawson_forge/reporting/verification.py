"""
Verification reports.

Every invariant a generated net must satisfy is measured with the geometry
kernel, compared with the closed-form value from its Lax data where that is
available, and recorded as a named check with the tolerance it was held to.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core.errors import ConfigError
from ..core.lax import alpha_squared, beta_squared
from ..core.models import DEFAULT_TOLERANCES, Ambient, LatticeLax, SpectralPoint, Tolerances
from ..data.net_loader import NetFile
from ..geometry.faces import PlanarQuad, face_points, mixed_area, net_curvatures, net_face_defects, signed_area
from ..geometry.metric import (
    MetricProducts,
    edge_angle_cosines,
    edge_labelings,
    edge_normal_products,
    extract_metric,
    metric_products,
    net_cross_ratios,
    trapezoid_signs,
)
from ..surfaces.immersion import (
    NetR3,
    NetS3,
    SphereNet,
    expected_cross_ratios,
    expected_edge_lengths_r3,
    expected_edge_lengths_s3,
)
from ..surfaces.lawson import (
    CalapsoReport,
    ConvergenceRow,
    FamilyMember,
    LawsonPair,
    family_ratio_defect,
    model_products,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """One invariant: the measured worst deviation against its tolerance"""
    name: str
    value: float
    tolerance: float
    required: bool = True

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": float(self.value), "tolerance": float(self.tolerance),
                "required": self.required, "passed": self.passed}


@dataclass
class VerificationReport:
    """Named checks plus the per-face and per-edge numbers they were computed from"""
    kind: str
    checks: List[Check] = field(default_factory=list)
    faces: Dict[str, Any] = field(default_factory=dict)
    edges: Dict[str, Any] = field(default_factory=dict)
    info: Dict[str, Any] = field(default_factory=dict)

    def add(self, name: str, value: float, tolerance: float, required: bool = True) -> None:
        self.checks.append(Check(name, float(value), float(tolerance), required))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "faces": {k: _jsonable(v) for k, v in self.faces.items()},
            "edges": {k: _jsonable(v) for k, v in self.edges.items()},
            "info": {k: _jsonable(v) for k, v in self.info.items()},
        }

    def summary(self) -> str:
        lines = [f"{self.kind}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok " if c.passed else ("FAIL" if c.required else "flag")
            lines.append(f"  [{mark}] {c.name}: {c.value:.3e} (tol {c.tolerance:.1e})")
        return "\n".join(lines)


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _max(arr) -> float:
    arr = np.asarray(arr, dtype=float)
    return float(np.max(arr)) if arr.size else 0.0


def _rel(measured, expected) -> float:
    m, e = np.asarray(measured, dtype=float), np.asarray(expected, dtype=float)
    if not m.size:
        return 0.0
    return float(np.max(np.abs(m - e) / np.maximum(np.abs(e), np.finfo(float).tiny)))


def _edge_lengths_squared(points: np.ndarray):
    d1 = points[1:, :] - points[:-1, :]
    d2 = points[:, 1:] - points[:, :-1]
    return np.sum(d1 ** 2, axis=-1), np.sum(d2 ** 2, axis=-1)


def _normalizers(lattice: LatticeLax, s: SpectralPoint):
    """α(λ) per horizontal edge and β(λ) per vertical edge"""
    al = np.array([[math.sqrt(alpha_squared(lattice.horizontal(m, n), s)) for n in range(lattice.height)]
                   for m in range(lattice.width - 1)]).reshape(lattice.u.shape)
    be = np.array([[math.sqrt(beta_squared(lattice.vertical(m, n), s)) for n in range(lattice.height - 1)]
                   for m in range(lattice.width)]).reshape(lattice.v.shape)
    return al, be


def _require_faces(points: np.ndarray) -> None:
    if points.shape[0] < 2 or points.shape[1] < 2:
        raise ConfigError("no faces to verify")


def _common(report: VerificationReport, points: np.ndarray, normals: np.ndarray,
            dual: np.ndarray, tol: Tolerances) -> MetricProducts:
    """Face shape, curvatures, cross-ratios, metric products and labelings"""
    planar, circular = net_face_defects(points)
    H, K = net_curvatures(points, normals, tol.parallel)
    report.faces.update(planarity=planar, circularity=circular, H=H, K=K,
                        cross_ratio=net_cross_ratios(points, tol.cross_ratio))
    report.add("planarity", _max(planar), tol.planarity)
    report.add("circularity", _max(circular), tol.circularity)

    mp = metric_products(points, dual)
    labels = edge_labelings(points, _s_from_products(mp))
    report.edges.update(ss1=mp.horizontal, ss2=mp.vertical, A=labels.A_edges, B=labels.B_edges)
    report.add("metric product compatibility", mp.compatibility_defect(), tol.metric)
    # a per-column labeling may vary between columns; only constancy along a column is checked
    report.add("labeling A constant per column", labels.a_spread, tol.labeling_spread, required=False)
    report.add("labeling B constant per row", labels.b_spread, tol.labeling_spread, required=False)
    return mp


def _s_from_products(mp: MetricProducts) -> np.ndarray:
    return extract_metric(mp, 1.0, tol=math.inf)


def verify_r3(net: NetR3, lattice: Optional[LatticeLax] = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    F, N, Fc = net.F_hat, net.N_hat, net.F_check
    _require_faces(F)
    report = VerificationReport("r3", info={"shape": list(net.shape), "provenance": dict(net.provenance)})
    mp = _common(report, F, N, Fc, tol)
    report.add("mean curvature H = 1", _max(np.abs(report.faces["H"] - 1.0)), tol.curvature)
    report.add("unit Gauss map", _max(np.abs(np.linalg.norm(N, axis=-1) - 1.0)), tol.unit_norm)

    christoffel = np.zeros_like(report.faces["H"])
    for m in range(F.shape[0] - 1):
        for n in range(F.shape[1] - 1):
            f = PlanarQuad.from_points(face_points(F, m, n))
            christoffel[m, n] = abs(mixed_area(f, face_points(Fc, m, n), tol.parallel)) / abs(signed_area(f))
    report.faces["mixed_area_dual"] = christoffel
    report.add("A(F̂, F̌) = 0", _max(christoffel), tol.christoffel)

    crossing, embedded = trapezoid_signs(mp)
    report.add("crossing trapezoids in direction 1", 0.0 if crossing else 1.0, 0.5)
    report.add("embedded trapezoids in direction 2", 0.0 if embedded else 1.0, 0.5)

    # ⟨dF̂₀ᵢ, N̂⟩ = ½·‖dF̂₀ᵢ‖²(1 − 1/(ssᵢ))
    l1, l2 = _edge_lengths_squared(F)
    n1, n2 = edge_normal_products(F, N)
    angle = max(_max(np.abs(n1 - 0.5 * l1 * (1 - 1 / mp.horizontal))),
                _max(np.abs(n2 - 0.5 * l2 * (1 - 1 / mp.vertical))))
    report.add("edge/normal angle products", angle, tol.angle)

    if lattice is not None:
        h, v = expected_edge_lengths_r3(lattice)
        report.add("edge lengths", max(_max(np.abs(l1 - h)), _max(np.abs(l2 - v))), tol.edge_length)
        report.add("cross-ratio −β²/α²",
                   _max(np.abs(report.faces["cross_ratio"] - expected_cross_ratios(lattice, SpectralPoint(0.0)))),
                   tol.cross_ratio)
        report.add("metric products ss₁ = −u², ss₂ = v²", mp.max_relative_difference(model_products(lattice)),
                   tol.metric)
    return report


def _verify_spherical(report: VerificationReport, F: np.ndarray, N: np.ndarray, dual: np.ndarray,
                      gamma1: float, radius: float, H_expected: float, factor: float,
                      lattice: Optional[LatticeLax], tol: Tolerances) -> None:
    mp = _common(report, F, N, dual, tol)
    report.add("constant mean curvature", _max(np.abs(report.faces["H"] - H_expected)), tol.curvature)
    norm_defect = max(_max(np.abs(np.linalg.norm(F, axis=-1) - radius)) / radius,
                      _max(np.abs(np.linalg.norm(N, axis=-1) - 1.0)),
                      _max(np.abs(np.sum(F * N, axis=-1))) / radius)
    report.add("on sphere with unit normal", norm_defect, tol.unit_norm)

    crossing, embedded = trapezoid_signs(mp.scaled(1.0 / factor))
    report.add("crossing trapezoids in direction 1", 0.0 if crossing else 1.0, 0.5)
    report.add("embedded trapezoids in direction 2", 0.0 if embedded else 1.0, 0.5)

    if lattice is None:
        return
    s = SpectralPoint(gamma1)
    sin2, cos2 = math.sin(2 * gamma1), math.cos(2 * gamma1)
    h, v = expected_edge_lengths_s3(lattice, gamma1)
    l1, l2 = _edge_lengths_squared(F / radius)
    report.add("edge lengths", max(_max(np.abs(l1 - h)), _max(np.abs(l2 - v))), tol.edge_length)
    report.add("cross-ratio −β²/α²",
               _max(np.abs(report.faces["cross_ratio"] - expected_cross_ratios(lattice, s))), tol.cross_ratio)
    report.add("metric products", mp.max_relative_difference(model_products(lattice, factor)), tol.metric)

    al, be = _normalizers(lattice, s)
    cos = edge_angle_cosines(F / radius, N)
    u, vv = lattice.u, lattice.v
    angle = max(
        _max(np.abs(cos["cos_theta_1"] - (1 / u + cos2 * u) / al)),
        _max(np.abs(cos["cos_theta_2"] + (1 / vv - cos2 * vv) / be)),
        _max(np.abs(cos["cos_chi_1"] + u * sin2 / al)),
        _max(np.abs(cos["cos_chi_2"] + vv * sin2 / be)),
    )
    report.edges.update(cos_theta_1=cos["cos_theta_1"], cos_chi_1=cos["cos_chi_1"])
    report.add("edge angles θ and χ", angle, tol.angle)


def verify_s3(net: NetS3, lattice: Optional[LatticeLax] = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    _require_faces(net.F)
    report = VerificationReport("s3", info={"shape": list(net.shape), "gamma1": net.gamma1,
                                            "provenance": dict(net.provenance)})
    H = net.mean_curvature
    factor = 1.0 if H == 0.0 else math.cos(2 * net.gamma1)
    _verify_spherical(report, net.F, net.N, net.dual(), net.gamma1, 1.0, H, factor, lattice, tol)
    return report


def verify_sphere(net: SphereNet, lattice: Optional[LatticeLax] = None,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    _require_faces(net.F)
    report = VerificationReport("sphere", info={"shape": list(net.shape), "gamma1": net.gamma1,
                                                "scale": net.scale, "kappa": net.kappa,
                                                "provenance": dict(net.provenance)})
    H = net.mean_curvature
    factor = net.scale if H == 0.0 else math.cos(2 * net.gamma1)
    _verify_spherical(report, net.F, net.N, net.dual(), net.gamma1, net.radius, H, factor, lattice, tol)
    report.add("H² + κ = 1/ρ²", abs(H ** 2 + net.kappa - 1 / net.scale ** 2), tol.metric)
    return report


def verify_net(net, lattice: Optional[LatticeLax] = None,
               tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    if net.ambient is Ambient.R3:
        return verify_r3(net, lattice, tol)
    if net.ambient is Ambient.S3:
        return verify_s3(net, lattice, tol)
    return verify_sphere(net, lattice, tol)


def net_from_file(net_file: NetFile):
    """Rebuild the net object a file describes; γ₁ comes from provenance or the measured H"""
    prov = dict(net_file.provenance)
    if net_file.ambient is Ambient.R3:
        return NetR3(net_file.vertices, net_file.vertices + net_file.normals, net_file.normals, prov)
    gamma1 = prov.get("gamma")
    if net_file.ambient is Ambient.S3:
        if gamma1 is None:
            _require_faces(net_file.vertices)
            H, _ = net_curvatures(net_file.vertices, net_file.normals)
            H_mean = float(np.mean(H))
            gamma1 = math.pi / 4 if abs(H_mean) < 1e-9 else 0.5 * math.atan2(1.0, H_mean)
        return NetS3(net_file.vertices, net_file.normals, float(gamma1),
                     bool(prov.get("negative_branch", False)), prov)
    if gamma1 is None:
        raise ConfigError("sphere net files must record γ₁ in their provenance")
    return SphereNet(net_file.vertices, net_file.normals, float(gamma1), float(prov.get("scale", 1.0)), prov)


def verify_lawson(pair: LawsonPair, members: Sequence[FamilyMember] = (),
                  calapso: Sequence[CalapsoReport] = (), limit: Sequence[ConvergenceRow] = (),
                  tol: Tolerances = DEFAULT_TOLERANCES) -> VerificationReport:
    report = VerificationReport("lawson", info={"shape": [pair.lattice.width, pair.lattice.height],
                                                "lattice": pair.lattice.digest()})
    report.add("Lawson isometry", pair.isometry_defect, tol.metric)
    report.add("metric products ss₁ = −u², ss₂ = v²", pair.model_defect, tol.metric)
    if pair.lattice.width > 1 and pair.lattice.height > 1:
        H_r3, _ = net_curvatures(pair.r3.F_hat, pair.r3.N_hat, tol.parallel)
        H_s3, _ = net_curvatures(pair.s3.F, pair.s3.N, tol.parallel)
        report.add("ℝ³ net has H = 1", _max(np.abs(H_r3 - 1.0)), tol.curvature)
        report.add("𝕊³ net is minimal", _max(np.abs(H_s3)), tol.curvature)

    rows = []
    for m in members:
        rows.append({"gamma1": m.gamma1, "H": m.H, "measured_H": m.measured_H, "kappa": m.kappa,
                     "max_face_H_defect": m.curvature_defect, "H2_plus_kappa": m.H ** 2 + m.kappa})
        report.add(f"γ₁={m.gamma1:.6g}: H² + κ conserved", m.conservation_defect, tol.metric)
        report.add(f"γ₁={m.gamma1:.6g}: H_f = H on every face", m.curvature_defect, tol.curvature)
    report.info["family"] = rows
    if members:
        report.add("family ssᵢ/H agree", family_ratio_defect(members), tol.metric)
    for c in calapso:
        report.add(f"Calapso labels H={c.H:.6g}→{c.H_prime:.6g}", c.max_defect, tol.calapso)

    report.info["limit"] = [{"gamma": r.gamma, "D": r.defect, "ratio": r.ratio} for r in limit]
    if len(limit) > 1:
        monotone = all(b.defect < a.defect for a, b in zip(limit, limit[1:]))
        report.add("Euclidean limit decreasing", 0.0 if monotone else 1.0, 0.5)
    return report
