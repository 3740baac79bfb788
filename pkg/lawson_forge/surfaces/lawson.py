"""
The discrete Lawson correspondence.

One lattice of Lax data yields a CMC-1 net in ℝ³, a minimal net in 𝕊³ and a
family of CMC nets on spheres of curvature κ = sin²(2γ₁) with H = cos(2γ₁),
all sharing one discrete conformal metric.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from ..core.errors import LawsonForgeError, ProvenanceMismatchError
from ..core.lax import alpha_squared, beta_squared, propagate
from ..core.models import DEFAULT_TOLERANCES, CauchyData, LatticeLax, SpectralPoint, Tolerances
from ..geometry.faces import net_curvatures
from ..geometry.metric import MetricProducts, metric_products
from .immersion import NetR3, NetS3, SphereNet, immerse_r3_lattice, immerse_s3, scale_to_sphere

logger = logging.getLogger(__name__)

MINIMAL_GAMMA = math.pi / 4

Source = Union[CauchyData, LatticeLax]


def _lattice(source: Source, tol: Tolerances) -> LatticeLax:
    if isinstance(source, LatticeLax):
        return source
    return propagate(source, tol)


def model_products(lat: LatticeLax, factor: float = 1.0) -> MetricProducts:
    """ss₁ = −u²·factor, ss₂ = v²·factor"""
    return MetricProducts(-lat.u ** 2 * factor, lat.v ** 2 * factor)


@dataclass(frozen=True)
class LawsonPair:
    """CMC-1 net in ℝ³ and minimal net in 𝕊³ from the same lattice"""
    lattice: LatticeLax
    r3: NetR3
    s3: NetS3
    products_r3: MetricProducts
    products_s3: MetricProducts

    @property
    def isometry_defect(self) -> float:
        return self.products_r3.max_relative_difference(self.products_s3)

    @property
    def model_defect(self) -> float:
        """Deviation of both product sets from ss₁ = −u², ss₂ = v²"""
        expected = model_products(self.lattice)
        return max(self.products_r3.max_relative_difference(expected),
                   self.products_s3.max_relative_difference(expected))

    def passes(self, tol: float = 1e-8) -> bool:
        return self.isometry_defect <= tol and self.model_defect <= tol


def lawson_pair(source: Source, tol: Tolerances = DEFAULT_TOLERANCES) -> LawsonPair:
    lat = _lattice(source, tol)
    try:
        r3 = immerse_r3_lattice(lat)
    except LawsonForgeError:
        logger.error("ℝ³ evaluation of the Lawson pair failed")
        raise
    try:
        s3 = immerse_s3(lat, MINIMAL_GAMMA)
    except LawsonForgeError:
        logger.error("𝕊³ evaluation of the Lawson pair failed")
        raise
    pair = LawsonPair(lat, r3, s3, metric_products(r3.F_hat, r3.F_check), metric_products(s3.F, s3.dual()))
    logger.info("Lawson pair %dx%d: isometry defect %.3e", lat.width, lat.height, pair.isometry_defect)
    return pair


@dataclass(frozen=True)
class FamilyMember:
    """One sphere net of the Lawson family"""
    gamma1: float
    net: SphereNet
    face_H: Optional[np.ndarray]    # measured per face, (M-1, N-1)
    products: MetricProducts

    @property
    def H(self) -> float:
        return self.net.mean_curvature

    @property
    def kappa(self) -> float:
        return self.net.kappa

    @property
    def measured_H(self) -> Optional[float]:
        if self.face_H is None:
            return None
        return float(np.mean(self.face_H))

    @property
    def conservation_defect(self) -> float:
        """|H² + κ − 1/ρ²|"""
        return abs(self.H ** 2 + self.kappa - 1.0 / self.net.scale ** 2)

    @property
    def curvature_defect(self) -> float:
        """max over faces of |H_f − H|"""
        if self.face_H is None:
            return 0.0
        return float(np.max(np.abs(self.face_H - self.H)))

    @property
    def conformal_ratios(self) -> Optional[MetricProducts]:
        """ssᵢ/H, identical across the family; undefined on the minimal member"""
        if self.H == 0.0:
            return None
        return self.products.scaled(1.0 / self.H)


def sphere_family(source: Source, gammas: Sequence[float], scale: float = 1.0,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> List[FamilyMember]:
    lat = _lattice(source, tol)
    members = []
    for gamma1 in gammas:
        net = scale_to_sphere(immerse_s3(lat, gamma1), scale)
        face_H = None
        if lat.width > 1 and lat.height > 1:
            face_H, _ = net_curvatures(net.F, net.N, tol.parallel)
            face_H.setflags(write=False)
        members.append(FamilyMember(gamma1, net, face_H, metric_products(net.F, net.dual())))
        logger.debug("family member γ₁=%.6g: H=%.12g κ=%.12g", gamma1, members[-1].H, members[-1].kappa)
    return members


def family_ratio_defect(members: Sequence[FamilyMember]) -> float:
    """Largest relative spread of ssᵢ/H across the non-minimal members"""
    ratios = [m.conformal_ratios for m in members if m.conformal_ratios is not None]
    if len(ratios) < 2:
        return 0.0
    return max(ratios[0].max_relative_difference(r) for r in ratios[1:])


@dataclass(frozen=True)
class CalapsoReport:
    """Label shifts between two family members"""
    H: float
    H_prime: float
    alpha_shift_defect: float
    beta_shift_defect: float
    a01_map_defect: float
    a02_map_defect: float

    @property
    def max_defect(self) -> float:
        return max(self.alpha_shift_defect, self.beta_shift_defect,
                   self.a01_map_defect, self.a02_map_defect)

    def passes(self, tol: float = 1e-10) -> bool:
        return self.max_defect <= tol


def label_map(a: float, H: float, H_prime: float) -> float:
    """a ↦ a/(1 + 2(H′ − H)a), the horizontal labeling of the member at H′"""
    return a / (1.0 + 2.0 * (H_prime - H) * a)


def calapso_labeling_check(member: FamilyMember, other: FamilyMember,
                           lattice: LatticeLax) -> CalapsoReport:
    """
    Check how the labelings a₀₁ = α⁻² and a₀₂ = −β⁻² move between two members.

    H = cos 2γ₁ is the unit-scale mean curvature, so α(γ′)² − α(γ)² = 2(H′ − H)
    and β(γ′)² − β(γ)² = 2(H − H′).
    """
    digest = lattice.digest()
    for m in (member, other):
        if m.net.provenance.get("lattice") != digest:
            raise ProvenanceMismatchError(f"member γ₁={m.gamma1!r} was not built from this lattice")

    s, sp = SpectralPoint(member.gamma1), SpectralPoint(other.gamma1)
    H, Hp = s.cos2, sp.cos2
    alpha_shift = beta_shift = a01 = a02 = 0.0
    for m in range(lattice.width - 1):
        for n in range(lattice.height):
            e = lattice.horizontal(m, n)
            a2, a2p = alpha_squared(e, s), alpha_squared(e, sp)
            alpha_shift = max(alpha_shift, abs(a2p - a2 - 2 * (Hp - H)))
            a01 = max(a01, abs(1 / a2p - label_map(1 / a2, H, Hp)))
    for m in range(lattice.width):
        for n in range(lattice.height - 1):
            e = lattice.vertical(m, n)
            b2, b2p = beta_squared(e, s), beta_squared(e, sp)
            beta_shift = max(beta_shift, abs(b2p - b2 - 2 * (H - Hp)))
            a02 = max(a02, abs(-1 / b2p - (-1 / b2) / (1.0 - 2.0 * (H - Hp) * (-1 / b2))))
    return CalapsoReport(H, Hp, alpha_shift, beta_shift, a01, a02)


@dataclass(frozen=True)
class ConvergenceRow:
    gamma: float
    defect: float
    ratio: Optional[float]


def euclidean_limit(source: Source, gammas: Sequence[float],
                    tol: Tolerances = DEFAULT_TOLERANCES) -> List[ConvergenceRow]:
    """
    Distance of (F − 𝟙)/sin 2γ, read in ℝ³, to the CMC-1 net, for γ → 0.

    The 𝟙-coefficient is dropped and the (𝕚, 𝕛, 𝕜) coefficients compared to
    F̂. Ratios between successive rows are reported, not asserted.
    """
    gammas = list(gammas)
    if any(not (0.0 < g <= MINIMAL_GAMMA) for g in gammas):
        raise ValueError("limit angles must lie in (0, π/4]")
    if any(b >= a for a, b in zip(gammas, gammas[1:])):
        raise ValueError("limit angles must be strictly decreasing")

    lat = _lattice(source, tol)
    target = immerse_r3_lattice(lat).F_hat
    rows: List[ConvergenceRow] = []
    for gamma in gammas:
        F = immerse_s3(lat, gamma).F
        shifted = F[..., :3] / math.sin(2 * gamma)   # 𝟙 has no (𝕚, 𝕛, 𝕜) part
        defect = float(np.max(np.linalg.norm(shifted - target, axis=-1)))
        ratio = defect / rows[-1].defect if rows and rows[-1].defect > 0 else None
        rows.append(ConvergenceRow(gamma, defect, ratio))
        logger.debug("limit γ=%.6g: D=%.6e", gamma, defect)
    return rows
