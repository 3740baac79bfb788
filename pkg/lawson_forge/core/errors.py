"""
Exception types for the lawson-forge package.

Every error carries the short message fragment the command-line surface
reports, so callers can match on the type or on the text.
"""

from typing import Optional, Sequence, Tuple


Location = Tuple[int, int]


class LawsonForgeError(ValueError):
    """Base class for all lawson-forge errors"""


# Algebra

class NotImaginaryError(LawsonForgeError):
    def __init__(self, real_part: float):
        super().__init__(f"not imaginary (real part {real_part:.3e})")
        self.real_part = real_part


class NotQuaternionMatrixError(LawsonForgeError):
    def __init__(self, defect: float):
        super().__init__(f"not a real-quaternion matrix (defect {defect:.3e})")
        self.defect = defect


class DegenerateQuadrilateralError(LawsonForgeError):
    def __init__(self, which: str):
        super().__init__(f"degenerate quadrilateral: singular difference {which}")


# Lax data

class SpectralDegeneracyError(LawsonForgeError):
    def __init__(self, gamma: float, squared: float, location: Optional[Location] = None):
        where = f" on edge {location}" if location is not None else ""
        super().__init__(f"spectral degeneracy at γ={gamma:.6g}{where} (squared normalizer {squared:.3e})")
        self.gamma = gamma
        self.squared = squared
        self.location = location


class DegenerateEdgeError(LawsonForgeError):
    def __init__(self, location: Optional[Location] = None):
        if location is None:
            message = "degenerate edge (β(1) = 0)"
        else:
            message = f"Euclidean evaluation impossible on edge {location}"
        super().__init__(message)
        self.location = location


class NonSolvableQuadError(LawsonForgeError):
    def __init__(self, residuals: Sequence[float]):
        shown = ", ".join(f"{r:.3e}" for r in residuals)
        super().__init__(f"non-solvable quad data (residual samples: {shown})")
        self.residuals = list(residuals)


class AmbiguousQuadError(LawsonForgeError):
    def __init__(self, roots: Sequence[float]):
        shown = ", ".join(f"{r:.12g}" for r in roots)
        super().__init__(f"ambiguous quad (roots: {shown})")
        self.roots = list(roots)


class PropagationError(LawsonForgeError):
    def __init__(self, location: Location, cause: Exception):
        super().__init__(f"propagation failed at quad {location}: {cause}")
        self.location = location
        self.cause = cause


# Immersion

class InvalidSpectralAngleError(LawsonForgeError):
    def __init__(self, gamma1: float):
        super().__init__(f"invalid spectral angle γ₁={gamma1!r} (must lie in (0, π/2))")
        self.gamma1 = gamma1


class SphereRadiusOverflowError(LawsonForgeError):
    def __init__(self, gamma1: float):
        super().__init__(f"sphere radius overflow at γ₁={gamma1!r}")
        self.gamma1 = gamma1


class AssociatedFamilyRequestError(LawsonForgeError):
    def __init__(self, gamma: float):
        super().__init__(f"associated-family nets at γ={gamma!r} are not produced; the Euclidean net uses γ = 0")


# Geometry

class DegenerateFaceError(LawsonForgeError):
    def __init__(self, detail: str = "collinear triple"):
        super().__init__(f"degenerate face: {detail}")


class PlanarityError(LawsonForgeError):
    def __init__(self, defect: float):
        super().__init__(f"planarity violation (defect {defect:.3e})")
        self.defect = defect


class NotEdgeParallelError(LawsonForgeError):
    def __init__(self, edge: int, defect: float):
        super().__init__(f"not edge-parallel (edge {edge}, angular defect {defect:.3e})")
        self.edge = edge
        self.defect = defect


class DegenerateFaceAreaError(LawsonForgeError):
    def __init__(self, area: float):
        super().__init__(f"degenerate face area ({area:.3e})")
        self.area = area


class DegenerateDualEdgeError(LawsonForgeError):
    def __init__(self, location: Location, direction: int):
        super().__init__(f"degenerate dual edge at {location} (direction {direction})")
        self.location = location
        self.direction = direction


class NonKoenigsError(LawsonForgeError):
    def __init__(self, location: Location, defect: float):
        super().__init__(f"non-Koenigs data at {location} (relative defect {defect:.3e})")
        self.location = location
        self.defect = defect


class CrossRatioNotScalarError(LawsonForgeError):
    def __init__(self, defect: float):
        super().__init__(f"cross-ratio not scalar (imaginary part {defect:.3e})")
        self.defect = defect


# Reconstruction

class InconsistentGaussMapError(LawsonForgeError):
    def __init__(self, defect: float):
        super().__init__(f"inconsistent Gauss map (defect {defect:.3e})")
        self.defect = defect


class TrapezoidOrientationError(LawsonForgeError):
    def __init__(self, direction: int, product: float):
        super().__init__(f"wrong trapezoid orientation in direction {direction} (s·sᵢ = {product:.6g})")
        self.direction = direction
        self.product = product


class NotCMCQuadError(LawsonForgeError):
    def __init__(self, detail: str):
        super().__init__(f"not a CMC quad in 𝕊³: {detail}")


class NotOnSphereError(LawsonForgeError):
    def __init__(self, defect: float):
        super().__init__(f"not on unit sphere (defect {defect:.3e})")
        self.defect = defect


class NotIntegrableError(LawsonForgeError):
    def __init__(self, location: Location, detail: str):
        super().__init__(f"net is not integrable at quad {location}: {detail}")
        self.location = location


class ProvenanceMismatchError(LawsonForgeError):
    def __init__(self, detail: str):
        super().__init__(f"mismatched provenance: {detail}")


# Input / output

class ConfigError(LawsonForgeError):
    pass


class NetFormatError(LawsonForgeError):
    pass


class PoleProximityError(LawsonForgeError):
    def __init__(self, index: int):
        super().__init__(f"vertex {index} lies at the stereographic projection pole")
        self.index = index
