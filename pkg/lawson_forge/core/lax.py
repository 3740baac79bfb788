"""
Edge-based Lax data.

Evaluation of the Lax matrices 𝒰(λ), 𝒱(λ) and their γ-derivatives at λ = 1,
the quad commutation solver and propagation of Cauchy data over a window.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from .algebra import I, J, Quaternion
from .errors import (
    AmbiguousQuadError,
    DegenerateEdgeError,
    NonSolvableQuadError,
    PropagationError,
    SpectralDegeneracyError,
)
from .models import (
    DEFAULT_TOLERANCES,
    CauchyData,
    LatticeLax,
    QuadLax,
    SpectralPoint,
    Tolerances,
    UEdgeData,
    VEdgeData,
)

logger = logging.getLogger(__name__)

# γ = ±π/6 is away from the extrema {0, ±π/2, π} of λ² + λ⁻²
CHECK_POINTS = (SpectralPoint(math.pi / 6), SpectralPoint(-math.pi / 6))

_BRACKET_FACTOR = 50.0
_BRACKET_SAMPLES = 401


def alpha_squared(e: UEdgeData, s: SpectralPoint) -> float:
    return abs(e.a) ** 2 + 2.0 * s.cos2 + e.u ** 2 + e.u ** -2


def beta_squared(e: VEdgeData, s: SpectralPoint) -> float:
    return abs(e.b) ** 2 - 2.0 * s.cos2 + e.v ** 2 + e.v ** -2


def _root(squared: float, label: float, s: SpectralPoint) -> float:
    if not squared > 1e-14 * label:
        raise SpectralDegeneracyError(s.gamma, squared)
    return math.sqrt(squared)


def alpha(e: UEdgeData, s: SpectralPoint) -> float:
    """Positive normalizer making det 𝒰(λ) = 1"""
    return _root(alpha_squared(e, s), e.label, s)


def beta(e: VEdgeData, s: SpectralPoint) -> float:
    """Positive normalizer making det 𝒱(λ) = 1"""
    return _root(beta_squared(e, s), e.label, s)


def eval_U(e: UEdgeData, s: SpectralPoint) -> Quaternion:
    lam = s.lam
    a, u = e.a, e.u
    m = np.array([[a, -lam * u - 1 / (lam * u)],
                  [lam / u + u / lam, a.conjugate()]], dtype=complex)
    return Quaternion(m / alpha(e, s))


def eval_V(e: VEdgeData, s: SpectralPoint) -> Quaternion:
    lam = s.lam
    b, v = e.b, e.v
    m = np.array([[b, -1j * lam * v + 1j / (lam * v)],
                  [1j * lam / v - 1j * v / lam, b.conjugate()]], dtype=complex)
    return Quaternion(m / beta(e, s))


def dU_dgamma(e: UEdgeData) -> Quaternion:
    """∂𝒰/∂γ at γ = 0; α is extremal there so only the numerator varies"""
    return ((e.u - 1 / e.u) / alpha(e, SpectralPoint(0.0))) * I


def dV_dgamma(e: VEdgeData) -> Quaternion:
    """∂𝒱/∂γ at γ = 0"""
    if e.euclidean_degenerate:
        raise DegenerateEdgeError()
    return (-(e.v + 1 / e.v) / beta(e, SpectralPoint(0.0))) * J


def commutation_residual(q: QuadLax, points: Iterable[SpectralPoint] = CHECK_POINTS) -> float:
    """max over λ of ‖𝒱′(λ)𝒰(λ) − 𝒰′(λ)𝒱(λ)‖_F"""
    worst = 0.0
    for s in points:
        lhs = eval_V(q.Vp, s) * eval_U(q.U, s)
        rhs = eval_U(q.Up, s) * eval_V(q.V, s)
        worst = max(worst, float(np.linalg.norm(lhs.m - rhs.m)))
    return worst


def quad_equation_residuals(q: QuadLax) -> Tuple[float, float, float, float]:
    """Residuals of the four scalar commutation equations (uu′ = vv′ first)"""
    a, u, b, v = q.U.a, q.U.u, q.V.b, q.V.v
    ap, up, bp, vp = q.Up.a, q.Up.u, q.Vp.b, q.Vp.v
    r1 = abs(u * up - v * vp)
    r2 = abs(bp * a - b * ap - 1j * (up * v + u * vp - 1 / (up * v) - 1 / (u * vp)))
    r3 = abs(b.conjugate() * up - bp * u - 1j * (a.conjugate() * vp - ap * v))
    r4 = abs(b.conjugate() / up - bp / u - 1j * (ap / v - a.conjugate() / vp))
    return r1, r2, r3, r4


def labeling_defects(q: QuadLax) -> Tuple[float, float]:
    """|Δ(|a|²+u²+u⁻²)| and |Δ(|b|²+v²+v⁻²)| across opposite edges"""
    return abs(q.Up.label - q.U.label), abs(q.Vp.label - q.V.label)


def _eliminate(U: UEdgeData, V: VEdgeData, t: float) -> Tuple[complex, float, complex]:
    """(a′, u′, b′) for v′ = t from uu′ = vv′ and the two equations linear in (a′, b′)"""
    a, u, b, v = U.a, U.u, V.b, V.v
    up = v * t / u
    system = np.array([[1j * v, -u], [-1j / v, -1 / u]], dtype=complex)
    rhs = np.array([1j * a.conjugate() * t - b.conjugate() * up,
                    -1j * a.conjugate() / t - b.conjugate() / up], dtype=complex)
    ap, bp = np.linalg.solve(system, rhs)
    return complex(ap), up, complex(bp)


def _reduced_equation(U: UEdgeData, V: VEdgeData, t: float) -> complex:
    a, u, b, v = U.a, U.u, V.b, V.v
    ap, up, bp = _eliminate(U, V, t)
    return bp * a - b * ap - 1j * (up * v + u * t - 1 / (up * v) - 1 / (u * t))


def solve_quad(U: UEdgeData, V: VEdgeData, tol: Tolerances = DEFAULT_TOLERANCES,
               strict: bool = False) -> Tuple[UEdgeData, VEdgeData]:
    """
    Solve the quad commutation for the opposite edges.

    The remaining equation after elimination is purely imaginary, so its
    imaginary part is bracketed over v′ ∈ [u/50, 50u]. Every candidate is
    checked against all four scalar equations and labeling preservation.
    """
    t0 = U.u
    grid = t0 * np.logspace(-math.log10(_BRACKET_FACTOR), math.log10(_BRACKET_FACTOR),
                            _BRACKET_SAMPLES)
    g = np.array([_reduced_equation(U, V, t).imag for t in grid])

    def objective(t: float) -> float:
        return _reduced_equation(U, V, t).imag

    roots: List[float] = []
    for i in range(len(grid)):
        if g[i] == 0.0:
            roots.append(float(grid[i]))
        elif i + 1 < len(grid) and g[i] * g[i + 1] < 0.0:
            roots.append(float(brentq(objective, grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15,
                                      maxiter=200)))

    admissible = []
    for t in sorted(set(roots)):
        ap, up, bp = _eliminate(U, V, t)
        candidate = QuadLax(U, V, UEdgeData(ap, up), VEdgeData(bp, t))
        scale = 1.0 + abs(U.a) + abs(V.b) + U.u + 1 / U.u + V.v + 1 / V.v
        residual = max(quad_equation_residuals(candidate)) / scale
        label = max(labeling_defects(candidate)) / max(U.label, V.label)
        if residual <= tol.solver_residual and label <= tol.labeling:
            admissible.append((abs(math.log(t / t0)), t, candidate))
        else:
            logger.debug("rejected root v′=%.12g (residual %.3e, labeling %.3e)", t, residual, label)

    if not admissible:
        samples = [float(abs(x)) for x in g[:: max(1, len(g) // 8)]]
        raise NonSolvableQuadError(samples)
    if len(admissible) > 1:
        all_roots = [t for _, t, _ in admissible]
        if strict:
            raise AmbiguousQuadError(all_roots)
        logger.warning("ambiguous quad: roots %s, keeping the one closest to v′ = u", all_roots)

    _, _, best = min(admissible, key=lambda item: item[0])
    return best.Up, best.Vp


def solve_quad_reverse(Up: UEdgeData, Vp: VEdgeData, tol: Tolerances = DEFAULT_TOLERANCES,
                       strict: bool = False) -> Tuple[UEdgeData, VEdgeData]:
    """
    Solve a quad from its upper-right corner.

    On the unit circle 𝒰⁻¹ = −𝒰(−ā, u) and 𝒱⁻¹ = −𝒱(−b̄, v), so the reversed
    quad is again a quad of Lax form.
    """
    flipped_u, flipped_v = solve_quad(UEdgeData(-Up.a.conjugate(), Up.u),
                                      VEdgeData(-Vp.b.conjugate(), Vp.v), tol, strict)
    return (UEdgeData(-flipped_u.a.conjugate(), flipped_u.u),
            VEdgeData(-flipped_v.b.conjugate(), flipped_v.v))


def propagate(c: CauchyData, tol: Tolerances = DEFAULT_TOLERANCES,
              strict: bool = False) -> LatticeLax:
    """Fill the window quad by quad, row by row, from the bottom row and left column"""
    M, N = c.width, c.height
    a = np.zeros((M - 1, N), dtype=complex)
    u = np.ones((M - 1, N))
    b = np.zeros((M, N - 1), dtype=complex)
    v = np.ones((M, N - 1))
    for m, e in enumerate(c.row0):
        a[m, 0], u[m, 0] = e.a, e.u
    for n, e in enumerate(c.col0):
        b[0, n], v[0, n] = e.b, e.v

    for n in range(N - 1):
        for m in range(M - 1):
            U = UEdgeData(a[m, n], u[m, n])
            V = VEdgeData(b[m, n], v[m, n])
            try:
                Up, Vp = solve_quad(U, V, tol, strict)
            except (NonSolvableQuadError, AmbiguousQuadError) as exc:
                raise PropagationError((m, n), exc) from exc
            a[m, n + 1], u[m, n + 1] = Up.a, Up.u
            b[m + 1, n], v[m + 1, n] = Vp.b, Vp.v
            logger.debug("quad (%d, %d): u′=%.12g v′=%.12g", m, n, Up.u, Vp.v)

    return LatticeLax(M, N, a, u, b, v)


def vertex_function(lat: LatticeLax) -> Tuple[np.ndarray, float]:
    """
    Positive w with u = w·w₁ and v = w·w₂, w(0, 0) = 1.

    Built along the bottom row and then up each column in log space; the
    second value is the largest relative closure defect over all edges.
    """
    M, N = lat.width, lat.height
    logw = np.zeros((M, N))
    for m in range(M - 1):
        logw[m + 1, 0] = math.log(lat.u[m, 0]) - logw[m, 0]
    for n in range(N - 1):
        for m in range(M):
            logw[m, n + 1] = math.log(lat.v[m, n]) - logw[m, n]
    w = np.exp(logw)
    defect = 0.0
    if M > 1:
        defect = max(defect, float(np.max(np.abs(w[:-1, :] * w[1:, :] / lat.u - 1.0))))
    if N > 1:
        defect = max(defect, float(np.max(np.abs(w[:, :-1] * w[:, 1:] / lat.v - 1.0))))
    return w, defect


@dataclass(frozen=True)
class LatticeCheck:
    """Largest deviations of a lattice from the quad invariants"""
    uu_vv: float
    commutation: float
    alpha_spread: float
    beta_spread: float
    worst_quad: Optional[Tuple[int, int]]

    def passes(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return (self.uu_vv <= tol.uu_vv and self.commutation <= tol.commutation
                and self.alpha_spread <= tol.labeling and self.beta_spread <= tol.labeling)


def check_lattice(lat: LatticeLax,
                  points: Sequence[SpectralPoint] = CHECK_POINTS) -> LatticeCheck:
    uu_vv = commutation = 0.0
    worst: Optional[Tuple[int, int]] = None
    for loc, q in lat.quads():
        r = commutation_residual(q, points)
        if r > commutation:
            commutation, worst = r, loc
        uu_vv = max(uu_vv, abs(q.U.u * q.Up.u - q.V.v * q.Vp.v))

    alpha_labels = np.abs(lat.a) ** 2 + lat.u ** 2 + lat.u ** -2
    beta_labels = np.abs(lat.b) ** 2 + lat.v ** 2 + lat.v ** -2
    alpha_spread = float(np.max(np.ptp(alpha_labels, axis=1))) if alpha_labels.size else 0.0
    beta_spread = float(np.max(np.ptp(beta_labels, axis=0))) if beta_labels.size else 0.0
    return LatticeCheck(uu_vv, commutation, alpha_spread, beta_spread, worst)
