"""Entanglement, EPR steering, purities and occupations of two-mode states.

All measures reduce to the four determinant invariants of the block
partition Gamma = [[A, C^T], [C, B]].  The partial-transpose symplectic
eigenvalue that certifies entanglement is computed twice: from the
determinant formula and, as an independent oracle, from the spectrum of
the momentum-flipped matrix.  The formula is only trusted because the two
agree (see the acceptance suite).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import ModelParams, PolaritonBasis, polariton_frequencies
from .states import BARE, CovarianceMatrix, symplectic_form

__all__ = [
    "UnphysicalStateError",
    "SteeringClass",
    "SymplecticInvariants",
    "CorrelationReport",
    "STEERING_THRESHOLD",
    "symplectic_invariants",
    "ppt_symplectic_eigenvalues",
    "log_negativity",
    "log_negativity_raw",
    "gaussian_steering",
    "gaussian_steering_raw",
    "purities",
    "classify_steering",
    "average_occupations",
    "second_order_correlators",
    "covariance_from_correlators",
    "ground_state_log_negativity_closed",
    "ground_state_steering_closed",
    "correlation_report",
]

# strict-positivity threshold for calling a steering value nonzero
STEERING_THRESHOLD = 1e-12


class UnphysicalStateError(ValueError):
    """Covariance matrix violates the uncertainty bound."""


class SteeringClass(str, Enum):
    NO_WAY = "no-way"
    ONE_WAY_A_TO_B = "one-way-a-to-b"
    ONE_WAY_B_TO_A = "one-way-b-to-a"
    TWO_WAY = "two-way"


@dataclass(frozen=True)
class SymplecticInvariants:
    i_a: float
    i_b: float
    i_c: float
    i_ab: float
    d_minus: float
    d_plus: float


@dataclass(frozen=True)
class CorrelationReport:
    e_n: float
    g_ab: float
    g_ba: float
    mu_a: float
    mu_b: float
    mu_ab: float
    n_a: float
    n_b: float
    classification: SteeringClass


def _require_physical(gamma: CovarianceMatrix) -> None:
    if gamma.basis != BARE:
        raise UnphysicalStateError("correlation measures act on bare-basis states")
    if not gamma.is_physical():
        raise UnphysicalStateError(
            "covariance matrix violates the symplectic uncertainty bound"
        )


def symplectic_invariants(gamma: CovarianceMatrix) -> SymplecticInvariants:
    """Block determinants and the partial-transpose symplectic pair.

    d~_{+-}^2 are the roots of s^2 - delta s + det(Gamma) with
    delta = det A + det B - 2 det C, the sign flip of det C implementing
    the momentum reversal of the second mode.
    """
    _require_physical(gamma)
    i_a = float(np.linalg.det(gamma.block_a()))
    i_b = float(np.linalg.det(gamma.block_b()))
    i_c = float(np.linalg.det(gamma.block_c()))
    i_ab = float(np.linalg.det(gamma.entries))
    delta = i_a + i_b - 2.0 * i_c
    disc = math.sqrt(max(delta * delta - 4.0 * i_ab, 0.0))
    d_minus = math.sqrt(max(0.5 * (delta - disc), 0.0))
    d_plus = math.sqrt(0.5 * (delta + disc))
    return SymplecticInvariants(i_a, i_b, i_c, i_ab, d_minus, d_plus)


def ppt_symplectic_eigenvalues(gamma: CovarianceMatrix) -> np.ndarray:
    """Oracle route: symplectic spectrum of the momentum-flipped state."""
    _require_physical(gamma)
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    tilde = flip @ gamma.entries @ flip
    ev = np.linalg.eigvals(1j * symplectic_form() @ tilde)
    return np.sort(np.abs(ev))[::2]


def log_negativity_raw(gamma: CovarianceMatrix) -> float:
    return -math.log(2.0 * symplectic_invariants(gamma).d_minus)


def log_negativity(gamma: CovarianceMatrix) -> float:
    """Entanglement monotone max(0, -ln 2 d~_-)."""
    return max(0.0, log_negativity_raw(gamma))


def gaussian_steering_raw(gamma: CovarianceMatrix) -> tuple[float, float]:
    inv = symplectic_invariants(gamma)
    return (
        0.5 * math.log(inv.i_a / (4.0 * inv.i_ab)),
        0.5 * math.log(inv.i_b / (4.0 * inv.i_ab)),
    )


def gaussian_steering(gamma: CovarianceMatrix) -> tuple[float, float]:
    """(G_{a->b}, G_{b->a}), each clipped at zero."""
    raw_ab, raw_ba = gaussian_steering_raw(gamma)
    return max(0.0, raw_ab), max(0.0, raw_ba)


def purities(gamma: CovarianceMatrix) -> tuple[float, float, float]:
    """Marginal and global purities 1/(4 I_a), 1/(4 I_b), 1/(16 I_ab)."""
    inv = symplectic_invariants(gamma)
    return 1.0 / (4.0 * inv.i_a), 1.0 / (4.0 * inv.i_b), 1.0 / (16.0 * inv.i_ab)


def classify_steering(g_ab: float, g_ba: float) -> SteeringClass:
    if g_ab < 0 or g_ba < 0:
        raise ValueError("steering values are clipped at zero by definition")
    ab = g_ab > STEERING_THRESHOLD
    ba = g_ba > STEERING_THRESHOLD
    if ab and ba:
        return SteeringClass.TWO_WAY
    if ab:
        return SteeringClass.ONE_WAY_A_TO_B
    if ba:
        return SteeringClass.ONE_WAY_B_TO_A
    return SteeringClass.NO_WAY


def average_occupations(gamma: CovarianceMatrix) -> tuple[float, float]:
    """Mode occupations from the quadrature variances, (x^2 + p^2 - 1)/2."""
    _require_physical(gamma)
    g = gamma.entries
    return (
        0.5 * (g[0, 0] + g[1, 1] - 1.0),
        0.5 * (g[2, 2] + g[3, 3] - 1.0),
    )


_MOMENT_KEYS = (
    "adag_a",
    "a_adag",
    "adag_adag",
    "a_a",
    "bdag_b",
    "b_bdag",
    "bdag_bdag",
    "b_b",
    "bdag_adag",
    "adag_b",
    "a_bdag",
    "a_b",
)


def second_order_correlators(
    basis: PolaritonBasis, occupations: tuple[float, float]
) -> dict[str, float]:
    """All twelve quadratic moments of a branch-diagonal polariton state.

    ``occupations`` are the branch fillings <p_j' p_j>; squeezing and
    cross moments of the polaritons are assumed zero, which is the steady
    state of the common-bath dynamics.
    """
    n_u, n_l = occupations
    if n_u < 0 or n_l < 0:
        raise ValueError("occupations must be non-negative")
    out = dict.fromkeys(_MOMENT_KEYS, 0.0)
    for (w, x, y, z), n in [(basis.coeffs_upper, n_u), (basis.coeffs_lower, n_l)]:
        out["adag_a"] += (w * w + y * y) * n + y * y
        out["a_adag"] += (w * w + y * y) * n + w * w
        out["adag_adag"] += -w * y * (2 * n + 1)
        out["a_a"] += -w * y * (2 * n + 1)
        out["bdag_b"] += (x * x + z * z) * n + z * z
        out["b_bdag"] += (x * x + z * z) * n + x * x
        out["bdag_bdag"] += -x * z * (2 * n + 1)
        out["b_b"] += -x * z * (2 * n + 1)
        out["bdag_adag"] += -((w * z + x * y) * n + w * z)
        out["adag_b"] += (w * x + y * z) * n + y * z
        out["a_bdag"] += (w * x + y * z) * n + w * x
        out["a_b"] += -((w * z + x * y) * n + w * z)
    return out


def covariance_from_correlators(moments: dict[str, float]) -> CovarianceMatrix:
    """Assemble the bare covariance from the quadratic-moment table."""
    m = moments
    g = np.zeros((4, 4))
    g[0, 0] = 0.5 * (m["a_a"] + m["adag_adag"] + m["a_adag"] + m["adag_a"])
    g[1, 1] = 0.5 * (m["a_adag"] + m["adag_a"] - m["a_a"] - m["adag_adag"])
    g[2, 2] = 0.5 * (m["b_b"] + m["bdag_bdag"] + m["b_bdag"] + m["bdag_b"])
    g[3, 3] = 0.5 * (m["b_bdag"] + m["bdag_b"] - m["b_b"] - m["bdag_bdag"])
    g[0, 2] = g[2, 0] = 0.5 * (m["a_b"] + m["a_bdag"] + m["adag_b"] + m["bdag_adag"])
    g[1, 3] = g[3, 1] = 0.5 * (m["a_bdag"] + m["adag_b"] - m["a_b"] - m["bdag_adag"])
    return CovarianceMatrix(g, BARE)


def _zeta(params: ModelParams, wu: float, wl: float) -> float:
    wa, wb = params.omega_a, params.omega_b
    prod = wu * wl
    return (4.0 * params.diamag * wa + wa * wa + prod) * (wb * wb + prod)


def ground_state_log_negativity_closed(params: ModelParams) -> float:
    """Closed-form ground-state entanglement of the single-coupling family."""
    wu, wl = polariton_frequencies(params)
    wa, wb, lam = params.omega_a, params.omega_b, params.coupling
    two_d = abs(2.0 * lam * math.sqrt(wa * wb) - math.sqrt(_zeta(params, wu, wl))) / (
        (wu + wl) * math.sqrt(wu * wl)
    )
    return max(0.0, -math.log(two_d))


def ground_state_steering_closed(params: ModelParams) -> float:
    """Closed-form ground-state steering, identical in both directions."""
    wu, wl = polariton_frequencies(params)
    wa, wb, lam = params.omega_a, params.omega_b, params.coupling
    zeta = _zeta(params, wu, wl)
    ratio = wu * wl * (wu + wl) ** 2 * zeta / (zeta - 4.0 * lam * lam * wa * wb) ** 2
    return max(0.0, 0.5 * math.log(ratio))


def correlation_report(gamma: CovarianceMatrix) -> CorrelationReport:
    """Every correlation measure of one bare-basis state."""
    e_n = log_negativity(gamma)
    g_ab, g_ba = gaussian_steering(gamma)
    mu_a, mu_b, mu_ab = purities(gamma)
    n_a, n_b = average_occupations(gamma)
    return CorrelationReport(
        e_n=e_n,
        g_ab=g_ab,
        g_ba=g_ba,
        mu_a=mu_a,
        mu_b=mu_b,
        mu_ab=mu_ab,
        n_a=n_a,
        n_b=n_b,
        classification=classify_steering(g_ab, g_ba),
    )
