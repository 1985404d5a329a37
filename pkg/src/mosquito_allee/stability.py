"""Fixed points of the restricted operator and their stability types.

The restricted map always fixes the origin.  An interior fixed point

    x* = gamma*mu^2 / (alpha*(beta - mu) - gamma*mu^2)
    y* = gamma*mu / (beta - mu)

exists exactly when ``beta > mu*(1 + gamma*mu/alpha)``.  Stability is
read off the Jacobian

    [[1 - a,  beta*y*(2*gamma + y)/(gamma + y)^2],
     [    a,  1 - mu]]            with  a = alpha/(1 + x)^2.

At the interior point the eigenvalues are ``1 - Lambda`` where Lambda
solves ``Lambda^2 - (mu + A)*Lambda + A*(mu - B) = 0`` with
``A = alpha/(1 + x*)^2`` and ``B = beta*y*(2*gamma + y*)/(gamma + y*)^2``.
The type can equivalently be decided by comparing ``alpha`` against the
roots ``alpha_1 >= alpha_2`` of the quadratic whose coefficients come
from the same discriminant condition; both routes are computed and must
agree, otherwise an :class:`~mosquito_allee.errors.InternalConsistencyError`
is raised.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError, InternalConsistencyError
from .model import Params, State, derived_constants, step_w0

__all__ = [
    "Stability",
    "PointKind",
    "Regime",
    "FixedPoint",
    "JacobianAnalysis",
    "InteriorClassification",
    "FixedPointReport",
    "UNIT_MODULUS_TOL",
    "interior_fixed_point",
    "jacobian_at",
    "alpha_thresholds",
    "classify_generic",
    "classify_interior",
    "find_fixed_points",
]

# |modulus - 1| and |alpha - alpha_i| below this count as non-hyperbolic
UNIT_MODULUS_TOL = 1e-9

# residual bound for verifying a computed fixed point actually is one
_RESIDUAL_TOL = 1e-12


class Stability(str, enum.Enum):
    ATTRACTING = "attracting"
    REPELLING = "repelling"
    SADDLE = "saddle"
    NON_HYPERBOLIC = "non-hyperbolic"


class PointKind(str, enum.Enum):
    ORIGIN = "origin"
    INTERIOR = "interior"


class Regime(str, enum.Enum):
    ORIGIN_ONLY = "origin-only"
    TWO_FIXED_POINTS = "two-fixed-points"


@dataclass(frozen=True)
class FixedPoint:
    location: State
    kind: PointKind
    stability: Stability


@dataclass(frozen=True)
class JacobianAnalysis:
    """Jacobian at the interior fixed point plus the derived quantities.

    ``matrix`` is stored as nested tuples so reports compare by value.
    ``eigenvalues`` are the two (always real) eigenvalues ``1 - Lambda_i``
    with ``Lambda1 >= Lambda2``; ``moduli`` are their absolute values.
    ``alpha1 >= alpha2`` are the classification thresholds for ``alpha``.
    """

    matrix: tuple[tuple[float, float], tuple[float, float]]
    eigenvalues: tuple[float, float]
    moduli: tuple[float, float]
    A: float
    B: float
    Lambda1: float
    Lambda2: float
    alpha1: float
    alpha2: float


@dataclass(frozen=True)
class InteriorClassification:
    stability: Stability
    analysis: JacobianAnalysis
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class FixedPointReport:
    regime: Regime
    origin: FixedPoint
    interior: FixedPoint | None
    analysis: JacobianAnalysis | None
    origin_eigenvalues: tuple[float, float]


def interior_fixed_point(params: Params) -> State | None:
    """Closed-form interior fixed point, or None when it does not exist."""
    params.require_analysis_valid()
    constants = derived_constants(params)
    if not params.beta > constants.threshold_beta:
        return None
    alpha, beta, gamma, mu = params.alpha, params.beta, params.gamma, params.mu
    gm2 = gamma * mu * mu
    denom = alpha * (beta - mu) - gm2
    if denom <= 0.0:
        # beta cleared the threshold form but the equivalent denominator
        # rounded the other way; only reachable within ulps of the boundary
        raise InternalConsistencyError(
            f"existence threshold passed but alpha*(beta-mu) - gamma*mu^2 = {denom} <= 0"
        )
    return State(gm2 / denom, gamma * mu / (beta - mu))


def jacobian_at(params: Params, s: State) -> np.ndarray:
    """Jacobian matrix of the restricted map at an arbitrary state."""
    params.require_analysis_valid()
    x, y = s.x, s.y
    a = params.alpha / ((1.0 + x) * (1.0 + x))
    gy = params.gamma + y
    birth_slope = params.beta * y * (2.0 * params.gamma + y) / (gy * gy)
    return np.array([[1.0 - a, birth_slope], [a, 1.0 - params.mu]])


def alpha_thresholds(params: Params) -> tuple[float, float] | None:
    """Classification thresholds (alpha1, alpha2), alpha1 >= alpha2.

    Roots of ``t^2 - 2*(P + Q)*t + P^2 = 0`` with
    ``P = gamma*mu^2/(beta - mu)`` and
    ``Q = beta*(2 - mu)/(2*beta + mu*(beta - mu))``.  The larger root is
    evaluated directly and the smaller recovered from the product of
    roots ``P^2``, which avoids cancellation.  None when ``beta <= mu``
    (no interior point can exist and P is undefined).
    """
    beta, mu = params.beta, params.mu
    if not beta > mu:
        return None
    p = params.gamma * mu * mu / (beta - mu)
    q = beta * (2.0 - mu) / (2.0 * beta + mu * (beta - mu))
    alpha1 = p + q + math.sqrt(q * (2.0 * p + q))
    alpha2 = (p * p) / alpha1
    return alpha1, alpha2


def _label_from_moduli(moduli, tol: float) -> Stability:
    if any(abs(m - 1.0) <= tol for m in moduli):
        return Stability.NON_HYPERBOLIC
    if all(m < 1.0 for m in moduli):
        return Stability.ATTRACTING
    if all(m > 1.0 for m in moduli):
        return Stability.REPELLING
    return Stability.SADDLE


def classify_generic(matrix, tol: float = UNIT_MODULUS_TOL) -> Stability:
    """Stability label of any 2x2 matrix from its eigenvalue moduli.

    Complex conjugate pairs are handled through the modulus; any modulus
    within ``tol`` of 1 yields NON_HYPERBOLIC.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (2, 2) or not np.all(np.isfinite(m)):
        raise DomainError(f"expected a finite 2x2 matrix, got {matrix!r}")
    moduli = np.abs(np.linalg.eigvals(m))
    return _label_from_moduli(moduli.tolist(), tol)


def classify_interior(params: Params, tol: float = UNIT_MODULUS_TOL) -> InteriorClassification:
    """Stability type of the interior fixed point, with full diagnostics.

    The label is decided by comparing ``alpha`` with the thresholds
    ``alpha1``/``alpha2`` and cross-checked against the raw eigenvalue
    moduli of the Jacobian; a disagreement away from the tolerance bands
    raises an internal consistency error.
    """
    fp = interior_fixed_point(params)
    if fp is None:
        raise ConfigurationError(
            "no interior fixed point: beta must exceed mu*(1 + gamma*mu/alpha)"
        )
    alpha, beta, gamma, mu = params.alpha, params.beta, params.gamma, params.mu
    xs, ys = fp.x, fp.y

    a_quantity = alpha / ((1.0 + xs) * (1.0 + xs))
    gy = gamma + ys
    b_quantity = beta * ys * (2.0 * gamma + ys) / (gy * gy)

    # Lambda^2 - (mu + A)*Lambda + A*(mu - B) = 0; the discriminant is
    # rewritten as (mu - A)^2 + 4AB >= 0, so both roots are real.
    trace_term = mu + a_quantity
    product_term = a_quantity * (mu - b_quantity)
    disc = (mu - a_quantity) * (mu - a_quantity) + 4.0 * a_quantity * b_quantity
    lambda1 = 0.5 * (trace_term + math.sqrt(disc))
    lambda2 = product_term / lambda1 if lambda1 != 0.0 else 0.5 * (trace_term - math.sqrt(disc))

    eigenvalues = (1.0 - lambda1, 1.0 - lambda2)
    moduli = (abs(eigenvalues[0]), abs(eigenvalues[1]))

    thresholds = alpha_thresholds(params)
    if thresholds is None:  # unreachable: existence implies beta > mu
        raise InternalConsistencyError("interior point exists but beta <= mu")
    alpha1, alpha2 = thresholds

    notes: list[str] = []
    if abs(alpha - alpha1) <= tol or abs(alpha - alpha2) <= tol:
        label = Stability.NON_HYPERBOLIC
        notes.append(
            f"alpha within {tol} of a classification threshold "
            f"(alpha1={alpha1!r}, alpha2={alpha2!r}); label is tolerance-dependent"
        )
    elif alpha > alpha1:
        label = Stability.REPELLING
    else:
        label = Stability.SADDLE
        if alpha1 > 1.0:
            notes.append(
                "alpha1 exceeds 1, outside the analysis regime for alpha; "
                "saddle label confirmed by eigenvalue moduli"
            )

    jac = jacobian_at(params, fp)
    raw_moduli = np.abs(np.linalg.eigvals(jac)).tolist()
    eigen_label = _label_from_moduli(raw_moduli, tol)
    near_threshold = min(abs(alpha - alpha1), abs(alpha - alpha2)) <= 10.0 * tol
    near_unit = any(abs(m - 1.0) <= 10.0 * tol for m in raw_moduli + list(moduli))
    if near_threshold or near_unit:
        if eigen_label is not label:
            notes.append(
                f"threshold label {label.value} vs eigenvalue label {eigen_label.value} "
                "inside the tolerance band; threshold label kept"
            )
    elif eigen_label is not label:
        raise InternalConsistencyError(
            f"stability disagreement at {params}: thresholds give {label.value} "
            f"(alpha1={alpha1!r}, alpha2={alpha2!r}) but eigenvalue moduli {raw_moduli} "
            f"give {eigen_label.value}"
        )

    analysis = JacobianAnalysis(
        matrix=tuple(map(tuple, jac.tolist())),
        eigenvalues=eigenvalues,
        moduli=moduli,
        A=a_quantity,
        B=b_quantity,
        Lambda1=lambda1,
        Lambda2=lambda2,
        alpha1=alpha1,
        alpha2=alpha2,
    )
    return InteriorClassification(stability=label, analysis=analysis, notes=tuple(notes))


def _verify_fixed_point(params: Params, location: State) -> None:
    image = step_w0(params, location)
    residual = max(abs(image.x - location.x), abs(image.y - location.y))
    scale = max(1.0, abs(location.x), abs(location.y))
    # 1e-12 absolute, relaxed only when the point itself is so large that
    # double rounding of its coordinates exceeds that (x* blows up as beta
    # approaches the existence threshold)
    allowed = max(_RESIDUAL_TOL, 16.0 * math.ulp(scale))
    if not residual <= allowed:
        raise InternalConsistencyError(
            f"fixed-point residual {residual} exceeds {allowed} at {location}"
        )


def find_fixed_points(params: Params) -> FixedPointReport:
    """All fixed points of the restricted map, classified.

    Returns the origin alone when ``beta <= mu*(1 + gamma*mu/alpha)``,
    otherwise the origin plus the interior point with its Jacobian
    analysis.  Every reported location is verified to satisfy the
    fixed-point equation to within rounding.
    """
    params.require_analysis_valid()
    origin_eigenvalues = (1.0 - params.alpha, 1.0 - params.mu)
    origin = FixedPoint(
        location=State(0.0, 0.0),
        kind=PointKind.ORIGIN,
        stability=_label_from_moduli(
            [abs(origin_eigenvalues[0]), abs(origin_eigenvalues[1])], UNIT_MODULUS_TOL
        ),
    )
    _verify_fixed_point(params, origin.location)

    fp = interior_fixed_point(params)
    if fp is None:
        return FixedPointReport(
            regime=Regime.ORIGIN_ONLY,
            origin=origin,
            interior=None,
            analysis=None,
            origin_eigenvalues=origin_eigenvalues,
        )

    _verify_fixed_point(params, fp)
    interior_result = classify_interior(params)
    interior = FixedPoint(location=fp, kind=PointKind.INTERIOR, stability=interior_result.stability)
    return FixedPointReport(
        regime=Regime.TWO_FIXED_POINTS,
        origin=origin,
        interior=interior,
        analysis=interior_result.analysis,
        origin_eigenvalues=origin_eigenvalues,
    )
