"""Closed-form solvers for phase alignment and per-element rotation.

Both subproblems decouple from the placement search and admit exact
solutions:

* Phase alignment: each element's phase shift is set to the negative of its
  total two-hop propagation phase, so every term of the coherent sum lands
  on the positive real axis.

* Rotation: the product of the two directional gains of an element is a
  Rayleigh quotient of a symmetric rank-two matrix built from the two link
  vectors. Its top eigenpair is available in closed form, and the optimal
  boresight is the internal angular bisector of the two link directions.

With both in place the SNR reduces to a placement-only objective whose
square root is a plain sum over elements; that reduced objective and its
batched evaluator live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from .errors import AntipodalGeometryError, DegenerateGeometryError
from .geometry import Vec3
from .radiation import (
    LinkGeometry,
    MIN_LINK_DISTANCE,
    _pow_q,
    propagation_phase,
    snr_coefficient,
)

if TYPE_CHECKING:
    from .scenario import Scenario

#: Below this norm of r_b + r_t the bisector is undefined.
ANTIPODAL_EPS = 1e-9

#: Cells per evaluation chunk in batched objective sweeps.
_BATCH_CHUNK = 2048


def align_phases(geom: LinkGeometry, lambda_c: float) -> NDArray[np.float64]:
    """Phase shifts canceling each element's propagation phase.

    Returned angles are reduced into [-pi, pi). Substituted into the
    coherent sum they make every per-element phasor real and nonnegative.
    """
    raw = -propagation_phase(geom, lambda_c)
    return np.mod(raw + np.pi, 2.0 * np.pi) - np.pi


@dataclass(frozen=True, eq=False)
class BisectorSolution:
    """Optimal rotation result: boresights plus per-element diagnostics.

    ``lambda_max`` holds each element's top eigenvalue of the rank-two gain
    matrix (the maximal unnormalized gain product); ``objective_terms``
    holds the per-element summands of the reduced placement objective.
    """

    boresights: NDArray[np.float64]
    lambda_max: NDArray[np.float64]
    objective_terms: NDArray[np.float64]


def optimal_rotation(geom: LinkGeometry, q: float) -> BisectorSolution:
    """Per-element boresights maximizing the product of directional gains.

    Each optimal boresight is the normalized sum of the two unit link
    directions (their internal angular bisector), which makes the two
    boresight cosines equal. Raises when the directions are antipodal and
    no bisector exists.
    """
    s = geom.r_b + geom.r_t
    norms = np.linalg.norm(s, axis=1)
    if np.any(norms < ANTIPODAL_EPS):
        raise AntipodalGeometryError(
            "rotation: link directions are antipodal for at least one element"
        )
    boresights = s / norms[:, None]
    cos_sep = np.sum(geom.r_b * geom.r_t, axis=1)
    lambda_max = geom.d_b * geom.d_t * (1.0 + cos_sep) / 2.0
    terms = _pow_q((1.0 + cos_sep) / 2.0, q) / (geom.d_b**2 * geom.d_t**2)
    return BisectorSolution(
        boresights=boresights, lambda_max=lambda_max, objective_terms=terms
    )


def bisector_gain_sum(
    scenario: "Scenario", centers: NDArray[np.float64], q: float
) -> NDArray[np.float64]:
    """Element sum of the reduced objective at many centers, shape (M,).

    For each center this is ``sum_n ((1 + cos_sep_n)/2)**q / (d_b_n**2 *
    d_t_n**2)`` with optimally rotated boresights substituted; it carries no
    link-budget constants. Centers of shape (M, 3) are processed in chunks
    to bound memory in large grid sweeps.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    offsets = scenario.array.offsets
    out = np.empty(centers.shape[0])
    for start in range(0, centers.shape[0], _BATCH_CHUNK):
        chunk = centers[start : start + _BATCH_CHUNK]
        elements = chunk[:, None, :] + offsets[None, :, :]
        diff_b = scenario.bs[None, None, :] - elements
        diff_t = scenario.gt[None, None, :] - elements
        d2_b = np.sum(diff_b * diff_b, axis=2)
        d2_t = np.sum(diff_t * diff_t, axis=2)
        if d2_b.min() < MIN_LINK_DISTANCE**2 or d2_t.min() < MIN_LINK_DISTANCE**2:
            raise DegenerateGeometryError(
                "objective: an element coincides with a terminal"
            )
        inv_d2 = 1.0 / (d2_b * d2_t)
        if q == 0:
            # Directional factor collapses to 1: pure product-distance sum.
            terms = inv_d2
        else:
            half = 0.5 * (1.0 + np.sum(diff_b * diff_t, axis=2) * np.sqrt(inv_d2))
            terms = _pow_q(half, q) * inv_d2
        out[start : start + chunk.shape[0]] = np.sum(terms, axis=1)
    return out


def placement_objective_batch(
    scenario: "Scenario", centers: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Reduced placement objective (square root of the SNR) at many centers."""
    coeff = snr_coefficient(scenario.pattern, scenario.budget)
    return np.sqrt(coeff) * bisector_gain_sum(scenario, centers, scenario.pattern.q)


def placement_objective(scenario: "Scenario", center: Vec3) -> float:
    """Reduced placement objective at a single center."""
    return float(placement_objective_batch(scenario, np.asarray(center))[0])
