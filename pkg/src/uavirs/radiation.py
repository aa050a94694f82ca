"""Directive element pattern, link geometry, and the received-SNR evaluator.

Each reflecting element has a hemispherical cosine-power gain pattern: zero
behind the element plane, ``g0 * cos(angle)**(2q)`` in front, where the
boresight is a steerable unit vector and ``g0 = 2*(2q+1)`` keeps the pattern
power-conserving (its integral over the half-space is 4*pi for every q).

The received SNR of the cascaded terminal-reflector-terminal link is a
squared coherent sum over elements; each element contributes an amplitude
set by its two directional gains and path losses, and a phase set by its
reflection coefficient plus the total propagation length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from .errors import DegenerateGeometryError, ValidationError
from .geometry import DIRECTION_EPS, Vec3

if TYPE_CHECKING:
    from .scenario import Scenario

#: Element-plane normal, pointing toward the ground.
DOWNWARD_NORMAL = np.array([0.0, 0.0, -1.0])

#: Distances below this are treated as a terminal touching an element.
MIN_LINK_DISTANCE = 1e-9


@dataclass(frozen=True)
class PatternParams:
    """Cosine-power element pattern: directivity factor and peak gain."""

    q: float

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValidationError("pattern: directivity factor q must be >= 0")

    @property
    def g0(self) -> float:
        """Peak (boresight) gain implied by power conservation."""
        return 2.0 * (2.0 * self.q + 1.0)


@dataclass(frozen=True)
class LinkBudget:
    """Scalar link-budget constants: all strictly positive.

    beta0     amplitude path-gain reference at unit distance (dimensionless)
    lambda_c  carrier wavelength, metres
    p_b       transmit power, watts
    sigma2    receiver noise power, watts
    """

    beta0: float = 1.0
    lambda_c: float = 0.05
    p_b: float = 1.0
    sigma2: float = 1e-11

    def __post_init__(self) -> None:
        for name in ("beta0", "lambda_c", "p_b", "sigma2"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"budget: {name} must be positive")


def snr_coefficient(pattern: PatternParams, budget: LinkBudget) -> float:
    """Constant multiplying the squared element sum in the SNR."""
    return (
        budget.beta0**2
        * pattern.g0**2
        * budget.p_b
        / (256.0 * np.pi**4 * budget.sigma2)
    )


@dataclass(frozen=True, eq=False)
class LinkGeometry:
    """Per-element distances and unit directions to both terminals.

    ``d_b``/``d_t`` have shape (N,); ``r_b``/``r_t`` have shape (N, 3) and
    point from each element toward the corresponding terminal.
    """

    d_b: NDArray[np.float64]
    d_t: NDArray[np.float64]
    r_b: NDArray[np.float64]
    r_t: NDArray[np.float64]

    @property
    def n(self) -> int:
        return self.d_b.shape[0]


def link_geometry(scenario: "Scenario", center: Vec3) -> LinkGeometry:
    """Evaluate element positions and both link directions for a center."""
    center = np.asarray(center, dtype=float)
    elements = center[None, :] + scenario.array.offsets
    out = {}
    for key, terminal in (("b", scenario.bs), ("t", scenario.gt)):
        diff = terminal[None, :] - elements
        d = np.linalg.norm(diff, axis=1)
        if np.any(d < MIN_LINK_DISTANCE):
            raise DegenerateGeometryError(
                "link: an element coincides with a terminal"
            )
        out["d_" + key] = d
        out["r_" + key] = diff / d[:, None]
    return LinkGeometry(**out)


def _pow_q(base: NDArray[np.float64] | float, q: float):
    """``base ** q`` with a fast path for small integer q.

    ``base`` must already be nonnegative. Uses binary exponentiation for
    integral q (the common case; np.power with float exponents dominates
    runtime in grid sweeps otherwise), and defines ``0 ** 0 = 1`` so q = 0
    yields the flat half-space pattern.
    """
    if q == 0:
        return np.ones_like(np.asarray(base, dtype=float))
    k = int(q)
    if k == q and 0 < k <= 64:
        result = None
        acc = np.asarray(base, dtype=float)
        while k:
            if k & 1:
                result = acc if result is None else result * acc
            k >>= 1
            if k:
                acc = acc * acc
        return result
    return np.power(base, q)


def halfspace_gain_factor(cosine: NDArray[np.float64] | float, q: float):
    """``max(cosine, 0) ** q`` with the zero-exponent half-space convention.

    For q = 0 this is the indicator of the front half-space (1 when the
    cosine is >= 0, else 0), so an isotropic element still radiates nothing
    backward.
    """
    c = np.asarray(cosine, dtype=float)
    if q == 0:
        return np.where(c >= 0.0, 1.0, 0.0)
    return np.where(c >= 0.0, _pow_q(np.maximum(c, 0.0), q), 0.0)


def element_gain(f: Vec3, r: Vec3, pattern: PatternParams):
    """Directional gain of an element with boresight ``f`` toward ``r``.

    Both arguments must be unit vectors; arrays of shape (..., 3) broadcast.
    Returns ``g0 * (f . r) ** (2q)`` in the front half-space and 0 behind.
    """
    c = np.sum(np.asarray(f, dtype=float) * np.asarray(r, dtype=float), axis=-1)
    out = pattern.g0 * halfspace_gain_factor(c, 2.0 * pattern.q)
    return float(out) if np.isscalar(c) or out.ndim == 0 else out


def propagation_phase(geom: LinkGeometry, lambda_c: float) -> NDArray[np.float64]:
    """Total two-hop propagation phase per element, radians (unreduced)."""
    return (2.0 * np.pi / lambda_c) * (geom.d_b + geom.d_t)


@dataclass(frozen=True, eq=False)
class IrsConfiguration:
    """A full reflector configuration: center, phase shifts, boresights.

    Phases are stored as angles so the unit-modulus property of the
    reflection coefficients holds by construction. Boresights must be unit
    vectors; when ``tilt_max`` is below pi/2 the angular feasibility
    predicate against the downward array normal is enforced, otherwise the
    steering range is the full radiating half-space (ideal model).
    """

    center: Vec3
    phases: NDArray[np.float64]
    boresights: NDArray[np.float64]
    tilt_max: float = float(np.pi / 2)

    def __post_init__(self) -> None:
        center = np.asarray(self.center, dtype=float)
        phases = np.asarray(self.phases, dtype=float)
        boresights = np.asarray(self.boresights, dtype=float)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "boresights", boresights)
        if boresights.ndim != 2 or boresights.shape[1] != 3:
            raise ValidationError("configuration: boresights must be (N, 3)")
        if phases.shape != (boresights.shape[0],):
            raise ValidationError(
                "configuration: phases and boresights must agree in length"
            )
        norms = np.linalg.norm(boresights, axis=1)
        if np.any(np.abs(norms - 1.0) > DIRECTION_EPS * 10):
            raise ValidationError("configuration: boresights must be unit vectors")
        if self.tilt_max < np.pi / 2 and not self.within_tilt_limit():
            raise ValidationError("configuration: boresight outside tilt range")

    @property
    def n(self) -> int:
        return self.boresights.shape[0]

    def within_tilt_limit(self) -> bool:
        """Angular feasibility of every boresight against the array normal."""
        cos_to_normal = self.boresights @ DOWNWARD_NORMAL
        angles = np.arccos(np.clip(cos_to_normal, -1.0, 1.0))
        return bool(np.all(angles >= self.tilt_max - 1e-12))


def phasor_terms(
    scenario: "Scenario", config: IrsConfiguration
) -> NDArray[np.complex128]:
    """Per-element complex contributions to the cascaded channel sum.

    The SNR is ``snr_coefficient * |sum(phasor_terms)| ** 2``. Exposed
    separately so phase-alignment behaviour can be inspected term by term.
    """
    geom = link_geometry(scenario, config.center)
    q = scenario.pattern.q
    cos_b = np.sum(geom.r_b * config.boresights, axis=1)
    cos_t = np.sum(geom.r_t * config.boresights, axis=1)
    amplitude = (
        halfspace_gain_factor(cos_b, q)
        * halfspace_gain_factor(cos_t, q)
        / (geom.d_b**2 * geom.d_t**2)
    )
    phase = config.phases + propagation_phase(geom, scenario.budget.lambda_c)
    return amplitude * np.exp(1j * phase)


def snr(scenario: "Scenario", config: IrsConfiguration) -> float:
    """Received SNR for an arbitrary configuration (coherent phasor sum)."""
    coherent = np.sum(phasor_terms(scenario, config))
    coeff = snr_coefficient(scenario.pattern, scenario.budget)
    return coeff * float(np.abs(coherent)) ** 2


def snr_given_optimal_phase(
    scenario: "Scenario", center: Vec3, boresights: NDArray[np.float64]
) -> float:
    """Received SNR when phase shifts cancel all propagation phases.

    With aligned phases every element contributes a nonnegative real
    amplitude, so the coherent sum collapses to a real sum and no complex
    arithmetic is needed.
    """
    geom = link_geometry(scenario, center)
    q = scenario.pattern.q
    boresights = np.asarray(boresights, dtype=float)
    cos_b = np.sum(geom.r_b * boresights, axis=1)
    cos_t = np.sum(geom.r_t * boresights, axis=1)
    amplitude = (
        halfspace_gain_factor(cos_b, q)
        * halfspace_gain_factor(cos_t, q)
        / (geom.d_b**2 * geom.d_t**2)
    )
    coeff = snr_coefficient(scenario.pattern, scenario.budget)
    return coeff * float(amplitude.sum()) ** 2
