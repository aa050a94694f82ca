"""Independent brute-force verifiers: grid search, finite differences,
dense eigendecomposition, and random rotation sampling.

Everything here exists to cross-check the closed-form and gradient-based
production paths by a second, unrelated route. None of it is used by the
optimizer itself. All sampling is seeded (see :mod:`uavirs.seeding`), so
every oracle is deterministic given its inputs and seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from .closed_form import optimal_rotation, placement_objective, placement_objective_batch
from .errors import BudgetExceededError, ValidationError
from .geometry import Vec3, axis_points
from .radiation import LinkGeometry, halfspace_gain_factor
from .seeding import DEFAULT_SEED, resolve_seed

if TYPE_CHECKING:
    from .scenario import Scenario

__all__ = [
    "DEFAULT_SEED",
    "GridSearchResult",
    "dense_eigs_3x3",
    "fd_gradient",
    "grid_search",
    "product_gain_term",
    "random_rotation_search",
    "resolve_seed",
    "run_invariant_checks",
    "uniform_unit_vectors",
]

#: Hard cap on lattice cells for grid_search.
MAX_GRID_CELLS = 100_000_000


def uniform_unit_vectors(rng: np.random.Generator, count: int) -> NDArray[np.float64]:
    """``count`` unit vectors uniform on the sphere, shape (count, 3)."""
    v = rng.normal(size=(count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass(frozen=True, eq=False)
class GridSearchResult:
    best_center: Vec3
    best_value: float
    resolution: float
    cells_evaluated: int


def grid_search(scenario: "Scenario", resolution: float) -> GridSearchResult:
    """Exhaustive placement-objective maximization on a box lattice.

    The lattice is anchored at the box minimum corner with the box faces
    included, so halving the resolution refines the previous lattice and the
    best value can only improve. The argmax tie-break is lexicographic in
    (x, y, z), realized by evaluating in lexicographic order and keeping the
    first of any ties.
    """
    box = scenario.airspace
    axes = [axis_points(box.lo[k], box.hi[k], resolution) for k in range(3)]
    cells = axes[0].size * axes[1].size * axes[2].size
    if cells > MAX_GRID_CELLS:
        raise BudgetExceededError(
            f"grid: {cells} cells exceed the {MAX_GRID_CELLS} budget"
        )
    xs, ys, zs = np.meshgrid(*axes, indexing="ij")
    centers = np.column_stack([xs.ravel(), ys.ravel(), zs.ravel()])
    values = placement_objective_batch(scenario, centers)
    best = int(np.argmax(values))  # first occurrence wins: lexicographic order
    return GridSearchResult(
        best_center=centers[best],
        best_value=float(values[best]),
        resolution=resolution,
        cells_evaluated=int(cells),
    )


def fd_gradient(scenario: "Scenario", center: Vec3, step: float) -> Vec3:
    """Central-difference gradient of the placement objective."""
    if step <= 0:
        raise ValidationError("fd: step must be positive")
    center = np.asarray(center, dtype=float)
    probes = np.vstack(
        [center + sign * step * np.eye(3)[axis] for axis in range(3) for sign in (+1.0, -1.0)]
    )
    values = placement_objective_batch(scenario, probes)
    return (values[0::2] - values[1::2]) / (2.0 * step)


def dense_eigs_3x3(m: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Full eigendecomposition of a symmetric 3x3 matrix.

    Returns eigenvalues in descending order and the matching eigenvectors as
    rows. Delegates to LAPACK via ``numpy.linalg.eigh``, which shares
    nothing with the rank-two closed form it is used to check.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise ValidationError("eigs: expected a 3x3 matrix")
    if np.linalg.norm(m - m.T) >= 1e-9:
        raise ValidationError("eigs: matrix is not symmetric")
    w, v = np.linalg.eigh(0.5 * (m + m.T))
    order = np.argsort(w)[::-1]
    return w[order], v[:, order].T


def product_gain_term(geom: LinkGeometry, q: float, f: Vec3, element: int = 0) -> float:
    """Per-element contribution of a candidate boresight to the reduced sum.

    This is the quantity the rotation closed form maximizes:
    ``max(f.r_b, 0)**q * max(f.r_t, 0)**q / (d_b**2 * d_t**2)``.
    """
    f = np.asarray(f, dtype=float)
    cb = float(geom.r_b[element] @ f)
    ct = float(geom.r_t[element] @ f)
    gain = halfspace_gain_factor(cb, q) * halfspace_gain_factor(ct, q)
    return float(gain) / float(geom.d_b[element] ** 2 * geom.d_t[element] ** 2)


def random_rotation_search(
    geom: LinkGeometry,
    q: float,
    samples: int,
    element: int = 0,
    seed: int | None = None,
) -> tuple[Vec3, float]:
    """Best boresight for one element over uniform sphere samples.

    The sampled best can never exceed the closed-form optimum; with enough
    samples it approaches it, which is the check this oracle supports.
    """
    if samples < 1:
        raise ValidationError("rotation search: samples must be >= 1")
    rng = np.random.default_rng(resolve_seed(seed))
    candidates = uniform_unit_vectors(rng, samples)
    cb = candidates @ geom.r_b[element]
    ct = candidates @ geom.r_t[element]
    values = (
        halfspace_gain_factor(cb, q)
        * halfspace_gain_factor(ct, q)
        / float(geom.d_b[element] ** 2 * geom.d_t[element] ** 2)
    )
    best = int(np.argmax(values))
    return candidates[best], float(values[best])


# ---------------------------------------------------------------------------
# Invariant check suite (backs the CLI `check` subcommand)
# ---------------------------------------------------------------------------


def run_invariant_checks(scenario: "Scenario", seed: int | None = None) -> list[tuple[str, bool, str]]:
    """Cross-check the production paths on one scenario.

    Returns (name, passed, detail) triples; the CLI prints one line per
    entry and fails the process if any check fails. Kept fast (a few
    seconds) so it can run routinely against user scenarios.
    """
    from . import optimizer
    from .closed_form import align_phases
    from .geometry import compute_dmin
    from .radiation import IrsConfiguration, link_geometry, phasor_terms

    rng = np.random.default_rng(resolve_seed(seed))
    box = scenario.airspace
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, passed: bool, detail: str) -> None:
        checks.append((name, bool(passed), detail))

    # Box projection: idempotent and non-expansive.
    a = rng.uniform(box.lo - 50.0, box.hi + 50.0, size=(1000, 3))
    b = rng.uniform(box.lo - 50.0, box.hi + 50.0, size=(1000, 3))
    pa = np.clip(a, box.lo, box.hi)
    pb = np.clip(b, box.lo, box.hi)
    idem = np.allclose(np.clip(pa, box.lo, box.hi), pa)
    nonexp = np.all(
        np.linalg.norm(pa - pb, axis=1) <= np.linalg.norm(a - b, axis=1) + 1e-12
    )
    record(
        "box-projection",
        idem and bool(nonexp),
        "idempotent and non-expansive on 1000 random pairs",
    )

    # Minimum terminal distance is positive and matched by dense sampling.
    dmin = compute_dmin(scenario)
    samples = rng.uniform(box.lo, box.hi, size=(2000, 3))
    sampled = np.inf
    for terminal in (scenario.bs, scenario.gt):
        for offset in scenario.array.offsets[:: max(1, scenario.array.n // 16)]:
            d = np.linalg.norm(samples + offset - terminal, axis=1)
            sampled = min(sampled, float(d.min()))
    record(
        "min-terminal-distance",
        dmin > 0 and dmin <= sampled + 1e-9,
        f"dmin={dmin:.6g} m, sampled lower bound {sampled:.6g} m",
    )

    # Closed-form top eigenpair vs dense eigendecomposition.
    worst_val = 0.0
    worst_ang = 0.0
    for _ in range(500):
        d_b = rng.normal(size=3) * rng.uniform(1.0, 50.0)
        d_t = rng.normal(size=3) * rng.uniform(1.0, 50.0)
        nb, nt = np.linalg.norm(d_b), np.linalg.norm(d_t)
        if nb < 1e-6 or nt < 1e-6 or np.dot(d_b / nb, d_t / nt) < -0.99:
            continue
        matrix = 0.5 * (np.outer(d_b, d_t) + np.outer(d_t, d_b))
        closed = 0.5 * (float(d_b @ d_t) + nb * nt)
        bisector = (d_b / nb + d_t / nt)
        bisector /= np.linalg.norm(bisector)
        w, v = dense_eigs_3x3(matrix)
        worst_val = max(worst_val, abs(w[0] - closed) / max(abs(closed), 1e-30))
        worst_ang = max(
            worst_ang, float(np.arccos(min(1.0, abs(float(v[0] @ bisector)))))
        )
    record(
        "rotation-eigen-oracle",
        worst_val < 1e-9 and worst_ang < 1e-6,
        f"max relative eigenvalue error {worst_val:.2e}, max angle {worst_ang:.2e} rad",
    )

    # Sampled boresights never beat the closed form.
    geom = link_geometry(scenario, box.center())
    solution = optimal_rotation(geom, scenario.pattern.q)
    exceed = 0
    fs = uniform_unit_vectors(rng, 2000)
    for element in (0, geom.n - 1):
        cb = fs @ geom.r_b[element]
        ct = fs @ geom.r_t[element]
        vals = (
            halfspace_gain_factor(cb, scenario.pattern.q)
            * halfspace_gain_factor(ct, scenario.pattern.q)
            / float(geom.d_b[element] ** 2 * geom.d_t[element] ** 2)
        )
        exceed += int(np.sum(vals > solution.objective_terms[element] * (1 + 1e-12)))
    record(
        "rotation-optimality",
        exceed == 0,
        "no sampled boresight beat the closed form (2 elements x 2000 samples)",
    )

    # Analytic gradient vs central finite differences.
    worst = 0.0
    for _ in range(25):
        center = rng.uniform(box.lo, box.hi)
        analytic = optimizer.objective_gradient(scenario, center)
        numeric = fd_gradient(scenario, center, 1e-4)
        denom = max(float(np.linalg.norm(analytic)), 1e-300)
        worst = max(worst, float(np.linalg.norm(analytic - numeric)) / denom)
    record(
        "gradient-vs-finite-difference",
        worst < 1e-5,
        f"max relative error {worst:.2e} over 25 random centers",
    )

    # Phase alignment zeroes every term's phase.
    worst_phase = 0.0
    for _ in range(10):
        center = rng.uniform(box.lo, box.hi)
        geom_c = link_geometry(scenario, center)
        config = IrsConfiguration(
            center=center,
            phases=align_phases(geom_c, scenario.budget.lambda_c),
            boresights=optimal_rotation(geom_c, scenario.pattern.q).boresights,
        )
        terms = phasor_terms(scenario, config)
        worst_phase = max(worst_phase, float(np.max(np.abs(np.angle(terms)))))
    record(
        "phase-alignment",
        worst_phase < 1e-9,
        f"max per-term phase {worst_phase:.2e} rad over 10 random centers",
    )

    # Projected ascent is monotone with the analytic step constant.
    lipschitz = optimizer.lipschitz_constant(scenario)
    monotone = True
    for _ in range(20):
        center = rng.uniform(box.lo, box.hi)
        value = placement_objective(scenario, center)
        for _ in range(50):
            center = optimizer.mm_step(scenario, center, lipschitz)
            new_value = placement_objective(scenario, center)
            if new_value < value * (1 - 1e-12):
                monotone = False
                break
            value = new_value
    record("ascent-monotonicity", monotone, "20 random starts x 50 steps")

    # Element pattern integrates to the full-sphere solid angle.
    worst_rel = 0.0
    directions = uniform_unit_vectors(rng, 4_000_000)
    for q in (0.0, 1.0, 2.0, 4.0, 6.0):
        g0 = 2.0 * (2.0 * q + 1.0)
        gains = g0 * halfspace_gain_factor(directions[:, 2], 2.0 * q)
        integral = 4.0 * np.pi * float(gains.mean())
        worst_rel = max(worst_rel, abs(integral - 4.0 * np.pi) / (4.0 * np.pi))
    record(
        "pattern-power-conservation",
        worst_rel < 5e-3,
        f"max relative defect {worst_rel:.2e} over q in {{0,1,2,4,6}}",
    )

    # Nested-lattice refinement can only improve the grid optimum.
    diag = float(np.linalg.norm(box.hi - box.lo))
    coarse = grid_search(scenario, max(diag / 4.0, 1e-6))
    fine = grid_search(scenario, max(diag / 8.0, 1e-6))
    record(
        "grid-refinement",
        fine.best_value >= coarse.best_value * (1 - 1e-12),
        f"coarse {coarse.best_value:.9g} <= fine {fine.best_value:.9g}",
    )

    return checks
