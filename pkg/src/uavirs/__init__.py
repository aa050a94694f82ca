"""SNR-optimal placement, rotation, and phase design for a UAV-mounted
reflecting surface relaying between a blocked base station and a ground
terminal.

The public surface mirrors the pipeline: geometry primitives, the
directive-pattern SNR evaluator, closed-form phase/rotation solvers, the
projected-gradient placement optimizer, brute-force oracles, and the
experiment runners behind the CLI.
"""

from .closed_form import (
    BisectorSolution,
    align_phases,
    bisector_gain_sum,
    optimal_rotation,
    placement_objective,
    placement_objective_batch,
)
from .errors import (
    AntipodalGeometryError,
    BudgetExceededError,
    DegenerateGeometryError,
    GeometryError,
    ScenarioParseError,
    UavIrsError,
    ValidationError,
)
from .geometry import (
    AirspaceBox,
    ArrayGeometry,
    Vec3,
    build_upa_offsets,
    compute_dmin,
    point_to_box_distance,
    project_to_box,
)
from .optimizer import (
    OptimizerParams,
    OptimizerReport,
    lipschitz_constant,
    mm_step,
    objective_gradient,
    optimize_placement,
    optimize_placement_multistart,
)
from .oracle import (
    GridSearchResult,
    dense_eigs_3x3,
    fd_gradient,
    grid_search,
    random_rotation_search,
)
from .radiation import (
    IrsConfiguration,
    LinkBudget,
    LinkGeometry,
    PatternParams,
    element_gain,
    link_geometry,
    phasor_terms,
    snr,
    snr_coefficient,
    snr_given_optimal_phase,
)
from .scenario import (
    Scenario,
    SweepSpec,
    bundled_scenario,
    load_scenario,
    resolve_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AirspaceBox",
    "AntipodalGeometryError",
    "ArrayGeometry",
    "BisectorSolution",
    "BudgetExceededError",
    "DegenerateGeometryError",
    "GeometryError",
    "GridSearchResult",
    "IrsConfiguration",
    "LinkBudget",
    "LinkGeometry",
    "OptimizerParams",
    "OptimizerReport",
    "PatternParams",
    "Scenario",
    "ScenarioParseError",
    "SweepSpec",
    "UavIrsError",
    "ValidationError",
    "Vec3",
    "align_phases",
    "bisector_gain_sum",
    "build_upa_offsets",
    "bundled_scenario",
    "compute_dmin",
    "dense_eigs_3x3",
    "element_gain",
    "fd_gradient",
    "grid_search",
    "link_geometry",
    "lipschitz_constant",
    "load_scenario",
    "mm_step",
    "objective_gradient",
    "optimal_rotation",
    "optimize_placement",
    "optimize_placement_multistart",
    "phasor_terms",
    "placement_objective",
    "placement_objective_batch",
    "point_to_box_distance",
    "project_to_box",
    "random_rotation_search",
    "resolve_scenario",
    "snr",
    "snr_coefficient",
    "snr_given_optimal_phase",
]
