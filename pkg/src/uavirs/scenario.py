"""Scenario definition and strict JSON ingestion.

A scenario file is a single JSON object with sections::

    {
      "bs":       [x, y] or [x, y, z],          # base-station location, m
      "gt":       [x, y] or [x, y, z],          # ground-terminal location, m
      "airspace": {"min": [x,y,z], "max": [x,y,z]},
      "array":    {"nx": int, "ny": int, "dx": m, "dy": m},
      "pattern":  {"q": real >= 0},
      "budget":   {"beta0": .., "lambda_c": .., "p_b": .., "sigma2": ..}
    }

Terminals given as 2-vectors sit on the ground (z = 0); a third component
overrides the altitude explicitly. The ``budget`` section and its
individual keys are optional and fall back to the documented defaults
(``beta0=1``, ``lambda_c=0.05`` m, ``p_b=1`` W, ``sigma2=1e-11`` W); every
other section is required. Unknown keys anywhere are rejected by name, so
typos fail loudly instead of being ignored.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ScenarioParseError, ValidationError
from .geometry import (
    AirspaceBox,
    ArrayGeometry,
    Vec3,
    build_upa_offsets,
    compute_dmin,
)
from .radiation import LinkBudget, PatternParams

#: Names resolvable by :func:`bundled_scenario`.
BUNDLED_SCENARIOS = ("fig3", "fig4")


@dataclass(frozen=True, eq=False)
class Scenario:
    """One complete problem instance: terminals, airspace, array, pattern,
    link budget."""

    bs: Vec3
    gt: Vec3
    airspace: AirspaceBox
    array: ArrayGeometry
    pattern: PatternParams
    budget: LinkBudget

    def __post_init__(self) -> None:
        for name in ("bs", "gt"):
            value = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, value)
            if value.shape != (3,) or not np.isfinite(value).all():
                raise ValidationError(f"{name}: location must be a finite 3-vector")
        # Raises DegenerateGeometryError when a terminal is reachable.
        compute_dmin(self)

    def with_q(self, q: float) -> "Scenario":
        """Copy of this scenario with a different directivity factor."""
        return dataclasses.replace(self, pattern=PatternParams(q=q))

    def to_dict(self) -> dict:
        """JSON-ready dictionary mirroring the file schema (all defaults
        materialized)."""
        return {
            "bs": [float(v) for v in self.bs],
            "gt": [float(v) for v in self.gt],
            "airspace": {
                "min": [float(v) for v in self.airspace.lo],
                "max": [float(v) for v in self.airspace.hi],
            },
            "array": {
                "nx": self.array.nx,
                "ny": self.array.ny,
                "dx": self.array.dx,
                "dy": self.array.dy,
            },
            "pattern": {"q": self.pattern.q},
            "budget": {
                "beta0": self.budget.beta0,
                "lambda_c": self.budget.lambda_c,
                "p_b": self.budget.p_b,
                "sigma2": self.budget.sigma2,
            },
        }


@dataclass(frozen=True)
class SweepSpec:
    """Parameters of one experiment run.

    ``kind`` is one of ``power_sweep``, ``heatmap``, ``case_study``,
    ``single_optimize``. ``q_list`` drives every kind; for heatmaps it must
    hold exactly (numerator, denominator). ``heatmap_plane`` is the fixed-y
    slice value.
    """

    kind: str
    q_list: tuple[float, ...]
    power_list_dbm: tuple[float, ...] = ()
    heatmap_resolution: float = 2.5
    heatmap_plane: float = 0.0

    def __post_init__(self) -> None:
        kinds = ("power_sweep", "heatmap", "case_study", "single_optimize")
        if self.kind not in kinds:
            raise ValidationError(f"sweep: kind must be one of {kinds}")
        if len(self.q_list) == 0:
            raise ValidationError("sweep: q_list must be nonempty")
        if self.kind == "power_sweep" and len(self.power_list_dbm) == 0:
            raise ValidationError("sweep: power_list_dbm must be nonempty")
        if self.kind == "heatmap" and len(self.q_list) != 2:
            raise ValidationError(
                "sweep: heatmap needs exactly two q values (numerator, denominator)"
            )
        if self.heatmap_resolution <= 0:
            raise ValidationError("sweep: heatmap_resolution must be positive")


def _require_mapping(raw: object, section: str) -> dict:
    if not isinstance(raw, dict):
        raise ValidationError(f"{section}: expected an object")
    return raw


def _reject_unknown(data: dict, allowed: set[str], section: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ValidationError(f"{section}: unknown key {unknown[0]!r}")


def _terminal(raw: object, name: str) -> Vec3:
    if not isinstance(raw, (list, tuple)) or len(raw) not in (2, 3):
        raise ValidationError(f"{name}: expected [x, y] or [x, y, z]")
    values = [float(v) for v in raw]
    if len(values) == 2:
        values.append(0.0)  # ground level unless explicitly overridden
    return np.array(values, dtype=float)


def _number(data: dict, key: str, section: str) -> float:
    if key not in data:
        raise ValidationError(f"{section}: missing key {key!r}")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{section}: {key} must be a number")
    return float(value)


def scenario_from_dict(data: dict) -> Scenario:
    """Build and validate a scenario from decoded JSON."""
    data = _require_mapping(data, "scenario")
    _reject_unknown(
        data, {"bs", "gt", "airspace", "array", "pattern", "budget"}, "scenario"
    )
    for required in ("bs", "gt", "airspace", "array", "pattern"):
        if required not in data:
            raise ValidationError(f"scenario: missing section {required!r}")

    airspace_raw = _require_mapping(data["airspace"], "airspace")
    _reject_unknown(airspace_raw, {"min", "max"}, "airspace")
    for corner in ("min", "max"):
        if corner not in airspace_raw or len(airspace_raw[corner]) != 3:
            raise ValidationError(f"airspace: {corner} must be a 3-vector")
    airspace = AirspaceBox(
        lo=np.array([float(v) for v in airspace_raw["min"]]),
        hi=np.array([float(v) for v in airspace_raw["max"]]),
    )

    array_raw = _require_mapping(data["array"], "array")
    _reject_unknown(array_raw, {"nx", "ny", "dx", "dy"}, "array")
    nx = _number(array_raw, "nx", "array")
    ny = _number(array_raw, "ny", "array")
    if nx != int(nx) or ny != int(ny):
        raise ValidationError("array: nx and ny must be integers")
    array = build_upa_offsets(
        int(nx), int(ny), _number(array_raw, "dx", "array"), _number(array_raw, "dy", "array")
    )

    pattern_raw = _require_mapping(data["pattern"], "pattern")
    _reject_unknown(pattern_raw, {"q"}, "pattern")
    pattern = PatternParams(q=_number(pattern_raw, "q", "pattern"))

    budget_raw = _require_mapping(data.get("budget", {}), "budget")
    _reject_unknown(budget_raw, {"beta0", "lambda_c", "p_b", "sigma2"}, "budget")
    defaults = LinkBudget()
    budget = LinkBudget(
        beta0=float(budget_raw.get("beta0", defaults.beta0)),
        lambda_c=float(budget_raw.get("lambda_c", defaults.lambda_c)),
        p_b=float(budget_raw.get("p_b", defaults.p_b)),
        sigma2=float(budget_raw.get("sigma2", defaults.sigma2)),
    )

    return Scenario(
        bs=_terminal(data["bs"], "bs"),
        gt=_terminal(data["gt"], "gt"),
        airspace=airspace,
        array=array,
        pattern=pattern,
        budget=budget,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario file.

    Parse failures carry the line/column from the JSON decoder; validation
    failures name the offending section or key.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"{path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_dict(data)


def bundled_scenario(name: str) -> Scenario:
    """Load one of the scenarios shipped with the package.

    ``fig3`` is the short-range demo (25 m link, 20x20 array); ``fig4`` is
    the wide-area demo (150 m link, 60x60 array) used for gain heatmaps.
    """
    stem = name.removesuffix(".json")
    if stem not in BUNDLED_SCENARIOS:
        raise ScenarioParseError(
            f"unknown bundled scenario {name!r}; available: {', '.join(BUNDLED_SCENARIOS)}"
        )
    text = resources.files("uavirs.data").joinpath(f"{stem}.json").read_text("utf-8")
    return scenario_from_dict(json.loads(text))


def resolve_scenario(arg: str) -> Scenario:
    """CLI-friendly resolution: an existing file path wins, then bundled
    names."""
    path = Path(arg)
    if path.exists():
        return load_scenario(path)
    stem = arg.removesuffix(".json")
    if stem in BUNDLED_SCENARIOS:
        return bundled_scenario(stem)
    raise ScenarioParseError(f"{arg}: no such file or bundled scenario")
