"""Exception hierarchy shared across the package.

The CLI maps these onto distinct process exit codes, so keep the
classes coarse: one per failure family, not one per call site.
"""


class UavIrsError(Exception):
    """Base class for all errors raised by this package."""


class ScenarioParseError(UavIrsError):
    """Scenario file could not be read or decoded."""


class ValidationError(UavIrsError):
    """An input violates a documented invariant (named in the message)."""


class GeometryError(UavIrsError):
    """Base class for geometric failure modes."""


class DegenerateGeometryError(GeometryError):
    """A terminal coincides with (or is too close to) a reflecting element."""


class AntipodalGeometryError(GeometryError):
    """The two link directions are opposite; no boresight serves both."""


class BudgetExceededError(UavIrsError):
    """A brute-force operation would exceed its cell/memory budget."""
