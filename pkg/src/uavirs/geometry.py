"""3-D vector primitives, planar-array element layout, and box operations.

Vectors are plain ``numpy`` arrays of shape ``(3,)``; the ``Vec3`` alias is
documentation, not a wrapper type. All functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from .errors import DegenerateGeometryError, ValidationError

if TYPE_CHECKING:
    from .scenario import Scenario

Vec3 = NDArray[np.float64]

#: Tolerance below which a would-be direction vector is considered zero.
DIRECTION_EPS = 1e-12


def vec3(x: float, y: float, z: float) -> Vec3:
    return np.array([x, y, z], dtype=float)


def unit(v: Vec3) -> Vec3:
    """Normalize ``v`` to unit length; reject near-zero input."""
    n = float(np.linalg.norm(v))
    if n < DIRECTION_EPS:
        raise ValidationError("direction: cannot normalize a near-zero vector")
    return np.asarray(v, dtype=float) / n


@dataclass(frozen=True, eq=False)
class AirspaceBox:
    """Axis-aligned box of admissible reflector center locations, metres."""

    lo: Vec3
    hi: Vec3

    def __post_init__(self) -> None:
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo.shape != (3,) or hi.shape != (3,):
            raise ValidationError("airspace: corners must be 3-vectors")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValidationError("airspace: corners must be finite")
        if np.any(lo > hi):
            raise ValidationError("airspace: min corner exceeds max corner")

    def contains(self, p: Vec3, atol: float = 0.0) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.lo - atol) and np.all(p <= self.hi + atol))

    def center(self) -> Vec3:
        return 0.5 * (self.lo + self.hi)

    def corners(self) -> NDArray[np.float64]:
        """All 8 corners, ordered by (x, y, z) bit pattern. Shape (8, 3)."""
        out = np.empty((8, 3))
        for k in range(8):
            out[k] = [
                self.hi[0] if k & 4 else self.lo[0],
                self.hi[1] if k & 2 else self.lo[1],
                self.hi[2] if k & 1 else self.lo[2],
            ]
        return out


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Uniform planar array layout: element counts, spacings, fixed offsets.

    ``offsets`` holds the per-element displacement of each element from the
    array center, in the array plane (z component zero), shape (nx*ny, 3).
    The layout is centered, so the offsets sum to zero and the array center
    coincides with the reflector center location.
    """

    nx: int
    ny: int
    dx: float
    dy: float
    offsets: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1:
            raise ValidationError("array: element counts must be positive")
        if self.dx <= 0 or self.dy <= 0:
            raise ValidationError("array: element spacings must be positive")
        offsets = np.asarray(self.offsets, dtype=float)
        object.__setattr__(self, "offsets", offsets)
        if offsets.shape != (self.nx * self.ny, 3):
            raise ValidationError("array: offsets must have nx*ny rows of 3")
        if np.any(offsets[:, 2] != 0.0):
            raise ValidationError("array: offsets must lie in the z=0 plane")
        if np.any(np.abs(offsets.sum(axis=0)) > 1e-9):
            raise ValidationError("array: offsets must be centered (sum zero)")

    @property
    def n(self) -> int:
        return self.nx * self.ny


def build_upa_offsets(nx: int, ny: int, dx: float, dy: float) -> ArrayGeometry:
    """Build the centered uniform planar array layout.

    Element (i, j) sits at ``[(i - (nx-1)/2) * dx, (j - (ny-1)/2) * dy, 0]``,
    enumerated row-major with i (x axis) as the outer index. Centering makes
    the offset sum exactly zero so the array center is the mean element
    position.
    """
    if nx < 1 or ny < 1:
        raise ValidationError("array: element counts must be positive")
    if dx <= 0 or dy <= 0:
        raise ValidationError("array: element spacings must be positive")
    i = np.arange(nx) - (nx - 1) / 2.0
    j = np.arange(ny) - (ny - 1) / 2.0
    xs = np.repeat(i * dx, ny)
    ys = np.tile(j * dy, nx)
    offsets = np.column_stack([xs, ys, np.zeros(nx * ny)])
    return ArrayGeometry(nx=nx, ny=ny, dx=dx, dy=dy, offsets=offsets)


def project_to_box(p: Vec3, box: AirspaceBox) -> Vec3:
    """Clamp each component of ``p`` into the box (idempotent)."""
    return np.clip(np.asarray(p, dtype=float), box.lo, box.hi)


def point_to_box_distance(p: Vec3, box: AirspaceBox) -> float:
    """Euclidean distance from ``p`` to the nearest point of the box."""
    p = np.asarray(p, dtype=float)
    return float(np.linalg.norm(p - project_to_box(p, box)))


def compute_dmin(scenario: "Scenario") -> float:
    """Smallest possible terminal-to-element distance over the airspace.

    For each element offset the set of reachable element positions is the
    airspace box translated by that offset; the minimum distance from either
    terminal to any such set is computed exactly by box clipping. A zero
    result means a terminal is reachable by an element, which makes the
    placement objective's gradient bound undefined, so that case raises.
    """
    box = scenario.airspace
    offsets = scenario.array.offsets
    best = np.inf
    for terminal in (scenario.bs, scenario.gt):
        shifted = terminal[None, :] - offsets
        clipped = np.clip(shifted, box.lo, box.hi)
        d = np.linalg.norm(shifted - clipped, axis=1)
        best = min(best, float(d.min()))
    if best <= 0.0:
        raise DegenerateGeometryError(
            "airspace: a terminal lies inside the reachable element region"
        )
    return best


def axis_points(lo: float, hi: float, step: float) -> NDArray[np.float64]:
    """Lattice ``lo, lo+step, ...`` covering [lo, hi], endpoints included.

    Anchoring at ``lo`` keeps lattices nested under step halving; ``hi`` is
    appended when the step does not land on it exactly.
    """
    if step <= 0:
        raise ValidationError("lattice: step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-12)) + 1
    pts = lo + step * np.arange(count)
    if pts[-1] < hi - 1e-12 * max(1.0, abs(hi)):
        pts = np.append(pts, hi)
    return pts
