"""Matplotlib renderings of the experiment outputs.

Each writer takes the same in-memory result the CSV/JSON writers consume
and saves one figure next to the delimited file. Rendering is best-effort
presentation; the delimited files remain the normative outputs.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

if TYPE_CHECKING:
    from .experiments import HeatmapGrid, ResultTable
    from .optimizer import OptimizerReport
    from .scenario import Scenario


def _grouped_by_q(table: "ResultTable") -> dict[float, list[tuple[float, ...]]]:
    groups: dict[float, list[tuple[float, ...]]] = {}
    for row in table.rows:
        groups.setdefault(row[0], []).append(row)
    return groups


def save_power_sweep_plot(table: "ResultTable", path: str | Path) -> None:
    """Optimized SNR curves versus transmit power, one line per q."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for q, rows in sorted(_grouped_by_q(table).items()):
        p = [r[1] for r in rows]
        s = [r[2] for r in rows]
        ax.plot(p, s, marker="o", markersize=3.5, label=f"q = {q:g}")
    ax.set_xlabel("Transmit power (dBm)")
    ax.set_ylabel("Optimized SNR (dB)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_case_study_plot(table: "ResultTable", scenario: "Scenario", path: str | Path) -> None:
    """Optimized centers and mean boresights in the x-z plane."""
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    box = scenario.airspace
    ax.add_patch(
        plt.Rectangle(
            (box.lo[0], box.lo[2]),
            box.hi[0] - box.lo[0],
            box.hi[2] - box.lo[2],
            fill=False,
            linestyle="--",
            edgecolor="gray",
            label="airspace",
        )
    )
    ax.plot(scenario.bs[0], scenario.bs[2], "k^", markersize=9, label="BS")
    ax.plot(scenario.gt[0], scenario.gt[2], "ks", markersize=8, label="GT")
    arrow_len = 0.12 * float(box.hi[2] - box.lo[2] + 1.0)
    for q, rows in sorted(_grouped_by_q(table).items()):
        (row,) = rows[:1]
        _, x, _, z, fx, _, fz, _ = row
        (point,) = ax.plot(x, z, "o", markersize=6, label=f"q = {q:g}")
        ax.annotate(
            "",
            xy=(x + arrow_len * fx, z + arrow_len * fz),
            xytext=(x, z),
            arrowprops={"arrowstyle": "->", "color": point.get_color(), "lw": 1.6},
        )
    ax.set_xlabel("x (m)")
    ax.set_ylabel("z (m)")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_heatmap_plot(grid: "HeatmapGrid", scenario: "Scenario", path: str | Path) -> None:
    """Normalized-gain map over the x-z slice, diverging scale around 0 dB."""
    fig, ax = plt.subplots(figsize=(6.4, 3.6))
    span = float(np.max(np.abs(grid.gain_db)))
    mesh = ax.pcolormesh(
        grid.x, grid.z, grid.gain_db, cmap="RdBu_r", vmin=-span, vmax=span, shading="nearest"
    )
    fig.colorbar(mesh, ax=ax, label=f"gain q={grid.q_num:g} vs q={grid.q_den:g} (dB)")
    ax.plot(scenario.bs[0], scenario.bs[2], "k^", markersize=9)
    ax.plot(scenario.gt[0], scenario.gt[2], "ks", markersize=8)
    ax.set_xlabel("x (m)")
    ax.set_ylabel("z (m)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_trajectory_plot(report: "OptimizerReport", scenario: "Scenario", path: str | Path) -> None:
    """Ascent path of the placement iterate in the x-z plane."""
    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    box = scenario.airspace
    ax.add_patch(
        plt.Rectangle(
            (box.lo[0], box.lo[2]),
            box.hi[0] - box.lo[0],
            box.hi[2] - box.lo[2],
            fill=False,
            linestyle="--",
            edgecolor="gray",
        )
    )
    points = np.array([p for p, _ in report.trajectory])
    ax.plot(points[:, 0], points[:, 2], "-o", markersize=2.5, lw=1.0, label="iterates")
    ax.plot(points[-1, 0], points[-1, 2], "r*", markersize=12, label="final")
    ax.plot(scenario.bs[0], scenario.bs[2], "k^", markersize=9, label="BS")
    ax.plot(scenario.gt[0], scenario.gt[2], "ks", markersize=8, label="GT")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("z (m)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
