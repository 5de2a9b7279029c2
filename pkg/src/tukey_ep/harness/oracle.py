"""Exhaustive grid search over the antenna design box.

This is the brute-force reference the optimizer is validated against: it
evaluates the fitness at every grid cell and keeps the first minimum in
row-major order, so ties resolve to the lowest theta_0, then lowest f12.
"""

from __future__ import annotations

import math

import numpy as np

from ..dragonian import DragonianGivens, DragonianVars, FitnessConfig, fitness_grid

__all__ = ["grid_search_oracle", "grid_axis"]

# Rows of theta_0 values processed per chunk; keeps peak memory modest on
# fine grids without affecting the scan order.
_CHUNK_ROWS = 64


def grid_axis(low: float, high: float, resolution: float) -> np.ndarray:
    """Inclusive axis from low to high in steps of ``resolution``."""
    if not (math.isfinite(low) and math.isfinite(high) and low < high):
        raise ValueError(f"range must satisfy low < high, got ({low}, {high})")
    if resolution <= 0.0:
        raise ValueError(f"resolution must be > 0, got {resolution}")
    count = int(round((high - low) / resolution)) + 1
    return np.linspace(low, high, count)


def grid_search_oracle(
    givens: DragonianGivens,
    fc: FitnessConfig,
    theta0_range: tuple[float, float] = (-90.0, -70.0),
    f12_range: tuple[float, float] = (85.0, 105.0),
    resolution: float = 0.01,
) -> tuple[DragonianVars, float]:
    """Evaluate every cell of the (theta_0, f12) grid and return the minimizer."""
    theta0_axis = grid_axis(theta0_range[0], theta0_range[1], resolution)
    f12_axis = grid_axis(f12_range[0], f12_range[1], resolution)

    best_value = math.inf
    best_vars = DragonianVars(float(theta0_axis[0]), float(f12_axis[0]))
    for start in range(0, theta0_axis.size, _CHUNK_ROWS):
        rows = theta0_axis[start : start + _CHUNK_ROWS]
        values = fitness_grid(givens, fc, rows[:, None], f12_axis[None, :])
        flat = int(np.argmin(values))
        value = float(values.flat[flat])
        # strict comparison keeps the earliest minimum in scan order
        if value < best_value:
            r, c = np.unravel_index(flat, values.shape)
            best_value = value
            best_vars = DragonianVars(float(rows[r]), float(f12_axis[c]))
    return best_vars, best_value
