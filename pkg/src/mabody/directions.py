"""Unit-direction grids on S^{n-1} for n in {1, 2, 3}."""

from __future__ import annotations

import functools

import numpy as np


@functools.lru_cache(maxsize=32)
def _direction_grid_cached(n: int, count: int) -> np.ndarray:
    out = _direction_grid(n, count)
    out.setflags(write=False)
    return out


def direction_grid(n: int, count: int) -> np.ndarray:
    """Cached (count, n) array of unit vectors; see ``_direction_grid``."""
    return _direction_grid_cached(n, count)


def _direction_grid(n: int, count: int) -> np.ndarray:
    """Return a (count, n) array of unit vectors.

    n=1: the two directions +-1 (count ignored beyond 2).
    n=2: uniformly spaced angles, endpoint excluded.
    n=3: Fibonacci spiral points, near-equal-area coverage.
    """
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        theta = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if n == 3:
        k = np.arange(count)
        golden = (1.0 + np.sqrt(5.0)) / 2.0
        z = 1.0 - (2.0 * k + 1.0) / count
        phi = 2.0 * np.pi * k / golden
        rho = np.sqrt(np.maximum(1.0 - z * z, 0.0))
        return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    raise ValueError(f"unsupported dimension {n}")


def sphere_weight(n: int, count: int) -> float:
    """Equal quadrature weight per direction for integrating over S^{n-1}."""
    if n == 1:
        return 1.0
    if n == 2:
        return 2.0 * np.pi / count
    if n == 3:
        return 4.0 * np.pi / count
    raise ValueError(f"unsupported dimension {n}")
