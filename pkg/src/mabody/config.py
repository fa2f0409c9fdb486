"""Numeric configuration: tolerances, grid resolutions, seeds.

Every solver tolerance used anywhere in the library lives here so that the
CLI can override any of them.  A config can also be loaded from a JSON file
pointed at by the MABODY_CONFIG environment variable.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # b* solver
    bisection_rel_tol: float = 1e-4
    containment_tol: float = 1e-9
    theta_grid: int = 512
    theta_refine_tol: float = 1e-10
    simplex_max_iter: int = 2000
    simplex_tol: float = 1e-10

    # geometry queries
    boundary_gauge_tol: float = 1e-10
    interior_margin: float = 1e-9
    symmetry_tol: float = 1e-9
    hausdorff_directions_2d: int = 720
    hausdorff_directions_3d: int = 2562

    # directional profiles / density
    profile_directions_2d: int = 720
    profile_directions_3d: int = 2562

    # boundary-sphere searches (bstar_symmetric, v_k_symmetric)
    polar_grid_2d: int = 4096
    polar_grid_3d: int = 20480

    # mass integration
    mass_margins: tuple[float, float] = (1e-2, 5e-3)
    mass_grid: int = 101
    layer_depth: float = 0.05
    layer_nodes: int = 12
    layer_directions_2d: int = 512
    layer_directions_3d: int = 1280

    # finite-difference delta_b limit
    fd_t_sequence: tuple[float, ...] = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3)

    # a-maximality probe
    translate_directions_2d: int = 64
    translate_directions_3d: int = 256
    translate_steps: tuple[float, ...] = (1e-2, 1e-3, 1e-4)

    seed: int = 42
    threads: int = 1

    def __post_init__(self):
        for name in ("bisection_rel_tol", "containment_tol", "theta_refine_tol",
                     "simplex_tol", "boundary_gauge_tol", "symmetry_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.theta_grid < 16:
            raise ValueError("theta_grid must be at least 16")
        if self.mass_grid < 11:
            raise ValueError("mass_grid must be at least 11")

    def replace(self, **kwargs) -> "Config":
        return dataclasses.replace(self, **kwargs)

    def fast(self) -> "Config":
        """Halved resolutions for quick runs; accuracy degrades accordingly."""
        return self.replace(
            theta_grid=max(self.theta_grid // 2, 16),
            profile_directions_2d=self.profile_directions_2d // 2,
            profile_directions_3d=self.profile_directions_3d // 2,
            polar_grid_2d=self.polar_grid_2d // 2,
            polar_grid_3d=self.polar_grid_3d // 2,
            mass_grid=max(self.mass_grid // 2 | 1, 11),
            layer_directions_2d=self.layer_directions_2d // 2,
            layer_directions_3d=self.layer_directions_3d // 2,
            layer_nodes=max(self.layer_nodes // 2, 6),
        )

    @classmethod
    def from_file(cls, path: str) -> "Config":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key in ("mass_margins", "fd_t_sequence", "translate_steps"):
            if key in data:
                data[key] = tuple(data[key])
        return cls(**data)

    @classmethod
    def from_env(cls) -> "Config":
        path = os.environ.get("MABODY_CONFIG")
        if path:
            return cls.from_file(path)
        return cls()


DEFAULT = Config()
