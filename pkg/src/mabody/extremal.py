"""Analytic layer on top of the inscribed-ellipse solver.

delta_b(x, y) = 1/b*(x, y) is, for fixed x, a norm in y.  Its unit ball has
radial function b*(x, u); the Monge-Ampere density is

    lambda(x) = n! vol({y : delta_b(x, y) <= 1}*)

and integrates to (2 pi)^n over the interior of the body.  For
origin-symmetric bodies the extremal function has the polar-dual closed form
V_K(z) = sup_{Z in K*} log|h(z.Z)| with h the exterior Joukowski branch, and
for the unit ball Lundin's explicit formula; both serve as oracles for the
foliation and finite-difference checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .body import Ball, ConvexBody, Ellipsoid, _Polytope
from .config import DEFAULT, Config
from .directions import direction_grid, sphere_weight
from .ellipse import _require_interior, _unit, bstar_many
from .errors import DegenerateProfile, NotSymmetric

FACTORIAL = {1: 1.0, 2: 2.0, 3: 6.0}


# -- directional profiles and densities ----------------------------------

@dataclass(frozen=True)
class DirectionalProfile:
    """Sampled radial function u -> b*(x, u) of the delta_b unit ball."""
    x: np.ndarray
    directions: np.ndarray  # (d, n) unit vectors
    radii: np.ndarray       # (d,) positive


def delta_b(K: ConvexBody, x, y, cfg: Config = DEFAULT) -> float:
    """delta_b(x, y) = 1/b*(x, y), exact per-representation engine."""
    x = _require_interior(K, x)
    y, ny = _unit(y)
    b = float(bstar_many(K, x, y[None, :], cfg)[0])
    return ny / b


def directional_profile(K: ConvexBody, x, cfg: Config = DEFAULT) -> DirectionalProfile:
    x = _require_interior(K, x)
    count = {1: 2, 2: cfg.profile_directions_2d, 3: cfg.profile_directions_3d}[K.n]
    U = direction_grid(K.n, count)
    radii = bstar_many(K, x, U, cfg)
    return DirectionalProfile(x=x, directions=U, radii=radii)


_GRAM_CACHE: dict = {}


def _gram(U: np.ndarray) -> np.ndarray:
    """Cached U @ U.T for the (immutable) cached direction grids."""
    key = (U.shape, U.__array_interface__["data"][0])
    G = _GRAM_CACHE.get(key)
    if G is None:
        if len(_GRAM_CACHE) > 8:
            _GRAM_CACHE.clear()
        G = U @ U.T
        _GRAM_CACHE[key] = G
    return G


def polar_volume(profile: DirectionalProfile, cfg: Config = DEFAULT) -> float:
    """vol(E*) for E given by its sampled radial function.

    The polar's radial function is the reciprocal support function of E:
    rho_{E*}(u) = 1/h_E(u) with h_E(u) = max_v (u.v) rho_E(v), and
    vol(E*) = (1/n) int_{S^{n-1}} rho_{E*}^n dsigma.
    """
    rho = profile.radii
    if np.any(~np.isfinite(rho)) or np.any(rho <= 0):
        raise DegenerateProfile("profile radii must be positive and finite")
    U = profile.directions
    n = U.shape[1]
    if n == 1:
        # E = [-rho_-, rho_+]  =>  E* = [-1/rho_-, 1/rho_+]
        return float(1.0 / rho[0] + 1.0 / rho[1])
    h = np.max(_gram(U) * rho[None, :], axis=1)
    rho_polar = 1.0 / h
    w = sphere_weight(n, U.shape[0])
    return float(np.sum(rho_polar**n) * w / n)


def density(K: ConvexBody, x, cfg: Config = DEFAULT) -> float:
    """Monge-Ampere density lambda(x) = n! vol({y : delta_b <= 1}*)."""
    return FACTORIAL[K.n] * polar_volume(directional_profile(K, x, cfg), cfg)


# -- density fields and total mass ---------------------------------------

@dataclass(frozen=True)
class DensityField:
    body: ConvexBody
    spacing: np.ndarray      # (n,) grid step per axis
    points: np.ndarray       # (N, n) interior sample points
    values: np.ndarray       # (N,) lambda values
    clearance: float         # gauge clip: gauge <= 1 - clearance
    rule: str
    mass: float

    def to_csv(self, path: str):
        n = self.points.shape[1]
        header = ",".join(f"x{i + 1}" for i in range(n)) + ",lambda"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for p, v in zip(self.points, self.values):
                coords = ",".join(format(c, ".12g") for c in p)
                fh.write(f"{coords},{format(v, '.12g')}\n")


def _interior_grid(K: ConvexBody, grid: int, clearance: float):
    """Cell-centered grid over the bounding box, clipped to
    gauge <= 1 - clearance."""
    n = K.n
    lo = np.array([-K.support(-e) for e in np.eye(n)])
    hi = np.array([K.support(e) for e in np.eye(n)])
    h = (hi - lo) / grid
    axes = [lo[i] + (np.arange(grid) + 0.5) * h[i] for i in range(n)]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([m.ravel() for m in mesh])
    g = K.gauge_many(pts)
    mask = g <= 1.0 - clearance
    return pts[mask], g[mask], h


def density_field(K: ConvexBody, cfg: Config = DEFAULT, grid: int | None = None,
                  clearance: float | None = None) -> DensityField:
    grid = grid or cfg.mass_grid
    clearance = cfg.mass_margins[-1] if clearance is None else clearance
    pts, _, h = _interior_grid(K, grid, clearance)
    vals = np.array([density(K, p, cfg) for p in pts])
    mass = float(np.sum(vals) * np.prod(h))
    return DensityField(body=K, spacing=h, points=pts, values=vals,
                        clearance=clearance, rule=f"midpoint-{grid}", mass=mass)


def _bulk_mass(K: ConvexBody, grid: int, depth: float, cfg: Config) -> float:
    """Midpoint mass over {gauge <= 1 - depth}, where the density is smooth.

    Cells straddling the clip boundary contribute their subsampled inside
    fraction, with the density taken at the centroid of the inside
    subsamples (an interior point, since the gauge sublevel set is convex).
    """
    n = K.n
    lo = np.array([-K.support(-e) for e in np.eye(n)])
    hi = np.array([K.support(e) for e in np.eye(n)])
    h = (hi - lo) / grid
    axes = [lo[i] + (np.arange(grid) + 0.5) * h[i] for i in range(n)]
    centers = np.column_stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")])
    q = 4 if n <= 2 else 2
    sub = np.column_stack([m.ravel() for m in np.meshgrid(
        *[((np.arange(q) + 0.5) / q - 0.5) * h[i] for i in range(n)],
        indexing="ij")])
    g_sub = K.gauge_many(
        (centers[:, None, :] + sub[None, :, :]).reshape(-1, n)
    ).reshape(len(centers), -1)
    inside = g_sub <= 1.0 - depth
    frac = inside.mean(axis=1)
    total = 0.0
    for i in np.flatnonzero(frac == 1.0):
        total += density(K, centers[i], cfg)
    for i in np.flatnonzero((frac > 0.0) & (frac < 1.0)):
        centroid = centers[i] + sub[inside[i]].mean(axis=0)
        total += frac[i] * density(K, centroid, cfg)
    return total * float(np.prod(h))


def _layer_mass(K: ConvexBody, margin: float, depth: float, cfg: Config) -> float:
    """Mass of the boundary layer {1 - depth < gauge <= 1 - margin}.

    In gauge-radial coordinates x = x0 + g rho(u) u the volume element is
    g^{n-1} rho(u)^n dg dOmega, and the substitution g = 1 - s^2 removes the
    1/sqrt(1 - g) blow-up of the density, leaving a smooth integrand in s.
    """
    if margin >= depth:
        return 0.0
    n = K.n
    count = {1: 2, 2: cfg.layer_directions_2d, 3: cfg.layer_directions_3d}[n]
    U = direction_grid(n, count)
    w = sphere_weight(n, count)
    rho = 1.0 / K.gauge_many(K.x0 + U)
    nodes, weights = np.polynomial.legendre.leggauss(cfg.layer_nodes)
    s_lo, s_hi = np.sqrt(margin), np.sqrt(depth)
    s = 0.5 * (s_hi - s_lo) * nodes + 0.5 * (s_hi + s_lo)
    ws = 0.5 * (s_hi - s_lo) * weights
    total = 0.0
    for j in range(len(U)):
        radial = 0.0
        for sk, wk in zip(s, ws):
            g = 1.0 - sk * sk
            lam = density(K, K.x0 + g * rho[j] * U[j], cfg)
            radial += wk * 2.0 * sk * lam * g ** (n - 1)
        total += w * rho[j] ** n * radial
    return total


@dataclass(frozen=True)
class MassReport:
    body: str
    n: int
    resolution: int
    margins: tuple[float, ...]
    margin_masses: tuple[float, ...]
    mass: float
    target: float
    rel_error: float

    def to_json(self) -> str:
        import json

        return json.dumps({
            "body": self.body, "n": self.n, "resolution": self.resolution,
            "margin": list(self.margins), "margin_masses": list(self.margin_masses),
            "mass": self.mass, "target": self.target, "rel_error": self.rel_error,
        })


def total_mass(K: ConvexBody, cfg: Config = DEFAULT, grid: int | None = None,
               margins=None) -> MassReport:
    """Integral of the density over the interior; target (2 pi)^n.

    The smooth bulk {gauge <= 1 - layer_depth} uses a midpoint grid; the
    boundary layer, where the density blows up like 1/sqrt(distance), uses
    the singularity-removing radial quadrature of ``_layer_mass`` down to
    each clip margin.  The still-missing sliver (~ C sqrt(margin)) is
    removed by extrapolating the two margin masses in sqrt(margin).
    """
    grid = grid or cfg.mass_grid
    margins = tuple(margins or cfg.mass_margins)
    bulk = _bulk_mass(K, grid, cfg.layer_depth, cfg)
    masses = tuple(bulk + _layer_mass(K, m, cfg.layer_depth, cfg)
                   for m in margins)
    if len(margins) >= 2 and margins[0] != margins[1]:
        s = np.sqrt(margins[:2])
        mass = (masses[1] * s[0] - masses[0] * s[1]) / (s[0] - s[1])
    else:
        mass = masses[0]
    target = (2.0 * np.pi) ** K.n
    return MassReport(body=K.name or K.to_dict()["kind"], n=K.n, resolution=grid,
                      margins=margins, margin_masses=masses, mass=mass,
                      target=target, rel_error=abs(mass - target) / target)


# -- Joukowski map and extremal-function oracles -------------------------

def joukowski(w) -> complex:
    """Exterior branch of h(w) = w + sqrt(w^2 - 1): the root of
    zeta + 1/zeta = 2w with |zeta| >= 1; on the slit [-1, 1] the unimodular
    value continuous from the upper half-plane."""
    w = complex(w)
    if w.imag == 0.0 and -1.0 <= w.real <= 1.0:
        return complex(w.real, math.sqrt(1.0 - w.real * w.real))
    s = cmath.sqrt(w * w - 1.0)
    return w + s if abs(w + s) >= abs(w - s) else w - s


def _log_abs_h(W: np.ndarray) -> np.ndarray:
    """log|h(w)| elementwise; branch-free since both roots of the defining
    quadratic have reciprocal moduli."""
    W = np.asarray(W, dtype=complex)
    s = np.sqrt(W * W - 1.0)
    mag = np.maximum(np.abs(W + s), np.abs(W - s))
    return np.log(np.maximum(mag, 1.0))


def _polar_boundary_samples(K: ConvexBody, cfg: Config):
    """Dense samples of the boundary of K* plus a local-refinement closure."""
    if isinstance(K, (Ball, Ellipsoid)):
        count = {1: 2, 2: cfg.polar_grid_2d, 3: cfg.polar_grid_3d}[K.n]
        U = direction_grid(K.n, count)
        if isinstance(K, Ball):
            return U / K.radius, ("sphere", None)
        return U @ K.sqrt_matrix, ("sphere", None)
    Kp = K.polar(cfg)
    V = Kp.vertices
    if K.n == 1:
        return V, (None, None)
    if K.n == 2:
        order = np.argsort(np.arctan2(V[:, 1], V[:, 0]))
        V = V[order]
        segs = [(V[i], V[(i + 1) % len(V)]) for i in range(len(V))]
        t = np.linspace(0.0, 1.0, 256)
        W = np.concatenate([(1 - t)[:, None] * p + t[:, None] * q for p, q in segs])
        return W, ("edges", segs)
    from scipy.spatial import ConvexHull

    hull = ConvexHull(V)
    tris = [V[s] for s in hull.simplices]
    bary = []
    g = 24
    for i in range(g + 1):
        for j in range(g + 1 - i):
            bary.append((i / g, j / g, (g - i - j) / g))
    bary = np.array(bary)
    W = np.concatenate([bary @ tri for tri in tris])
    return W, ("faces", tris)


def v_k_symmetric(K: ConvexBody, z, cfg: Config = DEFAULT) -> float:
    """V_K(z) = sup_{Z in K*} log|h(z.Z)| for K symmetric about the origin.

    The sup over the convex K* is attained on the boundary (the sublevel
    sets of log|h| are Bernstein ellipses, hence convex), but not
    necessarily at polytope vertices, so edges/faces are sampled densely
    and the best location refined locally.
    """
    if not K.is_symmetric(cfg):
        raise NotSymmetric("v_k_symmetric requires a body symmetric about 0")
    z = np.asarray(z, dtype=complex).ravel()
    W, (kind, extra) = _polar_boundary_samples(K, cfg)
    vals = _log_abs_h(W @ z)
    k = int(np.argmax(vals))
    best = float(vals[k])

    if kind == "edges":
        per_edge = len(W) // len(extra)
        edge = min(k // per_edge, len(extra) - 1)
        for e in {edge, (edge - 1) % len(extra), (edge + 1) % len(extra)}:
            p, q = extra[e]

            def neg(t, p=p, q=q):
                return -float(_log_abs_h(np.array([((1 - t) * p + t * q) @ z]))[0])

            res = minimize_scalar(neg, bounds=(0.0, 1.0), method="bounded",
                                  options={"xatol": 1e-12})
            best = max(best, float(-res.fun))
    elif kind == "faces":
        per_face = len(W) // len(extra)
        tri = extra[min(k // per_face, len(extra) - 1)]

        def neg(ab):
            a = np.clip(ab[0], 0.0, 1.0)
            b = np.clip(ab[1], 0.0, 1.0 - a)
            w = a * tri[0] + b * tri[1] + (1.0 - a - b) * tri[2]
            return -float(_log_abs_h(np.array([w @ z]))[0])

        res = minimize(neg, [1 / 3, 1 / 3], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14})
        best = max(best, float(-res.fun))
    elif kind == "sphere" and K.n >= 2:
        B = K.sqrt_matrix if isinstance(K, Ellipsoid) else None

        def neg(ang):
            if K.n == 2:
                u = np.array([np.cos(ang[0]), np.sin(ang[0])])
            else:
                st = np.sin(ang[0])
                u = np.array([st * np.cos(ang[1]), st * np.sin(ang[1]),
                              np.cos(ang[0])])
            w = (u @ B) if B is not None else u / K.radius
            return -float(_log_abs_h(np.array([w @ z]))[0])

        u0 = (W[k] @ K.inv_sqrt_matrix) if B is not None else W[k] * K.radius
        if K.n == 2:
            ang0 = [np.arctan2(u0[1], u0[0])]
        else:
            ang0 = [np.arccos(np.clip(u0[2], -1, 1)), np.arctan2(u0[1], u0[0])]
        res = minimize(neg, ang0, method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15})
        best = max(best, float(-res.fun))
    return max(best, 0.0)


def v_k_ball(z) -> float:
    """Lundin's closed form for the unit ball:
    V(z) = (1/2) log h(|z|^2 + |z.z - 1|), zero on the ball itself."""
    z = np.asarray(z, dtype=complex).ravel()
    s = float(np.sum(np.abs(z) ** 2) + abs(np.sum(z * z) - 1.0))
    if s <= 1.0:
        return 0.0
    return 0.5 * math.log(s + math.sqrt(s * s - 1.0))


def delta_b_fd(K: ConvexBody, x, y, t_sequence=None, cfg: Config = DEFAULT) -> float:
    """Finite-difference limit of V_K(x + i t y)/t as t -> 0+, for symmetric
    K; one-step Richardson extrapolation on the two smallest t (the error
    of the polar-dual sandwich is O(t))."""
    x = _require_interior(K, x)
    y, ny = _unit(y)
    ts = np.sort(np.asarray(t_sequence if t_sequence is not None
                            else cfg.fd_t_sequence, dtype=float))[::-1]
    vals = np.array([v_k_symmetric(K, x + 1j * t * y, cfg) / t for t in ts])
    if len(ts) >= 2:
        t1, t2 = ts[-2], ts[-1]
        f1, f2 = vals[-2], vals[-1]
        limit = (t1 * f2 - t2 * f1) / (t1 - t2)
    else:
        limit = vals[-1]
    return float(limit) * ny
