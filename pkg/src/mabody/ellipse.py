"""The inscribed-ellipse problem: containment of parametrized ellipses and
the maximal tangency scale b*(x, y).

An ellipse through x with tangent direction y is parametrized as

    r(theta) = a cos(theta) + b y sin(theta) + (x - a),

so r(0) = x and r'(0) = b y; the free parameters are the center offset a and
the scale b.  b*(x, y) is the supremum of b over ellipses contained in K.

Two independent routes compute b*:

* ``method="bisect"`` - the generic geometric solver: bisection on b with a
  derivative-free convex minimization over a as the feasibility oracle.
* ``method="exact"`` - per-representation reductions.  For polytopes the
  facet constraint  max_theta n_i.r(theta) <= o_i  squares into a constraint
  linear in (a, b^2), so sup b^2 is a small linear program (solved by vertex
  enumeration in the kernels backend).  For balls the optimal ellipse is
  centered, and b* solves a 2x2 eigenvalue condition in closed form;
  ellipsoids reduce to the ball by an affine map.

``bstar_symmetric`` is the separate polar-dual oracle
inf_{w in K*} sqrt(1 - (x.w)^2)/|y.w| for origin-symmetric bodies; it is
never used inside either bstar route, so the two can cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from . import kernels
from .body import Ball, ConvexBody, Ellipsoid, _Polytope
from .config import DEFAULT, Config
from .directions import direction_grid
from .errors import EllipseNotContained, XNotInterior, ZeroDirection

_DEGENERATE_A = 1e-12


@dataclass(frozen=True)
class EllipseParam:
    x: np.ndarray
    y: np.ndarray  # unit tangent direction
    a: np.ndarray  # center offset; ellipse center is x - a
    b: float

    def point(self, theta: float) -> np.ndarray:
        return self.points(np.array([theta]))[0]

    def points(self, thetas: np.ndarray) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=float)
        return (np.outer(np.cos(thetas), self.a)
                + np.outer(np.sin(thetas), self.b * self.y)
                + (self.x - self.a))

    @property
    def degenerate(self) -> bool:
        """Collapsed to a segment: a ~ 0 or a parallel to y."""
        na = np.linalg.norm(self.a)
        if na < _DEGENERATE_A:
            return True
        cross = self.a / na - self.y * np.dot(self.a / na, self.y)
        return bool(np.linalg.norm(cross) < 1e-9)


@dataclass(frozen=True)
class BStarResult:
    bstar: float
    witness: EllipseParam
    iterations: int
    feasibility_residual: float


def ellipse_point(E: EllipseParam, theta: float) -> np.ndarray:
    return E.point(theta)


def _violation_grid(K: ConvexBody, E: EllipseParam, n_theta: int):
    thetas = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    v = K.gauge_many(E.points(thetas)) - 1.0
    return thetas, v


def ellipse_contained(E: EllipseParam, K: ConvexBody, cfg: Config = DEFAULT):
    """(contained, worst_violation, worst_theta) with golden-section
    refinement of the worst local maxima of gauge(r(theta)) - 1."""
    thetas, v = _violation_grid(K, E, cfg.theta_grid)
    n = len(thetas)
    step = 2.0 * np.pi / n
    local_max = np.flatnonzero((v >= np.roll(v, 1)) & (v >= np.roll(v, -1)))
    order = local_max[np.argsort(v[local_max])[::-1][:4]]

    def neg_v(theta):
        return -(K.gauge(E.point(theta)) - 1.0)

    worst_v = float(np.max(v))
    worst_theta = float(thetas[int(np.argmax(v))])
    for k in order:
        res = minimize_scalar(neg_v, bounds=(thetas[k] - step, thetas[k] + step),
                              method="bounded",
                              options={"xatol": cfg.theta_refine_tol})
        if -res.fun > worst_v:
            worst_v = float(-res.fun)
            worst_theta = float(res.x) % (2.0 * np.pi)
    return worst_v <= cfg.containment_tol, worst_v, worst_theta


def _unit(y) -> np.ndarray:
    y = np.asarray(y, dtype=float).ravel()
    ny = np.linalg.norm(y)
    if ny < 1e-14:
        raise ZeroDirection("tangent direction must be nonzero")
    return y / ny, ny


def _require_interior(K: ConvexBody, x, margin=1e-9) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if K.gauge(x) >= 1.0 - margin:
        raise XNotInterior(f"point {x.tolist()} is not interior (gauge >= 1 - {margin})")
    return x


def feasible_center(K: ConvexBody, x, y, b: float, cfg: Config = DEFAULT,
                    guesses=()):
    """A center offset a with the ellipse inside K (violation <= tolerance),
    or None.  The objective max_theta gauge(r(theta)) - 1 is convex in a, so
    the derivative-free simplex descent finds the global minimum."""
    x = _require_interior(K, x)
    y, _ = _unit(y)
    thetas = np.linspace(0.0, 2.0 * np.pi, cfg.theta_grid, endpoint=False)
    cos_t = np.cos(thetas)[:, None]
    sin_t = np.sin(thetas)[:, None]
    by_sin = sin_t * (b * y)

    def phi(a):
        pts = cos_t * a + by_sin + (x - a)
        return float(np.max(K.gauge_many(pts))) - 1.0

    starts = [np.asarray(g, dtype=float) for g in guesses]
    starts.append(np.zeros(K.n))
    starts.append(x - K.x0)
    best_a, best_phi = None, np.inf
    for a0 in starts:
        res = minimize(phi, a0, method="Nelder-Mead",
                       options={"xatol": cfg.simplex_tol, "fatol": cfg.simplex_tol,
                                "maxiter": cfg.simplex_max_iter,
                                "maxfev": cfg.simplex_max_iter})
        if res.fun < best_phi:
            best_phi, best_a = float(res.fun), res.x
        if best_phi <= -1e-7:
            break  # clearly feasible; no need for more restarts
    if best_phi <= cfg.containment_tol:
        return best_a
    return None


# -- exact engines -------------------------------------------------------

def _bstar_ball_unit(x: np.ndarray, y: np.ndarray):
    """b* in the unit ball (y unit): the optimal ellipse is centered at the
    origin; containment of r(theta) = x cos + b y sin is the eigenvalue
    condition on [[|x|^2, b x.y], [b x.y, b^2]], giving
    b*^2 = (1 - |x|^2) / (1 - |x_perp|^2)."""
    xx = float(x @ x)
    xy = float(x @ y)
    perp2 = xx - xy * xy
    t = (1.0 - xx) / (1.0 - perp2)
    return np.sqrt(max(t, 0.0)), x.copy()  # witness offset a = x (center 0)


def _bstar_exact(K: ConvexBody, x: np.ndarray, y: np.ndarray):
    """(b, a) for unit y via the representation-specific reduction."""
    if isinstance(K, _Polytope):
        c = K.facet_offsets - K.facet_normals @ x
        t, a = kernels.polytope_bstar_batch(K.facet_normals, c, y[None, :])
        return float(np.sqrt(t[0])), a[0]
    if isinstance(K, Ball):
        xp = (x - K.center) / K.radius
        b, ap = _bstar_ball_unit(xp, y)
        return K.radius * b, K.radius * ap
    if isinstance(K, Ellipsoid):
        S = K.sqrt_matrix
        xp = S @ (x - K.center)
        yp = S @ y
        nyp = np.linalg.norm(yp)
        b, ap = _bstar_ball_unit(xp, yp / nyp)
        return b / nyp, K.inv_sqrt_matrix @ ap
    raise TypeError(f"unsupported body type {type(K).__name__}")


def bstar_many(K: ConvexBody, x, Y: np.ndarray, cfg: Config = DEFAULT) -> np.ndarray:
    """Vectorized b*(x, y_j) over rows of Y (unit directions), exact engines."""
    x = _require_interior(K, x)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if isinstance(K, _Polytope):
        c = K.facet_offsets - K.facet_normals @ x
        t, _ = kernels.polytope_bstar_batch(K.facet_normals, c, Y)
        return np.sqrt(t)
    if isinstance(K, Ball):
        xp = (x - K.center) / K.radius
        xx = float(xp @ xp)
        xy = Y @ xp
        t = (1.0 - xx) / (1.0 - (xx - xy * xy))
        return K.radius * np.sqrt(np.maximum(t, 0.0))
    if isinstance(K, Ellipsoid):
        xp = K.sqrt_matrix @ (x - K.center)
        Yp = Y @ K.sqrt_matrix  # S y per row (S symmetric)
        norms = np.linalg.norm(Yp, axis=1)
        Yu = Yp / norms[:, None]
        xx = float(xp @ xp)
        xy = Yu @ xp
        t = (1.0 - xx) / (1.0 - (xx - xy * xy))
        return np.sqrt(np.maximum(t, 0.0)) / norms
    return np.array([bstar(K, x, y, cfg).bstar for y in Y])


def bstar(K: ConvexBody, x, y, cfg: Config = DEFAULT,
          method: str = "auto") -> BStarResult:
    """Maximal tangency scale b*(x, y) with a witness ellipse.

    b*(x, t y) = b*(x, y)/t; internally y is normalized to unit length.
    """
    x = _require_interior(K, x)
    y, ny = _unit(y)

    if method == "auto":
        method = "exact"
    if method == "exact":
        b, a = _bstar_exact(K, x, y)
        witness = EllipseParam(x=x, y=y, a=a, b=b)
        _, viol, _ = ellipse_contained(witness, K, cfg)
        return BStarResult(bstar=b / ny, witness=witness, iterations=0,
                           feasibility_residual=max(viol, 0.0))
    if method != "bisect":
        raise ValueError(f"unknown method {method!r}")

    # bracket: shrink/double a diameter-scale guess around the feasibility edge
    b_lo = 0.1 * K.diameter()
    a_lo = feasible_center(K, x, y, b_lo, cfg)
    iters = 0
    while a_lo is None and b_lo > 1e-12:
        b_lo *= 0.5
        a_lo = feasible_center(K, x, y, b_lo, cfg)
        iters += 1
    if a_lo is None:
        raise RuntimeError("could not find any feasible inscribed ellipse")
    b_hi = 2.0 * b_lo
    while True:
        a_try = feasible_center(K, x, y, b_hi, cfg, guesses=(a_lo,))
        iters += 1
        if a_try is None:
            break
        b_lo, a_lo = b_hi, a_try
        b_hi *= 2.0
    while (b_hi - b_lo) > cfg.bisection_rel_tol * b_lo:
        b_mid = 0.5 * (b_lo + b_hi)
        a_try = feasible_center(K, x, y, b_mid, cfg, guesses=(a_lo,))
        iters += 1
        if a_try is None:
            b_hi = b_mid
        else:
            b_lo, a_lo = b_mid, a_try
    witness = EllipseParam(x=x, y=y, a=a_lo, b=b_lo)
    _, viol, _ = ellipse_contained(witness, K, cfg)
    return BStarResult(bstar=b_lo / ny, witness=witness, iterations=iters,
                       feasibility_residual=max(viol, 0.0))


# -- polar-dual oracle (symmetric bodies) --------------------------------

def _polar_boundary_param(K: ConvexBody, cfg: Config):
    """(W, refine) for the boundary of K*: W a dense sample, refine(w0) a
    local polisher around a boundary point (or None when W is exact)."""
    if isinstance(K, _Polytope):
        return K.polar(cfg).vertices, None
    count = {1: 2, 2: cfg.polar_grid_2d, 3: cfg.polar_grid_3d}[K.n]
    U = direction_grid(K.n, count)
    if isinstance(K, Ball):
        return U / K.radius, "sphere"
    if isinstance(K, Ellipsoid):
        return U @ K.sqrt_matrix, "sphere"
    raise TypeError(f"unsupported body type {type(K).__name__}")


def bstar_symmetric_argmin(K: ConvexBody, x, y, cfg: Config = DEFAULT):
    """(value, w) for inf over K* of sqrt(1 - (x.w)^2)/|y.w|.

    For polytopes the infimum is attained at a vertex of K* (the equivalent
    sup formulation maximizes a convex function); for balls/ellipsoids the
    boundary sphere is sampled densely and polished locally.
    """
    from .errors import NotSymmetric

    if not K.is_symmetric(cfg):
        raise NotSymmetric("bstar_symmetric requires a body symmetric about 0")
    x = _require_interior(K, x)
    y, ny = _unit(y)

    W, refine = _polar_boundary_param(K, cfg)
    xw = W @ x
    yw = W @ y
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sqrt(np.maximum(1.0 - xw * xw, 0.0)) / np.abs(yw)
    vals[np.abs(yw) < 1e-14] = np.inf
    k = int(np.argmin(vals))
    best, w_best = float(vals[k]), W[k]

    if refine == "sphere" and K.n >= 2:
        # polish over the unit-sphere preimage of the boundary
        B = K.sqrt_matrix if isinstance(K, Ellipsoid) else np.eye(K.n) / K.radius

        def f_angles(ang):
            if K.n == 2:
                u = np.array([np.cos(ang[0]), np.sin(ang[0])])
            else:
                st = np.sin(ang[0])
                u = np.array([st * np.cos(ang[1]), st * np.sin(ang[1]),
                              np.cos(ang[0])])
            w = B @ u if isinstance(K, Ellipsoid) else u / K.radius
            d = abs(w @ y)
            if d < 1e-14:
                return np.inf
            return np.sqrt(max(1.0 - (w @ x) ** 2, 0.0)) / d

        u0 = W[k] @ np.linalg.inv(B) if isinstance(K, Ellipsoid) else W[k] * K.radius
        if K.n == 2:
            ang0 = [np.arctan2(u0[1], u0[0])]
        else:
            ang0 = [np.arccos(np.clip(u0[2], -1, 1)), np.arctan2(u0[1], u0[0])]
        res = minimize(f_angles, ang0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14})
        if res.fun < best:
            best = float(res.fun)
            if K.n == 2:
                u = np.array([np.cos(res.x[0]), np.sin(res.x[0])])
            else:
                st = np.sin(res.x[0])
                u = np.array([st * np.cos(res.x[1]), st * np.sin(res.x[1]),
                              np.cos(res.x[0])])
            w_best = (B @ u) if isinstance(K, Ellipsoid) else u / K.radius
    return best / ny, w_best


def bstar_symmetric(K: ConvexBody, x, y, cfg: Config = DEFAULT) -> float:
    return bstar_symmetric_argmin(K, x, y, cfg)[0]


# -- a-maximality probe --------------------------------------------------

def check_a_maximal(E: EllipseParam, K: ConvexBody, cfg: Config = DEFAULT,
                    strict_tol: float = 1e-7) -> bool:
    """True iff no sampled small translate of E fits strictly inside K
    (refined worst violation below -strict_tol counts as strictly inside)."""
    contained, viol, _ = ellipse_contained(E, K, cfg)
    if not contained:
        raise EllipseNotContained(f"ellipse violates containment by {viol:.3g}")
    n_dirs = cfg.translate_directions_3d if K.n == 3 else (
        cfg.translate_directions_2d if K.n == 2 else 2)
    V = direction_grid(K.n, n_dirs)
    for s in cfg.translate_steps:
        for v in V:
            shifted = EllipseParam(x=E.x + s * v, y=E.y, a=E.a, b=E.b)
            _, worst, _ = ellipse_contained(shifted, K, cfg)
            if worst < -strict_tol:
                return False
    return True
