"""Convex bodies in R^n (n <= 3) with membership, support, gauge, polar,
dilation and Hausdorff-distance queries.

Four representations are supported: H-polytope, V-polytope, ball and
ellipsoid.  Bodies are immutable after construction; every query is pure.
Each body caches a certified interior point ``x0`` used as the anchor of its
Minkowski gauge.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from .config import DEFAULT, Config
from .directions import direction_grid
from .errors import (BodyParseError, DimensionMismatch, NotOriginCentered,
                     NotSymmetric, ZeroDirection)

_INTERIOR_MARGIN = 1e-9


def _as_point(z, n):
    z = np.asarray(z, dtype=float)
    if z.shape != (n,):
        raise DimensionMismatch(f"expected point of dimension {n}, got shape {z.shape}")
    return z


class ConvexBody:
    """Base class; concrete bodies implement the representation-specific
    queries and expose ``n`` (dimension) and ``x0`` (interior point)."""

    n: int
    x0: np.ndarray
    name: str | None = None

    # -- queries ---------------------------------------------------------

    def contains(self, z) -> bool:
        raise NotImplementedError

    def support(self, u) -> float:
        """Support function h_K(u) = sup_{x in K} u.x."""
        u = _as_point(u, self.n)
        if not np.any(u):
            raise ZeroDirection("support direction must be nonzero")
        return self._support(u)

    def support_many(self, U: np.ndarray) -> np.ndarray:
        return np.array([self._support(u) for u in np.asarray(U, dtype=float)])

    def gauge(self, z) -> float:
        """Minkowski functional of K relative to x0."""
        return float(self.gauge_many(_as_point(z, self.n)[None, :])[0])

    def gauge_many(self, P: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def dilate(self, center, factor: float) -> "ConvexBody":
        if factor <= 0:
            raise ValueError("dilation factor must be positive")
        return self._dilate(_as_point(center, self.n), float(factor))

    def diameter(self) -> float:
        U = direction_grid(self.n, 64 if self.n > 1 else 2)
        h = self.support_many(U)
        hm = self.support_many(-U)
        return float(np.max(h + hm))

    def is_symmetric(self, cfg: Config = DEFAULT) -> bool:
        """Symmetry about the origin, detected by support-function sampling."""
        count = cfg.hausdorff_directions_2d if self.n == 2 else (
            cfg.hausdorff_directions_3d if self.n == 3 else 2)
        U = direction_grid(self.n, count)
        h = self.support_many(U)
        hm = self.support_many(-U)
        scale = max(np.max(np.abs(h)), 1.0)
        return bool(np.max(np.abs(h - hm)) <= cfg.symmetry_tol * scale)

    def polar(self, cfg: Config = DEFAULT) -> "ConvexBody":
        """Polar body K* = {Z : x.Z <= 1 for all x in K}; requires -K = K."""
        if not self.is_symmetric(cfg):
            raise NotSymmetric("polar requires a body symmetric about the origin")
        if self.gauge(np.zeros(self.n)) >= 1.0 - _INTERIOR_MARGIN:
            raise NotOriginCentered("origin is not an interior point")
        return self._polar()

    # -- representation hooks -------------------------------------------

    def _support(self, u) -> float:
        raise NotImplementedError

    def _dilate(self, center, factor) -> "ConvexBody":
        raise NotImplementedError

    def _polar(self) -> "ConvexBody":
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    # -- shared helpers --------------------------------------------------

    def _certify_interior(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.n}")


class _Polytope(ConvexBody):
    """Shared facet-based queries; both polytope kinds cache a facet list
    (unit normals, offsets) and a vertex list."""

    facet_normals: np.ndarray  # (m, n), unit rows
    facet_offsets: np.ndarray  # (m,)
    vertices: np.ndarray       # (k, n)

    def contains(self, z) -> bool:
        z = _as_point(z, self.n)
        return bool(np.all(self.facet_normals @ z <= self.facet_offsets + 1e-12))

    def contains_many(self, P: np.ndarray) -> np.ndarray:
        return np.all(P @ self.facet_normals.T <= self.facet_offsets + 1e-12, axis=1)

    def _support(self, u) -> float:
        return float(np.max(self.vertices @ u))

    def support_many(self, U: np.ndarray) -> np.ndarray:
        return np.max(np.asarray(U, dtype=float) @ self.vertices.T, axis=1)

    def gauge_many(self, P: np.ndarray) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        slack = self.facet_offsets - self.facet_normals @ self.x0  # > 0
        num = (P - self.x0) @ self.facet_normals.T
        g = np.max(num / slack, axis=1)
        return np.maximum(g, 0.0)

    def _facet_certificate(self):
        slack = self.facet_offsets - self.facet_normals @ self.x0
        if np.any(slack <= 0):
            raise ValueError("interior point violates a facet inequality")


def _enumerate_vertices(normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Vertices of {x : N x <= o} by enumerating n-subsets of facets (n <= 3)."""
    m, n = normals.shape
    pts = []
    for idx in itertools.combinations(range(m), n):
        A = normals[list(idx)]
        if abs(np.linalg.det(A)) < 1e-12:
            continue
        v = np.linalg.solve(A, offsets[list(idx)])
        if np.all(normals @ v <= offsets + 1e-9):
            pts.append(v)
    if not pts:
        raise ValueError("halfspace intersection has no vertices (unbounded or empty)")
    out = []
    for v in pts:
        if not any(np.allclose(v, w, atol=1e-9) for w in out):
            out.append(v)
    return np.array(out)


def _chebyshev_center(normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    from scipy.optimize import linprog

    m, n = normals.shape
    c = np.zeros(n + 1)
    c[-1] = -1.0
    A_ub = np.hstack([normals, np.ones((m, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=offsets, bounds=[(None, None)] * n + [(0, None)])
    if not res.success or res.x[-1] <= 0:
        raise ValueError("H-polytope has empty interior")
    return res.x[:n]


class HPolytope(_Polytope):
    """{x : normals_i . x <= offsets_i}; normals are normalized to unit length
    and vertices are enumerated at construction."""

    def __init__(self, normals, offsets, name=None):
        normals = np.atleast_2d(np.asarray(normals, dtype=float))
        offsets = np.asarray(offsets, dtype=float).ravel()
        if normals.shape[0] != offsets.shape[0]:
            raise ValueError("normals/offsets length mismatch")
        lengths = np.linalg.norm(normals, axis=1)
        if np.any(lengths < 1e-14):
            raise ValueError("zero facet normal")
        self.facet_normals = normals / lengths[:, None]
        self.facet_offsets = offsets / lengths
        self.n = normals.shape[1]
        self.name = name
        self._certify_interior()
        self.vertices = _enumerate_vertices(self.facet_normals, self.facet_offsets)
        self.x0 = _chebyshev_center(self.facet_normals, self.facet_offsets)
        self._facet_certificate()

    def _dilate(self, center, factor):
        offs = factor * self.facet_offsets + (1 - factor) * (self.facet_normals @ center)
        return HPolytope(self.facet_normals, offs, name=self.name)

    def _polar(self):
        # {x : n_i.x <= o_i} symmetric about 0  ->  conv{n_i / o_i}
        return VPolytope(self.facet_normals / self.facet_offsets[:, None], name=self.name)

    def to_dict(self):
        d = {"kind": "hpolytope",
             "normals": self.facet_normals.tolist(),
             "offsets": self.facet_offsets.tolist()}
        if self.name:
            d["name"] = self.name
        return d


class VPolytope(_Polytope):
    """Convex hull of a vertex list; facets are derived at construction."""

    def __init__(self, vertices, name=None):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        self.n = V.shape[1]
        self.name = name
        self._certify_interior()
        if V.shape[0] < self.n + 1:
            raise ValueError("V-polytope needs at least n+1 vertices")
        if np.linalg.matrix_rank(V[1:] - V[0], tol=1e-10) < self.n:
            raise ValueError("vertices are affinely dependent (empty interior)")
        if self.n == 1:
            lo, hi = float(np.min(V)), float(np.max(V))
            self.vertices = np.array([[lo], [hi]])
            self.facet_normals = np.array([[1.0], [-1.0]])
            self.facet_offsets = np.array([hi, -lo])
        else:
            from scipy.spatial import ConvexHull

            hull = ConvexHull(V)
            self.vertices = V[hull.vertices]
            eq = hull.equations  # A x + b <= 0 with |A row| = 1
            self.facet_normals = eq[:, :-1]
            self.facet_offsets = -eq[:, -1]
        self.x0 = np.mean(self.vertices, axis=0)
        self._facet_certificate()

    def contains(self, z) -> bool:
        # via the gauge, per the V-representation contract
        return bool(self.gauge(z) <= 1.0 + 1e-12)

    def _dilate(self, center, factor):
        return VPolytope(center + factor * (self.vertices - center), name=self.name)

    def _polar(self):
        lengths = np.linalg.norm(self.vertices, axis=1)
        return HPolytope(self.vertices / lengths[:, None], 1.0 / lengths, name=self.name)

    def to_dict(self):
        d = {"kind": "vpolytope", "vertices": self.vertices.tolist()}
        if self.name:
            d["name"] = self.name
        return d


class Ball(ConvexBody):
    def __init__(self, center, radius, name=None):
        self.center = np.asarray(center, dtype=float).ravel()
        self.radius = float(radius)
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        self.n = self.center.shape[0]
        self.name = name
        self._certify_interior()
        self.x0 = self.center.copy()

    def contains(self, z) -> bool:
        z = _as_point(z, self.n)
        return bool(np.linalg.norm(z - self.center) <= self.radius + 1e-12)

    def _support(self, u) -> float:
        return float(u @ self.center + self.radius * np.linalg.norm(u))

    def support_many(self, U):
        U = np.asarray(U, dtype=float)
        return U @ self.center + self.radius * np.linalg.norm(U, axis=1)

    def gauge_many(self, P):
        P = np.asarray(P, dtype=float)
        return np.linalg.norm(P - self.center, axis=1) / self.radius

    def _dilate(self, center, factor):
        return Ball(center + factor * (self.center - center), factor * self.radius,
                    name=self.name)

    def _polar(self):
        return Ball(np.zeros(self.n), 1.0 / self.radius, name=self.name)

    def to_dict(self):
        d = {"kind": "ball", "center": self.center.tolist(), "radius": self.radius}
        if self.name:
            d["name"] = self.name
        return d


class Ellipsoid(ConvexBody):
    """{x : (x-c)^T A (x-c) <= 1} with A symmetric positive definite."""

    def __init__(self, center, matrix, name=None):
        self.center = np.asarray(center, dtype=float).ravel()
        A = np.atleast_2d(np.asarray(matrix, dtype=float))
        self.n = self.center.shape[0]
        self.name = name
        self._certify_interior()
        if A.shape != (self.n, self.n) or not np.allclose(A, A.T, atol=1e-10):
            raise ValueError("matrix must be symmetric n x n")
        w, Q = np.linalg.eigh(A)
        if np.any(w <= 0):
            raise ValueError("matrix must be positive definite")
        self.matrix = A
        self.inv_matrix = Q @ np.diag(1.0 / w) @ Q.T
        self.sqrt_matrix = Q @ np.diag(np.sqrt(w)) @ Q.T
        self.inv_sqrt_matrix = Q @ np.diag(1.0 / np.sqrt(w)) @ Q.T
        self.x0 = self.center.copy()

    def contains(self, z) -> bool:
        z = _as_point(z, self.n)
        d = z - self.center
        return bool(d @ self.matrix @ d <= 1.0 + 1e-12)

    def _support(self, u) -> float:
        return float(u @ self.center + np.sqrt(u @ self.inv_matrix @ u))

    def support_many(self, U):
        U = np.asarray(U, dtype=float)
        return U @ self.center + np.sqrt(np.einsum("ij,jk,ik->i", U, self.inv_matrix, U))

    def gauge_many(self, P):
        D = np.asarray(P, dtype=float) - self.center
        return np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", D, self.matrix, D), 0.0))

    def _dilate(self, center, factor):
        return Ellipsoid(center + factor * (self.center - center),
                         self.matrix / factor**2, name=self.name)

    def _polar(self):
        return Ellipsoid(np.zeros(self.n), self.inv_matrix, name=self.name)

    def to_dict(self):
        d = {"kind": "ellipsoid", "center": self.center.tolist(),
             "matrix": self.matrix.tolist()}
        if self.name:
            d["name"] = self.name
        return d


# -- module-level operation surface -------------------------------------

def contains(K: ConvexBody, z) -> bool:
    return K.contains(z)


def support(K: ConvexBody, u) -> float:
    return K.support(u)


def gauge(K: ConvexBody, z) -> float:
    return K.gauge(z)


def polar(K: ConvexBody, cfg: Config = DEFAULT) -> ConvexBody:
    return K.polar(cfg)


def dilate(K: ConvexBody, center, factor: float) -> ConvexBody:
    return K.dilate(center, factor)


def hausdorff_distance(K1: ConvexBody, K2: ConvexBody, cfg: Config = DEFAULT) -> float:
    """Sup over sampled directions of |h_K1 - h_K2|; equals the Hausdorff
    distance for convex bodies."""
    if K1.n != K2.n:
        raise DimensionMismatch("bodies have different dimensions")
    count = cfg.hausdorff_directions_2d if K1.n == 2 else (
        cfg.hausdorff_directions_3d if K1.n == 3 else 2)
    U = direction_grid(K1.n, count)
    return float(np.max(np.abs(K1.support_many(U) - K2.support_many(U))))


# -- body files ----------------------------------------------------------

_BODY_KEYS = {
    "vpolytope": {"kind", "vertices", "name"},
    "hpolytope": {"kind", "normals", "offsets", "name"},
    "ball": {"kind", "center", "radius", "name"},
    "ellipsoid": {"kind", "center", "matrix", "name"},
}


def parse_body(text: str) -> ConvexBody:
    """Parse the one-object JSON body format; rejects unknown keys."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BodyParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise BodyParseError("body file must contain a JSON object")
    kind = data.get("kind")
    if kind not in _BODY_KEYS:
        raise BodyParseError(f"unknown body kind {kind!r}")
    unknown = set(data) - _BODY_KEYS[kind]
    if unknown:
        raise BodyParseError(f"unknown keys for {kind}: {sorted(unknown)}")
    name = data.get("name")
    try:
        if kind == "vpolytope":
            return VPolytope(data["vertices"], name=name)
        if kind == "hpolytope":
            return HPolytope(data["normals"], data["offsets"], name=name)
        if kind == "ball":
            return Ball(data["center"], data["radius"], name=name)
        return Ellipsoid(data["center"], data["matrix"], name=name)
    except KeyError as exc:
        raise BodyParseError(f"missing field {exc.args[0]!r} for {kind}") from exc
    except (ValueError, DimensionMismatch) as exc:
        raise BodyParseError(str(exc)) from exc


def load_body(path: str) -> ConvexBody:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_body(fh.read())


def save_body(K: ConvexBody, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(K.to_dict(), fh)
        fh.write("\n")
