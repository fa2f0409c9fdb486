"""Complexified quadratic leaves through maximal inscribed ellipses.

A b-maximal ellipse with parameters (x, y, a, b) extends to the curve

    f(zeta) = (x - a) (zeta + 1/zeta)/2 + b y i (zeta - 1/zeta)/2 + a,

on which the extremal function is harmonic: V_K(f(zeta)) = log|zeta| for
|zeta| >= 1.  Equivalently f(zeta) = A + c zeta + conj(c)/zeta with A = a
and c = (x - a + i b y)/2.  The checks here evaluate that identity and the
tangent/curvilinear limits against the symmetric-body oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .body import Ball, ConvexBody
from .config import DEFAULT, Config
from .ellipse import BStarResult, EllipseParam
from .errors import NotSymmetric
from .extremal import v_k_ball, v_k_symmetric


@dataclass(frozen=True)
class Leaf:
    x: np.ndarray
    y: np.ndarray  # unit direction
    a: np.ndarray  # center offset of the real ellipse
    b: float

    @property
    def center(self) -> np.ndarray:
        """A in the a-maximal form."""
        return self.a

    @property
    def coeff(self) -> np.ndarray:
        """c in the a-maximal form f = A + c zeta + conj(c)/zeta."""
        return 0.5 * (self.x - self.a + 1j * self.b * self.y)

    @classmethod
    def from_witness(cls, res: BStarResult) -> "Leaf":
        E = res.witness
        return cls(x=E.x, y=E.y, a=E.x - E.a, b=E.b)

    @classmethod
    def from_ellipse(cls, E: EllipseParam) -> "Leaf":
        # the ellipse parametrization carries the offset a; the leaf's real
        # center is x - a
        return cls(x=E.x, y=E.y, a=E.x - E.a, b=E.b)


def leaf_eval(L: Leaf, zeta) -> np.ndarray:
    """f(zeta) in C^n for |zeta| >= 1 (tolerates roundoff below 1)."""
    zeta = complex(zeta)
    if abs(zeta) < 1.0 - 1e-12:
        raise ValueError("leaf parametrized on |zeta| >= 1")
    half_sum = 0.5 * (zeta + 1.0 / zeta)
    half_diff = 0.5j * (zeta - 1.0 / zeta)
    return (L.x - L.a) * half_sum + (L.b * L.y) * half_diff + L.a


def _v_oracle(K: ConvexBody, cfg: Config):
    if isinstance(K, Ball):
        c, r = K.center, K.radius
        return lambda z: v_k_ball((np.asarray(z) - c) / r)
    if K.is_symmetric(cfg):
        return lambda z: v_k_symmetric(K, z, cfg)
    raise NotSymmetric("no extremal-function oracle for this body")


def check_harmonicity(L: Leaf, K: ConvexBody, radii, cfg: Config = DEFAULT,
                      phases: int = 16) -> float:
    """max over sampled zeta = r e^{i phi} of |V_K(f(zeta)) - log r|."""
    V = _v_oracle(K, cfg)
    worst = 0.0
    phis = np.linspace(0.0, 2.0 * np.pi, phases, endpoint=False)
    for r in radii:
        for phi in phis:
            z = leaf_eval(L, r * np.exp(1j * phi))
            worst = max(worst, abs(V(z) - np.log(r)))
    return worst


def check_tangent_limit(L: Leaf, radii=(1 + 1e-3, 1 + 1e-4, 1 + 1e-5)) -> np.ndarray:
    """Extrapolated limit of (f(r) - f(1))/(r - 1); equals i b y."""
    rs = np.sort(np.asarray(radii, dtype=float))[::-1]
    quots = [(leaf_eval(L, r) - leaf_eval(L, 1.0)) / (r - 1.0) for r in rs]
    # leading error is linear in (r - 1): one-step Richardson on the two
    # smallest radii
    h1, h2 = rs[-2] - 1.0, rs[-1] - 1.0
    return (h1 * quots[-1] - h2 * quots[-2]) / (h1 - h2)


def check_curvilinear_limit(L: Leaf, K: ConvexBody,
                            radii=(1 + 1e-2, 1 + 3e-3, 1 + 1e-3),
                            cfg: Config = DEFAULT) -> float:
    """Extrapolated limit of V_K(f(r)) / (b (r - 1)); equals 1/b."""
    V = _v_oracle(K, cfg)
    rs = np.sort(np.asarray(radii, dtype=float))[::-1]
    vals = np.array([V(leaf_eval(L, r)) / (L.b * (r - 1.0)) for r in rs])
    h = rs - 1.0
    return float((h[-2] * vals[-1] - h[-1] * vals[-2]) / (h[-2] - h[-1]))


def straight_line_gap(L: Leaf, K: ConvexBody, r: float,
                      cfg: Config = DEFAULT) -> float:
    """|V_K(f(r)) - V_K(x + i b y (r-1))| / (b (r-1)); decays ~ (r-1)."""
    V = _v_oracle(K, cfg)
    z_straight = L.x + 1j * L.b * L.y * (r - 1.0)
    return abs(V(leaf_eval(L, r)) - V(z_straight)) / (L.b * (r - 1.0))
