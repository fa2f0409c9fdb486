"""Empirical validation of the Bernstein-Markov inequality chain.

For any polynomial p with sup-norm at most 1 on K, any interior x and unit
direction y, the normalized derivative ratio

    (1/deg p) |D_y p(x)| / sqrt(1 - p(x)^2)

never exceeds delta_b(x, y) = 1/b*(x, y).  This module samples random
polynomials and checks the bound; on symmetric bodies the linear polynomial
built from the polar-dual minimizer attains it, which gives the tightness
check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .body import ConvexBody, _Polytope
from .config import DEFAULT, Config
from .ellipse import _require_interior, _unit, bstar_symmetric_argmin
from .errors import PAtUnitValue
from .extremal import delta_b


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial of n variables as {multi-index: coefficient}."""
    n: int
    terms: dict

    @property
    def degree(self) -> int:
        return max((sum(e) for e, c in self.terms.items() if c != 0.0), default=0)

    def __call__(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.zeros(pts.shape[0])
        for exps, coeff in self.terms.items():
            term = np.full(pts.shape[0], coeff)
            for j, e in enumerate(exps):
                if e:
                    term *= pts[:, j] ** e
            out += term
        return out

    def at(self, x) -> float:
        return float(self(np.asarray(x, dtype=float)[None, :])[0])

    def scaled(self, s: float) -> "Polynomial":
        return Polynomial(self.n, {e: c * s for e, c in self.terms.items()})

    def partial(self, j: int) -> "Polynomial":
        terms = {}
        for exps, coeff in self.terms.items():
            if exps[j] == 0:
                continue
            new = list(exps)
            new[j] -= 1
            key = tuple(new)
            terms[key] = terms.get(key, 0.0) + coeff * exps[j]
        return Polynomial(self.n, terms)

    def directional_derivative(self, y) -> "Polynomial":
        y = np.asarray(y, dtype=float)
        terms = {}
        for j in range(self.n):
            if y[j] == 0.0:
                continue
            for exps, coeff in self.partial(j).terms.items():
                terms[exps] = terms.get(exps, 0.0) + y[j] * coeff
        return Polynomial(self.n, terms)


def multi_indices(n: int, max_degree: int):
    """All exponent tuples with total degree <= max_degree."""
    out = []
    for exps in itertools.product(range(max_degree + 1), repeat=n):
        if sum(exps) <= max_degree:
            out.append(exps)
    return sorted(out, key=lambda e: (sum(e), e))


def random_polynomial(n: int, max_degree: int, rng) -> Polynomial:
    """Coefficients uniform on [-1, 1] over all multi-indices of total
    degree <= max_degree; guaranteed non-constant."""
    while True:
        terms = {e: float(rng.uniform(-1.0, 1.0)) for e in multi_indices(n, max_degree)}
        p = Polynomial(n, terms)
        if p.degree >= 1:
            return p


def _contains_many(K: ConvexBody, P: np.ndarray) -> np.ndarray:
    if isinstance(K, _Polytope):
        return K.contains_many(P)
    return K.gauge_many(P) <= 1.0 + 1e-12


def sup_norm_estimate(p: Polynomial, K: ConvexBody, samples: int = 4000,
                      cfg: Config = DEFAULT, seed: int = 0) -> float:
    """Lower bound on ||p||_K: max |p| over a low-discrepancy sample of K,
    polished from the best 10 points by coordinate ascent."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    from scipy.stats import qmc

    n = K.n
    lo = np.array([-K.support(-e) for e in np.eye(n)])
    hi = np.array([K.support(e) for e in np.eye(n)])
    sampler = qmc.Halton(d=n, scramble=False)
    pts = qmc.scale(sampler.random(samples), lo, hi)
    pts = pts[_contains_many(K, pts)]
    if len(pts) == 0:
        pts = K.x0[None, :]
    vals = np.abs(p(pts))
    best = float(np.max(vals))
    top = pts[np.argsort(vals)[::-1][:10]]
    span = np.max(hi - lo)
    for x in top:
        x = x.copy()
        step = 0.05 * span
        fx = abs(p.at(x))
        while step > 1e-7 * span:
            improved = False
            for j in range(n):
                for sgn in (1.0, -1.0):
                    cand = x.copy()
                    cand[j] += sgn * step
                    if not K.contains(cand):
                        continue
                    fc = abs(p.at(cand))
                    if fc > fx:
                        x, fx = cand, fc
                        improved = True
            if not improved:
                step *= 0.5
        best = max(best, fx)
    return best


def bm_ratio(p: Polynomial, x, y, K: ConvexBody) -> float:
    """(1/deg p) |D_y p(x)| / sqrt(1 - p(x)^2); p must be normalized to
    sup-norm at most 1."""
    d = p.degree
    if d < 1:
        raise ValueError("ratio requires degree >= 1")
    x = np.asarray(x, dtype=float).ravel()
    px = p.at(x)
    denom = 1.0 - px * px
    if denom < 1e-12:
        raise PAtUnitValue(f"|p(x)| too close to 1 (1 - p^2 = {denom:.3g})")
    dp = p.directional_derivative(y).at(x)
    return abs(dp) / (d * np.sqrt(denom))


@dataclass(frozen=True)
class BMReport:
    rows: list  # (trial, degree, x, y, ratio, delta_b, slack)
    violations: int
    tightness: float  # max ratio/delta_b observed
    eps: float

    def to_csv(self, path: str):
        if self.rows:
            n = len(self.rows[0][2])
        else:
            n = 0
        xcols = ",".join(f"x{i + 1}" for i in range(n))
        ycols = ",".join(f"y{i + 1}" for i in range(n))
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"trial,degree,{xcols},{ycols},ratio,delta_b,slack\n")
            for t, d, x, y, r, db, s in self.rows:
                xs = ",".join(format(v, ".12g") for v in x)
                ys = ",".join(format(v, ".12g") for v in y)
                fh.write(f"{t},{d},{xs},{ys},{r:.12g},{db:.12g},{s:.12g}\n")
            fh.write(f"# violations={self.violations} tightness={self.tightness:.6g} "
                     f"eps={self.eps}\n")


def validate_bm_bound(K: ConvexBody, trials: int, max_degree: int,
                      seed: int = 42, cfg: Config = DEFAULT,
                      eps: float = 2e-2, clearance: float = 0.05) -> BMReport:
    """Random-polynomial sweep of the inequality ratio <= (1+eps) delta_b.

    The sup-norm normalization uses a lower-bound estimate, which makes the
    observed ratio an over-estimate; eps absorbs that, conservatively for
    the violation count.
    """
    rng = np.random.default_rng(seed)
    rows = []
    violations = 0
    tightness = 0.0
    for trial in range(trials):
        p = random_polynomial(K.n, max_degree, rng)
        s = sup_norm_estimate(p, K, cfg=cfg)
        p = p.scaled(1.0 / s)
        for _ in range(100):
            x = rng.uniform(-1.0, 1.0, size=K.n)
            lo = np.array([-K.support(-e) for e in np.eye(K.n)])
            hi = np.array([K.support(e) for e in np.eye(K.n)])
            x = lo + (x + 1.0) / 2.0 * (hi - lo)
            if K.gauge(x) <= 1.0 - clearance and 1.0 - p.at(x) ** 2 >= 1e-10:
                break
        else:
            continue
        y = rng.normal(size=K.n)
        y, _ = _unit(y)
        ratio = bm_ratio(p, x, y, K)
        db = delta_b(K, x, y, cfg)
        slack = (1.0 + eps) * db - ratio
        if slack < 0:
            violations += 1
        tightness = max(tightness, ratio / db)
        rows.append((trial, p.degree, x, y, ratio, db, slack))
    return BMReport(rows=rows, violations=violations, tightness=tightness, eps=eps)


def linear_tightness(K: ConvexBody, x, y, cfg: Config = DEFAULT) -> float:
    """ratio/delta_b for the extremal linear polynomial of a symmetric body:
    p(z) = w.z with w the polar-dual minimizer (sup-norm 1 on K)."""
    x = _require_interior(K, x)
    y, _ = _unit(y)
    bsym, w = bstar_symmetric_argmin(K, x, y, cfg)
    p = Polynomial(K.n, {tuple(int(i == j) for i in range(K.n)): float(w[j])
                         for j in range(K.n)})
    s = sup_norm_estimate(p, K, cfg=cfg)
    ratio = bm_ratio(p.scaled(1.0 / s), x, y, K)
    return ratio * bsym  # delta_b = 1/bsym at the optimum
