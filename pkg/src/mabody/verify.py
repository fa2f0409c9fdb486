"""Named invariant suites surfaced by ``mabody verify``.

Each check returns (ok, detail); the CLI prints one TAP-style line per
check.  The ``norms`` suite is the 200-case randomized property run; the
others aggregate the cross-module identity checks.
"""

from __future__ import annotations

import numpy as np

from .body import Ball, ConvexBody, VPolytope, dilate
from .config import DEFAULT, Config
from .ellipse import bstar, bstar_symmetric, check_a_maximal
from .extremal import (delta_b, delta_b_fd, joukowski, total_mass,
                       v_k_ball, v_k_symmetric)
from .foliation import Leaf, check_harmonicity, check_tangent_limit
from .bernstein import linear_tightness, validate_bm_bound

SUITES = ("norms", "oracles", "foliation", "bernstein", "mass", "all")


def disk() -> Ball:
    return Ball([0.0, 0.0], 1.0, name="disk")


def square() -> VPolytope:
    return VPolytope([[-1, -1], [-1, 1], [1, 1], [1, -1]], name="square")


def triangle() -> VPolytope:
    return VPolytope([[0, 0], [1, 0], [0, 1]], name="triangle")


def hexagon() -> VPolytope:
    ang = np.arange(6) * np.pi / 3.0
    return VPolytope(np.column_stack([np.cos(ang), np.sin(ang)]), name="hexagon")


def interval() -> VPolytope:
    return VPolytope([[-1.0], [1.0]], name="interval")


def _random_interior(K: ConvexBody, rng, clearance=0.1):
    lo = np.array([-K.support(-e) for e in np.eye(K.n)])
    hi = np.array([K.support(e) for e in np.eye(K.n)])
    while True:
        x = rng.uniform(lo, hi)
        if K.gauge(x) <= 1.0 - clearance:
            return x


def _unit_dir(rng, n):
    y = rng.normal(size=n)
    return y / np.linalg.norm(y)


def _check(fails, label):
    if fails:
        return False, f"{len(fails)} failures, first: {fails[0]}"
    return True, label


# -- norms suite ---------------------------------------------------------

def suite_norms(cfg: Config, cases: int = 200):
    rng = np.random.default_rng(cfg.seed)
    bodies = [disk(), square(), hexagon(), triangle()]
    per = max(cases // 4, 1)
    checks = []

    fails = []
    for _ in range(per):
        K = bodies[rng.integers(len(bodies))]
        x = _random_interior(K, rng)
        y = _unit_dir(rng, K.n)
        b1 = bstar(K, x, y, cfg).bstar
        for t in (0.5, 2.0, 3.0):
            bt = bstar(K, x, t * y, cfg).bstar
            if abs(bt - b1 / t) > 2.0 * cfg.bisection_rel_tol * b1 / t:
                fails.append(f"homogeneity t={t} {bt} vs {b1 / t}")
    checks.append(("homogeneity b*(x,ty) = b*(x,y)/t",) + _check(fails, f"{per} cases"))

    fails = []
    for _ in range(per):
        K = bodies[rng.integers(len(bodies))]
        x = _random_interior(K, rng)
        y1 = _unit_dir(rng, K.n)
        y2 = _unit_dir(rng, K.n)
        if np.linalg.norm(y1 + y2) < 1e-6:
            continue
        lhs = 1.0 / bstar(K, x, y1 + y2, cfg).bstar
        rhs = 1.0 / bstar(K, x, y1, cfg).bstar + 1.0 / bstar(K, x, y2, cfg).bstar
        if lhs > rhs + 1e-3:
            fails.append(f"subadditivity {lhs} > {rhs}")
    checks.append(("subadditivity of 1/b* in y",) + _check(fails, f"{per} cases"))

    fails = []
    pairs = [(square(), Ball([0.0, 0.0], np.sqrt(2.0))),
             (triangle(), VPolytope([[0, 0], [1, 0], [1, 1], [0, 1]])),
             (disk(), square())]
    for _ in range(per):
        K, big = pairs[rng.integers(len(pairs))]
        x = _random_interior(K, rng)
        y = _unit_dir(rng, K.n)
        b_small = bstar(K, x, y, cfg).bstar
        b_big = bstar(big, x, y, cfg).bstar
        if b_small > b_big + 1e-6 + 2.0 * cfg.bisection_rel_tol * b_big:
            fails.append(f"monotonicity {b_small} > {b_big}")
    checks.append(("set monotonicity K in L => b*_K <= b*_L",) + _check(fails, f"{per} cases"))

    fails = []
    for _ in range(per):
        K = bodies[rng.integers(len(bodies))]
        x = _random_interior(K, rng)
        y = _unit_dir(rng, K.n)
        b1 = bstar(K, x, y, cfg).bstar
        for s in (0.5, 2.0):
            bs = bstar(dilate(K, x, s), x, y, cfg).bstar
            if abs(bs - s * b1) > 1e-3 * s * b1:
                fails.append(f"dilation s={s} {bs} vs {s * b1}")
    checks.append(("dilation scaling b*(sK at x) = s b*",) + _check(fails, f"{per} cases"))

    fails = []
    for _ in range(max(per // 5, 1)):
        K = bodies[rng.integers(len(bodies))]
        x = _random_interior(K, rng, clearance=0.15)
        y = _unit_dir(rng, K.n)
        b1 = bstar(K, x, y, cfg).bstar
        dx = 1e-3 * _unit_dir(rng, K.n)
        b2 = bstar(K, x + dx, y, cfg).bstar
        if abs(b2 - b1) > 1e-1:
            fails.append(f"continuity jump {abs(b2 - b1)}")
    checks.append(("continuity of b* under small perturbations",) + _check(fails, "spot"))
    return checks


# -- oracles suite -------------------------------------------------------

def suite_oracles(cfg: Config, cases: int = 20):
    rng = np.random.default_rng(cfg.seed)
    checks = []

    fails = []
    for K in (disk(), square(), hexagon()):
        for _ in range(cases):
            x = _random_interior(K, rng)
            y = _unit_dir(rng, K.n)
            b = bstar(K, x, y, cfg).bstar
            bs = bstar_symmetric(K, x, y, cfg)
            if abs(b - bs) / bs > 1e-3:
                fails.append(f"{K.name} rel err {abs(b - bs) / bs:.2g}")
    checks.append(("b* geometric engine vs polar-dual oracle",) + _check(fails, "disk/square/hexagon"))

    fails = []
    box3 = VPolytope([[sx, sy, sz] for sx in (-1, 1) for sy in (-1, 1) for sz in (-1, 1)],
                     name="cube")
    ball3 = Ball([0.0, 0.0, 0.0], 1.0)
    for K in (box3, ball3):
        for _ in range(5):
            x = _random_interior(K, rng)
            y = _unit_dir(rng, 3)
            b = bstar(K, x, y, cfg).bstar
            bs = bstar_symmetric(K, x, y, cfg)
            if abs(b - bs) / bs > 2e-3:
                fails.append(f"3d rel err {abs(b - bs) / bs:.2g}")
    checks.append(("b* oracle agreement in dimension 3",) + _check(fails, "cube/ball"))

    fails = []
    for K in (disk(), square()):
        for _ in range(max(cases // 2, 3)):
            x = _random_interior(K, rng, clearance=0.2)
            y = _unit_dir(rng, K.n)
            fd = delta_b_fd(K, x, y, cfg=cfg)
            db = delta_b(K, x, y, cfg)
            if abs(fd - db) > 1e-2:
                fails.append(f"{K.name} fd {fd} vs {db}")
    checks.append(("finite-difference V_K limit equals 1/b*",) + _check(fails, "disk/square"))

    fails = []
    for _ in range(50):
        z = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-3, 3, 2)
        if np.linalg.norm(z) > 3:
            continue
        lhs = v_k_ball(z)
        rhs = v_k_symmetric(disk(), z, cfg)
        if abs(lhs - rhs) > 1e-6:
            fails.append(f"lundin {lhs} vs {rhs}")
    checks.append(("Lundin ball formula vs polar-dual sup",) + _check(fails, "50 pts"))

    fails = []
    for _ in range(50):
        w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        h = joukowski(w)
        if abs(h + 1.0 / h - 2.0 * w) > 1e-12 or abs(h) < 1.0 - 1e-12:
            fails.append(f"joukowski identity at {w}")
    checks.append(("Joukowski defining identity and branch",) + _check(fails, "50 pts"))
    return checks


# -- foliation suite -----------------------------------------------------

def suite_foliation(cfg: Config, cases: int = 10):
    rng = np.random.default_rng(cfg.seed)
    checks = []
    fails = []
    radii = (1.1, 1.5, 2.0, 5.0)
    for K in (disk(), square()):
        for _ in range(cases):
            x = _random_interior(K, rng, clearance=0.15)
            y = _unit_dir(rng, K.n)
            res = bstar(K, x, y, cfg)
            L = Leaf.from_witness(res)
            dev = check_harmonicity(L, K, radii, cfg)
            if dev > 1e-3:
                fails.append(f"{K.name} harmonicity dev {dev:.2g}")
    checks.append(("V_K(f(zeta)) = log|zeta| on witness leaves",) + _check(fails, "disk/square"))

    fails = []
    for K in (disk(), square(), triangle()):
        for _ in range(3):
            x = _random_interior(K, rng)
            y = _unit_dir(rng, K.n)
            res = bstar(K, x, y, cfg)
            L = Leaf.from_witness(res)
            lim = check_tangent_limit(L)
            if np.max(np.abs(lim - 1j * res.witness.b * res.witness.y)) > 1e-8:
                fails.append(f"{K.name} tangent limit")
    checks.append(("tangent limit (f(r)-f(1))/(r-1) -> i b y",) + _check(fails, "3 bodies"))

    fails = []
    for K in (disk(), square()):
        for _ in range(3):
            x = _random_interior(K, rng, clearance=0.15)
            y = _unit_dir(rng, K.n)
            res = bstar(K, x, y, cfg)
            E = res.witness
            if not check_a_maximal(E, K, cfg):
                fails.append(f"{K.name} witness not a-maximal")
    checks.append(("b-maximal witnesses are a-maximal",) + _check(fails, "disk/square"))
    return checks


# -- bernstein suite -----------------------------------------------------

def suite_bernstein(cfg: Config, trials: int = 100):
    rng = np.random.default_rng(cfg.seed)
    checks = []
    for K in (disk(), square(), triangle()):
        rep = validate_bm_bound(K, trials=trials, max_degree=5, seed=cfg.seed, cfg=cfg)
        ok = rep.violations == 0
        checks.append((f"no Bernstein-Markov violations on {K.name}", ok,
                       f"{len(rep.rows)} trials, tightness {rep.tightness:.3f}"))
    fails = []
    for K in (disk(), square()):
        for _ in range(10):
            x = _random_interior(K, rng)
            y = _unit_dir(rng, K.n)
            t = linear_tightness(K, x, y, cfg)
            if t < 0.99:
                fails.append(f"{K.name} tightness {t:.4f}")
    checks.append(("linear polynomials attain >= 0.99 of 1/b*",) + _check(fails, "disk/square"))
    return checks


# -- mass suite ----------------------------------------------------------

def suite_mass(cfg: Config, grid: int | None = None, tol: float = 0.05):
    checks = []
    rep1 = total_mass(interval(), cfg, grid=2001)
    ok = rep1.rel_error < 1e-3
    checks.append(("interval mass = 2 pi", ok, f"mass {rep1.mass:.6f}"))
    for K in (disk(), square(), triangle()):
        rep = total_mass(K, cfg, grid=grid)
        checks.append((f"{K.name} mass = (2 pi)^2 within {tol:.0%}",
                       rep.rel_error < tol,
                       f"mass {rep.mass:.4f} rel_err {rep.rel_error:.3%}"))
    return checks


def run_suite(name: str, cfg: Config = DEFAULT, fast: bool = False):
    """Run a named suite; returns [(label, ok, detail)]."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    if fast:
        cfg = cfg.fast()
    results = []
    if name in ("norms", "all"):
        results += suite_norms(cfg, cases=40 if fast else 200)
    if name in ("oracles", "all"):
        results += suite_oracles(cfg, cases=5 if fast else 20)
    if name in ("foliation", "all"):
        results += suite_foliation(cfg, cases=3 if fast else 10)
    if name in ("bernstein", "all"):
        results += suite_bernstein(cfg, trials=20 if fast else 100)
    if name in ("mass", "all"):
        results += suite_mass(cfg, grid=51 if fast else None,
                              tol=0.10 if fast else 0.05)
    return results
