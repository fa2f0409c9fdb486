"""End-to-end acceptance gate.

Each test covers one numbered criterion and prints a single PASS/FAIL line
(visible under ``pytest -s`` or in captured output on failure).
"""

import numpy as np
import pytest

from mabody import (bstar, bstar_symmetric, delta_b, delta_b_fd, density,
                    linear_tightness, total_mass, v_k_ball, v_k_symmetric,
                    validate_bm_bound, Leaf, check_harmonicity)
from mabody.config import DEFAULT
from mabody.verify import disk, interval, square, triangle, suite_norms


def _report(num, desc, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {desc} ({detail})")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_1_ball_density():
    rng = np.random.default_rng(1)
    K = disk()
    worst = 0.0
    count = 0
    while count < 20:
        x = rng.uniform(-0.9, 0.9, 2)
        if x @ x > 0.81:
            continue
        count += 1
        expected = 2 * np.pi / np.sqrt(1 - x @ x)
        worst = max(worst, abs(density(K, x) - expected) / expected)
    _report(1, "ball density matches 2 pi / sqrt(1 - |x|^2)",
            worst < 0.02, f"20 points, worst rel err {worst:.2e}")


def test_criterion_2_total_mass():
    details = []
    ok = True
    for K in (disk(), square(), triangle()):
        rep = total_mass(K, DEFAULT, grid=101, margins=(1e-2, 5e-3))
        ok = ok and rep.rel_error < 0.05
        details.append(f"{rep.body}={rep.mass:.3f} ({rep.rel_error:.2%})")
    _report(2, "total mass (2 pi)^2 for disk/square/triangle, <5%",
            ok, ", ".join(details))


def test_criterion_3_oracle_equivalence():
    rng = np.random.default_rng(3)
    worst = 0.0
    for K in (disk(), square()):
        for _ in range(20):
            x = rng.uniform(-0.6, 0.6, 2)
            y = rng.normal(size=2)
            b = bstar(K, x, y).bstar
            bs = bstar_symmetric(K, x, y)
            worst = max(worst, abs(b - bs) / bs)
    _report(3, "geometric b* vs polar-dual oracle, rel < 1e-3",
            worst < 1e-3, f"40 samples, worst rel diff {worst:.2e}")


def test_criterion_4_finite_difference_limit():
    rng = np.random.default_rng(4)
    worst = 0.0
    for K in (disk(), square()):
        for _ in range(10):
            x = rng.uniform(-0.5, 0.5, 2)
            y = rng.normal(size=2)
            worst = max(worst, abs(delta_b_fd(K, x, y) - delta_b(K, x, y)))
    _report(4, "finite-difference V_K limit equals 1/b* within 1e-2",
            worst < 1e-2, f"20 samples, worst abs diff {worst:.2e}")


def test_criterion_5_one_dimensional_closed_form():
    I = interval()
    worst = 0.0
    for x in (0.0, 0.3, -0.3, 0.7, -0.7, 0.9, -0.9):
        worst = max(worst, abs(delta_b(I, [x], [1.0])
                               - 1.0 / np.sqrt(1 - x * x)))
    rep = total_mass(I, DEFAULT, grid=4001)
    ok = worst < 1e-6 and rep.rel_error < 1e-3
    _report(5, "interval delta_b closed form and mass 2 pi",
            ok, f"worst delta {worst:.2e}, mass rel err {rep.rel_error:.2e}")


def test_criterion_6_norm_property_suite():
    results = suite_norms(DEFAULT.replace(seed=42), cases=200)
    failures = [(label, detail) for label, ok, detail in results if not ok]
    _report(6, "norm/property suite, 200 randomized cases, seed 42",
            not failures, f"{len(results)} checks, failures: {failures or 'none'}")


def test_criterion_7_foliation_harmonicity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for K in (disk(), square()):
        for _ in range(10):
            x = rng.uniform(-0.5, 0.5, 2)
            y = rng.normal(size=2)
            L = Leaf.from_witness(bstar(K, x, y))
            worst = max(worst, check_harmonicity(K=K, L=L,
                                                 radii=(1.1, 1.5, 2.0, 5.0)))
    _report(7, "V_K(f(zeta)) = log|zeta| on witness leaves within 1e-3",
            worst < 1e-3, f"20 leaves, worst deviation {worst:.2e}")


def test_criterion_8_bernstein_markov():
    violations = 0
    trials_done = 0
    for K, trials in ((disk(), 167), (square(), 167), (triangle(), 166)):
        rep = validate_bm_bound(K, trials=trials, max_degree=5, seed=42)
        violations += rep.violations
        trials_done += len(rep.rows)
    rng = np.random.default_rng(8)
    tight = 0.0
    for K in (disk(), square()):
        for _ in range(5):
            x = rng.uniform(-0.5, 0.5, 2)
            y = rng.normal(size=2)
            tight = max(tight, linear_tightness(K, x, y))
    ok = violations == 0 and tight >= 0.99
    _report(8, "no Bernstein-Markov violations over 500 polynomials; "
               "linear tightness >= 0.99",
            ok, f"{trials_done} trials, {violations} violations, "
                f"tightness {tight:.4f}")


def test_criterion_9_lundin_consistency():
    rng = np.random.default_rng(9)
    worst = 0.0
    count = 0
    K = disk()
    while count < 50:
        z = rng.uniform(-3, 3, 2) + 1j * rng.uniform(-3, 3, 2)
        if np.linalg.norm(z) > 3:
            continue
        count += 1
        worst = max(worst, abs(v_k_ball(z) - v_k_symmetric(K, z)))
    _report(9, "Lundin ball formula vs polar-dual sup within 1e-6",
            worst < 1e-6, f"50 points, worst abs diff {worst:.2e}")
