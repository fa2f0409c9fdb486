import numpy as np
import pytest

from mabody import (Ball, Polynomial, VPolytope, bm_ratio, delta_b,
                    linear_tightness, random_polynomial, sup_norm_estimate,
                    validate_bm_bound)
from mabody.bernstein import multi_indices
from mabody.errors import PAtUnitValue


def disk():
    return Ball([0.0, 0.0], 1.0)


def square():
    return VPolytope([[-1, -1], [-1, 1], [1, 1], [1, -1]])


class TestPolynomial:
    def test_evaluation(self):
        # p(x, y) = 1 + 2 x y^2
        p = Polynomial(2, {(0, 0): 1.0, (1, 2): 2.0})
        assert p.at([3.0, 2.0]) == pytest.approx(1 + 2 * 3 * 4)
        assert p.degree == 3

    def test_partial_derivative(self):
        p = Polynomial(2, {(2, 1): 3.0})
        dp = p.partial(0)
        assert dp.terms == {(1, 1): 6.0}

    def test_directional_derivative(self):
        # p = x^2 + y; D_(1,1) p = 2x + 1
        p = Polynomial(2, {(2, 0): 1.0, (0, 1): 1.0})
        d = p.directional_derivative([1.0, 1.0])
        assert d.at([0.5, 0.0]) == pytest.approx(2.0)

    def test_scaled(self):
        p = Polynomial(1, {(1,): 2.0})
        assert p.scaled(0.5).at([3.0]) == pytest.approx(3.0)

    def test_multi_indices_count(self):
        # degree <= 3 in 2 variables: C(3+2, 2) = 10 monomials
        assert len(multi_indices(2, 3)) == 10

    def test_random_polynomial_degree(self):
        rng = np.random.default_rng(0)
        p = random_polynomial(2, 5, rng)
        assert 1 <= p.degree <= 5


class TestSupNorm:
    def test_chebyshev_on_interval(self):
        # T_3(x) = 4x^3 - 3x has sup norm 1 on [-1, 1]
        I = VPolytope([[-1.0], [1.0]])
        p = Polynomial(1, {(3,): 4.0, (1,): -3.0})
        assert sup_norm_estimate(p, I) == pytest.approx(1.0, abs=1e-6)

    def test_linear_on_square(self):
        p = Polynomial(2, {(1, 0): 1.0, (0, 1): 2.0})
        assert sup_norm_estimate(p, square()) == pytest.approx(3.0, abs=1e-6)

    def test_linear_on_disk(self):
        p = Polynomial(2, {(1, 0): 3.0, (0, 1): 4.0})
        assert sup_norm_estimate(p, disk()) == pytest.approx(5.0, abs=1e-4)

    def test_requires_enough_samples(self):
        p = Polynomial(1, {(1,): 1.0})
        with pytest.raises(ValueError):
            sup_norm_estimate(p, VPolytope([[-1.0], [1.0]]), samples=10)


class TestRatio:
    def test_interval_linear_attains_bound(self):
        # p(x) = x on [-1,1]: ratio = 1/sqrt(1-x^2) = delta_b exactly
        I = VPolytope([[-1.0], [1.0]])
        p = Polynomial(1, {(1,): 1.0})
        for x in (0.0, 0.3, -0.6):
            assert bm_ratio(p, [x], [1.0], I) == pytest.approx(
                delta_b(I, [x], [1.0]), rel=1e-9)

    def test_chebyshev_attains_bound_on_interval(self):
        I = VPolytope([[-1.0], [1.0]])
        p = Polynomial(1, {(2,): 2.0, (0,): -1.0})  # T_2(x) = 2x^2 - 1
        x = 0.3
        assert bm_ratio(p, [x], [1.0], I) == pytest.approx(
            1.0 / np.sqrt(1 - x * x), rel=1e-9)

    def test_p_at_unit_value(self):
        I = VPolytope([[-1.0], [1.0]])
        p = Polynomial(1, {(0,): 1.0, (1,): 0.0, (2,): 0.0})
        with pytest.raises((PAtUnitValue, ValueError)):
            bm_ratio(p, [0.2], [1.0], I)


class TestValidation:
    def test_no_violations_small_run(self):
        for K in (disk(), square()):
            rep = validate_bm_bound(K, trials=30, max_degree=4, seed=1)
            assert rep.violations == 0
            assert 0 < rep.tightness <= 1.0 + rep.eps

    def test_report_csv(self, tmp_path):
        rep = validate_bm_bound(disk(), trials=5, max_degree=3, seed=2)
        path = tmp_path / "bm.csv"
        rep.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "trial,degree,x1,x2,y1,y2,ratio,delta_b,slack"
        assert lines[-1].startswith("# violations=0")
        assert len(lines) == len(rep.rows) + 2

    def test_linear_tightness_on_symmetric_bodies(self):
        rng = np.random.default_rng(6)
        for K in (disk(), square()):
            for _ in range(5):
                x = rng.uniform(-0.5, 0.5, 2)
                y = rng.normal(size=2)
                t = linear_tightness(K, x, y)
                assert t > 0.99
                # the sup-norm normalization is a lower-bound estimate, so
                # the ratio may exceed the ideal value slightly
                assert t < 1.01
