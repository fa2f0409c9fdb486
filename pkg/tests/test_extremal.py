import numpy as np
import pytest

from mabody import (Ball, VPolytope, bstar, delta_b, delta_b_fd, density,
                    density_field, directional_profile, joukowski,
                    polar_volume, total_mass, v_k_ball, v_k_symmetric)
from mabody.config import DEFAULT
from mabody.errors import DegenerateProfile, NotSymmetric
from mabody.extremal import DirectionalProfile, _log_abs_h


def disk():
    return Ball([0.0, 0.0], 1.0)


def square():
    return VPolytope([[-1, -1], [-1, 1], [1, 1], [1, -1]])


def interval():
    return VPolytope([[-1.0], [1.0]])


class TestJoukowski:
    def test_defining_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            h = joukowski(w)
            assert abs(h + 1.0 / h - 2.0 * w) < 1e-12
            assert abs(h) >= 1.0 - 1e-12

    def test_real_axis_values(self):
        assert joukowski(1.0) == pytest.approx(1.0)
        assert joukowski(2.0) == pytest.approx(2.0 + np.sqrt(3.0))
        assert joukowski(-2.0) == pytest.approx(-2.0 - np.sqrt(3.0))

    def test_slit_is_unimodular(self):
        for u in (-0.9, 0.0, 0.5):
            assert abs(abs(joukowski(u)) - 1.0) < 1e-12

    def test_log_abs_matches(self):
        rng = np.random.default_rng(1)
        W = rng.uniform(-3, 3, 50) + 1j * rng.uniform(-3, 3, 50)
        assert np.allclose(_log_abs_h(W),
                           [np.log(abs(joukowski(w))) for w in W], atol=1e-12)


class TestExtremalFunctionOracles:
    def test_lundin_interval_reduces_to_joukowski(self):
        # on the real axis outside the ball, V(z) = log h(|z|)
        assert v_k_ball([2.0 + 0j, 0j]) == pytest.approx(np.log(2 + np.sqrt(3)))

    def test_lundin_zero_on_ball(self):
        assert v_k_ball([0.5 + 0j, 0.2 + 0j]) == 0.0

    def test_lundin_vs_polar_dual_sup(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            z = rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2)
            assert v_k_symmetric(disk(), z) == pytest.approx(
                v_k_ball(z), abs=1e-6)

    def test_square_real_points(self):
        # on R^2 the extremal function vanishes exactly on the body
        assert v_k_symmetric(square(), [0.5 + 0j, -0.5 + 0j]) < 1e-12
        assert v_k_symmetric(square(), [3.0 + 0j, 0.0 + 0j]) > 0.0

    def test_square_dominates_disk(self):
        # disk inside square => V_square <= V_disk off the bodies
        rng = np.random.default_rng(3)
        for _ in range(20):
            z = rng.uniform(-2, 2, 2) + 1j * rng.uniform(-2, 2, 2)
            assert (v_k_symmetric(square(), z)
                    <= v_k_symmetric(disk(), z) + 1e-9)

    def test_requires_symmetry(self):
        T = VPolytope([[0, 0], [1, 0], [0, 1]])
        with pytest.raises(NotSymmetric):
            v_k_symmetric(T, [2.0 + 0j, 0j])

    def test_short_time_lipschitz_bound(self):
        # for the interval: (1-e)|b|/sqrt(1-a^2) <= V(a+ieb)/e <= |b|/sqrt(1-a^2)
        I = interval()
        for a, b in [(0.0, 0.5), (0.3, 0.2), (-0.5, 0.8)]:
            if abs(b) > np.sqrt(1 - abs(a)):
                continue
            for eps in (0.5, 0.1, 0.01):
                val = v_k_symmetric(I, [a + 1j * eps * b]) / eps
                upper = abs(b) / np.sqrt(1 - a * a)
                assert val <= upper + 1e-9
                assert val >= (1 - eps) * abs(b) / np.sqrt(1 - a * a) - 1e-9


class TestFiniteDifferenceLimit:
    def test_matches_delta_b(self):
        rng = np.random.default_rng(4)
        for K in (disk(), square()):
            for _ in range(5):
                x = rng.uniform(-0.5, 0.5, 2)
                y = rng.normal(size=2)
                assert delta_b_fd(K, x, y) == pytest.approx(
                    delta_b(K, x, y), abs=1e-2)

    def test_direction_scaling(self):
        x, y = [0.2, 0.1], np.array([0.3, 0.4])
        assert delta_b_fd(square(), x, 2 * y) == pytest.approx(
            2 * delta_b_fd(square(), x, y), rel=1e-9)


class TestDensity:
    def test_interval_closed_forms(self):
        I = interval()
        for x in (0.0, 0.3, -0.3, 0.7, -0.7, 0.9, -0.9):
            assert delta_b(I, [x], [1.0]) == pytest.approx(
                1.0 / np.sqrt(1 - x * x), abs=1e-6)
            assert density(I, [x]) == pytest.approx(
                2.0 / np.sqrt(1 - x * x), rel=1e-9)

    def test_ball_closed_form(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            x = rng.uniform(-0.6, 0.6, 2)
            r2 = x @ x
            if r2 > 0.81:
                continue
            expected = 2 * np.pi / np.sqrt(1 - r2)
            assert density(disk(), x) == pytest.approx(expected, rel=2e-2)

    def test_polar_volume_of_round_profile(self):
        # constant radial function 1 => the polar is the unit disk, area pi
        from mabody.directions import direction_grid

        U = direction_grid(2, 720)
        prof = DirectionalProfile(x=np.zeros(2), directions=U,
                                  radii=np.ones(720))
        assert polar_volume(prof) == pytest.approx(np.pi, rel=1e-4)

    def test_degenerate_profile_rejected(self):
        prof = DirectionalProfile(x=np.zeros(2),
                                  directions=np.array([[1.0, 0.0], [0.0, 1.0]]),
                                  radii=np.array([1.0, 0.0]))
        with pytest.raises(DegenerateProfile):
            polar_volume(prof)

    def test_profile_radii_match_bstar(self):
        prof = directional_profile(square(), [0.2, 0.3])
        k = 17
        assert prof.radii[k] == pytest.approx(
            bstar(square(), [0.2, 0.3], prof.directions[k]).bstar, rel=1e-10)


class TestDensityFieldAndMass:
    def test_field_points_are_interior(self):
        field = density_field(square(), grid=15)
        assert np.all(square().gauge_many(field.points) < 1.0)
        assert np.all(field.values > 0)

    def test_field_csv_format(self, tmp_path):
        field = density_field(disk(), grid=11)
        path = tmp_path / "f.csv"
        field.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "x1,x2,lambda"
        assert len(lines) == len(field.points) + 1

    def test_interval_total_mass(self):
        rep = total_mass(interval(), grid=801)
        assert rep.target == pytest.approx(2 * np.pi)
        assert rep.rel_error < 1e-3

    def test_disk_total_mass_fast_grid(self):
        rep = total_mass(disk(), cfg=DEFAULT.fast())
        assert rep.rel_error < 0.02

    def test_report_json_round_trip(self):
        import json

        rep = total_mass(interval(), grid=201)
        data = json.loads(rep.to_json())
        assert data["n"] == 1
        assert data["mass"] == pytest.approx(rep.mass)
        assert len(data["margin"]) == 2
