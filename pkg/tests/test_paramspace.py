import numpy as np
import pytest

from ifslab import (
    InvalidLambda,
    escape_grid,
    membership,
    survivors,
)

from conftest import random_lambda
from oracles import exhaustive_verdict


class TestMembership:
    @pytest.mark.parametrize("x,expect_survive", [(0.45, False), (0.49, False),
                                                  (0.51, True), (0.6, True)])
    def test_real_spike_anchors(self, x, expect_survive):
        result = membership(complex(x, 0.0), "M", 40)
        assert result.survived == expect_survive

    def test_invalid_lambda(self):
        for lam in (0j, 1.0 + 0j, 1.2 + 0.1j):
            with pytest.raises(InvalidLambda):
                membership(lam, "M", 10)

    def test_bad_set_kind(self):
        with pytest.raises(ValueError):
            membership(0.5 + 0.1j, "X", 10)

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            membership(0.5 + 0.1j, "M", 0)

    def test_escape_depth_at_least_one(self):
        result = membership(0.01 + 0.01j, "M", 10)
        assert not result.survived
        assert result.escaped_at == 1

    def test_matches_exhaustive_at_fixed_point(self):
        lam = 0.3 + 0.1j
        got = membership(lam, "M", 10).survived
        assert got == exhaustive_verdict(lam, "M", 10)

    def test_pruning_sound_on_random_sample(self, rng):
        for _ in range(25):
            lam = random_lambda(rng)
            for kind in ("M", "M0"):
                assert membership(lam, kind, 10).survived == exhaustive_verdict(
                    lam, kind, 10
                )

    def test_monotonic_escape_depth(self, rng):
        for _ in range(20):
            lam = random_lambda(rng)
            base = membership(lam, "M", 12)
            if base.survived:
                continue
            e = base.escaped_at
            for deeper in (e, e + 1, e + 7, 40):
                again = membership(lam, "M", deeper)
                assert not again.survived
                assert again.escaped_at == e

    def test_m0_survival_implies_m_survival(self, rng):
        for _ in range(25):
            lam = random_lambda(rng)
            if membership(lam, "M0", 12).survived:
                assert membership(lam, "M", 12).survived

    def test_symmetry_negation_and_conjugation(self, rng):
        for _ in range(15):
            lam = random_lambda(rng)
            base = membership(lam, "M", 14)
            for other in (-lam, lam.conjugate(), -lam.conjugate()):
                mirrored = membership(other, "M", 14)
                assert mirrored.escaped_at == base.escaped_at

    def test_root_parameter_survives_any_depth(self, roots):
        for depth in (10, 30, 60):
            assert membership(roots[1], "M", depth).survived
            assert membership(roots[5], "M0", depth).survived


class TestSurvivors:
    def test_landmark1_root_prefix_present(self, roots, fixtures):
        out = survivors(roots[1], "M0", 20, cap=4096)
        prefix = tuple(
            1 if j not in (1, 2) else -1 for j in range(20)
        )  # 1,-1,-1, then all +1
        assert prefix in out.prefixes
        assert not out.overflow

    def test_landmark5_prefix_present(self, roots):
        out = survivors(roots[5], "M0", 15, cap=4096)
        block = (1, 1, -1)
        prefix = (1,) + tuple(block[j % 3] for j in range(14))
        assert prefix in out.prefixes

    def test_escaped_parameter_has_no_survivors(self):
        lam = 0.45 + 0j
        assert membership(lam, "M", 10).escaped_at > 0
        assert survivors(lam, "M", 10, cap=10).prefixes == ()

    def test_lexicographic_order(self, roots):
        out = survivors(roots[1], "M", 10, cap=100000)
        assert list(out.prefixes) == sorted(out.prefixes)

    def test_cap_and_overflow(self):
        lam = 0.66 + 0.18j  # interior parameter with a fat survivor set
        full = survivors(lam, "M", 8, cap=100000)
        assert not full.overflow
        assert len(full.prefixes) == 11
        capped = survivors(lam, "M", 8, cap=5)
        assert capped.overflow
        assert capped.prefixes == full.prefixes[:5]

    def test_prefixes_start_with_one(self, roots):
        out = survivors(roots[4], "M", 8, cap=1000)
        assert all(p[0] == 1 and len(p) == 8 for p in out.prefixes)


class TestEscapeGrid:
    def test_single_pixel_survived(self):
        grid = escape_grid((0.505, -0.005, 0.515, 0.005), 1, 1, "M", 40)
        assert grid.values[0, 0] == 0

    def test_single_pixel_escaped(self):
        grid = escape_grid((0.445, -0.005, 0.455, 0.005), 1, 1, "M", 40)
        assert grid.values[0, 0] >= 1

    def test_origin_pixel_convention(self):
        grid = escape_grid((-0.05, -0.05, 0.05, 0.05), 1, 1, "M", 10)
        assert grid.values[0, 0] == 1

    def test_modulus_above_one_convention(self):
        grid = escape_grid((1.5, 1.5, 1.7, 1.7), 1, 1, "M", 10)
        assert grid.values[0, 0] == 1

    def test_symmetric_window_negation_invariance(self):
        grid = escape_grid((-0.66, -0.66, 0.66, 0.66), 3, 3, "M", 12)
        assert np.array_equal(grid.values, grid.values[::-1, ::-1])
        assert grid.values[1, 1] == 1  # center pixel is lambda = 0

    def test_row_zero_is_top(self):
        # survived spike pixel on the real axis; escaped pixel above it
        grid = escape_grid((0.5, -0.02, 0.56, 0.1), 1, 3, "M", 40)
        assert grid.values[2, 0] == 0  # bottom row straddles the real axis
        assert grid.values[0, 0] > 0

    def test_matches_membership_at_pixel_centers(self):
        window = (0.30, 0.05, 0.70, 0.45)
        grid = escape_grid(window, 4, 4, "M", 18)
        x0, y0, x1, y1 = window
        for j in range(4):
            for i in range(4):
                lam = complex(
                    x0 + (i + 0.5) * (x1 - x0) / 4, y1 - (j + 0.5) * (y1 - y0) / 4
                )
                assert grid.values[j, i] == membership(lam, "M", 18).escaped_at

    def test_thread_count_does_not_change_values(self):
        window = (0.40, 0.00, 0.72, 0.32)
        a = escape_grid(window, 16, 16, "M", 20, threads=1)
        b = escape_grid(window, 16, 16, "M", 20, threads=3)
        assert np.array_equal(a.values, b.values)

    def test_degenerate_window_rejected(self):
        with pytest.raises(ValueError):
            escape_grid((0.5, 0.5, 0.5, 0.6), 2, 2, "M", 10)
