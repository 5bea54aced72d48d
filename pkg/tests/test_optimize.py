import numpy as np
import pytest

from diversity_axioms.catalog import get_measure
from diversity_axioms.core import PointConfiguration
from diversity_axioms.errors import InstanceTooLarge, NTooSmall
from diversity_axioms.optimize import SearchConfig, corner_mass, maximize, to_svg
from diversity_axioms.registry import corner_config, grid_config


class TestCornerMass:
    def test_examples(self):
        assert corner_mass(corner_config()) == 1.0
        assert corner_mass(grid_config()) == 0.25
        center = PointConfiguration("unit_square", np.full((5, 2), 0.5))
        assert corner_mass(center) == 0.0

    def test_needs_square(self):
        with pytest.raises(ValueError):
            corner_mass(PointConfiguration("unit_segment", [0.0]))


class TestConfig:
    def test_too_small(self):
        with pytest.raises(NTooSmall):
            SearchConfig(get_measure("average"), n=1)

    def test_hard_limit(self):
        with pytest.raises(InstanceTooLarge):
            SearchConfig(get_measure("ham_div"), n=19)

    def test_cosine_needs_circle(self):
        with pytest.raises(ValueError):
            SearchConfig(get_measure("vendi"), space="unit_square", kernel="cosine")

    def test_default_scale(self):
        assert SearchConfig(get_measure("average")).scale == pytest.approx(0.1 * np.sqrt(2))


class TestMaximize:
    def test_two_points_reach_the_ends(self):
        for name in ("average", "diameter", "multi_dim_volume"):
            cfg = SearchConfig(get_measure(name), space="unit_segment", n=2, iterations=3000, seed=1)
            traj = maximize(cfg)
            assert sorted(traj.final.points.ravel()) == pytest.approx([0.0, 1.0], abs=1e-3)

    def test_trajectory_strictly_increases(self):
        cfg = SearchConfig(get_measure("energy"), n=8, iterations=2000, seed=3)
        traj = maximize(cfg)
        vals = [traj.initial_value] + traj.values
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert traj.final_value == vals[-1]

    def test_deterministic(self):
        cfg = SearchConfig(get_measure("average"), n=6, iterations=1500, restarts=3, seed=11)
        a, b = maximize(cfg), maximize(cfg)
        assert a.to_csv() == b.to_csv()
        np.testing.assert_array_equal(a.final.points, b.final.points)
        assert a.restart_values == b.restart_values

    def test_best_restart_selected(self):
        cfg = SearchConfig(get_measure("average"), n=6, iterations=300, restarts=4, seed=2)
        traj = maximize(cfg)
        assert traj.final_value == max(traj.restart_values)
        assert traj.restart == traj.restart_values.index(max(traj.restart_values))

    def test_sum_diameter_two_corners(self):
        cfg = SearchConfig(get_measure("sum_diameter"), n=16, iterations=6000, restarts=2, seed=0)
        traj = maximize(cfg)
        assert traj.final_value >= 0.98 * 16 * np.sqrt(2)
        assert corner_mass(traj.final) >= 0.9

    def test_similarity_on_circle(self):
        cfg = SearchConfig(get_measure("rke"), space="unit_circle", n=4, iterations=1000, seed=0)
        traj = maximize(cfg)
        assert traj.final_value > traj.initial_value

    def test_circle_stays_in_range(self):
        cfg = SearchConfig(get_measure("average"), space="unit_circle", n=5, iterations=800, seed=0)
        pts = maximize(cfg).final.points
        assert np.all((pts >= 0) & (pts < 2 * np.pi))


class TestOutputs:
    def test_csv_header(self):
        traj = maximize(SearchConfig(get_measure("average"), n=4, iterations=200, seed=0))
        lines = traj.to_csv().splitlines()
        assert lines[0] == "iteration,value,moved_index"
        assert len(lines) == len(traj.values) + 1

    @pytest.mark.parametrize("space", ["unit_square", "unit_circle", "unit_segment"])
    def test_svg(self, space):
        cfg = PointConfiguration(space, np.full((3, 2 if space == "unit_square" else 1), 0.5))
        svg = to_svg(cfg)
        assert 'viewBox="0 0 512 512"' in svg
        assert svg.count('r="4"') == 3
