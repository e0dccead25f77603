import math

import networkx as nx
import numpy as np
import pytest

from gdpart_core.errors import InfeasibleFixingError
from gdpart_core.graph import estimate_lambda_max
from gdpart_core.partitioner import bisect
from gdpart_core.projection import BalanceSpec, dykstra_projection
from gdpart_core.solver import (
    DEFAULT_GD_CONFIG,
    FractionalSolution,
    GDEngine,
    GdConfig,
    adaptive_step,
    fix_vertices,
    fractional_objective,
    gd_noise,
    run_gd,
)
from gdpart_core.weights import build_weight_set

from tests.conftest import graph_of


class TestObjective:

    def test_all_ones_keeps_every_edge(self, two_triangles):
        assert fractional_objective(two_triangles, np.ones(6)) == 6.0

    def test_origin_is_half(self, k4_dumbbell):
        assert fractional_objective(k4_dumbbell, np.zeros(8)) == pytest.approx(k4_dumbbell.m / 2)

    def test_triangle(self, triangle):
        assert fractional_objective(triangle, [1.0, -1.0, 0.0]) == pytest.approx(1.0)

    def test_edgeless(self):
        assert fractional_objective(graph_of(nx.empty_graph(3)), [0.3, 0.1, -1.0]) == 0.0

    def test_length_mismatch(self, triangle):
        with pytest.raises(ValueError):
            fractional_objective(triangle, np.zeros(4))


class TestNoise:

    def test_zero_scale_is_identity(self, rng):
        x = rng.uniform(-1, 1, 10)
        assert np.array_equal(gd_noise(x, 0.0, rng), x)

    def test_centered(self, rng):
        noisy = gd_noise(np.zeros(10_000), 0.1, rng)
        assert abs(noisy.mean()) < 0.01
        assert noisy.std() == pytest.approx(0.1, rel=0.05)

    def test_fixed_coordinates_untouched(self, rng):
        x = np.array([1.0, 0.2, -1.0, 0.0])
        fixed = np.array([True, False, True, False])
        noisy = gd_noise(x, 0.5, rng, fixed)
        assert noisy[fixed].tolist() == [1.0, -1.0]
        assert np.all(noisy[~fixed] != x[~fixed])

    def test_negative_scale(self, rng):
        with pytest.raises(ValueError):
            gd_noise(np.zeros(2), -0.1, rng)


class TestAdaptiveStep:

    def loose_spec(self, n):
        return BalanceSpec(np.ones((1, n)), [float(n)], 1.0)

    def test_zero_gradient(self):
        z = np.array([0.1, -0.2])
        step = adaptive_step(z, np.zeros(2), 0.5, self.loose_spec(2))
        assert step.x.tolist() == z.tolist()
        assert step.gamma == 0.0
        assert not step.saturated
        assert step.projection is None

    def test_interior_move_hits_target(self):
        gradient = np.array([0.1, -0.1, 0.1, -0.1])
        step = adaptive_step(np.zeros(4), gradient, 0.5, self.loose_spec(4), method='exact')
        assert step.gamma == pytest.approx(2.5)
        assert step.x == pytest.approx([0.25, -0.25, 0.25, -0.25])
        assert not step.saturated

    def test_saturates_at_box_corner(self):
        step = adaptive_step(np.array([0.9, 0.9]), np.array([1.0, 1.0]), 5.0, self.loose_spec(2), method='exact')
        assert step.saturated
        assert step.x == pytest.approx([1.0, 1.0])

    def test_overshoot_is_bisected(self):
        # The third doubling jumps from below the band to the box corner, above it
        z = np.zeros(4)
        step = adaptive_step(z, np.array([1.0, 0.1, 0.1, 0.1]), 1.5, self.loose_spec(4), method='exact', band=(0.99, 1.01))
        moved = np.linalg.norm(step.x - z)
        assert 1.485 <= moved <= 1.515
        assert 5.9 < step.gamma < 11.9
        assert not step.saturated

    def test_needs_spec_or_projector(self):
        with pytest.raises(ValueError):
            adaptive_step(np.zeros(2), np.ones(2), 1.0)

    def test_target_must_be_positive(self):
        with pytest.raises(ValueError):
            adaptive_step(np.zeros(2), np.ones(2), 0.0, self.loose_spec(2))


class TestFixing:

    def spec(self, epsilon=0.5):
        return BalanceSpec(np.ones((1, 4)), [4.0], epsilon)

    def test_fixes_and_shifts(self):
        solution = FractionalSolution(np.array([0.995, 0.2, 0.1, 0.3]), np.zeros(4, dtype=bool))
        updated, shifts = fix_vertices(solution, self.spec(), 0.99)
        assert updated.fixed.tolist() == [True, False, False, False]
        assert updated.x[0] == 1.0
        assert shifts == pytest.approx([-1.0])
        assert not solution.fixed.any()

    def test_opposite_signs_cancel(self):
        solution = FractionalSolution(np.array([0.995, -0.2, 0.1, -0.999]), np.zeros(4, dtype=bool))
        updated, shifts = fix_vertices(solution, self.spec(), 0.99)
        assert updated.x.tolist() == [1.0, -0.2, 0.1, -1.0]
        assert shifts == pytest.approx([0.0])

    def test_nothing_to_fix(self):
        solution = FractionalSolution(np.array([0.5, -0.5, 0.1, 0.0]), np.zeros(4, dtype=bool))
        updated, shifts = fix_vertices(solution, self.spec(), 0.99)
        assert updated.fixed_count == 0
        assert np.array_equal(updated.x, solution.x)
        assert shifts == pytest.approx([0.0])

    def test_fixed_set_never_shrinks(self):
        solution = FractionalSolution(np.array([1.0, 0.0, 0.0, 0.0]), np.array([True, False, False, False]))
        updated, _ = fix_vertices(solution, self.spec(), 0.99)
        assert updated.fixed[0]

    def test_unbalanceable_fixing(self):
        solution = FractionalSolution(np.array([1.0, 1.0, 1.0, 0.2]), np.zeros(4, dtype=bool))
        with pytest.raises(InfeasibleFixingError) as info:
            fix_vertices(solution, self.spec(epsilon=0.0), 0.99)
        assert info.value.dimension == 0

    def test_threshold_range(self):
        with pytest.raises(ValueError):
            fix_vertices(FractionalSolution.zeros(4), self.spec(), 1.5)


class TestConfig:

    def test_defaults(self):
        assert DEFAULT_GD_CONFIG.fix_threshold == 0.99
        assert DEFAULT_GD_CONFIG.get_noise_std(100) == pytest.approx(0.1)
        assert DEFAULT_GD_CONFIG.get_target_length(100) == pytest.approx(0.2)

    def test_finishing_rounds(self):
        cfg = GdConfig(iterations=10, finishing_rounds=3)
        assert cfg.get_projection_method(6) == 'alternating_one_shot'
        assert cfg.get_projection_method(7) == 'alternating'

    @pytest.mark.parametrize('changes', [
        {'iterations': 0},
        {'epsilon': -0.1},
        {'fix_threshold': 0.0},
        {'step_mode': 'line_search'},
        {'step_mode': 'fixed'},
        {'projection': 'simplex'},
        {'round_trials': 0},
        {'max_workers': 0},
        {'noise_std': -1.0},
    ])
    def test_rejects(self, changes):
        with pytest.raises(ValueError):
            GdConfig(**changes).validate()

    def test_digest_ignores_worker_count(self):
        base = GdConfig(seed=4)
        assert base.digest() == base.with_overrides(max_workers=8).digest()
        assert base.digest() != base.with_overrides(seed=5).digest()


class TestEngine:

    def test_edgeless_graph(self):
        g = graph_of(nx.empty_graph(6))
        solution, trace = run_gd(g, build_weight_set(g, 'unit'), GdConfig(iterations=10, fixing_enabled=False))
        assert solution.objective == 0.0
        assert np.all(np.abs(solution.x) <= 1.0)
        assert len(trace) >= 1

    def test_initial_point_length_is_checked(self, two_triangles):
        ws = build_weight_set(two_triangles, 'unit')
        with pytest.raises(ValueError, match='initial_x'):
            run_gd(two_triangles, ws, GdConfig(iterations=5), initial_x=np.zeros(4))

    def test_deterministic(self, random_graph):
        g = random_graph(80, 0.08, seed=11)
        ws = build_weight_set(g, 'unit,degree')
        cfg = GdConfig(iterations=40, seed=3)
        first_x, first_trace = run_gd(g, ws, cfg)
        second_x, second_trace = run_gd(g, ws, cfg)
        assert np.array_equal(first_x.x, second_x.x)
        assert first_trace.to_dataframe().equals(second_trace.to_dataframe())

    def test_trace_and_callback(self, random_graph):
        g = random_graph(50, 0.1, seed=2)
        calls = []
        engine = GDEngine(g, build_weight_set(g, 'unit'), GdConfig(iterations=15), progress_callback=calls.append)
        solution, trace = engine.run()
        assert len(calls) == len(trace)
        assert trace.labels == ['unit']
        assert trace.final.objective == fractional_objective(g, solution.x)
        assert solution.objective <= g.m
        assert engine.statistics['iterations_run'] == len(trace)
        fixed_counts = [record.fixed_count for record in trace.records]
        assert fixed_counts == sorted(fixed_counts)

    def test_final_point_is_balanced(self, random_graph):
        g = random_graph(120, 0.05, seed=8)
        ws = build_weight_set(g, 'unit,degree')
        cfg = GdConfig(iterations=60, epsilon=0.05, seed=1)
        solution, trace = run_gd(g, ws, cfg)
        assert np.all(np.abs(solution.x) <= 1.0)
        assert trace.final.max_imbalance <= 0.05 + 5e-3

    def test_monotone_ascent(self, random_graph):
        for seed in range(10):
            g = random_graph(60, 0.1, seed=100 + seed)
            ws = build_weight_set(g, 'unit')
            spec = BalanceSpec.from_weight_set(ws, 0.1)
            perturbation = np.random.default_rng(seed).uniform(-0.5, 0.5, g.n)
            start = dykstra_projection(perturbation, spec, tol=1e-12, max_rounds=500_000).x
            cfg = GdConfig(
                iterations=25,
                epsilon=0.1,
                noise_iterations=0,
                restart_on_stationary=False,
                step_mode='fixed',
                step_size=0.9 / estimate_lambda_max(g, 100, seed),
                projection='dykstra',
                finishing_projection='dykstra',
                projection_tol=1e-12,
                projection_max_rounds=500_000,
                fixing_enabled=False,
            )
            _, trace = run_gd(g, ws, cfg, initial_x=start)
            objectives = np.concatenate([[fractional_objective(g, start)], trace.objectives()])
            assert np.all(np.diff(objectives) >= -1e-9 * g.m - 1e-8)


class TestTwoTriangles:

    def test_reaches_zero_cut(self, two_triangles):
        ws = build_weight_set(two_triangles, 'unit')
        good = 0
        for seed in range(20):
            rounding, solution, _ = bisect(two_triangles, ws, GdConfig(epsilon=0.0, seed=seed))
            if solution.objective >= 5.5 and rounding.uncut == 6:
                good += 1
        assert good >= 18

    def test_target_length_default(self):
        assert GdConfig(iterations=50).get_target_length(25) == pytest.approx(2 * math.sqrt(25) / 50)
