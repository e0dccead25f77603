"""
GD Engine - projected gradient ascent on the quadratic relaxation.
Coordinates noise, the gradient step, projection and vertex fixing.
"""

import logging
import time
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from gdpart_core.errors import ConvergenceError
from gdpart_core.graph import Graph, adjacency_multiply
from gdpart_core.projection import BalanceSpec, ProjectionResult, project_K
from gdpart_core.solver.config import GdConfig, DEFAULT_GD_CONFIG
from gdpart_core.solver.fixing import fix_vertices, free_shifts
from gdpart_core.solver.state import FractionalSolution, IterationRecord, IterationTrace
from gdpart_core.solver.steps import adaptive_step, fractional_objective, gd_noise
from gdpart_core.utils import as_vector, make_rng, STREAM_NOISE
from gdpart_core.weights import WeightSet

logger = logging.getLogger(__name__)


class GDEngine:
    """
    Projected gradient ascent for f(x) = 1/2 * sum over edges (x_u x_v + 1).

    Workflow:
    1. Start from x = 0 (or a supplied feasible point)
    2. For each iteration:
       - Noise (first iterations, or after two zero steps in a row)
       - Gradient step y = z + gamma * A z over the free coordinates
       - Projection onto box ∩ slabs, with the slab centers shifted by the fixed vertices
       - Fix coordinates with |x_i| >= tau
    3. Return the fractional solution and its trace

    The last `finishing_rounds` iterations use the finishing projection method.
    """

    def __init__(
            self,
            graph: Graph,
            weights: WeightSet,
            config: GdConfig = DEFAULT_GD_CONFIG,
            shifts: Optional[np.ndarray] = None,
            progress_callback: Optional[Callable[[Dict], None]] = None,
            initial_x: Optional[np.ndarray] = None,
    ):
        """
        Initialize GD engine.

        Args:
            graph: graph to partition
            weights: balance weight rows matching the graph
            config: solver configuration
            shifts: slab centers b_j (default 0, an even split)
            progress_callback: Optional callback for progress updates
            initial_x: starting point in K (default 0)
        """
        weights.check_matches(graph)
        self.graph = graph
        self.weights = weights
        self.config = config.validate()
        self.spec = BalanceSpec.from_weight_set(weights, config.epsilon, shifts)
        self.progress_callback = progress_callback
        self.initial_x = initial_x
        self.trace = IterationTrace(labels=list(weights.labels))
        self.statistics: Dict = {}

    def run(self) -> Tuple[FractionalSolution, IterationTrace]:
        cfg = self.config
        n = self.graph.n
        solution = FractionalSolution.zeros(n)
        if self.initial_x is not None:
            solution.x = np.clip(as_vector(self.initial_x, n, 'initial_x'), -1.0, 1.0)
        if n == 0:
            return solution, self.trace

        start = time.time()
        noise_std = cfg.get_noise_std(n)
        target = cfg.get_target_length(n)
        shifts = free_shifts(solution, self.spec)
        zero_steps = 0
        renoise = False
        self._log(f"Starting: n={n}, m={self.graph.m}, d={self.weights.d}, "
                  f"eps={cfg.epsilon}, iterations={cfg.iterations}, seed={cfg.seed}")

        for iteration in range(cfg.iterations):
            free = solution.free
            if not free.any():
                self._log(f"All vertices fixed after {iteration} iterations. Stopping.")
                break

            # Noise addition step
            eta = noise_std if (iteration < cfg.noise_iterations or renoise) else 0.0
            renoise = False
            z = gd_noise(solution.x, eta, make_rng(cfg.seed, STREAM_NOISE, iteration), solution.fixed)

            # Gradient step (full product over the composite point)
            gradient = adjacency_multiply(self.graph, z)
            free_spec = self.spec.restrict(free, shifts)
            project = self._projector(free_spec, cfg.get_projection_method(iteration), iteration)
            z_free, gradient_free = z[free], gradient[free]

            # Projection step
            saturated = False
            if cfg.step_mode == 'fixed':
                gamma = cfg.step_size
                x_free = project(z_free + gamma * gradient_free).x
            else:
                step = adaptive_step(
                    z_free, gradient_free, target, project=project,
                    band=(cfg.step_band_low, cfg.step_band_high),
                    max_bisection_steps=cfg.max_bisection_steps,
                    max_doublings=cfg.max_doublings,
                )
                gamma, saturated = step.gamma, step.saturated
                x_free = step.x if step.projection is not None else project(step.x).x

            x_next = solution.x.copy()
            x_next[free] = x_free
            step_len = float(np.linalg.norm(x_next - solution.x))
            solution.x = x_next

            if cfg.fixing_enabled:
                solution, shifts = fix_vertices(solution, self.spec, cfg.fix_threshold)
            solution.objective = fractional_objective(self.graph, solution.x)

            imbalance = np.abs(self.spec.slab_values(solution.x) - self.spec.shifts) / self.spec.totals
            self.trace.append(IterationRecord(
                iteration=iteration,
                objective=solution.objective,
                step_len=step_len,
                imbalance=imbalance.tolist(),
                fixed_count=solution.fixed_count,
                gamma=float(gamma),
                saturated=saturated,
            ))

            zero_steps = zero_steps + 1 if gamma == 0.0 else 0
            if zero_steps >= 2 and cfg.restart_on_stationary:
                self._log(f"Stationary point at iteration {iteration}; adding noise", logging.DEBUG)
                renoise = True
                zero_steps = 0
                self.trace.restarts += 1

            if iteration % cfg.log_interval == 0 or iteration == cfg.iterations - 1:
                self._log(
                    f"iter {iteration}: objective={solution.objective:.4f}, "
                    f"step={step_len:.4g}, max_imbalance={imbalance.max():.4g}, "
                    f"fixed={solution.fixed_count}"
                )
            if self.progress_callback:
                self.progress_callback({
                    'iteration': iteration,
                    'objective': solution.objective,
                    'step_len': step_len,
                    'fixed_count': solution.fixed_count,
                })

        elapsed = time.time() - start
        self.statistics = {
            'iterations_run': len(self.trace),
            'final_objective': solution.objective,
            'fixed_count': solution.fixed_count,
            'restarts': self.trace.restarts,
            'method_fallbacks': self.trace.method_fallbacks,
            'elapsed_seconds': elapsed,
        }
        self._log(f"Finished in {elapsed:.2f}s: objective={solution.objective:.4f} of m={self.graph.m}")
        return solution, self.trace

    def _projector(self, spec: BalanceSpec, method: str, iteration: int) -> Callable[[np.ndarray], ProjectionResult]:
        """Projection onto the free-coordinate slabs; non-converged alternating falls back to Dykstra, then exact."""
        cfg = self.config

        def project(point: np.ndarray) -> ProjectionResult:
            try:
                return project_K(point, spec, method, tol=cfg.projection_tol,
                                 max_rounds=cfg.projection_max_rounds, seed=cfg.seed + iteration)
            except ConvergenceError as e:
                if method == 'dykstra':
                    raise
                self.trace.method_fallbacks += 1
                logger.warning(f"[GD] iteration {iteration}: {e}; retrying with Dykstra")
            try:
                return project_K(point, spec, 'dykstra', tol=cfg.projection_tol,
                                 max_rounds=cfg.projection_max_rounds)
            except ConvergenceError as e:
                logger.warning(f"[GD] iteration {iteration}: {e}; using the exact projection")
                return project_K(point, spec, 'exact', seed=cfg.seed + iteration)

        return project

    def _log(self, message: str, level: int = logging.INFO):
        logger.log(level, f"[GD] {message}")


def run_gd(
        graph: Graph,
        weights: WeightSet,
        config: GdConfig = DEFAULT_GD_CONFIG,
        shifts: Optional[np.ndarray] = None,
        progress_callback: Optional[Callable[[Dict], None]] = None,
        initial_x: Optional[np.ndarray] = None,
) -> Tuple[FractionalSolution, IterationTrace]:
    """Run projected gradient ascent; see GDEngine."""
    return GDEngine(graph, weights, config, shifts, progress_callback, initial_x).run()
