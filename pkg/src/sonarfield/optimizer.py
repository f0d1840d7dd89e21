"""Differential-evolution search for sensor placements.

Maximises the fused detection probability over the coordinates of the
movable omnidirectional sensors by minimising its complement with the
classic rand/1/bin variant: uniform initialisation inside the bounds,
mutation a + F*(b - c) over three distinct partners, binomial crossover
with one forced gene, projection onto the bounds, and greedy selection.
Runs are deterministic for a given seed regardless of worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .detection import (
    QuadratureSpec,
    Scenario,
    miss_product_for,
    quadrature_nodes,
    system_pd,
)
from .regions import HybridRegion, OmniSensor
from .sonar import single_sensor_pd

THREADS_ENV_VAR = "SONARFIELD_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Worker cap: explicit request, else SONARFIELD_THREADS, else machine."""
    if requested is not None:
        return max(1, int(requested))
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        return max(1, int(env_value))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class DEConfig:
    """Differential-evolution hyperparameters.

    ``population`` of None means 15 times the problem dimension. The run
    stops early once the spread of population objectives falls below
    ``tolerance``.
    """

    population: int | None = None
    mutation: float = 0.7
    crossover: float = 0.9
    max_generations: int = 300
    tolerance: float = 1e-6
    seed: int = 0
    workers: int | None = None

    def __post_init__(self):
        if self.population is not None and self.population < 4:
            raise ValueError("population must be at least 4")
        if not (0.0 < self.mutation <= 2.0):
            raise ValueError(f"mutation must be in (0, 2], got {self.mutation}")
        if not (0.0 <= self.crossover <= 1.0):
            raise ValueError(f"crossover must be in [0, 1], got {self.crossover}")
        if self.max_generations < 1:
            raise ValueError("max_generations must be at least 1")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")


@dataclass(frozen=True)
class OptimizeSettings:
    """Optimisation block of a scenario: what to move and how to search."""

    enabled: bool = True
    movable_count: int | None = None
    de: DEConfig = field(default_factory=DEConfig)


@dataclass
class PlacementProblem:
    """Decision space for placing the movable omni sensors of a scenario.

    The decision vector concatenates (x, y) for the first ``movable_count``
    omnidirectional sensors of the scenario (all of them by default); line
    arrays and any remaining sensors stay fixed. Bounds per sensor come
    from the region, or for hybrid regions from the subregion holding the
    sensor's listed position.
    """

    scenario: Scenario
    movable_count: int | None = None
    quadrature: QuadratureSpec | None = None

    def __post_init__(self):
        omni_indices = [
            i for i, s in enumerate(self.scenario.sensors) if isinstance(s, OmniSensor)
        ]
        count = self.movable_count if self.movable_count is not None else len(omni_indices)
        if count < 1:
            raise ValueError("at least one movable omni sensor is required")
        if count > len(omni_indices):
            raise ValueError(
                f"scenario has {len(omni_indices)} omni sensors, "
                f"cannot move {count}"
            )
        self.movable_indices = tuple(omni_indices[:count])
        region = self.scenario.region
        per_sensor_bounds = []
        for i in self.movable_indices:
            sensor = self.scenario.sensors[i]
            if isinstance(region, HybridRegion):
                sub = (
                    region.region_a
                    if region.region_a.contains(sensor.x, sensor.y)
                    else region.region_b
                )
                per_sensor_bounds.append(sub.bounds)
            else:
                per_sensor_bounds.append(region.bounds)
        lo, hi = [], []
        for x_lo, x_hi, y_lo, y_hi in per_sensor_bounds:
            lo += [x_lo, y_lo]
            hi += [x_hi, y_hi]
        self.lower = np.array(lo)
        self.upper = np.array(hi)

    @property
    def dimension(self) -> int:
        return 2 * len(self.movable_indices)

    def clip(self, vector) -> np.ndarray:
        return np.clip(np.asarray(vector, dtype=float), self.lower, self.upper)

    def scenario_with(self, vector) -> Scenario:
        """Scenario with the movable sensors placed per ``vector``."""
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (self.dimension,):
            raise ValueError(f"vector must have shape ({self.dimension},)")
        sensors = list(self.scenario.sensors)
        for k, i in enumerate(self.movable_indices):
            sensors[i] = OmniSensor(float(vector[2 * k]), float(vector[2 * k + 1]))
        return replace(self.scenario, sensors=tuple(sensors))

    def effective_quadrature(self) -> QuadratureSpec:
        return self.quadrature or self.scenario.quadrature


def objective(problem: PlacementProblem, vector) -> float:
    """Complement of the fused detection probability at ``vector``.

    Out-of-bounds coordinates are projected onto the bounds before
    evaluation.
    """
    clipped = problem.clip(vector)
    return 1.0 - system_pd(
        problem.scenario_with(clipped), problem.effective_quadrature()
    )


def _make_evaluator(problem: PlacementProblem):
    """Per-vector objective, with a precomputed grid for rectangular regions."""
    region = problem.scenario.region
    if isinstance(region, HybridRegion):
        return lambda vec: objective(problem, vec)

    env = problem.scenario.env
    design = problem.scenario.design
    quad = problem.effective_quadrature()
    x_lo, x_hi, y_lo, y_hi = region.bounds
    xs, wx = quadrature_nodes(quad, x_lo, x_hi)
    ys, wy = quadrature_nodes(quad, y_lo, y_hi)
    grid_x = xs[:, None]
    grid_y = ys[None, :]
    area = region.area
    fixed = tuple(
        s
        for i, s in enumerate(problem.scenario.sensors)
        if i not in problem.movable_indices
    )
    fixed_miss = miss_product_for(fixed, env, design, grid_x, grid_y) if fixed else None

    def evaluate(vector) -> float:
        vec = problem.clip(vector)
        # all movable sensors at once: (movers, nx, ny) distance stack
        mover_x = vec[0::2][:, None, None]
        mover_y = vec[1::2][:, None, None]
        r = np.hypot(grid_x[None, :, :] - mover_x, grid_y[None, :, :] - mover_y)
        p = single_sensor_pd(r, env, design, 0.0)
        miss = np.prod(1.0 - p, axis=0)
        if fixed_miss is not None:
            miss = miss * fixed_miss
        integral = float(wx @ miss @ wy)
        return float(np.clip(integral / area, 0.0, 1.0))

    return evaluate


@dataclass
class PlacementResult:
    """Outcome of a differential-evolution run."""

    best_vector: np.ndarray
    best_pd: float
    history: list[float]  # best objective after initialisation and each generation
    generations: int
    evaluations: int

    def best_positions(self) -> list[tuple[float, float]]:
        v = self.best_vector
        return [(float(v[2 * k]), float(v[2 * k + 1])) for k in range(len(v) // 2)]


def optimize(problem: PlacementProblem, config: DEConfig | None = None) -> PlacementResult:
    """Run rand/1/bin differential evolution on the placement problem."""
    config = config or DEConfig()
    dim = problem.dimension
    pop_size = config.population if config.population is not None else 15 * dim
    if pop_size < 4:
        raise ValueError("population must be at least 4")

    rng = np.random.default_rng(config.seed)
    evaluate = _make_evaluator(problem)
    workers = worker_count(config.workers)
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None

    def evaluate_all(vectors: np.ndarray) -> np.ndarray:
        if executor is None:
            return np.array([evaluate(v) for v in vectors])
        # map() preserves input order, keeping selection deterministic.
        return np.fromiter(executor.map(evaluate, vectors), float, len(vectors))

    try:
        population = rng.uniform(problem.lower, problem.upper, size=(pop_size, dim))
        fitness = evaluate_all(population)
        evaluations = pop_size
        history = [float(fitness.min())]
        generations = 0

        partner_pool = np.arange(pop_size - 1)
        for _ in range(config.max_generations):
            if float(fitness.max() - fitness.min()) < config.tolerance:
                break
            trials = np.empty_like(population)
            for i in range(pop_size):
                picks = rng.choice(partner_pool, size=3, replace=False)
                picks = np.where(picks >= i, picks + 1, picks)  # skip the target index
                a, b, c = population[picks]
                mutant = a + config.mutation * (b - c)
                cross = rng.random(dim) < config.crossover
                cross[rng.integers(dim)] = True
                trials[i] = np.clip(
                    np.where(cross, mutant, population[i]),
                    problem.lower,
                    problem.upper,
                )
            trial_fitness = evaluate_all(trials)
            evaluations += pop_size
            improved = trial_fitness <= fitness
            population[improved] = trials[improved]
            fitness[improved] = trial_fitness[improved]
            generations += 1
            history.append(float(fitness.min()))
    finally:
        if executor is not None:
            executor.shutdown()

    best_vector = problem.clip(population[int(np.argmin(fitness))])
    best_pd = 1.0 - objective(problem, best_vector)
    return PlacementResult(best_vector, best_pd, history, generations, evaluations)
