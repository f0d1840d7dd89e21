"""System-level detection probability over a region.

Fusion is 1-of-N: the system detects when at least one sensor does, so the
system miss probability at a point is the product of per-sensor miss
probabilities. The detection probability of the whole region is one minus
the area average of that product, computed by tensor-product quadrature,
with a plain Monte Carlo estimator as an independent cross-check. Hybrid
regions mix the two conditional probabilities with their area priors.

Evaluation is read-only over immutable scenarios and sums in a fixed
order, so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import TYPE_CHECKING

import numpy as np

from .regions import (
    HybridRegion,
    RectRegion,
    Region,
    Sensor,
    SquareRegion,
    sensor_inside,
)
from .sonar import DetectionDesign, SonarEnvironment, single_sensor_pd

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for typing only
    from .optimizer import OptimizeSettings

QUADRATURE_SCHEMES = ("gauss-legendre", "midpoint")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product integration rule: scheme and nodes per axis."""

    scheme: str = "gauss-legendre"
    nodes_per_axis: int = 128

    def __post_init__(self):
        if self.scheme not in QUADRATURE_SCHEMES:
            raise ValueError(
                f"scheme must be one of {QUADRATURE_SCHEMES}, got {self.scheme!r}"
            )
        if int(self.nodes_per_axis) != self.nodes_per_axis or self.nodes_per_axis < 8:
            raise ValueError(
                f"nodes_per_axis must be an integer >= 8, got {self.nodes_per_axis!r}"
            )


@dataclass(frozen=True)
class MonteCarloSpec:
    """Sample count and seed for the Monte Carlo estimator."""

    samples: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples!r}")
        if int(self.seed) != self.seed:
            raise ValueError(f"seed must be an integer, got {self.seed!r}")


@dataclass(frozen=True)
class Scenario:
    """Environment, design, region and sensors: the unit of evaluation.

    For hybrid regions each sensor is assigned to the subregion that
    contains it (region A taking precedence on the shared boundary), and
    both subregions must hold at least one sensor.
    """

    env: SonarEnvironment = field(default_factory=SonarEnvironment)
    design: DetectionDesign = field(default_factory=DetectionDesign)
    region: Region = field(default_factory=lambda: SquareRegion(0.4))
    sensors: tuple[Sensor, ...] = ()
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    monte_carlo: MonteCarloSpec = field(default_factory=MonteCarloSpec)
    optimize: "OptimizeSettings | None" = None

    def __post_init__(self):
        object.__setattr__(self, "sensors", tuple(self.sensors))
        if not self.sensors:
            raise ValueError("a scenario needs at least one sensor")
        if isinstance(self.region, HybridRegion):
            split = self.hybrid_sensors()
            for label, group in zip("AB", split):
                if not group:
                    raise ValueError(f"hybrid subregion {label} has no sensors")
        else:
            for s in self.sensors:
                if not sensor_inside(self.region, s):
                    raise ValueError(f"sensor {s} lies outside the region")

    def hybrid_sensors(self) -> tuple[tuple[Sensor, ...], tuple[Sensor, ...]]:
        """Sensors split into (region A, region B) by containment."""
        if not isinstance(self.region, HybridRegion):
            raise ValueError("hybrid_sensors is only defined for hybrid regions")
        in_a, in_b = [], []
        for s in self.sensors:
            if sensor_inside(self.region.region_a, s):
                in_a.append(s)
            elif sensor_inside(self.region.region_b, s):
                in_b.append(s)
            else:
                raise ValueError(f"sensor {s} lies in neither hybrid subregion")
        return tuple(in_a), tuple(in_b)

    def region_b_env(self) -> SonarEnvironment:
        """Environment used inside region B (noise override applied)."""
        if not isinstance(self.region, HybridRegion):
            raise ValueError("region_b_env is only defined for hybrid regions")
        if self.region.region_b_nsl_db is None:
            return self.env
        return replace(self.env, nsl_db=self.region.region_b_nsl_db)


# Gauss-Legendre panels of this order keep the error local to the steep
# detection shoulder; a single global panel converges noticeably slower there.
_GAUSS_PANEL_ORDER = 12


@lru_cache(maxsize=32)
def _reference_nodes(scheme: str, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]; cached because leggauss is not cheap."""
    if scheme == "gauss-legendre":
        if n <= _GAUSS_PANEL_ORDER:
            order, panels = n, 1
        else:
            order = _GAUSS_PANEL_ORDER
            panels = -(-n // order)  # ceil: at least the requested node count
        x, w = np.polynomial.legendre.leggauss(order)
        x = 0.5 * (x + 1.0)
        w = 0.5 * w
        edges = np.linspace(0.0, 1.0, panels + 1)
        widths = np.diff(edges)[:, None]
        return (edges[:-1, None] + widths * x[None, :]).ravel(), (widths * w).ravel()
    step = 1.0 / n
    return step * (np.arange(n) + 0.5), np.full(n, step)


def quadrature_nodes(spec: QuadratureSpec, lo: float, hi: float):
    """1-D nodes and weights for the interval [lo, hi]."""
    base_x, base_w = _reference_nodes(spec.scheme, int(spec.nodes_per_axis))
    width = hi - lo
    return lo + width * base_x, width * base_w


def miss_product_for(
    sensors: tuple[Sensor, ...],
    env: SonarEnvironment,
    design: DetectionDesign,
    x,
    y,
):
    """Product over sensors of (1 - single-sensor Pd) at the point(s)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    miss = np.ones(np.broadcast(x, y).shape)
    for sensor in sensors:
        r = sensor.distance_to(x, y)
        miss *= 1.0 - single_sensor_pd(r, env, design, sensor.di_db(env))
    return miss


def miss_product(scenario: Scenario, x, y):
    """System miss probability at target point(s) (x, y) inside the region.

    For hybrid regions the sensors and environment of the subregion holding
    each point apply.
    """
    if not isinstance(scenario.region, HybridRegion):
        return miss_product_for(scenario.sensors, scenario.env, scenario.design, x, y)
    sensors_a, sensors_b = scenario.hybrid_sensors()
    in_a = scenario.region.region_a.contains(np.asarray(x, float), np.asarray(y, float))
    miss_a = miss_product_for(sensors_a, scenario.env, scenario.design, x, y)
    miss_b = miss_product_for(sensors_b, scenario.region_b_env(), scenario.design, x, y)
    out = np.where(in_a, miss_a, miss_b)
    return float(out) if out.ndim == 0 else out


def _rect_pd(
    rect_bounds: tuple[float, float, float, float],
    sensors: tuple[Sensor, ...],
    env: SonarEnvironment,
    design: DetectionDesign,
    quad: QuadratureSpec,
) -> float:
    x_lo, x_hi, y_lo, y_hi = rect_bounds
    xs, wx = quadrature_nodes(quad, x_lo, x_hi)
    ys, wy = quadrature_nodes(quad, y_lo, y_hi)
    miss = miss_product_for(sensors, env, design, xs[:, None], ys[None, :])
    integral = float(wx @ miss @ wy)
    area = (x_hi - x_lo) * (y_hi - y_lo)
    return float(np.clip(1.0 - integral / area, 0.0, 1.0))


def system_pd_rect(scenario: Scenario, quad: QuadratureSpec | None = None) -> float:
    """Fused detection probability over a square or rectangular region."""
    if isinstance(scenario.region, HybridRegion):
        raise ValueError("system_pd_rect needs a square or rectangular region")
    quad = quad or scenario.quadrature
    return _rect_pd(
        scenario.region.bounds, scenario.sensors, scenario.env, scenario.design, quad
    )


def system_pd_hybrid(scenario: Scenario, quad: QuadratureSpec | None = None) -> float:
    """Fused detection probability over a hybrid region.

    Area priors mix the conditional probabilities of the two subregions;
    region B uses its own noise level when the region carries one.
    """
    region = scenario.region
    if not isinstance(region, HybridRegion):
        raise ValueError("system_pd_hybrid needs a hybrid region")
    quad = quad or scenario.quadrature
    sensors_a, sensors_b = scenario.hybrid_sensors()
    pd_a = _rect_pd(
        region.region_a.bounds, sensors_a, scenario.env, scenario.design, quad
    )
    pd_b = _rect_pd(
        region.region_b.bounds, sensors_b, scenario.region_b_env(), scenario.design, quad
    )
    p_a, p_b = region.prior_probabilities()
    return float(np.clip(pd_a * p_a + pd_b * p_b, 0.0, 1.0))


def system_pd(scenario: Scenario, quad: QuadratureSpec | None = None) -> float:
    """Fused detection probability of the scenario, any region kind."""
    if isinstance(scenario.region, HybridRegion):
        return system_pd_hybrid(scenario, quad)
    return system_pd_rect(scenario, quad)


def system_pd_monte_carlo(
    scenario: Scenario, mc: MonteCarloSpec | None = None
) -> tuple[float, float]:
    """Monte Carlo estimate of the fused detection probability.

    Threat locations are drawn uniformly (hybrid: subregion first, by its
    prior). Returns ``(estimate, standard_error)``; deterministic for a
    given seed.
    """
    mc = mc or scenario.monte_carlo
    rng = np.random.default_rng(mc.seed)
    n = int(mc.samples)
    region = scenario.region

    if not isinstance(region, HybridRegion):
        x_lo, x_hi, y_lo, y_hi = region.bounds
        x = rng.uniform(x_lo, x_hi, n)
        y = rng.uniform(y_lo, y_hi, n)
        detect = 1.0 - miss_product_for(
            scenario.sensors, scenario.env, scenario.design, x, y
        )
    else:
        p_a, _ = region.prior_probabilities()
        in_a = rng.random(n) < p_a
        u = rng.random(n)
        v = rng.random(n)
        ax_lo, ax_hi, ay_lo, ay_hi = region.region_a.bounds
        bx_lo, bx_hi, by_lo, by_hi = region.region_b.bounds
        x = np.where(in_a, ax_lo + u * (ax_hi - ax_lo), bx_lo + u * (bx_hi - bx_lo))
        y = np.where(in_a, ay_lo + v * (ay_hi - ay_lo), by_lo + v * (by_hi - by_lo))
        sensors_a, sensors_b = scenario.hybrid_sensors()
        detect = np.empty(n)
        detect[in_a] = 1.0 - miss_product_for(
            sensors_a, scenario.env, scenario.design, x[in_a], y[in_a]
        )
        detect[~in_a] = 1.0 - miss_product_for(
            sensors_b, scenario.region_b_env(), scenario.design, x[~in_a], y[~in_a]
        )

    estimate = float(np.mean(detect))
    if n > 1:
        std_error = float(np.std(detect, ddof=1) / np.sqrt(n))
    else:
        std_error = float("nan")
    return estimate, std_error
