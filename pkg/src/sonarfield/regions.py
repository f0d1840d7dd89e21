"""Surveillance-region geometry, sensor containers and range functions.

Regions are closed sets with a uniform threat prior over their area.
Sensors are either omnidirectional points or unsteered line arrays; the
range to a line array is the minimum distance to the segment. Everything
here is an immutable value type and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sonar import SonarEnvironment, directivity_index_db


@dataclass(frozen=True)
class SquareRegion:
    """Square [0, side] x [0, side] in nautical miles."""

    side_nmi: float

    def __post_init__(self):
        if not self.side_nmi > 0:
            raise ValueError(f"side_nmi must be positive, got {self.side_nmi}")

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (0.0, self.side_nmi, 0.0, self.side_nmi)

    @property
    def area(self) -> float:
        return self.side_nmi * self.side_nmi

    def contains(self, x, y):
        ok = (x >= 0.0) & (x <= self.side_nmi) & (y >= 0.0) & (y <= self.side_nmi)
        return bool(ok) if np.ndim(ok) == 0 else ok


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi] in nautical miles."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError(
                f"rectangle extents must satisfy lo < hi, got "
                f"x=[{self.x_lo}, {self.x_hi}], y=[{self.y_lo}, {self.y_hi}]"
            )

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return (self.x_lo, self.x_hi, self.y_lo, self.y_hi)

    @property
    def area(self) -> float:
        return (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)

    def contains(self, x, y):
        ok = (x >= self.x_lo) & (x <= self.x_hi) & (y >= self.y_lo) & (y <= self.y_hi)
        return bool(ok) if np.ndim(ok) == 0 else ok


@dataclass(frozen=True)
class HybridRegion:
    """Open area joined to a chokepoint strip.

    Region A is [0, r1] x [0, r2]; region B is the strip
    [r1, r3] x [0.25*r2, 0.75*r2]. A threat is in either subregion with
    probability proportional to its area. ``region_b_nsl_db`` optionally
    gives region B its own band-mean noise level.
    """

    r1: float
    r2: float
    r3: float
    region_b_nsl_db: float | None = None

    def __post_init__(self):
        if not (0.0 < self.r1 < self.r3):
            raise ValueError(f"need 0 < r1 < r3, got r1={self.r1}, r3={self.r3}")
        if not self.r2 > 0:
            raise ValueError(f"r2 must be positive, got {self.r2}")
        if self.region_b_nsl_db is not None and not self.region_b_nsl_db > 0:
            raise ValueError("region_b_nsl_db must be positive when given")

    @property
    def region_a(self) -> RectRegion:
        return RectRegion(0.0, self.r1, 0.0, self.r2)

    @property
    def region_b(self) -> RectRegion:
        return RectRegion(self.r1, self.r3, 0.25 * self.r2, 0.75 * self.r2)

    @property
    def area(self) -> float:
        return self.region_a.area + self.region_b.area

    def prior_probabilities(self) -> tuple[float, float]:
        """Area-proportional probabilities that a threat is in A and in B."""
        area_a = self.r1 * self.r2
        area_b = 0.5 * self.r2 * (self.r3 - self.r1)
        p_a = area_a / (area_a + area_b)
        return p_a, 1.0 - p_a

    def contains(self, x, y):
        ok = self.region_a.contains(x, y) | self.region_b.contains(x, y)
        return bool(ok) if np.ndim(ok) == 0 else ok


Region = SquareRegion | RectRegion | HybridRegion


@dataclass(frozen=True)
class OmniSensor:
    """Omnidirectional point sensor at (x, y); no directivity gain."""

    x: float
    y: float

    @property
    def position(self) -> tuple[float, float]:
        return (self.x, self.y)

    def distance_to(self, x, y):
        """Euclidean distance to the target point(s)."""
        return np.hypot(np.asarray(x, float) - self.x, np.asarray(y, float) - self.y)

    def di_db(self, env: SonarEnvironment) -> float:
        return 0.0

    def endpoints(self) -> tuple[tuple[float, float], ...]:
        return (self.position,)


@dataclass(frozen=True)
class LineArraySensor:
    """Unsteered line array between two endpoints, in nautical miles."""

    x1: float
    y1: float
    x2: float
    y2: float

    def __post_init__(self):
        if self.x1 == self.x2 and self.y1 == self.y2:
            raise ValueError("line array endpoints must be distinct")

    @property
    def length_nmi(self) -> float:
        return float(np.hypot(self.x2 - self.x1, self.y2 - self.y1))

    def distance_to(self, x, y):
        """Minimum distance from the target point(s) to the array segment."""
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        dx = self.x2 - self.x1
        dy = self.y2 - self.y1
        seg_len_sq = dx * dx + dy * dy
        t = ((x - self.x1) * dx + (y - self.y1) * dy) / seg_len_sq
        t = np.clip(t, 0.0, 1.0)
        return np.hypot(x - (self.x1 + t * dx), y - (self.y1 + t * dy))

    def di_db(self, env: SonarEnvironment) -> float:
        return directivity_index_db(self.length_nmi, env)

    def endpoints(self) -> tuple[tuple[float, float], ...]:
        return ((self.x1, self.y1), (self.x2, self.y2))


Sensor = OmniSensor | LineArraySensor


def range_to(sensor: Sensor, x, y):
    """Range in nmi from ``sensor`` to target point(s) (x, y)."""
    return sensor.distance_to(x, y)


def sensor_inside(region, sensor: Sensor) -> bool:
    """True when every defining point of the sensor lies in the region."""
    return all(region.contains(px, py) for px, py in sensor.endpoints())
