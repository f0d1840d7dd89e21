"""Scenario files, sweep outputs and result reports.

Scenarios are single JSON documents with explicit unit-suffixed keys; every
key is validated and unknown keys are rejected with a field-level message.
Sweep outputs are ``param,pd`` CSV rows with six significant digits, and
result reports echo the scenario plus the derived sonar constants so runs
can be audited.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .detection import (
    MonteCarloSpec,
    QuadratureSpec,
    Scenario,
    system_pd,
    system_pd_monte_carlo,
)
from .optimizer import DEConfig, OptimizeSettings, PlacementResult
from .regions import (
    HybridRegion,
    LineArraySensor,
    OmniSensor,
    RectRegion,
    Sensor,
    SquareRegion,
)
from .sonar import (
    DetectionDesign,
    SonarEnvironment,
    array_gain,
    gamma_db,
)

SWEEP_PARAMETERS = ("R", "ssl_db", "nsl_db", "R2")


class ScenarioValidationError(ValueError):
    """A scenario file or document violates the schema or an invariant."""


def _fail(path: str, message: str):
    raise ScenarioValidationError(f"{path}: {message}")


def _as_dict(value, path: str) -> dict:
    if not isinstance(value, dict):
        _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _reject_unknown(data: dict, allowed, path: str):
    unknown = set(data) - set(allowed)
    if unknown:
        _fail(path, f"unknown keys {sorted(unknown)}; allowed keys are {sorted(allowed)}")


def _number(data: dict, key: str, path: str, default=None) -> float:
    if key not in data:
        if default is None:
            _fail(path, f"missing required key {key!r}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{path}.{key}", f"expected a number, got {value!r}")
    if not math.isfinite(value):
        _fail(f"{path}.{key}", f"must be finite, got {value!r}")
    return float(value)


def _integer(data: dict, key: str, path: str, default=None) -> int:
    if key not in data:
        if default is None:
            _fail(path, f"missing required key {key!r}")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _positive(value: float, path: str) -> float:
    if not value > 0:
        _fail(path, f"must be positive, got {value}")
    return value


def _parse_environment(data: dict | None) -> SonarEnvironment:
    if data is None:
        return SonarEnvironment()
    path = "environment"
    data = _as_dict(data, path)
    allowed = (
        "f_m_hz",
        "bandwidth_hz",
        "ssl_db",
        "nsl_db",
        "alpha_m_db_per_nmi",
        "alpha_f_db_per_nmi_hz",
        "sound_speed_mps",
        "gamma_mode",
    )
    _reject_unknown(data, allowed, path)
    defaults = SonarEnvironment()
    gamma_mode = data.get("gamma_mode", defaults.gamma_mode)
    if not isinstance(gamma_mode, str):
        _fail("environment.gamma_mode", f"expected a string, got {gamma_mode!r}")
    values = {
        "f_m_hz": _number(data, "f_m_hz", path, defaults.f_m_hz),
        "bandwidth_hz": _number(data, "bandwidth_hz", path, defaults.bandwidth_hz),
        "ssl_db": _number(data, "ssl_db", path, defaults.ssl_db),
        "nsl_db": _number(data, "nsl_db", path, defaults.nsl_db),
        "alpha_m_db_per_nmi": _number(
            data, "alpha_m_db_per_nmi", path, defaults.alpha_m_db_per_nmi
        ),
        "alpha_f_db_per_nmi_hz": _number(
            data, "alpha_f_db_per_nmi_hz", path, defaults.alpha_f_db_per_nmi_hz
        ),
        "sound_speed_mps": _number(
            data, "sound_speed_mps", path, defaults.sound_speed_mps
        ),
    }
    _positive(values["ssl_db"], "environment.ssl_db")
    _positive(values["nsl_db"], "environment.nsl_db")
    try:
        return SonarEnvironment(gamma_mode=gamma_mode, **values)
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_design(data: dict | None) -> DetectionDesign:
    if data is None:
        return DetectionDesign()
    path = "design"
    data = _as_dict(data, path)
    _reject_unknown(data, ("pd", "pfa", "t_seconds"), path)
    defaults = DetectionDesign()
    try:
        return DetectionDesign(
            pd=_number(data, "pd", path, defaults.pd),
            pfa=_number(data, "pfa", path, defaults.pfa),
            t_seconds=_number(data, "t_seconds", path, defaults.t_seconds),
        )
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_extent(data: dict, key: str, path: str) -> tuple[float, float]:
    if key not in data:
        _fail(path, f"missing required key {key!r}")
    value = data[key]
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        _fail(f"{path}.{key}", f"expected [lo, hi] numbers, got {value!r}")
    lo, hi = float(value[0]), float(value[1])
    if not lo < hi:
        _fail(f"{path}.{key}", f"need lo < hi, got [{lo}, {hi}]")
    return lo, hi


def _parse_region(data):
    path = "region"
    data = _as_dict(data, path)
    kind = data.get("type")
    if kind == "square":
        _reject_unknown(data, ("type", "R"), path)
        side = _positive(_number(data, "R", path), "region.R")
        return SquareRegion(side)
    if kind == "rect":
        _reject_unknown(data, ("type", "x", "y"), path)
        x_lo, x_hi = _parse_extent(data, "x", path)
        y_lo, y_hi = _parse_extent(data, "y", path)
        return RectRegion(x_lo, x_hi, y_lo, y_hi)
    if kind == "hybrid":
        _reject_unknown(data, ("type", "R1", "R2", "R3", "region_b_nsl_db"), path)
        r1 = _positive(_number(data, "R1", path), "region.R1")
        r2 = _positive(_number(data, "R2", path), "region.R2")
        r3 = _positive(_number(data, "R3", path), "region.R3")
        override = None
        if "region_b_nsl_db" in data:
            override = _positive(
                _number(data, "region_b_nsl_db", path), "region.region_b_nsl_db"
            )
        try:
            return HybridRegion(r1, r2, r3, override)
        except ValueError as exc:
            _fail(path, str(exc))
    _fail(
        "region.type",
        f"expected one of ['square', 'rect', 'hybrid'], got {kind!r}",
    )


def _parse_sensors(data) -> tuple[Sensor, ...]:
    path = "sensors"
    if not isinstance(data, list) or not data:
        _fail(path, "expected a non-empty list of sensor objects")
    sensors = []
    for i, entry in enumerate(data):
        spath = f"sensors[{i}]"
        entry = _as_dict(entry, spath)
        kind = entry.get("type")
        if kind == "omni":
            _reject_unknown(entry, ("type", "x", "y"), spath)
            sensors.append(
                OmniSensor(_number(entry, "x", spath), _number(entry, "y", spath))
            )
        elif kind == "array":
            _reject_unknown(entry, ("type", "x1", "y1", "x2", "y2"), spath)
            try:
                sensors.append(
                    LineArraySensor(
                        _number(entry, "x1", spath),
                        _number(entry, "y1", spath),
                        _number(entry, "x2", spath),
                        _number(entry, "y2", spath),
                    )
                )
            except ValueError as exc:
                _fail(spath, str(exc))
        else:
            _fail(f"{spath}.type", f"expected 'omni' or 'array', got {kind!r}")
    return tuple(sensors)


def _parse_quadrature(data: dict | None) -> QuadratureSpec:
    if data is None:
        return QuadratureSpec()
    path = "quadrature"
    data = _as_dict(data, path)
    _reject_unknown(data, ("nodes", "scheme"), path)
    defaults = QuadratureSpec()
    scheme = data.get("scheme", defaults.scheme)
    if not isinstance(scheme, str):
        _fail("quadrature.scheme", f"expected a string, got {scheme!r}")
    try:
        return QuadratureSpec(
            scheme=scheme,
            nodes_per_axis=_integer(data, "nodes", path, defaults.nodes_per_axis),
        )
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_monte_carlo(data: dict | None) -> MonteCarloSpec:
    if data is None:
        return MonteCarloSpec()
    path = "monte_carlo"
    data = _as_dict(data, path)
    _reject_unknown(data, ("samples", "seed"), path)
    defaults = MonteCarloSpec()
    try:
        return MonteCarloSpec(
            samples=_integer(data, "samples", path, defaults.samples),
            seed=_integer(data, "seed", path, defaults.seed),
        )
    except ValueError as exc:
        _fail(path, str(exc))


def _parse_optimize(data: dict | None) -> OptimizeSettings | None:
    if data is None:
        return None
    path = "optimize"
    data = _as_dict(data, path)
    _reject_unknown(data, ("enabled", "movable_count", "de"), path)
    enabled = data.get("enabled", True)
    if not isinstance(enabled, bool):
        _fail("optimize.enabled", f"expected a boolean, got {enabled!r}")
    movable = None
    if "movable_count" in data:
        movable = _integer(data, "movable_count", path)
        if movable < 1:
            _fail("optimize.movable_count", f"must be at least 1, got {movable}")
    de = DEConfig()
    if "de" in data:
        de_path = "optimize.de"
        de_data = _as_dict(data["de"], de_path)
        _reject_unknown(
            de_data, ("population", "F", "CR", "max_generations", "seed"), de_path
        )
        kwargs = {}
        if "population" in de_data:
            kwargs["population"] = _integer(de_data, "population", de_path)
        if "F" in de_data:
            kwargs["mutation"] = _number(de_data, "F", de_path)
        if "CR" in de_data:
            kwargs["crossover"] = _number(de_data, "CR", de_path)
        if "max_generations" in de_data:
            kwargs["max_generations"] = _integer(de_data, "max_generations", de_path)
        if "seed" in de_data:
            kwargs["seed"] = _integer(de_data, "seed", de_path)
        try:
            de = DEConfig(**kwargs)
        except ValueError as exc:
            _fail(de_path, str(exc))
    return OptimizeSettings(enabled=enabled, movable_count=movable, de=de)


def parse_scenario(document) -> Scenario:
    """Build a validated :class:`Scenario` from a decoded JSON document."""
    document = _as_dict(document, "scenario")
    allowed = (
        "environment",
        "design",
        "region",
        "sensors",
        "quadrature",
        "monte_carlo",
        "optimize",
    )
    _reject_unknown(document, allowed, "scenario")
    if "region" not in document:
        _fail("scenario", "missing required key 'region'")
    if "sensors" not in document:
        _fail("scenario", "missing required key 'sensors'")
    try:
        return Scenario(
            env=_parse_environment(document.get("environment")),
            design=_parse_design(document.get("design")),
            region=_parse_region(document["region"]),
            sensors=_parse_sensors(document["sensors"]),
            quadrature=_parse_quadrature(document.get("quadrature")),
            monte_carlo=_parse_monte_carlo(document.get("monte_carlo")),
            optimize=_parse_optimize(document.get("optimize")),
        )
    except ScenarioValidationError:
        raise
    except ValueError as exc:
        _fail("scenario", str(exc))


def load_scenario(path) -> Scenario:
    """Load and validate a scenario JSON file."""
    file_path = Path(path)
    if not file_path.is_file():
        raise ScenarioValidationError(f"{file_path}: scenario file not found")
    try:
        document = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(f"{file_path}: invalid JSON ({exc})") from exc
    return parse_scenario(document)


def scenario_to_dict(scenario: Scenario) -> dict:
    """Full JSON-ready echo of a scenario, including defaulted sections."""
    env = scenario.env
    region = scenario.region
    if isinstance(region, SquareRegion):
        region_doc = {"type": "square", "R": region.side_nmi}
    elif isinstance(region, RectRegion):
        region_doc = {
            "type": "rect",
            "x": [region.x_lo, region.x_hi],
            "y": [region.y_lo, region.y_hi],
        }
    else:
        region_doc = {"type": "hybrid", "R1": region.r1, "R2": region.r2, "R3": region.r3}
        if region.region_b_nsl_db is not None:
            region_doc["region_b_nsl_db"] = region.region_b_nsl_db

    sensor_docs = []
    for s in scenario.sensors:
        if isinstance(s, OmniSensor):
            sensor_docs.append({"type": "omni", "x": s.x, "y": s.y})
        else:
            sensor_docs.append(
                {"type": "array", "x1": s.x1, "y1": s.y1, "x2": s.x2, "y2": s.y2}
            )

    document = {
        "environment": {
            "f_m_hz": env.f_m_hz,
            "bandwidth_hz": env.bandwidth_hz,
            "ssl_db": env.ssl_db,
            "nsl_db": env.nsl_db,
            "alpha_m_db_per_nmi": env.alpha_m_db_per_nmi,
            "alpha_f_db_per_nmi_hz": env.alpha_f_db_per_nmi_hz,
            "sound_speed_mps": env.sound_speed_mps,
            "gamma_mode": env.gamma_mode,
        },
        "design": {
            "pd": scenario.design.pd,
            "pfa": scenario.design.pfa,
            "t_seconds": scenario.design.t_seconds,
        },
        "region": region_doc,
        "sensors": sensor_docs,
        "quadrature": {
            "nodes": scenario.quadrature.nodes_per_axis,
            "scheme": scenario.quadrature.scheme,
        },
        "monte_carlo": {
            "samples": scenario.monte_carlo.samples,
            "seed": scenario.monte_carlo.seed,
        },
    }
    if scenario.optimize is not None:
        opt = scenario.optimize
        document["optimize"] = {
            "enabled": opt.enabled,
            "de": {
                "population": opt.de.population,
                "F": opt.de.mutation,
                "CR": opt.de.crossover,
                "max_generations": opt.de.max_generations,
                "seed": opt.de.seed,
            },
        }
        if opt.movable_count is not None:
            document["optimize"]["movable_count"] = opt.movable_count
        if opt.de.population is None:
            del document["optimize"]["de"]["population"]
    return document


def write_scenario(scenario: Scenario, path) -> None:
    """Write a scenario as JSON; ``load_scenario`` round-trips it."""
    Path(path).write_text(
        json.dumps(scenario_to_dict(scenario), indent=2) + "\n", encoding="utf-8"
    )


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep: name, inclusive range and step count."""

    param: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.param not in SWEEP_PARAMETERS:
            raise ScenarioValidationError(
                f"sweep.param: expected one of {SWEEP_PARAMETERS}, got {self.param!r}"
            )
        if not self.lo < self.hi:
            raise ScenarioValidationError(
                f"sweep range: need lo < hi, got [{self.lo}, {self.hi}]"
            )
        if self.steps < 2:
            raise ScenarioValidationError(
                f"sweep.steps: must be at least 2, got {self.steps}"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def apply_sweep_value(scenario: Scenario, param: str, value: float) -> Scenario:
    """Scenario with one swept parameter replaced by ``value``.

    Sweeping the square side ``R`` rescales all sensor coordinates with the
    region so that relative placements (such as a centred sensor) are
    preserved; ``R2`` resizes the rectangle height or the hybrid strip and
    leaves sensors where they are.
    """
    region = scenario.region
    if param == "ssl_db":
        return replace(scenario, env=replace(scenario.env, ssl_db=float(value)))
    if param == "nsl_db":
        return replace(scenario, env=replace(scenario.env, nsl_db=float(value)))
    if param == "R":
        if not isinstance(region, SquareRegion):
            raise ScenarioValidationError(
                "sweep.param: 'R' applies to square regions only"
            )
        if not value > 0:
            raise ScenarioValidationError(f"sweep value for R must be positive: {value}")
        scale = float(value) / region.side_nmi

        def stretch(coord: float) -> float:
            return float(np.clip(coord * scale, 0.0, value))

        sensors = []
        for s in scenario.sensors:
            if isinstance(s, OmniSensor):
                sensors.append(OmniSensor(stretch(s.x), stretch(s.y)))
            else:
                sensors.append(
                    LineArraySensor(
                        stretch(s.x1), stretch(s.y1), stretch(s.x2), stretch(s.y2)
                    )
                )
        return replace(
            scenario, region=SquareRegion(float(value)), sensors=tuple(sensors)
        )
    if param == "R2":
        if isinstance(region, RectRegion):
            new_region = RectRegion(
                region.x_lo, region.x_hi, region.y_lo, region.y_lo + float(value)
            )
        elif isinstance(region, HybridRegion):
            new_region = replace(region, r2=float(value))
        else:
            raise ScenarioValidationError(
                "sweep.param: 'R2' applies to rect or hybrid regions only"
            )
        try:
            return replace(scenario, region=new_region)
        except ValueError as exc:
            raise ScenarioValidationError(f"sweep value {value}: {exc}") from exc
    raise ScenarioValidationError(
        f"sweep.param: expected one of {SWEEP_PARAMETERS}, got {param!r}"
    )


def sweep_pd(scenario: Scenario, sweep: SweepSpec) -> list[tuple[float, float]]:
    """(value, system pd) pairs across the sweep."""
    return [
        (float(v), system_pd(apply_sweep_value(scenario, sweep.param, v)))
        for v in sweep.values()
    ]


def emit_sweep_csv(scenario: Scenario, sweep: SweepSpec, path) -> None:
    """Write the sweep as ``param,pd`` CSV rows with 6 significant digits."""
    rows = sweep_pd(scenario, sweep)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("param,pd\n")
        for value, pd in rows:
            fh.write(f"{value:.6g},{pd:.6g}\n")


def derived_constants(scenario: Scenario) -> dict:
    """Derived sonar constants of a scenario, for auditing runs."""
    derived = {
        "gamma_db": gamma_db(scenario.env),
        "dt_db": scenario.design.dt_db,
        "d": scenario.design.d,
    }
    for s in scenario.sensors:
        if isinstance(s, LineArraySensor):
            derived["di_db"] = array_gain(s.length_nmi, scenario.env).di_db
            break
    return derived


def evaluation_report(
    scenario: Scenario,
    include_mc: bool = False,
    mc: MonteCarloSpec | None = None,
    placement: PlacementResult | None = None,
) -> dict:
    """Result document: scenario echo, derived constants, pd and extras."""
    report = {
        "scenario_echo": scenario_to_dict(scenario),
        "derived": derived_constants(scenario),
        "pd": system_pd(scenario),
    }
    if include_mc:
        estimate, std_error = system_pd_monte_carlo(scenario, mc)
        report["mc"] = {"estimate": estimate, "std_error": std_error}
    if placement is not None:
        report["optimize"] = {
            "best_positions": [[x, y] for x, y in placement.best_positions()],
            "best_pd": placement.best_pd,
            "generations": placement.generations,
            "evaluations": placement.evaluations,
        }
    return report
