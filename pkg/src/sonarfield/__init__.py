"""Passive-sonar coverage modelling and sensor-placement optimisation."""

from .detection import (
    MonteCarloSpec,
    QuadratureSpec,
    Scenario,
    miss_product,
    miss_product_for,
    quadrature_nodes,
    system_pd,
    system_pd_hybrid,
    system_pd_monte_carlo,
    system_pd_rect,
)
from .optimizer import (
    DEConfig,
    OptimizeSettings,
    PlacementProblem,
    PlacementResult,
    objective,
    optimize,
)
from .regions import (
    HybridRegion,
    LineArraySensor,
    OmniSensor,
    RectRegion,
    Sensor,
    SquareRegion,
    range_to,
    sensor_inside,
)
from .scenario_io import (
    ScenarioValidationError,
    SweepSpec,
    apply_sweep_value,
    derived_constants,
    emit_sweep_csv,
    evaluation_report,
    load_scenario,
    parse_scenario,
    scenario_to_dict,
    sweep_pd,
    write_scenario,
)
from .sonar import (
    ArrayGain,
    ArrayGainError,
    DetectionDesign,
    RayleighNoiseModel,
    SonarEnvironment,
    array_gain,
    detection_index,
    detection_threshold_db,
    directivity_index_db,
    gamma_db,
    single_sensor_pd,
    single_sensor_pd_monte_carlo,
    transmission_loss_kyd,
    transmission_loss_nmi,
)
from .units import from_db, to_db

__version__ = "0.1.0"

__all__ = [
    "ArrayGain",
    "ArrayGainError",
    "DEConfig",
    "DetectionDesign",
    "HybridRegion",
    "LineArraySensor",
    "MonteCarloSpec",
    "OmniSensor",
    "OptimizeSettings",
    "PlacementProblem",
    "PlacementResult",
    "QuadratureSpec",
    "RayleighNoiseModel",
    "RectRegion",
    "Scenario",
    "ScenarioValidationError",
    "Sensor",
    "SonarEnvironment",
    "SquareRegion",
    "SweepSpec",
    "apply_sweep_value",
    "array_gain",
    "derived_constants",
    "detection_index",
    "detection_threshold_db",
    "directivity_index_db",
    "emit_sweep_csv",
    "evaluation_report",
    "from_db",
    "gamma_db",
    "load_scenario",
    "miss_product",
    "miss_product_for",
    "objective",
    "optimize",
    "parse_scenario",
    "quadrature_nodes",
    "range_to",
    "scenario_to_dict",
    "sensor_inside",
    "single_sensor_pd",
    "single_sensor_pd_monte_carlo",
    "sweep_pd",
    "system_pd",
    "system_pd_hybrid",
    "system_pd_monte_carlo",
    "system_pd_rect",
    "transmission_loss_kyd",
    "transmission_loss_nmi",
    "to_db",
    "write_scenario",
]
