#!/usr/bin/env python3
"""Regenerate the study sweep curves as CSV files.

Runs the bundled scenarios through their parameter sweeps: single-sensor
coverage versus square size, multi-sensor detection versus source and
noise level, line-array coverage versus strip width, and the hybrid-region
curves for uniform and elevated strip noise. Plot the CSVs with any
external tool.
"""

import argparse
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from sonarfield import SweepSpec, emit_sweep_csv, load_scenario  # noqa: E402

SCENARIOS = REPO / "scenarios"

SWEEPS = [
    ("fig2_single.json", SweepSpec("R", 0.05, 1.0, 40), "single_sensor_vs_R.csv"),
    ("fig4_foursensor.json", SweepSpec("ssl_db", 100.0, 150.0, 26), "four_sensor_vs_ssl.csv"),
    ("fig4_foursensor.json", SweepSpec("nsl_db", 50.0, 100.0, 26), "four_sensor_vs_nsl.csv"),
    ("fig7_array.json", SweepSpec("R2", 0.05, 2.0, 40), "line_array_vs_width.csv"),
    ("fig8_hybrid_uniform.json", SweepSpec("ssl_db", 100.0, 150.0, 26), "hybrid_uniform_vs_ssl.csv"),
    ("fig8_hybrid_noisy.json", SweepSpec("ssl_db", 100.0, 150.0, 26), "hybrid_noisy_vs_ssl.csv"),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results", help="output directory")
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for scenario_name, sweep, csv_name in SWEEPS:
        scenario = load_scenario(SCENARIOS / scenario_name)
        out = outdir / csv_name
        emit_sweep_csv(scenario, sweep, out)
        print(f"{scenario_name}: swept {sweep.param} over "
              f"[{sweep.lo}, {sweep.hi}] -> {out}")


if __name__ == "__main__":
    main()
