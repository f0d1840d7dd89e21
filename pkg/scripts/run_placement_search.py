#!/usr/bin/env python3
"""Search optimal placements for eight sensors in the 0.6 nmi square.

Repeats the differential-evolution run over several seeds, reports the
detection probability each one reaches at the full quadrature resolution,
and prints the best layout found.
"""

import argparse
import sys
import time
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from sonarfield import (  # noqa: E402
    DEConfig,
    PlacementProblem,
    QuadratureSpec,
    load_scenario,
    optimize,
    system_pd,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    parser.add_argument("--search-nodes", type=int, default=40,
                        help="quadrature nodes per axis during the search")
    args = parser.parse_args()

    scenario = load_scenario(REPO / "scenarios" / "table1_r06.json")
    problem = PlacementProblem(
        scenario,
        movable_count=scenario.optimize.movable_count,
        quadrature=QuadratureSpec(nodes_per_axis=args.search_nodes),
    )
    base_de = scenario.optimize.de

    best = None
    for seed in args.seeds:
        config = DEConfig(
            population=base_de.population,
            mutation=base_de.mutation,
            crossover=base_de.crossover,
            max_generations=base_de.max_generations,
            seed=seed,
        )
        start = time.time()
        result = optimize(problem, config)
        pd = system_pd(problem.scenario_with(result.best_vector))
        print(f"seed {seed}: pd={pd:.5f} generations={result.generations} "
              f"evaluations={result.evaluations} ({time.time() - start:.0f}s)")
        if best is None or pd > best[0]:
            best = (pd, result)

    pd, result = best
    print(f"\nbest layout (pd={pd:.5f}):")
    for x, y in result.best_positions():
        print(f"  ({x:.6f}, {y:.6f})")


if __name__ == "__main__":
    main()
