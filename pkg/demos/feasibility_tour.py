"""Walk one parameter point through the feasibility engine.

Picks a point where two subcritical scenarios apply, prints the shift
window and a witness for each, then moves to a nearby point past the
bilinear barrier and shows the violation certificate instead.

Run with:  python3 demos/feasibility_tour.py
"""

from __future__ import annotations

from uniq_regions import (
    ProblemParams,
    applicable_scenarios,
    build_scenario,
    check_assignment,
    feasibility,
    format_rational,
    rat,
    sigma_window,
)


def describe(params: ProblemParams) -> None:
    label = (f"n = {params.n}, s = {format_rational(params.s)}, "
             f"alpha = {format_rational(params.alpha)}")
    ids = applicable_scenarios(params)
    print(f"{label}: {len(ids)} applicable scenario(s)")
    for scenario_id in ids:
        verdict = feasibility(scenario_id, params)
        if verdict.feasible:
            window = sigma_window(scenario_id, params)
            witness = {k: format_rational(v)
                       for k, v in sorted(verdict.witness.items())}
            residual = check_assignment(
                build_scenario(scenario_id, params), verdict.witness)
            print(f"  {scenario_id}: feasible, sigma in {window}")
            print(f"    witness {witness}")
            print(f"    witness re-check: {len(residual)} violated rows")
        else:
            print(f"  {scenario_id}: infeasible")
            print(f"    certificate {list(verdict.certificate)}")


def main() -> None:
    print("A point inside the new subcritical range:")
    describe(ProblemParams(3, rat(1, 2), rat(3, 2)))
    print()
    print("The same regularity at the scale-critical power:")
    describe(ProblemParams(3, rat(1, 2), rat(2)))


if __name__ == "__main__":
    main()
