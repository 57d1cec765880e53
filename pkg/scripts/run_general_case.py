#!/usr/bin/env python3
"""Attempt the exact elimination for the general (pairwise-distinct) branch.

This elimination has a degree-90 resultant with coefficients in the tens of
digits; it is expected to exhaust any desk-scale budget, in which case the
run reports the budget status that the classification pipeline falls back
on.  Raise the limits to probe further.
"""

import argparse
import time

from flagein.polyalg.groebner import GroebnerBudget
from flagein.rootsys import root_system
from flagein.solver import solve_general_case


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-pairs", type=int, default=250)
    parser.add_argument("--max-coeff-bits", type=int, default=2500)
    args = parser.parse_args()

    budget = GroebnerBudget(max_pairs=args.max_pairs, max_coeff_bits=args.max_coeff_bits)
    t0 = time.time()
    result = solve_general_case(root_system("G2"), budget)
    elapsed = time.time() - t0

    print(f"general-case elimination: status={result.status} ({elapsed:.0f}s)")
    for case in result.cases:
        print(f"  [{case.name}] {case.status}")
        if case.elimination_degree:
            print(f"    elimination degree: {case.elimination_degree}")
        if case.real_roots is not None:
            print(f"    real roots: {case.real_roots}, positive: {case.positive_roots}")
        if case.notes:
            print(f"    {case.notes}")
    if result.solutions:
        print(f"solutions recovered exactly: {len(result.solutions)}")
        for s in result.solutions:
            xs = ", ".join(str(v) for v in s.metric.x)
            print(f"  ({xs})  kaehler={s.kaehler}")


if __name__ == "__main__":
    main()
