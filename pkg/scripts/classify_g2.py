#!/usr/bin/env python3
"""Full G2/T Einstein classification: exact case analysis + numeric oracle.

Reproduces the headline result: exactly three invariant Einstein metrics up
to isometry, one Kaehler and two not.  Writes a JSON report next to the
console summary.
"""

import argparse
import json
import time

from flagein.rootsys import root_system
from flagein.solver import classify_full, solution_set_to_dict


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--starts", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--output", default="g2_classification.json")
    args = parser.parse_args()

    spec = root_system("G2")
    t0 = time.time()
    result = classify_full(spec, starts=args.starts, seed=args.seed)
    elapsed = time.time() - t0

    print(f"G2/T classification ({elapsed:.0f}s, {args.starts} oracle starts, seed {args.seed})")
    print(f"status: {result.status}")
    for case in result.cases:
        line = f"  case [{case.name}] {case.status}"
        if case.elimination_degree:
            line += f", elimination degree {case.elimination_degree}"
        if case.real_roots is not None:
            line += f", {case.real_roots} real / {case.positive_roots} positive roots"
        print(line)
        if case.notes:
            print(f"        {case.notes}")
    print(f"isometry classes: {len(result.solutions)}")
    for s in result.solutions:
        xs = ", ".join(f"{float(v):.6f}" for v in s.metric.x)
        label = "Kaehler" if s.kaehler else "non-Kaehler"
        print(f"  ({xs})  k = {float(s.k):.6f}  [{label}, {s.provenance}]")

    with open(args.output, "w") as fh:
        json.dump(solution_set_to_dict(result), fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"report written to {args.output}")


if __name__ == "__main__":
    main()
