#!/usr/bin/env python3
"""Follow one vector through degree reduction and cyclic generation.

Prints each reduction step (which generator was sampled, at which modes,
and which coefficient was extracted), then the generation verdict.
"""

import argparse
import json
import random

from hvtensor.suites import PIPELINE_PARAMS
from hvtensor.tensor import TensorModule, irreducibility_witness


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--vec", help="tensor vector, e.g. 'd1^2*d2 (x) [L(-1) | v]'; random if omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff", default="2,2")
    args = p.parse_args()

    M = TensorModule(PIPELINE_PARAMS)
    u = M.parse_vector(args.vec) if args.vec else M.random_vector(random.Random(args.seed))
    cutoffs = tuple(int(x) for x in args.cutoff.split(","))
    print("u =", M.format_vector(u))
    report = irreducibility_witness(PIPELINE_PARAMS, u, cutoffs, module=M)
    descent, generation = report.checks
    for step in descent.actual["trace"]:
        print("  step:", json.dumps(step))
    print("ground =", descent.actual["ground"])
    print("generation:", json.dumps(generation.to_json()["actual"]))
    print("status:", report.status)


if __name__ == "__main__":
    main()
