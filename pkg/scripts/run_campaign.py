#!/usr/bin/env python3
"""Seeded verification campaign over random networks.

Generates connected superport networks with bounded size, runs every
identity verifier on each, and prints a per-theorem tally.  Identical
seeds give identical output.  Exits 1 if any check fails, printing the
first witness.
"""

import argparse
import json
import random
import sys
import time
from collections import Counter

from superport import random_network, run_verifications


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200, help="number of networks")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-n", type=int, default=8, help="largest vertex count")
    parser.add_argument("--max-edges", type=int, default=14)
    parser.add_argument("--theorem", default="all")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    tally: Counter = Counter()
    failures = []
    start = time.time()
    for index in range(args.count):
        net = random_network(
            rng, require_nonroots=True, max_n=args.max_n, max_edges=args.max_edges
        )
        for report in run_verifications(net, [args.theorem], rng=rng):
            tally[(report.theorem, report.status)] += 1
            if not report.ok:
                failures.append((index, report))

    elapsed = time.time() - start
    for theorem in sorted({t for t, _ in tally}):
        passed = tally.get((theorem, "pass"), 0)
        failed = tally.get((theorem, "fail"), 0)
        print(f"{theorem:24s} pass {passed:5d}  fail {failed:5d}")
    print(f"{args.count} networks in {elapsed:.1f}s, seed {args.seed}")
    if failures:
        index, report = failures[0]
        print(f"first failure on network {index}:")
        print(json.dumps(report.to_data(), indent=2))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
