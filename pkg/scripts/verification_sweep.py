#!/usr/bin/env python3
"""Run the seeded theorem-verification suites and print a timing summary.

Usage: python scripts/verification_sweep.py [--seed N] [--e2 200]
       [--mains 100] [--mainc 100]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from specseq.engine import check_abutment
from specseq.invariant import filtered_complex
from specseq.sampling import sample_model
from specseq.verify import (
    model_star_duality,
    verify_E2,
    verify_mainC,
    verify_mainS,
)


def run_suite(name, count, rng, make_checks):
    start = time.time()
    failures = 0
    for i in range(count):
        for label, ok in make_checks(rng):
            if not ok:
                failures += 1
                print(f"  FAIL {name}[{i}] {label}")
    elapsed = time.time() - start
    status = "ok" if failures == 0 else f"{failures} failures"
    print(f"{name}: {count} models in {elapsed:.1f}s ({status})")
    return failures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260823)
    parser.add_argument("--e2", type=int, default=200)
    parser.add_argument("--mains", type=int, default=100)
    parser.add_argument("--mainc", type=int, default=100)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    failures = 0

    def e2_checks(rng):
        c = sample_model(rng, "mixed")
        yield "E2", verify_E2(c).passed

    def mains_checks(rng):
        c = sample_model(rng, "S")
        yield "mainS", verify_mainS(c).passed
        yield "star-duality", model_star_duality(c).passed
        yield "abutment", check_abutment(filtered_complex(c))

    def mainc_checks(rng):
        c = sample_model(rng, "C")
        yield "mainC", verify_mainC(c).passed
        yield "abutment", check_abutment(filtered_complex(c))

    failures += run_suite("E2 (mixed lambdas)", args.e2, rng, e2_checks)
    failures += run_suite("mainS (S-type, HLP)", args.mains, rng, mains_checks)
    failures += run_suite("mainC (C-type)", args.mainc, rng, mainc_checks)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
