#!/usr/bin/env python3
"""Print every spectral-sequence page of a preset or model file.

Usage: python scripts/page_report.py hopf-s3
       python scripts/page_report.py path/to/model.json
"""

from __future__ import annotations

import argparse
import sys

from specseq.cli import _page_table
from specseq.engine import run_to_convergence
from specseq.invariant import betti_numbers, filtered_complex
from specseq.modelfile import ModelFileError, load_model, to_complex
from specseq.presets import PRESETS


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("model", help="preset name or model file path")
    args = parser.parse_args()
    if args.model in PRESETS:
        mf = PRESETS[args.model]
    else:
        try:
            mf = load_model(args.model)
        except ModelFileError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    c = to_complex(mf)
    fc = filtered_complex(c)
    pages, stable_at = run_to_convergence(fc)
    print(f"{mf.name or args.model}: n={mf.n} s={mf.s} stable at page {stable_at}")
    for page in pages:
        print(_page_table(page, 2 * mf.n, mf.s))
    print(f"de Rham dims: {betti_numbers(c)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
