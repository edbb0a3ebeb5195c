#!/usr/bin/env python3
"""Show that explicit dependency rows leave the optimum unchanged (about 1-2 minutes)."""

import argparse
import logging
from fractions import Fraction

from regen433.entropy.redundancy import absorption_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", default="4")
    ap.add_argument("--b", default="6")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO)
    r = absorption_check(Fraction(args.a), Fraction(args.b))
    for k, v in vars(r).items():
        print(f"{k}: {v}")
    print("unchanged:", r.unchanged)


if __name__ == "__main__":
    main()
