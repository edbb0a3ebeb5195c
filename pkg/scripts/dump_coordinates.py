#!/usr/bin/env python3
"""Print the LP coordinates (canonical representatives and orbit sizes) as CSV."""

import argparse

from regen433.entropy.ground import enumerate_coordinates


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--symmetry-only", action="store_true", help="skip the dependency closure")
    args = ap.parse_args()
    rep = enumerate_coordinates(closure=not args.symmetry_only)
    print(rep.csv(), end="")
    print(f"# {rep.raw_subsets} nonempty subsets -> {len(rep.coordinates)} coordinates")


if __name__ == "__main__":
    main()
