#!/usr/bin/env python3
"""Write half-space and vertex CSVs for both regions, plus the gap summary."""

import argparse
from pathlib import Path

from regen433 import region


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=Path)
    args = ap.parse_args()
    for name, reg in (("cutset", region.cutset_region()), ("exact", region.exact_region())):
        d = args.out_dir / name
        d.mkdir(parents=True, exist_ok=True)
        hs, vs = region.export_region(reg)
        (d / "halfspaces.csv").write_text(hs)
        (d / "vertices.csv").write_text(vs)
        print(f"{name}: {len(region.vertices(reg))} vertices -> {d}")
    g = region.max_gap(region.cutset_region(), region.exact_region())
    print(f"gap at {region.fmt(g.point[0])},{region.fmt(g.point[1])}: violates {g.witness} "
          f"by {region.fmt(g.raw)} (normalized {region.fmt(g.normalized)})")


if __name__ == "__main__":
    main()
