#!/usr/bin/env python3
"""Solve the entropy LP for a list of objectives and write verified certificates."""

from __future__ import annotations

import argparse
import logging
import time
from fractions import Fraction
from pathlib import Path

from regen433.entropy import certificate as C
from regen433.entropy.lp import EntropyLP

DEFAULT = ["4,6", "2,1", "3,0", "0,6", "1,3"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("objectives", nargs="*", default=DEFAULT, help="a,b pairs (integers or p/q)")
    ap.add_argument("--out-dir", type=Path, help="write one certificate per objective here")
    ap.add_argument("--cold", action="store_true", help="skip the floating-point warm start")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    t = time.perf_counter()
    lp = EntropyLP()
    print(f"{lp} built in {time.perf_counter() - t:.1f}s")
    for spec in args.objectives:
        a, b = (Fraction(x) for x in spec.split(","))
        t = time.perf_counter()
        sol = lp.solve(a, b, presolve=not args.cold)
        line = f"{a} alpha + {b} beta >= {sol.objective}  ({sol.iterations} pivots, {time.perf_counter() - t:.1f}s)"
        if args.out_dir:
            cert = C.sparsify_certificate(C.extract_certificate(a, b, sol.objective, lp=lp))
            assert C.verify_certificate(cert)
            args.out_dir.mkdir(parents=True, exist_ok=True)
            path = args.out_dir / (f"cert_{a}_{b}".replace("/", "over") + ".txt")
            cert.write(path)
            line += f"  -> {path} ({cert.support} lines)"
        print(line)


if __name__ == "__main__":
    main()
