#!/usr/bin/env python3
"""Regenerate tests/golden/ from the current CLI.

Run only after a deliberate output change; the test suite compares against
these files byte for byte.
"""

from __future__ import annotations

import argparse
import io
import shutil
import tempfile
from pathlib import Path

from regen433 import cli

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"

# (golden stem, argv, {output file in work dir: golden file name})
CASES = [
    ("code_roundtrip_interior", ["code-roundtrip", "--code", "interior", "--exhaustive", "--vectors", "{w}/v.txt"],
     {"v.txt": "vectors_interior.txt"}),
    ("code_roundtrip_msr", ["code-roundtrip", "--code", "msr", "--vectors", "{w}/v.txt"], {"v.txt": "vectors_msr.txt"}),
    ("code_roundtrip_mbr", ["code-roundtrip", "--code", "mbr", "--exhaustive", "--vectors", "{w}/v.txt"],
     {"v.txt": "vectors_mbr.txt"}),
    ("sim_interior_4failures", ["sim-run", "bundled:interior_4failures", "--out-dir", "{w}"],
     {"events.log": "sim_interior_4failures_events.log", "bandwidth.csv": "sim_interior_4failures_bandwidth.csv"}),
    ("region_exact", ["region", "exact", "--out-dir", "{w}"],
     {"halfspaces.csv": "region_exact_halfspaces.csv", "vertices.csv": "region_exact_vertices.csv"}),
    ("region_cutset_gap", ["region", "cutset", "--gap", "--out-dir", "{w}"],
     {"halfspaces.csv": "region_cutset_halfspaces.csv", "vertices.csv": "region_cutset_vertices.csv"}),
    ("prove_4_6_3", ["prove", "--a", "4", "--b", "6", "--c", "3", "--out", "{w}/cert.txt"],
     {"cert.txt": "certificate_4_6_3.txt"}),
    ("prove_2_1_1", ["prove", "--a", "2", "--b", "1", "--c", "1", "--out", "{w}/cert.txt"],
     {"cert.txt": "certificate_2_1_1.txt"}),
    ("prove_4_6_4", ["prove", "--a", "4", "--b", "6", "--c", "4", "--out", "{w}/cert.txt"], {}),
]


def run_case(argv: list[str], work: Path) -> tuple[int, str]:
    argv = [a.replace("{w}", str(work)) for a in argv]
    buf = io.StringIO()
    rc = cli.main(argv, out=buf)
    # paths under the scratch dir vary per run; golden stdout stores them relative
    return rc, buf.getvalue().replace(str(work) + "/", "").replace(str(work), ".")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only", help="regenerate a single case by stem")
    args = ap.parse_args()
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for stem, argv, files in CASES:
        if args.only and stem != args.only:
            continue
        with tempfile.TemporaryDirectory() as tmp:
            work = Path(tmp)
            rc, out = run_case(argv, work)
            (GOLDEN / f"{stem}.stdout").write_text(f"exit={rc}\n{out}")
            for src, dst in files.items():
                shutil.copyfile(work / src, GOLDEN / dst)
        print(f"{stem}: exit {rc}")


if __name__ == "__main__":
    main()
