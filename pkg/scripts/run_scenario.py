#!/usr/bin/env python3
"""Replay a cluster scenario and print the event log (bundled:<name> works too)."""

import argparse
import sys

from regen433 import cluster
from regen433.cli import bundled_scenarios, read_scenario_text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scenario", nargs="?", help="path or bundled:<name>; omit to list bundled scenarios")
    args = ap.parse_args()
    if not args.scenario:
        print("\n".join(bundled_scenarios()))
        return
    try:
        res = cluster.run_scenario(cluster.parse_scenario(read_scenario_text(args.scenario)))
    except cluster.ScenarioError as exc:
        sys.exit(f"failed: {exc}")
    sys.stdout.write(res.event_log())
    sys.stdout.write(res.bandwidth_csv())


if __name__ == "__main__":
    main()
