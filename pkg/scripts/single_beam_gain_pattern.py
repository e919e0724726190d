#!/usr/bin/env python3
"""Gain-vs-angle comparison for a single desired direction.

Solves the one-beam, no-interference problem at a configurable desired angle
for the rotating, fixed-orientation, and isotropic schemes, then writes the
per-scheme gain patterns and a summary into the output directory.
"""

import argparse

from ra_beamkit.experiments import run_scenario
from ra_beamkit.scenario import ScenarioSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--angle", type=float, default=60.0,
                    help="desired direction in degrees (default 60)")
    ap.add_argument("--num-antennas", type=int, default=15)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--out", default="out/single_beam")
    args = ap.parse_args()

    spec = ScenarioSpec(desired_angles_deg=[args.angle],
                        num_antennas=args.num_antennas,
                        seeds=tuple(range(args.seeds)))
    run_scenario(spec, args.out)
    print(f"wrote gain patterns and summary to {args.out}")


if __name__ == "__main__":
    main()
