#!/usr/bin/env python3
"""Regenerate every figure of the study as data: grid CSVs plus contour JSON.

Writes ff1, ff2, ff3, ff4, ff8 and two seeded random planes to the output
directory (default ./figures), then prints the Monte-Carlo summary table.
Plot with any CSV-aware tool; a gnuplot recipe is in the README.
"""

import argparse
import sys
from pathlib import Path

from entgeo.cli import main as entgeo_main

PLANES = ["ff1", "ff2", "ff3", "ff4", "ff8", "random:1", "random:2"]
LEVELS = "0.1,0.2,0.3,0.5,0.8"


def run(argv):
    print("+ entgeo " + " ".join(argv))
    code = entgeo_main(argv)
    if code != 0:
        sys.exit(code)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="figures")
    parser.add_argument("--resolution", type=int, default=401)
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for plane in PLANES:
        stem = plane.replace(":", "_seed")
        run(
            [
                "scan",
                "--plane", plane,
                "--resolution", str(args.resolution),
                "--out", str(out / f"{stem}.csv"),
                "--contours", LEVELS,
            ]
        )

    run(["project", "--state", "w", "--json", str(out / "w_projection.json")])
    run(["project", "--state", "bell-psi-plus", "--json", str(out / "bell_projection.json")])
    run(["stats", "--samples", "10000", "--seed", "1"])


if __name__ == "__main__":
    main()
