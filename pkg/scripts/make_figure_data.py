#!/usr/bin/env python3
"""Emit the plot-ready CSVs for the standard figures.

Writes three files into --outdir:

    density_vs_time.csv    rho_A(t) for alpha in {0.2, 0.5, 0.75, 0.9}
    density_vs_alpha.csv   rho_A(alpha) for t in {0.2, 0.5, 1.0}
    contours.csv           level sets rho_A(t; alpha) = lambda,
                           lambda in {0.05, 0.1, 0.2, 0.4, 0.8}

Each is a plain run of the CLI, so the files match `abrsa sweep` /
`abrsa contour` output byte for byte.
"""

import argparse
import pathlib
import sys

from abrsa import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="data", help="output directory (created if missing)")
    parser.add_argument("--points", type=int, default=201, help="contour points per curve")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    jobs = [
        (["sweep", "--panel", "left"], outdir / "density_vs_time.csv"),
        (["sweep", "--panel", "right"], outdir / "density_vs_alpha.csv"),
        (["contour", "--alpha-resolution", str(args.points)], outdir / "contours.csv"),
    ]
    for argv, path in jobs:
        code = cli.main(argv + ["--output", str(path)])
        if code != 0:
            print(f"failed ({code}): {' '.join(argv)}", file=sys.stderr)
            return code
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
