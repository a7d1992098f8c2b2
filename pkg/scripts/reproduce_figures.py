#!/usr/bin/env python3
"""Regenerate the four figure datasets (fig1, fig2, fig3, figS4) as CSV files.

Usage: python scripts/reproduce_figures.py [--out-dir DIR] [--l-max L]
Equivalent to running ``trotterxxz reproduce <fig>`` for each figure.
"""

import argparse
import sys

from trotterxxz.cli import main as cli_main

FIGURES = ("fig1", "fig2", "fig3", "figS4")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="figures")
    ap.add_argument("--l-max", type=int, default=10)
    ap.add_argument("--only", choices=FIGURES, default=None)
    args = ap.parse_args()
    for fig in FIGURES if args.only is None else (args.only,):
        code = cli_main([
            "reproduce", fig,
            "--out-dir", args.out_dir,
            "--l-max", str(args.l_max),
        ])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
