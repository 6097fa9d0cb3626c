"""Render the layered region figures for dimensions 3 through 6.

Writes one SVG per dimension to the chosen directory.  The default grid
step of 1/64 matches the CLI; pass a coarser step to iterate faster.

Run with:  python3 demos/figure_gallery.py [--outdir DIR] [--step 1/32]
"""

from __future__ import annotations

import argparse
import pathlib

from uniq_regions import figure_grid, figure_spec, rat, render_figure


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", default="figures",
                        help="directory for the SVG files")
    parser.add_argument("--step", default="1/64",
                        help="grid step as a rational")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    step = rat(args.step)

    for n in (3, 4, 5, 6):
        spec = figure_spec(n)
        svg = render_figure(spec, figure_grid(spec, step=step))
        path = outdir / f"regions_n{n}.svg"
        path.write_bytes(svg)
        print(f"{path}  ({len(svg)} bytes, {len(spec.layers)} layers)")


if __name__ == "__main__":
    main()
