"""render: turn simulator CSV output into figure images."""

import argparse
import sys

from .recipes import RECIPES, RecipeError, render


def build_parser():
    parser = argparse.ArgumentParser(
        prog="render",
        description="Plot simulator CSV results in the reference figure layouts")
    parser.add_argument("--figure", required=True, choices=sorted(RECIPES),
                        help="which figure recipe to apply")
    parser.add_argument("--in", dest="in_path", required=True,
                        metavar="CSV", help="input CSV from the simulator")
    parser.add_argument("--out", dest="out_path", required=True,
                        metavar="IMAGE", help="output image (.png or .svg)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if not args.out_path.lower().endswith((".png", ".svg")):
        print("error: --out must end in .png or .svg", file=sys.stderr)
        return 2
    try:
        render(RECIPES[args.figure], args.in_path, args.out_path)
    except RecipeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
