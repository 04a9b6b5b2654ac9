"""Command-line front end: figure drivers, bit-split utility, CSV/JSON output.

All SNR and interference ratios cross this boundary in dB (matching the
figure axes); conversion to linear scale happens exactly once, inside the
experiment drivers.
"""

import argparse
import sys

from . import __version__
from .bitalloc import optimal_split
from .errors import SimError
from .experiments import FIGURES, ExperimentSpec, db_to_lin, run

_FIG_HELP = {
    "fig3": "exact vs high-SINR sum-rate, GEBF full CSI",
    "fig4": "GEBF full-CSI sum-rate vs number of cells",
    "fig5": "mean sum-rate loss vs B_d with analytic bound",
    "fig6": "strategy comparison vs alpha",
    "fig7": "GEBF sum-rate vs total feedback budget",
    "fig8": "analytic (B_d, B_i) partition vs alpha in dB",
    "fig9": "asymmetric cells, per-user adaptive splits",
}


def _float_list(text):
    return [float(x) for x in text.split(",")]


def _int_list(text):
    return [int(x) for x in text.split(",")]


def _nonneg_int(name):
    def parse(text):
        v = int(text)
        if v < 0:
            raise argparse.ArgumentTypeError("%s must be >= 0, got %d" % (name, v))
        return v
    return parse


def _positive_int(name):
    def parse(text):
        v = int(text)
        if v <= 0:
            raise argparse.ArgumentTypeError("%s must be > 0, got %d" % (name, v))
        return v
    return parse


def _add_common(sub):
    sub.add_argument("--trials", type=_positive_int("trials"), default=0,
                     help="Monte Carlo trials per sweep point (0 = figure default)")
    sub.add_argument("--seed", type=int, default=0, help="master RNG seed")
    sub.add_argument("--out", default=None, help="output file (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_overrides(sub, keys):
    if "K" in keys:
        sub.add_argument("--k", dest="K", type=_positive_int("k"))
    if "K_list" in keys:
        sub.add_argument("--k", dest="K", type=_int_list,
                         help="comma-separated cell counts")
    if "Nt" in keys:
        sub.add_argument("--nt", dest="Nt", type=_positive_int("nt"))
    if "alpha" in keys:
        sub.add_argument("--alpha", type=_float_list,
                         help="comma-separated interference ratios (linear)")
    if "rho_d_db" in keys:
        sub.add_argument("--rho-d-db", dest="rho_d_db", type=float)
    if "rho_d_db_list" in keys:
        sub.add_argument("--rho-d-db", dest="rho_d_db", type=_float_list,
                         help="comma-separated desired SNRs in dB")
    if "B_tot" in keys:
        sub.add_argument("--btot", dest="B_tot", type=_nonneg_int("btot"))
    if "B_tot_list" in keys:
        sub.add_argument("--btot", dest="B_tot", type=_int_list,
                         help="comma-separated total budgets")
    if "clamp" in keys:
        sub.add_argument("--clamp-lo", type=_nonneg_int("clamp-lo"), default=None)
        sub.add_argument("--clamp-hi", type=_nonneg_int("clamp-hi"), default=None)


_OVERRIDE_KEYS = {
    "fig3": ("K", "Nt", "alpha", "rho_d_db_list"),
    "fig4": ("K_list", "Nt", "alpha", "rho_d_db"),
    "fig5": ("K", "Nt", "alpha", "rho_d_db", "B_tot"),
    "fig6": ("K", "Nt", "alpha", "rho_d_db", "B_tot"),
    "fig7": ("K", "Nt", "alpha", "rho_d_db", "B_tot_list"),
    "fig8": ("rho_d_db", "B_tot", "clamp"),
    "fig9": ("K", "Nt", "rho_d_db_list", "B_tot"),
}

_PARAM_NAMES = ("K", "Nt", "alpha", "rho_d_db", "B_tot")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Multicell MISO beamforming / limited-feedback simulator")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--list", action="store_true",
                        help="list available figure drivers and exit")
    subs = parser.add_subparsers(dest="subcommand")

    for fig, keys in _OVERRIDE_KEYS.items():
        sub = subs.add_parser(fig, help=_FIG_HELP[fig])
        _add_overrides(sub, keys)
        _add_common(sub)

    custom = subs.add_parser("custom", help="run any figure driver by name")
    custom.add_argument("--figure", required=True, choices=sorted(_OVERRIDE_KEYS))
    for name in _PARAM_NAMES:
        flag = {"K": "--k", "Nt": "--nt", "alpha": "--alpha",
                "rho_d_db": "--rho-d-db", "B_tot": "--btot"}[name]
        custom.add_argument(flag, dest=name, default=None)
    _add_overrides(custom, ("clamp",))
    _add_common(custom)

    split = subs.add_parser("split", help="print the optimal (B_d, B_i) partition")
    split.add_argument("--btot", dest="B_tot", type=_nonneg_int("btot"), required=True)
    split.add_argument("--rho-d-db", dest="rho_d_db", type=float, required=True)
    split.add_argument("--alpha", type=float, required=True)
    split.add_argument("--clamp-lo", type=_nonneg_int("clamp-lo"), default=None)
    split.add_argument("--clamp-hi", type=_nonneg_int("clamp-hi"), default=None)
    return parser


def _gather_params(args, fig):
    params = {}
    for name in _PARAM_NAMES:
        val = getattr(args, name, None)
        if val is None:
            continue
        if args.subcommand == "custom" and isinstance(val, str):
            val = _parse_custom_value(fig, name, val)
        params[name] = val
    lo, hi = getattr(args, "clamp_lo", None), getattr(args, "clamp_hi", None)
    if "clamp" in _OVERRIDE_KEYS.get(fig, ()) and lo is not None and hi is not None:
        params["clamp"] = (lo, hi)
    return params


def _parse_custom_value(fig, name, text):
    keys = _OVERRIDE_KEYS[fig]
    if name == "K" and "K_list" in keys:
        return _int_list(text)
    if name == "rho_d_db" and "rho_d_db_list" in keys:
        return _float_list(text)
    if name == "B_tot" and "B_tot_list" in keys:
        return _int_list(text)
    if name == "alpha":
        return _float_list(text)
    if name in ("K", "Nt", "B_tot"):
        return int(text)
    return float(text)


def _emit(payload, path):
    if path is None:
        sys.stdout.buffer.write(payload)
        return 0
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        print("error: cannot write %s: %s" % (path, exc), file=sys.stderr)
        return 1
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.list:
        for fig in sorted(_OVERRIDE_KEYS):
            print("%s  %-18s %s" % (fig, FIGURES[fig], _FIG_HELP[fig]))
        return 0
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return 2

    if args.subcommand == "split":
        if not 0.0 <= args.alpha <= 1.0:
            print("error: alpha must lie in [0, 1]", file=sys.stderr)
            return 2
        clamp = None
        if args.clamp_lo is not None and args.clamp_hi is not None:
            clamp = (args.clamp_lo, args.clamp_hi)
        try:
            s = optimal_split(args.B_tot, args.alpha * db_to_lin(args.rho_d_db),
                              clamp=clamp)
        except SimError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        print("B_d=%d B_i=%d" % (s.B_d, s.B_i))
        return 0

    fig = args.figure if args.subcommand == "custom" else args.subcommand
    spec = ExperimentSpec(figure_id=fig, trials=args.trials,
                          master_seed=args.seed, params=_gather_params(args, fig))
    try:
        table = run(spec)
    except SimError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    payload = table.to_csv() if args.format == "csv" else table.to_json()
    return _emit(payload, args.out)


if __name__ == "__main__":
    sys.exit(main())
