"""Command-line front end.

Subcommands::

    weno run <config>        execute one run, write artifacts to outdir
    weno sweep <config>      run a (schemes x resolutions) error table
    weno plotdata <kind> ... emit plot-ready CSV (solution, mapping-curve,
                             trace-scatter, nonop-overlay, slice-2d)
    weno probe               isolated-discontinuity weight probe table
    weno classify <scheme>   order-preservation verdict for a mapping family

Exit codes: 0 success, 2 configuration error, 3 solver state error.
"""

import argparse
import json
import sys

from .errors import ConfigurationError, DataError, StateError
from .diagnostics import discontinuity_probe, write_probe_csv, fmt
from .mappings import make_scheme, classify_op_set, scheme_ids
from .runconfig import parse_config
from .runner import emit_plotdata, run_single, run_sweep


def _read_config(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _scheme_kwargs(args):
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.A is not None:
        params["a"] = args.A
    for name in ("cfs0", "cfs1", "k0", "k1"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    return params


def _add_scheme_opts(p):
    p.add_argument("--k", type=int, default=None, help="pm/im exponent")
    p.add_argument("--A", type=float, default=None, help="im amplitude")
    p.add_argument("--cfs0", type=float, default=None)
    p.add_argument("--cfs1", type=float, default=None)
    p.add_argument("--k0", type=float, default=None)
    p.add_argument("--k1", type=float, default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="weno", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a single run")
    p_run.add_argument("config", help="config file path, or - for stdin")
    p_run.add_argument("--outdir", default=None, help="override the config outdir")

    p_sweep = sub.add_parser("sweep", help="run an error/convergence table")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--outdir", default=None)

    p_plot = sub.add_parser("plotdata", help="emit plot-ready CSV files")
    p_plot.add_argument("kind", choices=["solution", "mapping-curve",
                                         "trace-scatter", "nonop-overlay",
                                         "slice-2d"])
    p_plot.add_argument("--run-dir", default=None)
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--scheme", default=None, choices=scheme_ids())
    p_plot.add_argument("--samples", type=int, default=1001)
    p_plot.add_argument("--y", type=float, default=0.5)
    _add_scheme_opts(p_plot)

    p_probe = sub.add_parser("probe", help="isolated-discontinuity probe table")
    p_probe.add_argument("--out", default=None, help="write CSV instead of stdout")

    p_cls = sub.add_parser("classify", help="order-preservation certificate")
    p_cls.add_argument("scheme", choices=scheme_ids())
    p_cls.add_argument("--samples", type=int, default=1001)
    _add_scheme_opts(p_cls)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            cfg = parse_config(_read_config(args.config))
            outdir = args.outdir or cfg.outdir or "."
            summary, _, _ = run_single(cfg, outdir=outdir)
            json.dump(summary, sys.stdout, indent=2, sort_keys=True)
            print()
        elif args.command == "sweep":
            cfg = parse_config(_read_config(args.config))
            outdir = args.outdir or cfg.outdir or "."
            rows = run_sweep(cfg, outdir=outdir)
            for row in rows:
                print(",".join("" if v is None else str(v) for v in row))
        elif args.command == "plotdata":
            path = emit_plotdata(args.kind, args.out, run_dir=args.run_dir,
                                 scheme=args.scheme,
                                 scheme_params=_scheme_kwargs(args),
                                 samples=args.samples, y=args.y)
            print(path)
        elif args.command == "probe":
            rows = discontinuity_probe()
            if args.out:
                write_probe_csv(args.out, rows)
                print(args.out)
            else:
                print("label,w0,w1,w2,u,err,pct")
                for label, *vals in rows:
                    print(",".join([label] + [fmt(v) for v in vals]))
        elif args.command == "classify":
            spec = make_scheme(args.scheme, **_scheme_kwargs(args))
            verdict, witnesses = classify_op_set(spec, args.samples)
            print(f"{args.scheme}: {verdict}")
            for w in witnesses:
                print(f"  witness: w_a={w['w_a']:.6g} w_b={w['w_b']:.6g} "
                      f"m={w['m']} n={w['n']} g_m={w['g_m']:.6g} g_n={w['g_n']:.6g}")
            return 0
    except (ConfigurationError, DataError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except StateError as exc:
        print(f"solver state error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
