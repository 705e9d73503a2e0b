"""Command-line front end: entropy calculation, series generation, sweeps,
baselines, and dataset download."""

import argparse
import sys

from . import baselines, entropy, mnist_io, series_gen
from .series_gen import MapParams

EXIT_OK = 0
EXIT_USER = 2
EXIT_ENV = 3
EXIT_NUMERIC = 4


def _add_dataset_flags(p):
    p.add_argument("--mnist", help="directory with the four MNIST IDX files "
                                   "(default: $NNETEN_MNIST_DIR)")
    p.add_argument("--epochs", type=int, default=entropy.DEFAULT_EPOCHS)
    p.add_argument("--train-limit", type=int, default=None)
    p.add_argument("--test-limit", type=int, default=None)


def _add_map_flags(p, require_map=False):
    p.add_argument("--map", choices=series_gen.KINDS, required=require_map)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--r1", type=float, default=None)
    p.add_argument("--A", type=float, default=None, dest="amplitude")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--y0", type=float, default=None)
    p.add_argument("--discard", type=int, default=None)


def _params_from_args(args) -> MapParams:
    overrides = {}
    for flag, field in [("r", "r"), ("r1", "r1"), ("amplitude", "a"), ("seed", "seed"),
                        ("x0", "x0"), ("y0", "y0"), ("discard", "discard")]:
        value = getattr(args, flag)
        if value is not None:
            overrides[field] = value
    return series_gen.default_params(args.map, **overrides)


def _load_dataset(args) -> mnist_io.MnistDataset:
    directory = args.mnist or mnist_io.default_dir()
    if not directory:
        raise SystemExitWith(EXIT_ENV, "no MNIST directory: pass --mnist or set "
                                       f"${mnist_io.MNIST_DIR_ENV}")
    if args.train_limit is not None or args.test_limit is not None:
        print("warning: dataset limits active; values are not comparable to "
              "full-dataset results", file=sys.stderr)
    try:
        return mnist_io.load_dataset(directory, args.train_limit, args.test_limit)
    except mnist_io.MissingFile as exc:
        raise SystemExitWith(EXIT_ENV, f"MNIST file missing: {exc}") from exc
    except mnist_io.IdxError as exc:
        raise SystemExitWith(EXIT_ENV, f"MNIST file invalid: {exc}") from exc


class SystemExitWith(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _open_out(args):
    if getattr(args, "out", None) and args.out != "-":
        return open(args.out, "w", newline="", encoding="utf-8")
    return sys.stdout


def _read_series(path) -> series_gen.TimeSeries:
    try:
        return series_gen.read_series(path)
    except FileNotFoundError as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    except (series_gen.ParseError, series_gen.EmptySeries) as exc:
        raise SystemExitWith(EXIT_USER, f"{path}: {exc}") from exc


def _series_from_args(args):
    """Series file argument if given, else generated from map flags."""
    if getattr(args, "input", None):
        return _read_series(args.input)
    if args.map is None:
        raise SystemExitWith(EXIT_USER, "need a series file or --map")
    try:
        return series_gen.generate(_params_from_args(args), entropy.SERIES_LENGTH)
    except series_gen.Divergence as exc:
        raise SystemExitWith(EXIT_NUMERIC, f"map diverged: {exc}") from exc
    except series_gen.InvalidParam as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc


def cmd_calc(args) -> int:
    series = _read_series(args.input)
    dataset = _load_dataset(args)
    report = entropy.nnet_en(series, dataset, args.epochs)
    out = _open_out(args)
    try:
        if args.format == "csv":
            out.write("nneten,accuracy_percent,epochs,train_count,test_count,"
                      "fingerprint,wall_ms\n")
            out.write(f"{report.nneten!r},{report.accuracy_percent!r},{report.epochs},"
                      f"{report.train_count},{report.test_count},"
                      f"{report.fingerprint},{report.wall_ms:.1f}\n")
        else:
            out.write(f"NNetEn = {report.nneten:.4f}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        series = series_gen.generate(_params_from_args(args), args.n)
    except series_gen.Divergence as exc:
        raise SystemExitWith(EXIT_NUMERIC, f"map diverged: {exc}") from exc
    except series_gen.InvalidParam as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    series_gen.write_series(series, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    dataset = _load_dataset(args)
    try:
        result = entropy.r_sweep(args.map, args.r_start, args.r_end, args.r_step,
                                 dataset, args.epochs, seed=args.seed or 0)
    except entropy.InvalidGrid as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    out = _open_out(args)
    try:
        result.write_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_inertia(args) -> int:
    dataset = _load_dataset(args)
    grid_mode = args.r_start is not None
    try:
        if grid_mode:
            if args.map is None:
                raise SystemExitWith(EXIT_USER, "r-grid mode needs --map")
            rows = entropy.inertia_r_sweep(args.map, args.r_start, args.r_end,
                                           args.r_step, args.ep1, args.ep2, dataset)
            out = _open_out(args)
            try:
                out.write("r,delta,nneten_ep1,nneten_ep2\n")
                for r, rep in rows:
                    if rep is None:
                        out.write(f"{r},,,\n")
                    else:
                        out.write(f"{r},{rep.delta!r},{rep.nneten_ep1!r},{rep.nneten_ep2!r}\n")
            finally:
                if out is not sys.stdout:
                    out.close()
            return EXIT_OK
        series = _series_from_args(args)
        report = entropy.learning_inertia(series, args.ep1, args.ep2, dataset)
    except entropy.InvalidGrid as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    except entropy.ZeroDenominator as exc:
        raise SystemExitWith(EXIT_NUMERIC, str(exc)) from exc
    print(f"NNetEn(ep1={report.ep1}) = {report.nneten_ep1:.4f}")
    print(f"NNetEn(ep2={report.ep2}) = {report.nneten_ep2:.4f}")
    print(f"delta = {report.delta:.4f}")
    return EXIT_OK


def cmd_lengths(args) -> int:
    dataset = _load_dataset(args)
    lengths = [int(tok) for tok in args.n_list.split(",") if tok]
    if getattr(args, "input", None):
        source = _read_series(args.input)
    else:
        if args.map is None:
            raise SystemExitWith(EXIT_USER, "need a series file or --map")
        source = _params_from_args(args)
    try:
        result = entropy.length_sweep(source, lengths, dataset, args.epochs)
    except entropy.InvalidGrid as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    except series_gen.Divergence as exc:
        raise SystemExitWith(EXIT_NUMERIC, f"map diverged: {exc}") from exc
    out = _open_out(args)
    try:
        result.write_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_baseline(args) -> int:
    series = _read_series(args.input)
    try:
        if args.method == "apen":
            value = baselines.ap_en(series.values, m=args.m, rr=args.rr,
                                    tolerance_mode=args.tolerance_mode)
            params = f"m={args.m} rr={args.rr} tol={args.tolerance_mode}"
        elif args.method == "sampen":
            value = baselines.samp_en(series.values, m=args.m, rr=args.rr,
                                      tolerance_mode=args.tolerance_mode)
            params = f"m={args.m} rr={args.rr} tol={args.tolerance_mode}"
        else:
            value = baselines.perm_en(series.values, m=args.m, d=args.d)
            params = f"m={args.m} d={args.d}"
    except (baselines.TooShort, ValueError) as exc:
        raise SystemExitWith(EXIT_USER, str(exc)) from exc
    print(f"{args.method} ({params}) = {value:.6g}")
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write("method,params,value\n")
            fh.write(f"{args.method},{params},{value!r}\n")
    return EXIT_OK


def cmd_fetch_mnist(args) -> int:
    try:
        paths = mnist_io.fetch_mnist(args.dir, args.base_url)
    except mnist_io.NetworkError as exc:
        raise SystemExitWith(EXIT_ENV, str(exc)) from exc
    except mnist_io.ValidationFailed as exc:
        raise SystemExitWith(EXIT_ENV, str(exc)) from exc
    for p in paths:
        print(p)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nneten",
                                     description="Neural-network entropy of time series")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calc", help="entropy of a series file")
    p.add_argument("input")
    _add_dataset_flags(p)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_calc)

    p = sub.add_parser("gen", help="generate a series file")
    _add_map_flags(p, require_map=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="entropy across a control-parameter grid (CSV)")
    _add_map_flags(p, require_map=True)
    p.add_argument("--r-start", type=float, required=True)
    p.add_argument("--r-end", type=float, required=True)
    p.add_argument("--r-step", type=float, required=True)
    _add_dataset_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inertia", help="learning inertia of a series or r grid")
    p.add_argument("input", nargs="?")
    _add_map_flags(p)
    p.add_argument("--r-start", type=float, default=None)
    p.add_argument("--r-end", type=float, default=None)
    p.add_argument("--r-step", type=float, default=None)
    p.add_argument("--ep1", type=int, required=True)
    p.add_argument("--ep2", type=int, required=True)
    _add_dataset_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_inertia)

    p = sub.add_parser("lengths", help="entropy across series lengths (CSV)")
    p.add_argument("input", nargs="?")
    _add_map_flags(p)
    p.add_argument("--n-list", required=True, help="comma-separated lengths")
    _add_dataset_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lengths)

    p = sub.add_parser("baseline", help="classical entropy estimators")
    p.add_argument("input")
    p.add_argument("--method", choices=["apen", "sampen", "peren"], required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--rr", type=float, default=0.025)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--tolerance-mode", choices=["sd", "absolute"], default="sd")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("fetch-mnist", help="download the dataset files")
    p.add_argument("--dir", required=True)
    p.add_argument("--base-url", default=None)
    p.set_defaults(func=cmd_fetch_mnist)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExitWith as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
