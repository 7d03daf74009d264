"""Command-line front end.

Usage examples:
    growthpricer stats --game game1.json
    growthpricer proportion --game game1.json --price 2.0
    growthpricer price --game stpetersburg.json --rate 0.04 --compounding simple
    growthpricer curve --game uniform.json --grid 0.1:0.5:9 --format csv
    growthpricer simulate --game game1.json --u 1 --t 0.25 --N-list 3,4 --n-list 2,30
    growthpricer joint --game game1.json --game2 game2.json --rate 0.04
    growthpricer bs-compare --game put.json

Exit codes: 0 success, 1 usage or malformed spec, 2 domain error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .errors import DomainError, MalformedSpec, NumericalError
from .growth import optimal_proportion
from .joint import joint_optimize, joint_price
from .measures import build_game, effectiveness
from .options import black_scholes_put, market_params_from_spec, put_game
from .pricer import expectation_price, price, pricing_curve
from .quadrature import default_config
from .sequence import convergence_table

DECIMALS = 6
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _round(v):
    if isinstance(v, float):
        return v if not math.isfinite(v) else round(v, DECIMALS)
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    return v


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.{DECIMALS}f}" if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _emit(record, fmt, out):
    if fmt == "json":
        out.write(json.dumps(_round(record), indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow(_fmt(v) for v in record.values())
    else:
        width = max(len(k) for k in record)
        for k, v in record.items():
            out.write(f"{k:<{width}}  {_fmt(v)}\n")


def _emit_rows(rows, columns, fmt, out):
    if fmt == "json":
        out.write(json.dumps([_round(dict(zip(columns, r))) for r in rows], indent=2) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(_fmt(float(v)) if isinstance(v, (int, float)) and not isinstance(v, bool) else v for v in r)


def _load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedSpec(f"cannot read game spec {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedSpec(f"game spec {path!r} is not valid JSON: {exc.msg}") from exc


def _load_game(path):
    return build_game(_load_spec(path))


def _config(args):
    base = default_config()
    if args.abs_tol is None and args.rel_tol is None:
        return base
    try:
        return base.with_tolerances(args.abs_tol, args.rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _int_list(text):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("list is empty")
    return vals


def _grid(text):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:steps, got {text!r}")
    if steps < 1 or not lo > 0 or hi < lo:
        raise argparse.ArgumentTypeError("grid needs 0 < lo <= hi and steps >= 1")
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def _warn_declared(g, err):
    if effectiveness(g).status == "declared":
        err.write("warning: effectiveness is declared in the game file, not verified\n")


def cmd_stats(args, cfg, out, err):
    g = _load_game(args.game)
    st = g.stats
    _warn_declared(g, err)
    record = {
        "xi": g.xi,
        "atom_at_xi": g.atom_at_xi,
        "E": st.E,
        "H": st.H,
        "H_xi": st.H_xi,
        "invH": st.invH,
        "xi_plus_invHxi": st.xi_plus_invHxi,
        "effective": st.effective,
        "nu": st.nu,
    }
    _emit(record, args.format, out)


def cmd_proportion(args, cfg, out, err):
    g = _load_game(args.game)
    r = optimal_proportion(g, args.price, cfg)
    _emit({"u": r.u, "t": r.t, "regime": r.regime.value, "growth": r.growth}, args.format, out)


def cmd_price(args, cfg, out, err):
    g = _load_game(args.game)
    _warn_declared(g, err)
    r = price(g, args.rate, args.compounding, args.horizon, cfg)
    record = r.as_dict()
    try:
        e = expectation_price(g, args.rate, args.compounding, args.horizon, cfg)
        record.update(
            expectation_price=e.price,
            expectation_proportion=e.proportion,
            expectation_growth=e.growth_at_price,
        )
    except DomainError as exc:
        record["expectation_price"] = None
        record["expectation_note"] = str(exc)
    _emit(record, args.format, out)


def cmd_curve(args, cfg, out, err):
    g = _load_game(args.game)
    pts = pricing_curve(g, args.grid, cfg)
    _emit_rows([(p.u, p.t_u, p.G) for p in pts], ("u", "t_u", "G"), args.format, out)


def cmd_simulate(args, cfg, out, err):
    g = _load_game(args.game)
    table = convergence_table(g, args.u, args.t, args.N_list, args.n_list, cfg)
    rows = [(r.N, r.n, r.mean, r.variance) for r in table.rows]
    if args.format == "json":
        out.write(json.dumps({"rows": _round([dict(zip(("N", "n", "mean", "variance"), r)) for r in rows]),
                              "G": _round(table.limit)}, indent=2) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("N", "n", "mean", "variance"))
    for N, n, m, v in rows:
        w.writerow((N, n, _fmt(m), _fmt(v)))
    # trailer: the (N, n) -> infinity limit, whose variance vanishes
    w.writerow(("inf", "inf", _fmt(table.limit), _fmt(0.0)))


def cmd_joint(args, cfg, out, err):
    ga, gb = _load_game(args.game), _load_game(args.game2)
    if (args.price is None) == (args.rate is None):
        raise UsageError("joint needs exactly one of --price or --rate")
    if args.price is not None:
        r = joint_optimize(ga, gb, args.price)
    else:
        r = joint_price(ga, gb, args.rate, args.compounding, args.horizon)
    record = {"price": r.price, "t": r.t, "s": r.s, "growth": r.growth,
              "active": ",".join(r.active), "kkt_residual": r.kkt_residual}
    _emit(record, args.format, out)


def cmd_bs_compare(args, cfg, out, err):
    spec = _load_spec(args.game)
    if not isinstance(spec, dict) or spec.get("kind") != "put":
        raise MalformedSpec("bs-compare needs a game spec of kind 'put'")
    mp = market_params_from_spec(spec)
    g = put_game(mp)
    gp = price(g, mp.r, "continuous", mp.T, cfg)
    bs = black_scholes_put(mp)
    at_bs = optimal_proportion(g, bs, cfg)
    record = {
        "target": gp.target,
        "growth_price": gp.price,
        "growth_proportion": gp.proportion,
        "growth_at_growth_price": gp.growth_at_price,
        "bs_price": bs,
        "bs_proportion": at_bs.t,
        "growth_at_bs_price": at_bs.growth,
    }
    _emit(record, args.format, out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--game", required=True, help="path to a UTF-8 JSON game spec")
    common.add_argument("--abs-tol", type=float, default=None)
    common.add_argument("--rel-tol", type=float, default=None)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")

    rate = _Parser(add_help=False)
    rate.add_argument("--compounding", choices=("simple", "continuous"), default="simple")
    rate.add_argument("--horizon", type=float, default=None, help="horizon T (continuous only)")

    p = _Parser(prog="growthpricer", description="Growth-optimal proportions and growth-rate pricing of games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("stats", parents=[common], help="print game statistics")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("proportion", parents=[common], help="optimal proportion at a price")
    s.add_argument("--price", type=float, required=True)
    s.set_defaults(func=cmd_proportion)

    s = sub.add_parser("price", parents=[common, rate], help="growth-rate price for a riskless rate")
    s.add_argument("--rate", type=float, required=True)
    s.set_defaults(func=cmd_price)

    s = sub.add_parser("curve", parents=[common], help="optimal growth over a price grid")
    s.add_argument("--grid", type=_grid, required=True, help="lo:hi:steps")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("simulate", parents=[common], help="mean and variance of the step-game growth rate")
    s.add_argument("--u", type=float, required=True)
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--N-list", dest="N_list", type=_int_list, required=True)
    s.add_argument("--n-list", dest="n_list", type=_int_list, required=True)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("joint", parents=[common, rate], help="two independent games at a common price")
    s.add_argument("--game2", required=True)
    s.add_argument("--price", type=float, default=None)
    s.add_argument("--rate", type=float, default=None)
    s.set_defaults(func=cmd_joint)

    s = sub.add_parser("bs-compare", parents=[common], help="growth price versus Black-Scholes for a put")
    s.set_defaults(func=cmd_bs_compare)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        buf = io.StringIO()
        args.func(args, cfg, buf, err)
        out.write(buf.getvalue())
        return EXIT_OK
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except MalformedSpec as exc:
        err.write(f"malformed game spec: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except NumericalError as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
