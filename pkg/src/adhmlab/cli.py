"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input (an error
JSON object is written to standard error).
"""

from __future__ import annotations

import argparse
import json
import sys

from .adhm_core import InadmissibleDatum, datum_from_json, datum_to_json, require_admissible
from .exact_linalg import NoLimit
from .fixed_points import adhm_representative, enumerate_fixed_points, label_to_json
from .flow_limits import float_continuation, limit_minus, limit_plus
from .parallel import ENV_VAR, default_workers
from .report import cell_csv, cell_report, emit_report
from .tangent_bb import Cocharacter, NotRegular, cell_table, is_regular, select_regular_cocharacter
from .toric_surface import ToricFan, UnboundedEnumeration, enumerate_fixed_framed, parse_divisor
from .verify import Scope, run_all


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adhmlab", description="Fixed points, cells and flows on moduli of framed torsion-free sheaves on the plane.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    common.add_argument("--threads", type=_pos, default=None, help=f"worker processes (default: ${ENV_VAR} or all cores)")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fp = sub.add_parser("fixed-points", parents=[common], help="enumerate torus-fixed points")
    fp.add_argument("--r", type=_pos, required=True)
    fp.add_argument("--n", type=_nonneg, required=True)

    for name, hlp in (("cells", "tangent weights and cell dimensions"), ("betti", "Poincare polynomials of M(r,n) and the central fibre")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.add_argument("--r", type=_pos, required=True)
        c.add_argument("--n", type=_nonneg, required=True)
        c.add_argument("--lambda", dest="lam", help="a1,a2,b_1,...,b_r (default: smallest regular)")
        if name == "cells":
            c.add_argument("--csv", help="CSV mirror of the cell table")

    lim = sub.add_parser("limit", parents=[common], help="limit of lam(t).x as t->0 (plus) or t->infinity (minus)")
    lim.add_argument("--input", required=True, help="ADHM datum JSON")
    lim.add_argument("--direction", choices=("plus", "minus"), default="plus")
    lim.add_argument("--lambda", dest="lam")
    lim.add_argument("--float-check", action="store_true", help="also run the floating-point continuation oracle")

    eu = sub.add_parser("euler", parents=[common], help="Euler characteristic of framed sheaves on a toric surface")
    eu.add_argument("--fan", required=True, help="fan JSON {rays, framing_ray}")
    eu.add_argument("--r", type=_pos, required=True)
    eu.add_argument("--c1", default="0", help="coefficients per ray, or 0")
    eu.add_argument("--c2", type=int, required=True)
    eu.add_argument("--list", action="store_true", help="include the fixed data")

    ve = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    ve.add_argument("--r", type=_pos, default=3, help="largest rank to test")
    ve.add_argument("--n", type=_nonneg, default=6, help="largest n to test")
    ve.add_argument("--samples", type=_pos, default=100, help="flow samples per (r, n)")
    return p


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path} is not valid JSON: {e}") from e


def _lambda(args, r: int, n: int) -> Cocharacter:
    if not args.lam:
        return select_regular_cocharacter(r, n)
    lam = Cocharacter.parse(args.lam)
    if lam.r != r:
        raise InvalidInput(f"lambda has {lam.r} framing weights, expected {r}")
    if not is_regular(lam, r, n):
        raise NotRegular(f"lambda {lam} has a zero tangent weight for r={r}, n={n}")
    return lam


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        workers = args.threads or default_workers()
        return _dispatch(args, workers)
    except (InvalidInput, InadmissibleDatum, NotRegular, UnboundedEnumeration, ValueError) as e:
        sys.stderr.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return 2


def _dispatch(args, workers: int) -> int:
    cmd = args.command
    if cmd == "fixed-points":
        pts = enumerate_fixed_points(args.r, args.n)
        emit_report(
            {
                "r": args.r,
                "n": args.n,
                "count": len(pts),
                "fixed_points": [{"partition_tuple": label_to_json(pt), "representative": datum_to_json(adhm_representative(pt))} for pt in pts],
            },
            args.output,
        )
        return 0
    if cmd in ("cells", "betti"):
        lam = _lambda(args, args.r, args.n)
        table = cell_table(args.r, args.n, lam, workers)
        rep = cell_report(table)
        if cmd == "betti":
            rep = {k: rep[k] for k in ("r", "n", "lambda", "poincare_M", "poincare_P", "equal")}
            emit_report(rep, args.output)
        else:
            emit_report(rep, args.output, cell_csv(table), args.csv)
        return 0
    if cmd == "limit":
        x = datum_from_json(_load_json(args.input))
        require_admissible(x)
        lam = _lambda(args, x.r, x.n)
        res = limit_plus(x, lam) if args.direction == "plus" else limit_minus(x, lam)
        if isinstance(res, NoLimit):
            out = {
                "input_datum": datum_to_json(x),
                "direction": args.direction,
                "limit": None,
                "label": None,
                "grading": None,
                "pole_positions": [[name, list(pos)] for name, pos in res.poles],
            }
        else:
            out = res.to_json(x)
        out["lambda"] = list(lam.as_tuple())
        if args.direction == "minus":
            # the central-fibre test that cross-checks the minus limit uses
            # trace words up to this length; the bound is a chosen convention
            out["central_fiber_word_bound"] = max(1, x.n * x.n)
        if args.float_check:
            approx, steps = float_continuation(x, lam, args.direction)
            out["float_check"] = {"converged": approx is not None, "halvings": steps}
        emit_report(out, args.output)
        return 0
    if cmd == "euler":
        fan = ToricFan.from_json(_load_json(args.fan))
        c1 = parse_divisor(args.c1, fan)
        data = enumerate_fixed_framed(fan, args.r, c1, args.c2)
        out = {"fan": fan.to_json(), "r": args.r, "c1": c1.to_json(), "c2": args.c2, "euler_characteristic": len(data)}
        if args.list:
            out["data"] = [d.to_json() for d in data]
        emit_report(out, args.output)
        return 0
    if cmd == "verify":
        scope = Scope(r_max=args.r, n_max=args.n, seed=args.seed, workers=workers, flow_samples=args.samples)
        results = run_all(scope)
        for c in results:
            print(c.line(), flush=True)
        if args.output:
            emit_report({"passed": all(c.passed for c in results), "criteria": [c.to_json() for c in results]}, args.output)
        return 0 if all(c.passed for c in results) else 1
    raise InvalidInput(f"unknown command {cmd}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
