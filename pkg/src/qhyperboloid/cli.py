"""Command-line interface: expression evaluation and the verification suites.

Exit codes: 0 on success / PASS, 1 on any FAIL, 2 on usage or parameter
errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .qrat import Params, ParamsError, QField, QRatError, parse_ratfunc
from .algebra import AlgebraElement
from .uqsl2 import spin_decompose, act_generator
from .tangent import (LEFT, RIGHT, SYMBOLS, TangentElement, TangentError,
                      extension_context, identify_left_right)
from .expr import (ALGEBRA, SCALAR, TANGENT_LEFT, TANGENT_RIGHT, ExprError,
                   evaluate_expression)
from .geometry import (GeometryError, connection_derive, connection_printed,
                       connection_table_comparison, metric_printed,
                       metric_solve, metric_table_comparison)
from .suites import SUITES, SuiteError, emit_report, run_suite

USAGE_ERROR, FAIL_ERROR = 2, 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c", default="1", help="orbit constant (nonzero)")
    common.add_argument("--tau", default="4", help="bracket normalization")
    common.add_argument("--hbar", default="0",
                        help="enveloping parameter (0 or kappa*tau/2)")
    common.add_argument("--q", default="symbolic",
                        help="'symbolic' or an exact rational such as 2 or 3/2")
    common.add_argument("--degree", type=int, default=4,
                        help="module-level exhaustive degree bound")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", default=None, help="write output to a file")

    parser = argparse.ArgumentParser(
        prog="qhyperboloid",
        description="Exact symbolic engine and verification suite for the "
                    "braided geometry of the quantum hyperboloid.",
        parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("nf", parents=[common],
                       help="normal form of an expression")
    p.add_argument("expr")
    p = sub.add_parser("act", parents=[common],
                       help="apply a Hopf generator or vector field")
    p.add_argument("generator", choices=("X", "Y", "H", "DU", "DV", "DW"))
    p.add_argument("expr")
    p = sub.add_parser("decompose", parents=[common], help="spin decomposition")
    p.add_argument("expr")
    p = sub.add_parser("pair", parents=[common],
                       help="metric pairing of left and right elements")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("connect", parents=[common],
                       help="covariant derivative nabla_a b")
    p.add_argument("left")
    p.add_argument("direction")
    p = sub.add_parser("verify", parents=[common],
                       help="run verification suites")
    p.add_argument("suites", nargs="*", default=["all"],
                   metavar="suite", help=f"any of: {', '.join(SUITES + ['all'])}")
    sub.add_parser("tables", parents=[common],
                   help="derived vs printed metric and connection")
    return parser


def _make_params(args) -> Params:
    if args.q == "symbolic":
        field = QField()
    else:
        field = QField(Fraction(args.q))
    def scalar(text):
        value = parse_ratfunc(text)
        return field.coerce(value)
    return Params(field, scalar(args.c), scalar(args.tau), scalar(args.hbar))


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _value_str(val) -> str:
    if val.kind == SCALAR:
        return str(val.data)
    return str(val.data)


def cmd_nf(args, params: Params) -> int:
    val = evaluate_expression(args.expr, params)
    _emit(args, _value_str(val))
    return 0


def cmd_act(args, params: Params) -> int:
    val = evaluate_expression(args.expr, params)
    if args.generator in ("X", "Y", "H"):
        if val.kind in (TANGENT_LEFT, TANGENT_RIGHT):
            _emit(args, str(val.data.act(args.generator)))
            return 0
        elem = val.as_algebra(params)
        _emit(args, str(act_generator(args.generator, elem)))
        return 0
    elem = val.as_algebra(params)
    ctx = extension_context(params.with_hbar_zero(),
                            max(1, elem.degree(), args.degree))
    _emit(args, str(ctx.apply(args.generator[1], elem)))
    return 0


def cmd_decompose(args, params: Params) -> int:
    val = evaluate_expression(args.expr, params)
    elem = val.as_algebra(params)
    comps = spin_decompose(elem)
    lines = [f"spin {k}: {comp}" for k, comp in sorted(comps.items())]
    _emit(args, "\n".join(lines) if lines else "0")
    return 0


def cmd_pair(args, params: Params) -> int:
    left = evaluate_expression(args.left, params).as_tangent(params, LEFT)
    right = evaluate_expression(args.right, params).as_tangent(params, RIGHT)
    table = metric_solve(params.with_hbar_zero())
    _emit(args, str(table.pair(left, right)))
    return 0


def cmd_connect(args, params: Params) -> int:
    left = evaluate_expression(args.left, params).as_tangent(params, LEFT)
    direction = evaluate_expression(args.direction, params).as_tangent(params, LEFT)
    table = connection_derive(params.with_hbar_zero())
    _emit(args, str(table.connect(left, direction)))
    return 0


def cmd_verify(args, params: Params) -> int:
    report = run_suite(args.suites or ["all"], params, degree=args.degree)
    _emit(args, emit_report(report, args.format))
    return 0 if report.status() == "PASS" else FAIL_ERROR


def cmd_tables(args, params: Params) -> int:
    p0 = params.with_hbar_zero()
    lines = []
    table = metric_solve(p0)
    printed = metric_printed(p0)
    lines.append("metric pairing <S, T'>: derived | printed | verdict")
    for (s, t), status, why in metric_table_comparison(p0, table):
        lines.append(f"  <{s},{t}'>: {table.entry(s, t)}")
        lines.append(f"      printed: {printed[(s, t)]}  [{status}]"
                     + (f"  {why}" if why else ""))
    conn = connection_derive(p0)
    printed_c = connection_printed(p0)
    lines.append("connection nabla_S T: derived | printed | verdict")
    for (s, t), status, why in connection_table_comparison(p0, conn):
        lines.append(f"  nabla_{s} {t}: {conn.entry(s, t)}")
        lines.append(f"      printed: {printed_c[(s, t)]}  [{status}]"
                     + (f"  {why}" if why else ""))
    _emit(args, "\n".join(lines))
    return 0


_COMMANDS = {
    "nf": cmd_nf,
    "act": cmd_act,
    "decompose": cmd_decompose,
    "pair": cmd_pair,
    "connect": cmd_connect,
    "verify": cmd_verify,
    "tables": cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = _make_params(args)
    except (ParamsError, QRatError, ValueError, ZeroDivisionError) as e:
        print(f"parameter error: {e}", file=sys.stderr)
        return USAGE_ERROR
    try:
        return _COMMANDS[args.command](args, params)
    except (ExprError, SuiteError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except (ParamsError, QRatError, TangentError, GeometryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
