"""Command line: ``laws``, ``verify``, ``explore`` and ``counterexample``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .errors import QRobustError
from .hsmonad import b_s, d_s, run_counterexample, star_closure
from .qmetric import QMetricSpace
from .quantale import EXHAUSTIVE, Quantale, Sampled, build_quantale, check_interpolation, check_quantale_laws, check_way_below
from .quantale.build import BUILTINS
from .report import VerificationReport, emit_report, jsonable
from .suites import SUITES, SuiteConfig, run_suite
from .topology import b_r, ball, closure, flatten

EXPLORE = ("ball", "closure", "b_r", "flatten", "dS", "starclosure", "bS")


class SpecError(QRobustError, ValueError):
    pass


def load_spec(path: str | Path) -> Quantale | QMetricSpace:
    """Load a quantale descriptor or a space file; table quantales are law-checked."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and "points" in data:
        return QMetricSpace.from_json(data, name=path.stem)
    return build_quantale(data)


def _quantale_arg(value: str) -> Quantale:
    if value in BUILTINS:
        return build_quantale(value)
    obj = load_spec(value)
    if not isinstance(obj, Quantale):
        raise SpecError(f"{value} describes a space, not a quantale")
    return obj


def _space_arg(value: str) -> QMetricSpace:
    obj = load_spec(value)
    if not isinstance(obj, QMetricSpace):
        raise SpecError(f"{value} describes a quantale, not a space")
    return obj


def _write(report: VerificationReport, args) -> int:
    data = emit_report(report, args.format, getattr(args, "timings", False))
    if args.report:
        Path(args.report).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        if args.format == "json":
            sys.stdout.buffer.write(b"\n")
    return 0 if report.ok else 1


def cmd_laws(args) -> int:
    Q = _quantale_arg(args.quantale)
    if Q.is_finite:
        mode = imode = EXHAUSTIVE
    else:
        mode, imode = Sampled(args.seed, args.samples), Sampled(args.seed, min(args.samples, 1000))
    rep = VerificationReport()
    rep.extend(check_quantale_laws(Q, mode))
    rep.extend(check_way_below(Q, mode))
    rep.extend(check_interpolation(Q, imode))
    return _write(rep, args)


def cmd_verify(args) -> int:
    spaces = tuple(_space_arg(p) for p in args.space or ())
    quantales = tuple((q, _quantale_arg(q)) for q in args.quantale or ())
    cfg = SuiteConfig(suite=args.suite, seed=args.seed, samples=args.samples,
                      max_carrier=args.max_carrier, spaces=spaces, quantales=quantales)
    return _write(run_suite(cfg), args)


def cmd_counterexample(args) -> int:
    return _write(run_counterexample(), args)


def _subset(X: QMetricSpace, literal: str | None) -> frozenset:
    if literal is None:
        return frozenset()
    items = json.loads(literal)
    if not isinstance(items, list):
        raise SpecError("subsets are JSON arrays of point ids")
    return X.subset(tuple(p) if isinstance(p, list) else p for p in items)


def _point(X: QMetricSpace, literal: str | None):
    if literal is None:
        raise SpecError("this exploration needs --point")
    if literal in X:
        return literal
    try:
        value = json.loads(literal)
    except json.JSONDecodeError:
        value = literal
    value = tuple(value) if isinstance(value, list) else value
    X.index(value)
    return value


def _radius(X: QMetricSpace, literal: str | None):
    if literal is None:
        raise SpecError("this exploration needs --delta")
    try:
        value = json.loads(literal)
    except json.JSONDecodeError:
        value = literal
    return X.quantale.parse(value)


def explore(X: QMetricSpace, what: str, point=None, subset=None, subset2=None, delta=None, dual=False) -> Any:
    if what == "ball":
        return ball(X, point, delta, dual)
    if what == "closure":
        return closure(X, subset, dual)
    if what == "b_r":
        return b_r(X, subset, delta)
    if what == "flatten":
        return flatten(X, subset, delta)
    if what == "dS":
        return X.quantale.format(d_s(X, subset, subset2))
    if what == "starclosure":
        return star_closure(X, subset)
    if what == "bS":
        return b_s(X, subset, delta)
    raise ValueError(f"unknown exploration {what!r}")


def cmd_explore(args) -> int:
    X = _space_arg(args.space)
    point = _point(X, args.point) if args.what == "ball" else None
    delta = _radius(X, args.delta) if args.what in ("ball", "b_r", "flatten", "bS") else None
    result = explore(X, args.what, point, _subset(X, args.subset), _subset(X, args.subset2), delta, args.dual)
    out = {"space": X.name, "op": args.what, "result": jsonable(result)}
    sys.stdout.write(json.dumps(out, ensure_ascii=False) + "\n")
    return 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--report", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--timings", action="store_true", help="include per-entry durations (not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrobust", description="Quantale-valued metric spaces and robust topologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("laws", help="check the quantale laws, way-below and interpolation")
    p.add_argument("--quantale", required=True, metavar="NAME|PATH")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    _common(p)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    p.add_argument("--space", action="append", metavar="PATH", help="space file (repeatable); default: built-in corpus")
    p.add_argument("--quantale", action="append", metavar="NAME|PATH", help="quantale for the laws suite (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--max-carrier", type=int, default=5, dest="max_carrier")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="evaluate one construction on a space")
    p.add_argument("what", choices=EXPLORE)
    p.add_argument("--space", required=True, metavar="PATH")
    p.add_argument("--point")
    p.add_argument("--subset", help="JSON array of point ids")
    p.add_argument("--subset2", help="second subset (for dS)")
    p.add_argument("--delta", help='radius literal, e.g. "1/2" or \'["1","1"]\'')
    p.add_argument("--dual", action="store_true")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("counterexample", help="reproduce the R+ x R+ robust vs *-robust instance")
    _common(p)
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QRobustError, ValueError) as exc:
        print(f"qrobust: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
