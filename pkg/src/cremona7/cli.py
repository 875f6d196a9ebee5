"""Command-line entry point: ``cremona7 {emit,verify,mult,eval}``.

Exit codes: 0 success, 1 a check failed (or the point is fundamental),
2 usage or parse error.  Negative rationals with a slash need the ``=``
form, e.g. ``--s=-1/2``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .family import (
    D,
    FamilyParams,
    FundamentalPoint,
    GeneralizedSpec,
    RationalMap,
    SpecInvariantViolated,
    UnsupportedMapShape,
    build_generalized,
    build_gst,
    common_factor_check,
    verify_discriminant_identity,
    verify_group_law,
    verify_inverse,
)
from .multiplicity import fano_refutation_report, mult_at_point
from .point import PointParseError, ProjectivePoint, ZeroPoint, parse_rational
from .poly import VARIABLES, ParseError, evaluate, format_poly, parse_poly
from .report import CheckReport

SUITES = ("all", "discriminant", "inverse", "group", "factor", "fano")
FORM_NAMES = tuple("f" + v[1:] for v in VARIABLES)


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except PointParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(text: str) -> FamilyParams:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected s,t got {text!r}")
    return FamilyParams(_rational(parts[0]), _rational(parts[1]))


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def read_spec_file(path: Path) -> GeneralizedSpec:
    """Parse ``m=``, ``phi=``, ``psi=``, ``U=``, ``alpha=``, ``beta=`` lines."""
    fields: dict = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in ("m", "phi", "psi", "U", "alpha", "beta"):
            raise UsageError(f"{path}:{lineno}: expected key=value with key in m, phi, psi, U, alpha, beta")
        try:
            if key == "m":
                fields["m"] = int(value)
            elif key in ("phi", "psi"):
                fields[f"{key}_coeffs"] = tuple(parse_rational(c) for c in value.split(","))
            else:
                fields[key] = parse_poly(value)
        except (ValueError, ParseError, PointParseError) as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    if "m" not in fields:
        raise UsageError(f"{path}: missing m=")
    return GeneralizedSpec(**fields)


def _target_map(args) -> RationalMap:
    if getattr(args, "spec", None):
        try:
            return build_generalized(read_spec_file(Path(args.spec)))
        except (OSError, SpecInvariantViolated) as exc:
            raise UsageError(str(exc)) from None
    return build_gst(FamilyParams(args.s, args.t))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cmd_emit(args, out) -> int:
    rmap = _target_map(args)
    if args.format == "json":
        out.write(_dump({"label": rmap.label, "degree": rmap.degree,
                         "forms": {n: format_poly(f) for n, f in zip(FORM_NAMES, rmap.forms)}}) + "\n")
    else:
        for name, f in zip(FORM_NAMES, rmap.forms):
            out.write(f"{name}= {format_poly(f)}\n")
    return 0


def _guarded(name: str, fn, *a) -> list:
    try:
        result = fn(*a)
    except UnsupportedMapShape as exc:
        return [CheckReport(name, "error", str(exc))]
    return result if isinstance(result, list) else [result]


def run_suite(suite: str, params: FamilyParams, a: FamilyParams, b: FamilyParams, seed: int,
              rmap: RationalMap | None = None) -> list:
    gst = build_gst(params)
    target = rmap or gst
    reports: list = []
    if suite in ("all", "discriminant"):
        reports += _guarded("discriminant", verify_discriminant_identity, target)
    if suite in ("all", "inverse"):
        reports += _guarded("inverse", verify_inverse, params)
    if suite in ("all", "group"):
        reports += _guarded("group", verify_group_law, a, b)
    if suite in ("all", "factor"):
        reports += _guarded("factor", common_factor_check, target)
    if suite in ("all", "fano"):
        reports += _guarded("fano", fano_refutation_report, gst, seed)
    return reports


def render_reports(reports: list, fmt: str, out) -> None:
    if fmt == "json":
        for r in reports:
            out.write(_dump(r.to_record()) + "\n")
        return
    for r in reports:
        out.write(f"{r.status.upper():5} {r.name}: {r.detail}\n")
    failed = sum(1 for r in reports if not r.passed)
    out.write(f"{len(reports)} checks, {len(reports) - failed} passed, {failed} not passed\n")


def cmd_verify(args, out) -> int:
    rmap = _target_map(args) if args.spec else None
    reports = run_suite(args.suite, FamilyParams(args.s, args.t), args.a, args.b, args.seed, rmap)
    render_reports(reports, args.format, out)
    return 0 if all(r.passed for r in reports) else 1


def _point(text: str) -> ProjectivePoint:
    try:
        return ProjectivePoint.parse(text)
    except (PointParseError, ZeroPoint) as exc:
        raise UsageError(str(exc)) from None


def cmd_mult(args, out) -> int:
    point = _point(args.point)
    rmap = _target_map(args)
    mults = [mult_at_point(f, point) if not f.is_zero() else None for f in rmap.forms]
    low = min(m for m in mults if m is not None)
    if args.format == "json":
        out.write(_dump({"point": str(point), "map": rmap.label,
                         "mult": dict(zip(FORM_NAMES, mults)), "min": low}) + "\n")
    else:
        out.write(f"point {point} map {rmap.label}\n")
        for name, m in zip(FORM_NAMES, mults):
            out.write(f"{name} {'zero form' if m is None else m}\n")
        out.write(f"min {low}\n")
    return 0


def cmd_eval(args, out, err) -> int:
    point = _point(args.point)
    rmap = _target_map(args)
    if evaluate(D, point.coords) == 0:
        err.write(f"warning: D vanishes at {point}; the image may be undefined\n")
    try:
        image = rmap.image(point)
    except FundamentalPoint as exc:
        err.write(f"error: {exc}\n")
        return 1
    if args.format == "json":
        out.write(_dump({"point": str(point), "map": rmap.label, "image": str(image)}) + "\n")
    else:
        out.write(f"{image}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=_rational, default=Fraction(1), help="parameter s (default 1)")
    common.add_argument("--t", type=_rational, default=Fraction(1), help="parameter t (default 1)")
    common.add_argument("--seed", type=_seed, default=0, help="seed for sampled loci (default 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--spec", help="generalized-family spec file (overrides --s/--t)")

    parser = argparse.ArgumentParser(prog="cremona7", description="Degree-7 Cremona maps of P^5, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("emit", parents=[common], help="print the six forms")
    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--a", type=_pair, default=FamilyParams(1, 0), help="first group-law pair s,t")
    verify.add_argument("--b", type=_pair, default=FamilyParams(0, 1), help="second group-law pair s,t")
    mult = sub.add_parser("mult", parents=[common], help="multiplicities of the forms at a point")
    mult.add_argument("--point", required=True)
    ev = sub.add_parser("eval", parents=[common], help="image of a point")
    ev.add_argument("--point", required=True)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "emit":
            return cmd_emit(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "mult":
            return cmd_mult(args, out)
        return cmd_eval(args, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
