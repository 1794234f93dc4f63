"""Command-line interface: ``ess <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import data_io
from .conditional import verify_chain_identity
from .continuous import (
    ess_continuous_closed_form,
    ess_continuous_quadrature,
    make_density,
)
from .core import AlphaParam, ess_profile, renyi_entropy, shannon_entropy
from .data_io import InputKind, format_number
from .errors import EssError, ParseError


def _params(text: str) -> dict[str, float]:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise ParseError(f"not a number: {value!r}") from None
    return out


def _load_pmf(args):
    if args.counts is not None:
        return data_io.load_record(args.counts, InputKind.COUNTS).parse()
    return data_io.load_record(args.pmf, InputKind.PMF).parse(normalize=args.normalize)


def _emit_profile(args, alphas):
    p = _load_pmf(args)
    profile = ess_profile(p, alphas)
    if args.json:
        print(json.dumps(data_io.profile_to_json(p, profile)))
    else:
        print(data_io.render_profile(p, profile))


def cmd_compute(args):
    _emit_profile(args, data_io.parse_alpha_list(args.alpha))


def cmd_profile(args):
    _emit_profile(args, data_io.parse_alpha_list(args.alphas))


def cmd_table1(args):
    print(data_io.render_table1())


def cmd_joint(args):
    joint = data_io.load_record("@" + args.file, InputKind.JOINT).parse(normalize=args.normalize)
    report = verify_chain_identity(joint, AlphaParam.coerce(args.alpha))
    if args.json:
        print(json.dumps(report.as_dict()))
        return
    print(f"alpha          {report.alpha.label}")
    print(f"lhs            {format_number(report.lhs)}")
    print(f"rhs_geometric  {format_number(report.rhs_geometric)}")
    print(f"abs_gap        {report.abs_gap:.3e}")


def cmd_dist(args):
    if args.grid is not None:
        density = data_io.load_record("@" + args.grid, InputKind.GRID_DENSITY).parse()
        quadrature = True
    else:
        if args.family is None:
            raise ParseError("either --family or --grid is required")
        density = make_density(args.family, **_params(args.params))
        quadrature = args.quadrature
    rows = []
    for a in data_io.parse_alpha_list(args.alpha):
        if quadrature:
            value = ess_continuous_quadrature(density, a, tol=args.tol)
        else:
            value = ess_continuous_closed_form(density, a)
        rows.append((a, value))
    if args.json:
        print(json.dumps({
            "density": repr(density),
            "method": "quadrature" if quadrature else "closed_form",
            "alphas": [data_io._alpha_json(a) for a, _ in rows],
            "ess": [v for _, v in rows],
        }))
        return
    print(f"density: {density!r}")
    print(f"{'alpha':>10}  {'ess':>12}")
    for a, v in rows:
        print(f"{a.label:>10}  {format_number(v):>12}")


def cmd_entropy(args):
    p = _load_pmf(args)
    if args.alpha is None:
        value = shannon_entropy(p)
    else:
        value = renyi_entropy(p, AlphaParam.coerce(args.alpha))
    print(format_number(value))


def _add_pmf_args(sp):
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--pmf", help="probabilities, inline (e.g. 0.5,0.5) or @file")
    src.add_argument("--counts", help="observed counts, inline or @file (plug-in pmf)")
    sp.add_argument("--normalize", action="store_true", help="divide --pmf values by their sum")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ess", description="Effective support size of probability distributions."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="Ess of a pmf at one or more orders")
    _add_pmf_args(sp)
    sp.add_argument("--alpha", required=True, help="comma-separated orders; 1 and inf allowed")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("profile", help="Ess profile over a list of orders")
    _add_pmf_args(sp)
    sp.add_argument("--alphas", required=True, help="comma-separated orders or 'table1'")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("table1", help="Ess of two-outcome pmfs over the standard orders")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("joint", help="mean conditional Ess vs weighted geometric mean")
    sp.add_argument("--file", required=True, help="CSV of joint probabilities")
    sp.add_argument("--alpha", default="1")
    sp.add_argument("--normalize", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_joint)

    sp = sub.add_parser("dist", help="Ess of a continuous density")
    sp.add_argument("--family", choices=["gaussian", "exponential", "uniform"])
    sp.add_argument("--grid", help="two-column CSV (x, f(x)) of a tabulated density")
    sp.add_argument("--params", default="", help="e.g. mu=0,sigma2=1 or beta=2 or lo=0,hi=2")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--quadrature", action="store_true", help="integrate numerically")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("entropy", help="Shannon (default) or Renyi entropy in nats")
    _add_pmf_args(sp)
    sp.add_argument("--alpha", help="Renyi order; omit for Shannon")
    sp.set_defaults(func=cmd_entropy)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (EssError, OSError) as exc:
        print(f"ess: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
