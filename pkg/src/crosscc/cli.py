"""Command-line front end.

Subcommands operate on ideal files (header line ``ring <names...>``, one
polynomial per line) or inline polynomial strings and print either
polynomial output or JSON certificates.  Exit codes: 0 certified/ok,
2 falsified, 3 resource limits hit, 64 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import pipeline
from .certify import CERTIFIED, FALSIFIED, INCONCLUSIVE
from .dimension import ideal_dimension
from .groebner import (
    GBOptions,
    InconclusiveError,
    buchberger,
    elimination_ideal,
    read_ideal_file,
)
from .mpoly import VarTable, parse_poly
from .orders import parse_order
from .rationals import rat
from .univar import count_roots, isolate_root, resultant_wrt, upoly_from_mpoly

EXIT_OK = 0
EXIT_FALSIFIED = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 64


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _env_default(name: str, fallback=None, cast=str):
    raw = os.environ.get(f"CROSSCC_{name}")
    if raw is None:
        return fallback
    return cast(raw)


def _gb_options(args) -> GBOptions:
    return GBOptions(max_seconds=args.max_seconds)


def _apply_memory_limit(args):
    if args.max_memory is None:
        return
    import resource

    limit = int(args.max_memory * 2**20)
    resource.setrlimit(resource.RLIMIT_AS, (limit, limit))


def _load_ideal(path: str):
    try:
        return read_ideal_file(path)
    except (OSError, ValueError) as e:
        raise CliError(f"cannot read ideal file {path}: {e}", EXIT_USAGE)


def _parse_univariate(text: str, var: str):
    try:
        ring = VarTable([var])
        return upoly_from_mpoly(parse_poly(text, ring), var)
    except ValueError as e:
        raise CliError(f"bad polynomial: {e}", EXIT_USAGE)


def _emit(args, payload: dict, text_lines: Optional[List[str]] = None):
    if args.json_path == "-":
        print(json.dumps(payload, indent=2))
    elif args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    if text_lines is not None and args.json_path != "-":
        for line in text_lines:
            print(line)


def cmd_gb(args) -> int:
    ring, polys = _load_ideal(args.ideal)
    try:
        order = parse_order(args.order, len(ring))
    except ValueError as e:
        raise CliError(str(e), EXIT_USAGE)
    try:
        gb = buchberger(polys, order, _gb_options(args))
    except InconclusiveError as e:
        raise CliError(f"inconclusive: {e}", EXIT_RESOURCE)
    lines = [p.to_string(order) for p in gb.polys]
    _emit(args, {"ring": list(ring.names), "order": args.order,
                 "basis": lines, "stats": gb.stats.as_dict()}, lines)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    ring, polys = _load_ideal(args.ideal)
    if not 0 <= args.keep < len(ring):
        raise CliError("--keep must be in [0, nvars)", EXIT_USAGE)
    try:
        out = elimination_ideal(polys, args.keep, args.hint, _gb_options(args))
    except InconclusiveError as e:
        raise CliError(f"inconclusive: {e}", EXIT_RESOURCE)
    lines = [p.to_string() for p in out]
    _emit(args, {"ring": list(ring.names), "keep_last": args.keep,
                 "generators": lines}, lines)
    return EXIT_OK


def cmd_sturm(args) -> int:
    p = _parse_univariate(args.poly, args.var)
    try:
        n = count_roots(p, rat(args.a), rat(args.b))
    except ValueError as e:
        raise CliError(str(e), EXIT_USAGE)
    _emit(args, {"roots": n, "interval": [args.a, args.b]}, [str(n)])
    return EXIT_OK


def cmd_isolate(args) -> int:
    p = _parse_univariate(args.poly, args.var)
    try:
        iv = isolate_root(p, rat(args.a), rat(args.b), rat(args.eps))
    except ValueError as e:
        raise CliError(str(e), EXIT_USAGE)
    line = iv.decimal_str(18)
    _emit(args, {"lo": str(iv.lo), "hi": str(iv.hi), "decimal": line}, [line])
    return EXIT_OK


def cmd_resultant(args) -> int:
    ring, polys = _load_ideal(args.ideal)
    if len(polys) != 2:
        raise CliError("resultant needs an ideal file with exactly two polynomials",
                       EXIT_USAGE)
    if args.var not in ring.names:
        raise CliError(f"unknown variable {args.var!r}", EXIT_USAGE)
    try:
        res = resultant_wrt(polys[0], polys[1], args.var)
    except ValueError as e:
        raise CliError(str(e), EXIT_USAGE)
    line = res.to_string()
    _emit(args, {"resultant": line}, [line])
    return EXIT_OK


def cmd_dim(args) -> int:
    ring, polys = _load_ideal(args.ideal)
    if not polys:
        _emit(args, {"dimension": len(ring)}, [str(len(ring))])
        return EXIT_OK
    try:
        dim, gb = ideal_dimension(polys, opts=_gb_options(args))
    except InconclusiveError as e:
        raise CliError(f"inconclusive: {e}", EXIT_RESOURCE)
    _emit(args, {"dimension": dim, "stats": gb.stats.as_dict()}, [str(dim)])
    return EXIT_OK


_STATUS_EXIT = {CERTIFIED: EXIT_OK, FALSIFIED: EXIT_FALSIFIED,
                INCONCLUSIVE: EXIT_RESOURCE}


def cmd_repro(args) -> int:
    if args.claim == "all":
        report = pipeline.repro_all(jobs=args.jobs, max_seconds=args.max_seconds)
        payload = report.as_dict()
        status = report.status
    else:
        try:
            cert = pipeline.repro_claim(args.claim, jobs=args.jobs,
                                        max_seconds=args.max_seconds)
        except ValueError as e:
            raise CliError(str(e), EXIT_USAGE)
        payload = cert.as_dict()
        status = cert.status
    lines = [f"{c['claim']}: {c['status']}" for c in
             payload.get("certificates", [payload] if "claim" in payload else [])]
    lines.append(f"overall: {status}")
    _emit(args, payload, lines)
    return _STATUS_EXIT[status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crosscc",
        description="exact certificates for cross central configurations",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default=_env_default("ORDER", "degrevlex"),
                        help="monomial order: lex, degrevlex, or block:k")
    common.add_argument("--eps", default=_env_default("EPS", "1/10000000000"),
                        help="target interval width for isolation")
    common.add_argument("--max-seconds", type=float,
                        default=_env_default("MAX_SECONDS", 900.0, float),
                        help="wall-clock budget per basis computation")
    common.add_argument("--max-memory", type=float,
                        default=_env_default("MAX_MEMORY", None, float),
                        help="address-space cap in MiB")
    common.add_argument("--jobs", type=int,
                        default=_env_default("JOBS", 4, int),
                        help="parallel workers for independent runs")
    common.add_argument("--json", dest="json_path", default=None,
                        metavar="PATH", help="write JSON output (- for stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    def sub_add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = sub_add("gb", help="reduced Groebner basis of an ideal file")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_gb)

    p = sub_add("eliminate", help="elimination ideal of an ideal file")
    p.add_argument("ideal")
    p.add_argument("--keep", type=int, required=True,
                   help="number of trailing variables to keep")
    p.add_argument("--hint", choices=["block", "lex"], default="block")
    p.set_defaults(func=cmd_eliminate)

    p = sub_add("sturm", help="count real roots in a half-open interval")
    p.add_argument("poly")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--var", default="x")
    p.set_defaults(func=cmd_sturm)

    p = sub_add("isolate", help="shrink an isolating interval")
    p.add_argument("poly")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--var", default="x")
    p.set_defaults(func=cmd_isolate)

    p = sub_add("resultant", help="resultant of a two-polynomial ideal file")
    p.add_argument("ideal")
    p.add_argument("var")
    p.set_defaults(func=cmd_resultant)

    p = sub_add("dim", help="dimension of the zero set of an ideal file")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_dim)

    p = sub_add("repro", help="re-establish a claim end to end")
    p.add_argument("claim", choices=list(pipeline.CLAIMS) + ["all"])
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        _apply_memory_limit(args)
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
