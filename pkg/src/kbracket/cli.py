"""Command-line front end.

Subcommands: bracket, expand, star, poly, phi, gen, verify.  Exit codes:
0 on success, 1 when a verified identity differs, 2 on malformed input.

The deformation-polynomial table is persisted as JSON at the path given by
``--poly-table`` or the environment variable ``KBRACKET_POLY_TABLE``
(default ``deformation_polys.json`` in the working directory); it is
loaded if present and rewritten atomically when extended.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .diagram import load_diagram, save_diagram, from_braid, kink_chain, superpose, torus_multicurve
from .errors import KBracketError
from .exactalg import frac_str, phi_coeff
from .statesum import PolyTable, bracket, bracket_order, expansion
from .starprod import star
from .surface import normalize_torus_class, annulus_class
from . import verify as verify_mod

DEFAULT_TABLE = "deformation_polys.json"


def _table_path(args) -> str:
    return args.poly_table or os.environ.get("KBRACKET_POLY_TABLE", DEFAULT_TABLE)


def _load_table(path: str) -> PolyTable:
    if os.path.exists(path):
        return PolyTable.load(path)
    return PolyTable()


def cmd_bracket(args) -> int:
    d = load_diagram(args.file)
    print(bracket(d).render())
    return 0


def cmd_expand(args) -> int:
    d = load_diagram(args.file)
    path = _table_path(args)
    table = _load_table(path)
    table.ensure(args.order)
    table.save(path)
    oracle = bracket_order(d, args.order)
    formula = expansion(d, args.order, table)
    print(f"series   h^{args.order}: {oracle.render(frac_str)}")
    print(f"operator h^{args.order}: {formula.render(frac_str)}")
    verdict = "EQUAL" if oracle == formula else "DIFFER"
    print(verdict)
    return 0 if verdict == "EQUAL" else 1


def _parse_class(surface: str, text: str):
    if surface == "torus":
        a, b = (int(x) for x in text.split(","))
        return normalize_torus_class(a, b)
    if surface == "annulus":
        return annulus_class(int(text))
    raise KBracketError(f"unsupported star surface {surface!r}")


def cmd_star(args) -> int:
    alpha = _parse_class(args.surface, args.alpha)
    beta = _parse_class(args.surface, args.beta)
    series = star(alpha, beta, args.order)
    for k in range(args.order + 1):
        print(f"lambda_{k}: {series.coefficient(k).render(frac_str)}")
    return 0


def cmd_poly(args) -> int:
    path = _table_path(args)
    table = _load_table(path)
    table.ensure(args.k)
    table.save(path)
    print(f"P_{args.k} = {table.poly(args.k)}")
    return 0


def cmd_phi(args) -> int:
    print(frac_str(phi_coeff(args.j, args.i)))
    return 0


def cmd_gen(args) -> int:
    if args.kind == "braid":
        word = [int(x) for x in args.word.split(",")] if args.word else []
        d = from_braid(args.strands, word)
    elif args.kind == "kink":
        d = kink_chain(args.count)
    else:  # torus
        specs = []
        for part in args.curves.split(";"):
            n, p, q = (int(x) for x in part.split(","))
            specs.append(torus_multicurve(n, p, q))
        d = specs[-1]
        for upper in reversed(specs[:-1]):
            d = superpose(upper, d, args.mode)
    save_diagram(d, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_verify(args) -> int:
    names = args.suites or list(verify_mod.SUITES)
    for name in names:
        if name not in verify_mod.SUITES:
            print(f"unknown suite {name!r}; known: {', '.join(verify_mod.SUITES)}",
                  file=sys.stderr)
            return 2
    any_fail = False
    for name in names:
        report = verify_mod.SUITES[name](quick=args.quick)
        for check, ok, detail in report:
            status = "PASS" if ok else "FAIL"
            print(f"{status} {name}/{check}: {detail}")
            if not ok:
                any_fail = True
    print("FAILED" if any_fail else "OK")
    return 1 if any_fail else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kbracket",
        description="Exact Kauffman bracket state sums and their deformation expansion.",
    )
    ap.add_argument("--poly-table", default=None,
                    help="path of the persisted deformation-polynomial table")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="print the bracket of a diagram file")
    p.add_argument("file")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("expand", help="order-k coefficient by both routes")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("star", help="product coefficients of two curve classes")
    p.add_argument("--surface", choices=("torus", "annulus"), default="torus")
    p.add_argument("--alpha", required=True, help="torus: p,q  annulus: n")
    p.add_argument("--beta", required=True)
    p.add_argument("--order", type=int, default=2)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("poly", help="print/extend the deformation polynomial table")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("phi", help="loop-weight coefficient phi_j(i)")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("gen", help="emit a diagram file")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("braid")
    g.add_argument("--strands", type=int, required=True)
    g.add_argument("--word", default="", help="comma-separated generator indices")
    g.add_argument("--out", "-o", required=True)
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("torus")
    g.add_argument("--curves", required=True,
                   help="semicolon-separated n,p,q multicurves, topmost first")
    g.add_argument("--mode", choices=("strong", "weak"), default="strong")
    g.add_argument("--out", "-o", required=True)
    g.set_defaults(func=cmd_gen)
    g = gsub.add_parser("kink")
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--out", "-o", required=True)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*",
                   help=f"any of: {', '.join(verify_mod.SUITES)} (default: all)")
    p.add_argument("--quick", action="store_true",
                   help="reduced corpora for a fast smoke run")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except KBracketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
