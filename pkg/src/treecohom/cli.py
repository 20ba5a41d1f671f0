"""Command line: ``treecohom betti|verify|tableaux|dump``.

Exit codes: 0 success, 1 a check failed (or two methods disagreed), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import closedform as cf
from . import verify
from .complex import CohomologyMismatch, betti
from .diagram import DiagramError, anm_parameters, load_diagram, parse_builtin
from .liealg import ClosureError, lie_algebra

DEFAULT_CAP = 24


class UsageError(Exception):
    pass


def _diagram(args):
    if bool(args.file) == bool(args.builtin):
        raise UsageError("give exactly one of a diagram file or --builtin NAME")
    if args.builtin:
        return parse_builtin(args.builtin)
    try:
        return load_diagram(args.file)
    except FileNotFoundError:
        raise UsageError(f"{args.file}: no such file") from None


def _guard(L, args):
    if L.dim > args.cap and not args.force:
        raise UsageError(f"{L.flavor} has dimension {L.dim} > cap {args.cap}; use --force to run anyway")


def _source(p):
    p.add_argument("file", nargs="?", help="diagram file")
    p.add_argument("--builtin", metavar="NAME", help="path:N, a:N,M, multi:D, instar:N, outstar:M or figure1")
    p.add_argument("--force", action="store_true", help="ignore the dimension cap")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest algebra dimension to accept")


def cmd_betti(args) -> int:
    T = _diagram(args)
    L = lie_algebra(T, args.algebra)
    _guard(L, args)
    try:
        bt = betti(L, args.method)
    except CohomologyMismatch as exc:
        print(f"method disagreement: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(bt.to_json())
        return 0
    print(" ".join(map(str, bt.betti)))
    if args.per_weight:
        for (p, w), d in sorted(bt.per_weight.items()):
            print(f"p={p} weight={list(w)} dim={d}")
    return 0


def _anm(T, check, builtin=None):
    # a(n, m) and a(n + 1, m - 1) coincide when m == 1; an explicit a:N,M decides
    if builtin and builtin.partition(":")[0].lower() in ("a", "anm"):
        n, m = (int(x) for x in builtin.partition(":")[2].split(","))
        return n, m
    nm = anm_parameters(T)
    if nm is None:
        raise UsageError(f"check {check!r} needs an a(n, m) diagram")
    return nm


def cmd_verify(args) -> int:
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in names if c not in verify.CHECKS]
    if unknown or not names:
        raise UsageError(f"unknown check(s) {unknown}; choose from {','.join(verify.CHECKS)}")
    T = _diagram(args)
    L = lie_algebra(T, args.algebra)
    _guard(L, args)
    if "solvable" in names:
        _guard(lie_algebra(T, "L1"), args)
    L0 = lie_algebra(T, "L0")
    reports = []
    for name in names:
        if name == "euler":
            reports.append(verify.check_euler(L))
        elif name == "totalrank":
            reports.append(verify.check_total_rank(L0))
        elif name == "b2":
            if T.node_count < 2:
                raise UsageError("b2 needs a diagram with at least two nodes")
            reports.append(verify.check_b2(L0))
        elif name == "solvable":
            reports.append(verify.check_solvable(T, max_dim=10 ** 9 if args.force else args.cap))
        elif name == "vandermonde":
            reports.append(verify.check_vandermonde(_anm(T, name, args.builtin)[0], with_betti=True))
        elif name == "anm":
            reports.append(verify.check_anm_identity(*_anm(T, name, args.builtin)))
        elif name == "closedform":
            reports.append(verify.check_closedform(*_anm(T, name, args.builtin)))
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True))
    else:
        for r in reports:
            print(r)
    return 0 if all(reports) else 1


def cmd_tableaux(args) -> int:
    if args.m < 1 or args.n < 1 or args.degree < 0:
        raise UsageError("need --m >= 1, --n >= 1 and --degree >= 0")
    count, tabs = cf.enumerate_tableaux(args.m, args.n, args.degree)
    hook = cf.tableau_count_hook(args.m, args.n, args.degree)
    if args.json:
        doc = {"m": args.m, "n": args.n, "degree": args.degree, "enum": count, "hook": hook}
        if args.list:
            doc["tableaux"] = [t.to_dict() for t in tabs]
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"count={count} (enum) count={hook} (hook)")
        if args.list:
            for t in tabs:
                print(t.to_json())
    return 0 if count == hook else 1


def cmd_dump(args) -> int:
    T = _diagram(args)
    L = lie_algebra(T, args.algebra)
    if args.json:
        print(L.to_json())
    else:
        print(f"# {L.flavor}, dimension {L.dim}")
        for i, u in enumerate(L.basis):
            print(f"u{i} = {u}  weight {list(L.weights[i])}")
        print(L.render_table())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="treecohom", description="Exact cohomology of tree diagram Lie algebras")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("betti", help="Betti numbers of L0 or L1")
    _source(p)
    p.add_argument("--algebra", choices=["l0", "l1"], default="l0")
    p.add_argument("--method", choices=["laplacian", "rank", "both"], default="both")
    p.add_argument("--per-weight", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_betti)

    p = sub.add_parser("verify", help="run identity / inequality checks")
    _source(p)
    p.add_argument("--algebra", choices=["l0", "l1"], default="l0", help="algebra used by the euler check")
    p.add_argument("--checks", default="euler", help=f"comma separated subset of {','.join(verify.CHECKS)}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("tableaux", help="count fillings by enumeration and by hook-content")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print the fillings")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_tableaux)

    p = sub.add_parser("dump", help="basis and structure constants")
    _source(p)
    p.add_argument("--algebra", choices=["l0", "l1"], default="l0")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_dump)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiagramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClosureError as exc:
        print(f"closure violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
