"""Command-line front end.

Exit status: 0 success, 1 a verification check failed, 2 usage error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .branching import BranchPreconditionError, policy_from_name, rational_json, run_branching
from .constructions import build_family
from .core import Family, GroundParams, read_family
from .ineqgrid import CHECKS, csv_rows, parse_grid, run_check
from .search import Budget, Mode, SearchProblem, solve
from .structure import (
    NoTransversalError,
    check_exact_facts,
    classify_exact_pair,
    compute_basis,
    is_cross_t_intersecting,
    is_nontrivial,
    is_t_intersecting,
    saturate,
    tau_t,
)
from .verify import SCALES, verify_all

OK, CHECK_FAILED, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rational_json(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _config(args: argparse.Namespace) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}


def _report(args, body: dict) -> dict:
    return {"tool": {"name": "crossfam", "version": __version__}, "config": _config(args), **body}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj: dict, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n", out)


def _load(path: str) -> Family:
    try:
        return read_family(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


# --- subcommands ----------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.family in ("A", "H") and args.t is None:
        raise UsageError(f"--t is required for family {args.family}")
    center = None
    if args.family == "star":
        if not args.center:
            raise UsageError("--center is required for family star")
        center = [int(x) for x in args.center.replace(",", " ").split()]
    try:
        fam = build_family(args.family, args.n, args.k, args.t, center)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    header = f"# crossfam {__version__} construct family={args.family} n={args.n} k={args.k} t={args.t}"
    if center:
        header += " center=" + ",".join(map(str, center))
    _emit(header + "\n" + fam.to_text(), args.out)
    return OK


def cmd_analyze(args) -> int:
    F = _load(args.input)
    G = _load(args.input2) if args.input2 else None
    t = args.t
    status = OK
    body: dict = {}
    if args.predicates:
        body["predicates"] = {
            "size": len(F),
            "t_intersecting": is_t_intersecting(F, t),
            "nontrivial": is_nontrivial(F, t) if len(F) else None,
        }
        if G is not None:
            body["predicates"]["cross_t_intersecting"] = is_cross_t_intersecting(F, G, t)
    elif args.tau:
        try:
            body["tau"] = tau_t(F, t, args.k)
        except NoTransversalError as exc:
            body["tau"] = None
            body["error"] = str(exc)
            status = CHECK_FAILED
    elif args.basis:
        k = args.k or F.k
        if k is None:
            raise UsageError("--k is required for a mixed family")
        basis = compute_basis(F, t, k)
        body["basis"] = {"family": basis.family.to_text(), "layers": {str(l): c for l, c in basis.layers.items()},
                         "s": basis.s if len(basis) else None}
    elif args.saturate:
        if G is None:
            raise UsageError("--saturate needs --in2")
        try:
            P = saturate(F, G, t)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        body["saturated"] = {
            "F": P.F.to_text(), "G": P.G.to_text(),
            "basis_F": P.basis_F.family.to_text(), "basis_G": P.basis_G.family.to_text(),
            "nontrivial": P.is_nontrivial(), "fixpoint": P.is_fixpoint(),
        }
    elif args.classify:
        if G is None or args.k is None:
            raise UsageError("--classify needs --in2 and --k")
        try:
            clauses = classify_exact_pair(F, G, t, args.k)
            facts = check_exact_facts(F, G, t)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        body["classify"] = {
            "clauses": sorted(c.value for c in clauses),
            "facts_ok": facts.ok,
            "fact1_violations": [[w.elements for w in v] for v in facts.fact1_violations],
            "fact2_violations": [[w.elements for w in v] for v in facts.fact2_violations],
        }
        if not clauses or not facts.ok:
            status = CHECK_FAILED
    _emit_json(_report(args, body), args.out)
    return status


def cmd_branch(args) -> int:
    B1, B2 = _load(args.b1), _load(args.b2)
    try:
        policy = policy_from_name(args.policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    second = not args.skip_second_stage
    if second and args.r1 is None:
        raise UsageError("--r1 is required unless --skip-second-stage is given")
    try:
        rep = run_branching(B1, B2, args.r1, args.t, args.k, policy, second_stage=second)
    except BranchPreconditionError as exc:
        raise UsageError(f"{exc} (witness {exc.witness})") from exc
    body = rep.to_dict()
    lhs_ok = rep.lhs15 <= 1 and (rep.lhs14 is None or rep.lhs14 <= 1)
    body["verdict"] = rep.weight_conserved and rep.cover_holds and rep.weight_floor_holds and lhs_ok
    _emit_json(_report(args, {"branching": body}), args.out)
    return OK if body["verdict"] else CHECK_FAILED


def cmd_ineq(args) -> int:
    try:
        points = parse_grid(args.grid, args.check)
        reports = [run_check(args.check, p) for p in points]
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    cols, rows = csv_rows(args.check, reports)
    buf = io.StringIO()
    buf.write(f"# crossfam {__version__} ineq check={args.check} grid={args.grid}\n")
    w = csv.DictWriter(buf, cols, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    return OK if all(r.verdict for r in reports) else CHECK_FAILED


def cmd_search(args) -> int:
    mode = Mode(args.mode)
    t = 1 if mode is Mode.PAIR_CROSS_1_PYBER and args.t is None else args.t
    if t is None:
        raise UsageError("--t is required")
    try:
        problem = SearchProblem(
            GroundParams(args.n, args.k, t), mode, nontrivial=args.nontrivial,
            saturated=mode is Mode.PAIR_CROSS_T, budget=Budget(args.budget_nodes, args.budget_secs),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = solve(problem)
    _emit_json(_report(args, {"result": res.to_dict()}), args.out)
    return OK if res.exhaustive else BUDGET


def cmd_verify_all(args) -> int:
    report = verify_all(args.seed, args.scale)
    _emit_json(report, args.out)
    for c in report["criteria"]:
        print(f"criterion {c['criterion']:>2}: {'PASS' if c['passed'] else 'FAIL'}  {c['title']}", file=sys.stderr)
    return OK if not report["failed"] else CHECK_FAILED


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crossfam", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"crossfam {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build A, H or a star and write it in family text format")
    c.add_argument("--family", choices=["A", "H", "star"], required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--t", type=int)
    c.add_argument("--center", help="star center, e.g. 1,2")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="predicates, tau_t, basis, saturation or exact-pair classification")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--in2", dest="input2")
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--k", type=int)
    a.add_argument("--out")
    what = a.add_mutually_exclusive_group(required=True)
    for flag in ("predicates", "tau", "basis", "saturate", "classify"):
        what.add_argument(f"--{flag}", action="store_true")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("branch", help="run the weighted branching process on two bases")
    b.add_argument("--b1", required=True)
    b.add_argument("--b2", required=True)
    b.add_argument("--t", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--r1", type=int)
    b.add_argument("--policy", default="lex")
    b.add_argument("--skip-second-stage", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_branch)

    i = sub.add_parser("ineq", help="exact inequality checks over a parameter grid (CSV)")
    i.add_argument("--check", choices=sorted(CHECKS), required=True)
    i.add_argument("--grid", default="default")
    i.add_argument("--out")
    i.set_defaults(func=cmd_ineq)

    s = sub.add_parser("search", help="exhaustive optimum search")
    s.add_argument("--mode", choices=[m.value for m in Mode], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--nontrivial", action="store_true")
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-secs", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-all", help="run the whole verification suite")
    v.add_argument("--scale", choices=SCALES, default="smoke")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"crossfam {args.command}: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
