"""Command-line front end: rootgroupoid <command> (--input FILE | --catalog NAME) [flags]."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog
from .cartan import CartanDatum, is_reflectable
from .classify import classify, uniqueness_report
from .errors import DomainError, InternalError, ParseError
from .groups import aut_report
from .rootdatum import Realization, base_vertex
from .skeleton import ExplorationLimits, check_admissibility, explore_skeleton, explore_spine, export_dot, verify_coxeter
from .weyl import coxeter_matrix, enumerate_real_roots, principal_roots

EXIT_OK, EXIT_DOMAIN, EXIT_INCONCLUSIVE = 0, 1, 2
COMMANDS = ("explore", "spine", "classify", "aut", "roots", "verify-coxeter", "admissible", "catalog")


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for budget-limited results under --strict
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rootgroupoid", description="Root groupoid computations on Cartan data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        if name == "catalog":
            s.add_argument("name", nargs="?", help="show one entry instead of listing names")
            s.add_argument("--out", help="write the report here instead of stdout")
            continue
        src = s.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="FILE", help="Cartan datum JSON file")
        src.add_argument("--catalog", metavar="NAME", help="built-in catalog entry")
        s.add_argument("--max-vertices", type=int, default=10000)
        s.add_argument("--max-depth", type=int, default=64)
        s.add_argument("--strict", action="store_true", help="exit 2 when a result is limited by the budget")
        s.add_argument("--out", help="write the report here instead of stdout")
        s.add_argument("--dot", metavar="FILE", help="also write the explored graph as DOT")
        s.add_argument("--realization", metavar="FILE", help="realization JSON for K-dimension paths")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _source(args) -> tuple[CartanDatum, Realization | None, str]:
    if args.catalog is not None:
        try:
            entry = catalog.get(args.catalog)
        except KeyError as e:
            raise ParseError(e.args[0]) from None
        return entry.datum, entry.realization, entry.name
    obj = _load_json(args.input)
    try:
        d = CartanDatum.from_json(obj)
    except ParseError as e:
        raise ParseError(f"{args.input}: {e}") from None
    r = None
    if isinstance(obj, dict) and "realization" in obj:
        r = Realization.from_json(obj["realization"])
    return d, r, args.input


def _limits(args) -> ExplorationLimits:
    budget = os.environ.get("RGX_BUDGET_MS")
    try:
        ms = int(budget) if budget else None
    except ValueError:
        raise ParseError(f"RGX_BUDGET_MS must be an integer, got {budget!r}") from None
    return ExplorationLimits(args.max_vertices, args.max_depth, ms)


def _explore(args, d, lim, spine: bool):
    v = base_vertex(d)
    g = explore_spine(v, lim) if spine else explore_skeleton(v, lim)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(export_dot(g))
    report = {"command": args.command, "source": args.src_name, "size": len(g), "graph": g.to_json()}
    return report, not g.complete


def _classify(args, d, lim, r):
    v = base_vertex(d)
    cls = classify(v, lim)
    report = {"command": "classify", "source": args.src_name, "classification": cls.to_json()}
    if all(is_reflectable(d, x) for x in range(d.n)):
        report["uniqueness"] = uniqueness_report(v, cls, r).to_json()
    else:
        report["uniqueness"] = None
        report["uniqueness_note"] = "base datum is not fully reflectable"
    return report, cls.heuristic


def _aut(args, d, lim, r):
    v = base_vertex(d)
    g, sp = explore_skeleton(v, lim), explore_spine(v, lim)
    rep = aut_report(g, sp, r)
    out = rep.to_json()
    budgeted = "budgeted" in (rep.spd_certainty, rep.skd_certainty, rep.weyl_certainty)
    return {"command": "aut", "source": args.src_name, "complete": g.complete and sp.complete, "aut": out}, budgeted


def _roots(args, d, lim):
    v = base_vertex(d)
    g, sp = explore_skeleton(v, lim), explore_spine(v, lim)
    roots = enumerate_real_roots(g)
    ps = principal_roots(sp)
    report = {
        "command": "roots",
        "source": args.src_name,
        "complete": g.complete,
        "real_roots": [r.to_json(d.labels) for r in roots],
        "principal_roots": [r.to_json(d.labels) for r in ps.roots],
        "principal_complete": ps.complete,
        "coxeter": coxeter_matrix(ps).to_json(),
    }
    return report, not (g.complete and sp.complete)


def _verify(args, d, lim):
    g = explore_skeleton(base_vertex(d), lim)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(export_dot(g))
    rep = verify_coxeter(g)
    return {"command": "verify-coxeter", "source": args.src_name, "complete": g.complete, "report": rep.to_json(d.labels)}, rep


def _admissible(args, d, lim):
    verdict = check_admissibility(base_vertex(d), lim)
    report = {
        "command": "admissible",
        "source": args.src_name,
        "complete": verdict.status != "inconclusive",
        "admissibility": verdict.to_json(d.labels),
    }
    return report, verdict


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            if args.name:
                try:
                    report = catalog.get(args.name).to_json()
                except KeyError as e:
                    raise ParseError(e.args[0]) from None
            else:
                report = {"entries": catalog.list()}
            return _emit(args, report, EXIT_OK, stdout)
        d, r, args.src_name = _source(args)
        if args.realization:
            r = Realization.from_json(_load_json(args.realization))
        lim = _limits(args)
        code = EXIT_OK
        if args.command in ("explore", "spine"):
            report, limited = _explore(args, d, lim, args.command == "spine")
        elif args.command == "classify":
            report, limited = _classify(args, d, lim, r)
        elif args.command == "aut":
            report, limited = _aut(args, d, lim, r)
        elif args.command == "roots":
            report, limited = _roots(args, d, lim)
        elif args.command == "verify-coxeter":
            report, rep = _verify(args, d, lim)
            limited = not rep.complete
            if not rep.ok:
                code = EXIT_DOMAIN
        else:
            report, verdict = _admissible(args, d, lim)
            limited = verdict.status == "inconclusive"
            if verdict.status == "not_admissible":
                code = EXIT_DOMAIN
        if code == EXIT_OK and limited and args.strict:
            code = EXIT_INCONCLUSIVE
        return _emit(args, report, code, stdout)
    except ParseError as e:
        print(f"rootgroupoid: parse error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ValueError) as e:
        print(f"rootgroupoid: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except InternalError as e:
        print(f"rootgroupoid: internal error: {e}", file=sys.stderr)
        raise


def _emit(args, report, code, stdout) -> int:
    text = _dump(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
