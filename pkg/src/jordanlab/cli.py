"""Command-line front end: ``jordanlab <command> ...``.

Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
3 resource limit hit (enumeration cap, lattice cap, search timeout).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import atlas, caselaw, jordan, pencil, suite
from .cyclotomic import parse_scalar
from .errors import (BadParams, DegeneratePoints, GroupOrderOverflow, InvalidPencil, JordanLabError, LatticeExplosion,
                     OutOfRange, SearchTimeout, TooLarge, UnsupportedField)
from .group import DEFAULT_CAP
from .perm import loads_group

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, obj, text: str):
    if args.json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _context(args) -> suite.Context:
    return suite.Context(workers=args.threads, timeout=args.timeout, cap=args.cap,
                         seed=args.seed, catalog_path=args.catalog)


def _resolve_group(args):
    target = args.target
    names = {e.name for e in atlas.catalog(args.catalog)}
    if target in names:
        return atlas.get_group(target, cap=args.cap, path=args.catalog), target
    p = Path(target)
    if p.suffix == ".json":
        if not p.exists():
            raise UsageError(f"no such file: {target}")
        obj = json.loads(p.read_text())
        if isinstance(obj, dict) and "degree" in obj:
            degree, gens = loads_group(p.read_text())
            spec = atlas.Perms(degree, tuple(gens))
        else:
            spec = atlas.spec_from_json(obj)
        return atlas.realize(spec, cap=args.cap, catalog_path=args.catalog), p.stem
    try:
        spec = atlas.parse_spec(target)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if isinstance(spec, atlas.Named) and spec.name not in names:
        raise UsageError(f"unknown group {spec.name!r}; catalog names: {', '.join(sorted(names))}")
    return atlas.realize(spec, cap=args.cap, catalog_path=args.catalog), atlas.spec_label(spec)


def cmd_group(args) -> int:
    try:
        G, name = _resolve_group(args)
    except (ValueError, TypeError, KeyError, OSError) as exc:
        if isinstance(exc, JordanLabError):
            raise
        raise UsageError(exc.args[0] if exc.args else str(exc)) from None
    if args.action == "info":
        classes = G.conjugacy_classes()
        obj = {"name": name, "degree": G.degree, "order": G.order(), "generators": len(G.generators),
               "abelian": G.is_abelian(), "classes": len(classes), "center": int(G.center_mask().sum()),
               "base": [int(b) for b in G.bsgs.base], "orbit_lengths": [int(x) for x in G.bsgs.orbit_lengths]}
        _emit(args, obj, "\n".join(f"{k}: {v}" for k, v in obj.items()))
        return EXIT_OK
    if args.action == "maxab":
        res = jordan.max_abelian(G, workers=args.threads, timeout=args.timeout, seed=args.seed)
        obj = {"name": name, "order": G.order(),
               "max_abelian": {"order": res.order, "witness": [g.to_json() for g in res.witness]},
               "weak_jordan": G.order() // res.order, "certified": res.certified}
        text = (f"{name}: |G| = {G.order()}, largest abelian subgroup {res.order}, "
                f"weak Jordan constant {G.order() // res.order}"
                + ("" if res.certified else " (lower bound only: search timed out)"))
        _emit(args, obj, text)
        return EXIT_OK if res.certified else EXIT_RESOURCE
    rep = jordan.jordan_report(G, name, workers=args.threads, timeout=args.timeout, seed=args.seed)
    text = (f"{name}: |G| = {rep.order}\n"
            f"  largest abelian subgroup:        {rep.max_abelian.order}\n"
            f"  weak Jordan constant:            {rep.weak_jordan}\n"
            f"  largest normal abelian subgroup: {rep.max_normal_abelian.order}\n"
            f"  Jordan constant:                 {rep.jordan}\n"
            f"  certified:                       {rep.certified}")
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.certified else EXIT_RESOURCE


def cmd_table1(args) -> int:
    rows = suite.table1(_context(args))
    lines = [f"{'n':>2}  {'Jbar(PGL_n)':>12} {'group':<8} {'Jbar(GL_n)':>11} {'group':<8} {'J(GL_n)':>8}"]
    for r in rows:
        lines.append(f"{r['n']:>2}  {r['jbar_pgl']:>12} {r['pgl_group']:<8} {r['jbar_gl']:>11} "
                     f"{r['gl_group']:<8} {r['j_gl']:>8}")
    ok = all(r["ok"] for r in rows)
    _emit(args, {"ok": ok, "rows": rows}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_isotypical(args) -> int:
    best, cases = caselaw.isotypical_bound(args.N, args.m)
    obj = {"N": args.N, "m_min": args.m, "max": best,
           "cases": [{"parts": [list(p) for p in c.parts], "bound": c.bound} for c in cases]}
    text = "\n".join([f"{str(c):<24} {c.bound}" for c in cases] + [f"max: {best}"])
    _emit(args, obj, text)
    return EXIT_OK


def cmd_orderbound(args) -> int:
    if args.max_upto is not None:
        mx, arg = caselaw.max_order_bound_upto(args.max_upto)
        _emit(args, {"limit": args.max_upto, "max": mx, "argmax": arg},
              f"max order bound for |G| <= {args.max_upto}: {mx} (at |G| = {arg})")
        return EXIT_OK
    if args.n is None:
        raise UsageError("orderbound needs n or --max-upto L")
    n = args.n
    g = caselaw.guaranteed_abelian(n)
    _emit(args, {"n": n, "guaranteed_abelian": g, "bound": n // g},
          f"|G| = {n}: abelian subgroup of order >= {g}, weak Jordan constant <= {n // g}")
    return EXIT_OK


def cmd_ledger(args) -> int:
    entries = caselaw.load_ledger(args.ledger) if args.ledger else caselaw.load_ledger()
    rep = caselaw.ledger_check(entries)
    lines = []
    for r in rep.rows:
        mark = "ok  " if r.ok else "FAIL"
        lines.append(f"{mark} {r.entry.id:<28} {caselaw.render(r.entry.expr):<40} = {r.value} "
                     f"(expected {r.entry.expected})")
    lines.append(f"{sum(r.ok for r in rep.rows)}/{len(rep.rows)} entries pass")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _field_conductor(text: str) -> int:
    if text == "Q":
        return 1
    if text.startswith("Qzeta:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise UsageError(f"--field must be Q or Qzeta:m, not {text!r}")


def cmd_pencil(args) -> int:
    m = _field_conductor(args.field)
    try:
        lam = [parse_scalar(s, m) for s in args.lambdas.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = pencil.aut_w(lam)
    obj = {"field": args.field, "lambdas": [str(v) for v in lam], "order": res.order,
           "generators": [g.to_json() for g in res.group.generators],
           "permutations": [p.to_json() for p in res.perms],
           "maps": [M.to_json() for M in res.maps],
           "note": "full Moebius stabilizer of the marked points; contains Aut_W"}
    lines = [f"Moebius stabilizer of {len(lam)} points: order {res.order}",
             "generators: " + (", ".join(str(g) for g in res.group.generators) or "none")]
    for p, M in zip(res.perms, res.maps):
        (a, b), (c, d) = M.matrix()
        lines.append(f"  {str(p):<20} z -> [({a})z + ({b})] / [({c})z + ({d})]")
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.all:
        raise UsageError("verify currently supports only --all")
    report = suite.run_suite(args.tier, _context(args))
    if args.json:
        print(suite.dumps(report))
    else:
        for c in report["checks"]:
            print(f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}")
        print(f"tier {report['tier']}: {'all checks pass' if report['ok'] else 'failures: ' + ', '.join(report['failures'])}")
    return EXIT_OK if report["ok"] else EXIT_FAIL


def _common(parser: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--threads", type=int, default=d(jordan.default_workers()),
                        help="worker processes for the abelian search (default: available CPUs)")
    parser.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="element enumeration cap")
    parser.add_argument("--timeout", type=float, default=d(jordan.DEFAULT_TIMEOUT),
                        help="search budget per group in seconds (default 900)")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for generator sampling")
    parser.add_argument("--catalog", default=d(None), help="alternative catalog JSON")
    parser.add_argument("--tier", choices=("fast", "full"), default=d("fast"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jordanlab", description="Jordan constants of finite groups.")
    _common(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="order, maximal abelian subgroup, Jordan constants")
    g.add_argument("target", help="catalog name, spec like 'Wreath(Alt(5),2,Sym)', or a JSON file")
    g.add_argument("action", choices=("info", "maxab", "jordan"))
    g.set_defaults(fn=cmd_group)

    t = sub.add_parser("table1", parents=[common], help="recompute the linear-groups table")
    t.set_defaults(fn=cmd_table1)

    i = sub.add_parser("isotypical", parents=[common], help="isotypical partition bound")
    i.add_argument("N", type=int)
    i.add_argument("m", type=int)
    i.set_defaults(fn=cmd_isotypical)

    o = sub.add_parser("orderbound", parents=[common], help="bound from the group order alone")
    o.add_argument("n", type=int, nargs="?")
    o.add_argument("--max-upto", type=int, metavar="L")
    o.set_defaults(fn=cmd_orderbound)

    led = sub.add_parser("ledger", parents=[common], help="audit the ledger of numeric bounds")
    led.add_argument("--ledger", help="alternative ledger JSON")
    led.set_defaults(fn=cmd_ledger)

    pe = sub.add_parser("pencil", parents=[common], help="Moebius symmetries of a quadric pencil")
    pe.add_argument("--field", default="Q", help="Q or Qzeta:m")
    pe.add_argument("--lambdas", required=True, help="comma-separated values, e.g. 0,1,2,5 or 1,z,z^2")
    pe.set_defaults(fn=cmd_pencil)

    v = sub.add_parser("verify", parents=[common], help="run the reproduction suite")
    v.add_argument("--all", action="store_true")
    v.set_defaults(fn=cmd_verify)
    return p


def _fail(args, kind: str, exc: Exception, status: int) -> int:
    msg = exc.args[0] if exc.args else str(exc)
    if getattr(args, "json", False):
        print(json.dumps({"ok": False, "error": kind, "message": str(msg),
                          "failures": [type(exc).__name__]}, indent=2, sort_keys=True))
    print(f"jordanlab: {kind}: {msg}", file=sys.stderr)
    return status


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1 or args.cap < 1:
        parser.error("--threads and --cap must be positive")
    try:
        return args.fn(args)
    except (UsageError, BadParams, InvalidPencil, OutOfRange, UnsupportedField, DegeneratePoints) as exc:
        return _fail(args, "error", exc, EXIT_USAGE)
    except (TooLarge, GroupOrderOverflow, LatticeExplosion, SearchTimeout) as exc:
        return _fail(args, "resource limit", exc, EXIT_RESOURCE)
    except JordanLabError as exc:
        return _fail(args, "check failed", exc, EXIT_FAIL)


if __name__ == "__main__":
    os.environ.setdefault("PYTHONHASHSEED", "0")
    sys.exit(main())
