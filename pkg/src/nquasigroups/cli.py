"""Command-line front end.

Subcommands: validate, eval, construct, analyze, components, reconstruct,
census.  Tables travel as JSON (any arity) or as the k-line text form
(binary only); '-' reads standard input.  Results go to standard output as
compact JSON, or as aligned digit grids with --pretty.  Exit codes:
0 success, 1 domain error, 2 usage error.
"""

import argparse
import itertools
import json
import sys

from . import analysis, constructions, core
from . import census as census_mod


class _UsageError(Exception):
    pass


def _int_list(text):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers")


def _pair(text):
    parts = _int_list(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected exactly two symbols: a,b")
    return parts


def _read_input(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_table(path):
    data = _read_input(path)
    if data.lstrip().startswith("{"):
        return core.from_json(data)
    return core.from_text(data)


def _read_shell(path):
    data = _read_input(path)
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise analysis.AnalysisError("bad shell JSON: %s" % e)
    return analysis.shell_from_json_obj(obj)


def _emit(obj):
    print(json.dumps(obj, separators=(",", ":")))


def _pretty(t):
    w = len(str(t.order - 1))
    k = t.order

    def grid(vals):
        rows = []
        for i in range(k):
            rows.append(" ".join(str(v).rjust(w) for v in vals[i * k:(i + 1) * k]))
        return rows

    if t.arity == 1:
        return " ".join(str(v).rjust(w) for v in t.values) + "\n"
    if t.arity == 2:
        return "\n".join(grid(t.values)) + "\n"
    chunks = []
    step = k * k
    for pos, prefix in enumerate(itertools.product(range(k), repeat=t.arity - 2)):
        chunks.append("[" + ",".join(str(c) for c in prefix) + "]")
        chunks.extend(grid(t.values[pos * step:(pos + 1) * step]))
        chunks.append("")
    return "\n".join(chunks[:-1]) + "\n"


def _emit_table(t, pretty):
    if pretty:
        sys.stdout.write(_pretty(t))
    else:
        _emit(core.to_json_obj(t))


def _component_obj(c):
    a, b = sorted(c.pair)
    return {
        "pair": [a, b],
        "size": len(c.cells),
        "cells": [list(cell.coords) for cell in c.sorted_cells()],
    }


def _family_obj(fam):
    return {
        "base": core.to_json_obj(fam.base),
        "claimed_log2": fam.claimed_log2,
        "components": [_component_obj(c) for c in fam.components],
    }


def _cmd_validate(args):
    rep = core.validate(_read_table(args.table))
    if rep.ok:
        _emit({"ok": True})
        return 0
    _emit({"ok": False, "violations": [
        {"axis": v.axis, "fixed": list(v.fixed)} for v in rep.violations]})
    return 1


def _cmd_eval(args):
    t = _read_table(args.table)
    _emit({"value": core.evaluate(t, tuple(args.coords))})
    return 0


def _cmd_construct(args):
    table = None
    obj = None
    if args.qkr:
        table = constructions.build_qkr(*args.qkr)
    elif args.fixture:
        table = constructions.fixture(args.fixture)
    elif args.closed:
        table = constructions.build_closed(*args.closed)
    elif args.irreducible:
        table = constructions.build_irreducible(*args.irreducible)
    elif args.ptq is not None:
        table = constructions.build_ptq(args.ptq)
    elif args.family5 is not None:
        obj = _family_obj(constructions.build_family5(args.family5))
    elif args.family_k:
        obj = _family_obj(constructions.build_family_k(*args.family_k))
    else:
        q, f, loop = constructions.build_shell_counterexample()
        obj = {"q": core.to_json_obj(q), "f": core.to_json_obj(f),
               "loop": core.to_json_obj(loop)}
    if table is not None:
        _emit_table(table, args.pretty)
    else:
        if args.pretty:
            raise _UsageError("--pretty applies to single-table outputs only")
        _emit(obj)
    return 0


def _cmd_analyze(args):
    t = _read_table(args.table)
    if args.reductions:
        _emit([list(s.axes) for s in analysis.find_reductions(t)])
    elif args.subquasigroups:
        _emit([list(om) for om in analysis.find_subquasigroups(t)])
    elif args.split:
        ok, wit = analysis.is_reducible_wrt(
            t, analysis.Split(frozenset(args.split)), return_witness=True)
        _emit({"reducible": ok, "witness": list(wit) if ok else None})
    else:
        if args.basepoint is None:
            raise _UsageError("--shell requires --basepoint")
        sh = analysis.extract_shell(t, args.basepoint)
        _emit(analysis.shell_to_json_obj(sh))
    return 0


def _cmd_components(args):
    t = _read_table(args.table)
    a, b = args.pair
    comps = analysis.find_components(t, a, b)
    if args.switch is None:
        _emit([_component_obj(c) for c in comps])
    else:
        if not 0 <= args.switch < len(comps):
            raise _UsageError(
                "--switch index out of range 0..%d" % (len(comps) - 1))
        _emit_table(analysis.switch_component(t, comps[args.switch]),
                    args.pretty)
    return 0


def _cmd_reconstruct(args):
    sh = _read_shell(args.shell)
    if args.split:
        t = analysis.reconstruct_with_split(
            sh, analysis.Split(frozenset(args.split)), probe=args.probe)
        _emit_table(t, args.pretty)
        return 0
    if args.probe is not None:
        raise _UsageError("--probe requires --split")
    result = analysis.reconstruct(sh)
    if isinstance(result, list):
        if args.pretty:
            raise _UsageError("--pretty applies to single-table outputs only")
        _emit([core.to_json_obj(t) for t in result])
    else:
        _emit_table(result, args.pretty)
    return 0


def _cmd_census(args):
    rep = census_mod.run_census(args.n, args.k, budget=args.budget,
                            exact=args.exact, time_limit=args.time_limit,
                            seed=args.seed)
    _emit(census_mod.report_to_json_obj(rep))
    return 0


def _build_parser():
    p = argparse.ArgumentParser(
        prog="nqg",
        description="Construct, analyze, switch, and count n-ary quasigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the Latin property")
    sp.add_argument("table", help="table file (JSON or text), or - for stdin")
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("eval", help="evaluate a table at one cell")
    sp.add_argument("table")
    sp.add_argument("coords", nargs="+", type=int, help="cell coordinates")
    sp.set_defaults(func=_cmd_eval)

    sp = sub.add_parser("construct", help="run one of the builders")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--qkr", nargs=2, type=int, metavar=("K", "R"))
    g.add_argument("--fixture", choices=[f.value for f in constructions.FixtureId])
    g.add_argument("--closed", nargs=3, type=int, metavar=("N", "K", "R"))
    g.add_argument("--irreducible", nargs=2, type=int, metavar=("N", "K"))
    g.add_argument("--ptq", type=int, metavar="K")
    g.add_argument("--family5", type=int, metavar="N")
    g.add_argument("--family-k", nargs=2, type=int, metavar=("N", "K"))
    g.add_argument("--counterexample", action="store_true")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("analyze", help="reducibility, closures, shells")
    sp.add_argument("table")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--reductions", action="store_true")
    g.add_argument("--subquasigroups", action="store_true")
    g.add_argument("--split", type=_int_list, metavar="A,B,...")
    g.add_argument("--shell", action="store_true")
    sp.add_argument("--basepoint", type=_int_list, metavar="O1,...,ON")
    sp.set_defaults(func=_cmd_analyze)

    sp = sub.add_parser("components", help="switching components of a pair")
    sp.add_argument("table")
    sp.add_argument("--pair", type=_pair, required=True, metavar="A,B")
    sp.add_argument("--switch", type=int, metavar="INDEX",
                    help="emit the table with this component flipped")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=_cmd_components)

    sp = sub.add_parser("reconstruct", help="rebuild a table from its shell")
    sp.add_argument("shell", help="shell file (JSON), or - for stdin")
    sp.add_argument("--split", type=_int_list, metavar="A,B,...")
    sp.add_argument("--probe", type=int, metavar="AXIS")
    sp.add_argument("--pretty", action="store_true")
    sp.set_defaults(func=_cmd_reconstruct)

    sp = sub.add_parser("census", help="exact counts, bounds, family checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=census_mod.DEFAULT_CELL_BUDGET)
    sp.add_argument("--exact", choices=["auto", "on", "off"], default="auto")
    sp.add_argument("--time-limit", type=float,
                    default=census_mod.DEFAULT_TIME_LIMIT)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_census)

    return p


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as e:
        return 0 if e.code in (0, None) else int(e.code)
    except _UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2
    except (ValueError, census_mod.BudgetError,
            census_mod.CertificationError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
