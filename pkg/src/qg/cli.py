"""Command-line front end: ``qg <command> [paths] [flags]``.

Exit codes: 0 success, 1 failed expectation or library error, 2 usage or
parse error.
"""
import argparse
import json
import os
import sys
import time

from . import perm
from .congruences import DEFAULT_CONGRUENCE_BOUND, all_congruences
from .core import LOCAL_MAP_KINDS, identity_element, image, load_file, local_map
from .decomposition import class_key, decompose
from .errors import ParseError, QGError
from .identities import FLAG_NAMES, classify, flag_key, loop_classify
from .morphisms import DEFAULT_SEARCH_BOUND, automorphisms, autotopisms
from .search import MODES, Constraints, search_quasigroups


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _max_order(args):
    if args.max_order is not None:
        return args.max_order
    env = os.environ.get("QG_MAX_ORDER")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"QG_MAX_ORDER must be an integer, got {env!r}") from None
    return None


def _table(rows):
    return [list(r) for r in rows]


# ---------------------------------------------------------------- commands

def _analyze(q, args):
    report = {"order": q.n, "flags": classify(q).as_dict()}
    maps = {}
    for kind in LOCAL_MAP_KINDS:
        h = local_map(q, kind)
        maps[kind] = {"map": list(h), "image": image(h), "permutation": perm.is_permutation(h)}
    report["localMaps"] = maps
    if identity_element(q) is not None:
        report["loop"] = loop_classify(q).as_dict()
    return report


def _analyze_text(rep):
    lines = [f"order: {rep['order']}"]
    lines += [f"{k}: {str(v).lower()}" for k, v in rep["flags"].items()]
    for kind, info in rep["localMaps"].items():
        lines.append(f"{kind}: {' '.join(map(str, info['map']))}  image {{{','.join(map(str, info['image']))}}}"
                     + ("  permutation" if info["permutation"] else ""))
    if "loop" in rep:
        for k, v in rep["loop"].items():
            shown = "{" + ",".join(map(str, v)) + "}" if isinstance(v, list) else str(v).lower()
            lines.append(f"loop.{k}: {shown}")
    return lines


def _decompose(q, args):
    if not args.cls:
        raise UsageError("decompose needs --class")
    return decompose(q, class_key(args.cls)).as_dict()


def _decompose_text(rep, indent=""):
    lines = [
        f"{indent}class: {rep['class']}  map: {rep['map']}  m: {rep['m']}",
        f"{indent}chain: " + " > ".join("{" + ",".join(map(str, c)) + "}" for c in rep["chain"]),
        f"{indent}delta: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in rep["delta"]),
        f"{indent}rho: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in rep["rho"]),
        f"{indent}A: order {rep['A']['order']}, representatives {rep['A']['representatives']}",
        f"{indent}B: order {rep['B']['order']}, elements {rep['B']['elements']}",
        f"{indent}iso: " + " ".join(f"{x}->({a},{b})" for x, (a, b) in enumerate(rep["iso"])),
    ]
    if "inner" in rep:
        lines.append(f"{indent}inner decomposition of B:")
        lines += _decompose_text(rep["inner"], indent + "  ")
    return lines


def _congruences(q, args):
    bound = _max_order(args) or DEFAULT_CONGRUENCE_BOUND
    cs = all_congruences(q, bound)
    return {
        "order": q.n,
        "count": len(cs),
        "simple": len(cs) <= 2,
        "congruences": [[list(b) for b in c.blocks] for c in cs],
    }


def _congruences_text(rep):
    lines = [f"congruences: {rep['count']}", f"simple: {str(rep['simple']).lower()}"]
    lines += [" ".join("{" + ",".join(map(str, b)) + "}" for b in c) for c in rep["congruences"]]
    return lines


def _autotopisms(q, args):
    bound = _max_order(args) or DEFAULT_SEARCH_BOUND
    atp = autotopisms(q, bound)
    aut = automorphisms(q, bound)
    return {
        "order": q.n,
        "autotopisms": len(atp),
        "automorphisms": len(aut),
        "autotopismList": [[list(c) for c in t] for t in atp],
        "automorphismList": [list(a) for a in aut],
    }


def _autotopisms_text(rep):
    lines = [f"autotopisms: {rep['autotopisms']}", f"automorphisms: {rep['automorphisms']}"]
    lines += ["aut " + " ".join(map(str, a)) for a in rep["automorphismList"]]
    return lines


PER_FILE = {
    "analyze": (_analyze, _analyze_text),
    "decompose": (_decompose, _decompose_text),
    "congruences": (_congruences, _congruences_text),
    "autotopisms": (_autotopisms, _autotopisms_text),
}


def _search(args):
    if args.order is None:
        raise UsageError("search needs --order")
    flags = [flag_key(f) for f in args.require.split(",") if f] if args.require else []
    cons = Constraints(frozenset(flags), args.idempotent_diagonal, args.loop_identity)
    mode = args.mode.replace("-", "_")
    result = search_quasigroups(
        args.order, cons, mode=mode, limit=args.limit, target=args.target,
        jobs=args.jobs, symmetry=args.symmetry, max_order=_max_order(args),
    )
    rep = {"order": args.order, "mode": mode, "require": [FLAG_NAMES[f] for f in flags],
           "count": result.count}
    if mode != "count":
        rep["tables"] = [_table(t) for t in result.tables]
    return rep


def _search_text(rep):
    lines = [f"# order {rep['order']}, mode {rep['mode']}, count {rep['count']}"]
    for i, t in enumerate(rep.get("tables", [])):
        lines += [f"# table {i + 1}", str(len(t))]
        lines += [" ".join(map(str, row)) for row in t]
    if rep["mode"] == "count":
        lines.append(str(rep["count"]))
    return lines


def _paper_verify(args):
    from .checks import run_checks

    start = time.perf_counter()
    results = run_checks()
    elapsed = time.perf_counter() - start
    return {
        "checks": [{"name": n, "passed": ok, **({"error": e} if e else {})} for n, ok, e in results],
        "passed": sum(ok for _, ok, _ in results),
        "failed": sum(not ok for _, ok, _ in results),
        "milliseconds": int(elapsed * 1000),
    }


def _paper_verify_text(rep):
    lines = []
    for c in rep["checks"]:
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
        if "error" in c:
            lines.append(f"      {c['error']}")
    lines.append(f"{rep['passed']} passed, {rep['failed']} failed")
    return lines


# ---------------------------------------------------------------- driver

def build_parser():
    p = _Parser(prog="qg", description="Finite quasigroup analysis.")
    sub = p.add_subparsers(dest="command", metavar="command")

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--max-order", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=1)

    for name, helptext in (
        ("analyze", "class flags, loop properties and local maps"),
        ("decompose", "direct-product decomposition for a class"),
        ("congruences", "all congruences and simplicity"),
        ("autotopisms", "autotopism and automorphism groups"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("paths", nargs="+")
        common(sp)
        if name == "decompose":
            sp.add_argument("--class", dest="cls")

    sp = sub.add_parser("search", help="identity-constrained Latin square search")
    common(sp)
    sp.add_argument("--order", type=int)
    sp.add_argument("--require", default="")
    sp.add_argument("--mode", choices=[m.replace("_", "-") for m in MODES] + list(MODES), default="count")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--target")
    sp.add_argument("--symmetry", action="store_true")
    sp.add_argument("--idempotent-diagonal", action="store_true")
    sp.add_argument("--loop-identity", action="store_true")

    sp = sub.add_parser("paper-verify", help="run the worked-example checks")
    common(sp)
    return p


def _emit(args, payload, text_lines, out):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        if args.command == "search":
            rep = _search(args)
            _emit(args, rep, _search_text(rep), out)
            return 0
        if args.command == "paper-verify":
            rep = _paper_verify(args)
            _emit(args, rep, _paper_verify_text(rep), out)
            return 0 if rep["failed"] == 0 else 1
        compute, render = PER_FILE[args.command]
        reports = []
        for path in args.paths:
            try:
                q = load_file(path)
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
            reports.append((path, compute(q, args)))
        if args.format == "json":
            payload = {"command": args.command, "results": [{"path": p, **r} for p, r in reports]}
            _emit(args, payload, None, out)
        else:
            lines = []
            for path, rep in reports:
                if len(reports) > 1:
                    lines.append(f"== {path}")
                lines += render(rep)
            _emit(args, None, lines, out)
        return 0
    except (UsageError, ParseError) as exc:
        err.write(f"qg: error: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"qg: error: {exc}\n")
        return 2
    except QGError as exc:
        err.write(f"qg: {type(exc).__name__}: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
