"""Command-line entry point.

Exit codes: 0 optimum found (or check passed), 2 no factor exists,
1 usage or parse error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import __version__
from .constraints import classify, parse_constraint
from .errors import CapacityError, FactorumError, InvariantError, ParseError, UsageError
from .formats import (
    backup_to_instance,
    format_factor,
    format_instance,
    format_weight,
    parse_backup,
    parse_edge_list,
    parse_factor,
    parse_instance,
    to_dot,
)
from .gadgets import gadget_for, reduce_instance
from .generate import CLASSES, trap_key, random_instance
from .graph import Graph
from .instance import is_factor, violating_vertices
from .matching import MatchingProblem, max_weight_perfect_matching
from .oracles import OracleHandle
from .realizability import obstruction_check, realized_set
from .solver import main_solve

EXIT_OK, EXIT_USAGE, EXIT_NO, EXIT_INVARIANT = 0, 1, 2, 3


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("FACTORUM_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"FACTORUM_SEED must be an integer, got {env!r}") from None
    return 0


def _read(path) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _stats_dict(st) -> dict:
    return {
        "dec_calls": st.dec_calls,
        "opt_calls": st.opt_calls,
        "inner_opt_calls": st.inner_opt_calls,
        "comparisons": st.comparisons,
        "recursion_depth": st.recursion_depth,
        "wall_time": round(st.wall_time, 6),
    }


def _solve_report(inst, args, extra_json=None):
    res = main_solve(inst, OracleHandle.named(args.oracle), trace=args.trace)
    f = res.outcome
    if args.json:
        doc = {
            "status": "optimum" if f is not None else "No",
            "weight": None if f is None else format_weight(f.weight),
            "edges": [] if f is None else [list(inst.graph.edges[e]) for e in f.sorted()],
            "stats": _stats_dict(res.stats),
        }
        if args.trace:
            doc["trace"] = [
                {"level": t.level, "u": t.u, "branch": t.branch,
                 "weight": None if t.weight is None else format_weight(t.weight)}
                for t in res.trace
            ]
        doc.update(extra_json or {})
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(format_factor(f, inst))
        if args.stats:
            for k, v in _stats_dict(res.stats).items():
                print(f"# {k} {v}")
        if args.trace:
            for t in res.trace:
                w = "-" if t.weight is None else format_weight(t.weight)
                print(f"# trace level={t.level} u={t.u} branch={t.branch} weight={w}")
    return res


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.dot:
        _emit(to_dot(inst), args.dot)
    res = _solve_report(inst, args)
    return EXIT_OK if res.feasible else EXIT_NO


def cmd_check(args) -> int:
    inst = parse_instance(_read(args.instance))
    ff = parse_factor(_read(args.factor), inst)
    if ff.edges is None:
        res = main_solve(inst)
        if res.feasible:
            print(f"rejected: the instance has a factor of weight {format_weight(res.weight)}")
            return EXIT_USAGE
        print("ok: no factor exists")
        return EXIT_OK
    problems = []
    bad = violating_vertices(inst, ff.edges)
    for v in bad:
        deg = sum(1 for e, _ in inst.graph.adj[v] if e in ff.edges)
        problems.append(f"vertex {v}: degree {deg} not in {inst.constraints[v]}")
    w = inst.weight_of(ff.edges)
    if ff.weight is None:
        problems.append("missing weight line")
    elif ff.weight != w:
        problems.append(f"stated weight {format_weight(ff.weight)} but edges weigh {format_weight(w)}")
    if problems:
        for p in problems:
            print(f"rejected: {p}")
        return EXIT_USAGE
    assert is_factor(inst, ff.edges)
    print(f"ok: factor of weight {format_weight(w)}")
    return EXIT_OK


def cmd_terminal_backup(args) -> int:
    tb = parse_backup(_read(args.instance))
    conv = backup_to_instance(tb)
    for msg in conv.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    if conv.instance is None:
        if args.solve:
            print("No")
        return EXIT_NO
    if not args.solve:
        _emit(format_instance(conv.instance), args.output)
        return EXIT_OK
    res = main_solve(conv.instance)
    if res.outcome is None:
        print("No")
        return EXIT_NO
    sys.stdout.write(format_factor(res.outcome, conv.instance))
    print(f"cost {format_weight(tb.total_cost(res.outcome.edges))}")
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"weight range must look like 'lo,hi', got {text!r}") from None
    if lo > hi:
        raise UsageError("empty weight range")
    return lo, hi


def cmd_gen(args) -> int:
    if args.trap:
        inst, _ = trap_key()
    else:
        if args.n is None or args.m is None:
            raise UsageError("gen needs --n and --m (or --trap)")
        if args.n < 1 or args.m < 0:
            raise UsageError("need n >= 1 and m >= 0")
        classes = tuple(c.strip() for c in args.classes.split(",") if c.strip())
        for c in classes:
            if c not in CLASSES:
                raise UsageError(f"unknown class {c!r}; choose from {','.join(CLASSES)}")
        rng = random.Random(_seed(args))
        inst = random_instance(rng, args.n, args.m, classes, _parse_range(args.weight_range), args.rational)
    _emit(format_instance(inst), args.output)
    if args.dot:
        _emit(to_dot(inst), args.dot)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import check_scaling, run_suite

    seed = _seed(args)
    results = run_suite(args.suite, seed, args.cases)
    if args.scaling:
        results.append(check_scaling(seed))
    ok = all(r.passed for r in results)
    if args.json:
        print(json.dumps({"suite": args.suite, "seed": seed, "passed": ok,
                          "checks": [r.to_dict() for r in results]}, indent=2))
    else:
        for r in results:
            print(r.line())
        print("all checks passed" if ok else "some checks FAILED")
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_bench(args) -> int:
    from .verify import check_scaling

    sizes = tuple(int(x) for x in args.sizes.split(","))
    r = check_scaling(_seed(args), sizes)
    print(r.line())
    return EXIT_OK if r.passed else EXIT_INVARIANT


def cmd_matching(args) -> int:
    n, edges, weights = parse_edge_list(_read(args.instance))
    p = MatchingProblem(Graph(n, edges), tuple(weights))
    m = max_weight_perfect_matching(p, certify=True)
    if m is None:
        print("No")
        return EXIT_NO
    print(f"weight {format_weight(m.weight)}")
    for e in m.edges.sorted():
        print("m {} {}".format(*p.graph.edges[e]))
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = parse_instance(_read(args.instance))
    red = reduce_instance(inst, compact=args.compact)
    g = red.problem.graph
    lines = [f"# {'compact' if args.compact else 'plain'} composition of {inst.n} vertices, {inst.m} edges",
             f"vertices {g.n}"]
    for (a, b), w in zip(g.edges, red.problem.weights):
        lines.append(f"e {a} {b} {format_weight(w)}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_gadget(args) -> int:
    d = parse_constraint(args.constraint, args.arity)
    cls = classify(d)
    print(f"constraint {d} arity {d.arity}")
    if cls.max_gap <= 1:
        print(f"obstruction {obstruction_check(d).value}")
    else:
        print("obstruction n/a (gap longer than one)")
    if not cls.in_g:
        print("no gadget: only intervals and parity intervals have builders")
        return EXIT_OK
    gb = gadget_for(d)
    print(f"gadget {gb.kind} stubs {gb.n_stubs} internal {gb.n_internal}")
    print("required " + " ".join(map(str, sorted(gb.required))))
    for a, b in gb.edges:
        print(f"g {a} {b}")
    try:
        print(f"realized {realized_set(gb)}")
    except CapacityError as exc:
        print(f"realized ? ({exc})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="factorum", description="Maximum-weight general factors.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--oracle", choices=("matching", "brute"), default="matching")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="FILE", help="also write the instance graph in DOT")
    p.add_argument("--seed", type=int, help="accepted for uniformity; solving is deterministic")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="validate a factor file against an instance")
    p.add_argument("instance")
    p.add_argument("factor")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("terminal-backup", help="convert (and optionally solve) a terminal backup file")
    p.add_argument("instance")
    p.add_argument("--solve", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_terminal_backup)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--classes", default=",".join(CLASSES))
    p.add_argument("--weight-range", default="-5,5")
    p.add_argument("--rational", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--trap", action="store_true", help="emit the fixed 12-vertex trap instance")
    p.add_argument("-o", "--output")
    p.add_argument("--dot", metavar="FILE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the seeded property suites")
    p.add_argument("--suite", choices=("solver", "structural", "gadgets", "all"), default="all")
    p.add_argument("--seed", type=int)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--scaling", action="store_true", help="also run the n=20,40,80 scaling check")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the solver on the sparse scaling family")
    p.add_argument("--sizes", default="20,40,80")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("matching", help="maximum-weight perfect matching of an edge list")
    p.add_argument("instance")
    p.set_defaults(func=cmd_matching)

    p = sub.add_parser("reduce", help="dump the composed matching graph of an instance")
    p.add_argument("instance")
    p.add_argument("--compact", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gadget", help="build a gadget and report its realized set")
    p.add_argument("constraint", help="e.g. 'interval 1 2' or 'set 0,1,3'")
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_gadget)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UsageError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FactorumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
