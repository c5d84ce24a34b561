"""Command-line entry point.

Structured output goes to stdout as JSON lines, a short human summary to
stderr.  Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import appendix, autom, certificates, construct, hyper, levels
from .graph import (
    Graph,
    Graph6Error,
    distance_invariants,
    parse_graph6,
    write_graph6,
)
from .mis import alpha_avoiding
from .scan import RunConfig, scan_census

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("lovaszcheck")


class InputError(Exception):
    pass


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def say(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- input ---------------------------------------------------------------------------


class Loaded:
    """A graph plus an optional label codec (only for the built-in instance)."""

    def __init__(self, graph: Graph, bs=None, source_line: int | None = None):
        self.graph = graph
        self.bs = bs
        self.source_line = source_line

    def name(self, v: int):
        return self.bs.label(v) if self.bs else v

    def vertex(self, token: str) -> int:
        token = token.strip()
        if token.isdigit():
            v = int(token)
        elif self.bs is not None:
            v = self.bs.index(token)
        else:
            raise InputError(f"vertex {token!r}: labels need --builtin biggs-smith")
        if not 0 <= v < self.graph.n:
            raise InputError(f"vertex {v} outside 0..{self.graph.n - 1}")
        return v


def _read_lines(path: str | None):
    if path is None or path == "-":
        return sys.stdin.read().splitlines()
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_graphs(args) -> list[Loaded]:
    if getattr(args, "builtin", None):
        bs = construct.build_biggs_smith()
        return [Loaded(bs.graph, bs)]
    out = []
    for lineno, raw in enumerate(_read_lines(args.input), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            out.append(Loaded(parse_graph6(text), source_line=lineno))
        except Graph6Error as exc:
            raise InputError(f"line {lineno}: {exc}") from exc
    if not out:
        raise InputError("no graph6 records in input")
    return out


def load_one(args) -> Loaded:
    graphs = load_graphs(args)
    if len(graphs) > 1:
        say(f"note: using the first of {len(graphs)} graphs")
    return graphs[0]


# -- subcommands ---------------------------------------------------------------------


def cmd_build(args) -> int:
    if args.n is None:
        bs = construct.build_biggs_smith()
        emit({"graph6": write_graph6(bs.graph), "labels": bs.label_map()})
        say(f"built Biggs-Smith graph: {bs.graph.n} vertices, {bs.graph.m} edges")
        return EXIT_OK
    offsets = tuple(int(x) for x in args.offsets.split(","))
    spec = construct.HExpansionSpec(args.n, offsets)
    g = construct.build_h_expansion(spec)
    labels = {construct.vertex_index(i, t): f"{i}{t}"
              for i in range(1, args.n + 1) for t in construct.LETTERS}
    emit({"graph6": write_graph6(g), "labels": labels, "split_cycles": spec.split_cycles()})
    say(f"built order-{args.n} H-expansion: {g.n} vertices, {g.m} edges")
    return EXIT_OK


def cmd_invariants(args) -> int:
    for item in load_graphs(args):
        g = item.graph
        inv = distance_invariants(g)
        rec = {"source_line": item.source_line, "n": g.n, "m": g.m, "cubic": g.is_cubic(),
               **inv.as_dict()}
        emit(rec)
        say(f"n={g.n} m={g.m} girth={inv.girth} diameter={inv.diameter} "
            f"array={inv.intersection_array}")
    return EXIT_OK


def cmd_alpha(args) -> int:
    item = load_one(args)
    avoid = [item.vertex(t) for t in args.avoid.split(",")] if args.avoid else []
    res = alpha_avoiding(item.graph, avoid)
    emit({"alpha": res.size, "avoid": [item.name(v) for v in avoid],
          "witness": [item.name(v) for v in sorted(res.witness)],
          "nodes_explored": res.nodes_explored})
    say(f"alpha = {res.size}")
    return EXIT_OK


def cmd_autom(args) -> int:
    item = load_one(args)
    g = item.graph
    group = autom.automorphism_group(g, node_budget=args.node_budget)
    names = [item.name(v) for v in range(g.n)]
    rec = {
        "order": group.order,
        "vertex_orbits": len(group.vertex_orbits),
        "edge_orbits": len(group.edge_orbits),
        "basic_orbit_sizes": group.basic_orbit_sizes,
        "generators": [autom.cycle_notation(p, lambda v: str(names[v])) for p in group.generators],
    }
    if args.pairs:
        rep = autom.verify_pair_transitivity(g, group)
        rec["pair_classes"] = rep.details
        rec["pair_transitive"] = rep.passed
    emit(rec)
    say(f"|Aut| = {group.order}, {len(group.vertex_orbits)} vertex orbit(s), "
        f"{len(group.edge_orbits)} edge orbit(s)")
    return EXIT_FAILED if args.pairs and not rec["pair_transitive"] else EXIT_OK


def cmd_verify_lovasz(args) -> int:
    item = load_one(args)
    g = item.graph
    rep = hyper.verify_lovasz_property(g, args.mode, jobs=args.jobs,
                                       group_budget=args.node_budget)
    for f in rep.failures:
        emit({"pair": [[item.name(v) for v in e] for e in f["pair"]],
              "achieved": f["achieved"], "reason": f["reason"], "profile": f["profile"]})
    emit({"summary": rep.summary()})
    say(f"{'PASS' if rep.passed else 'FAIL'}: alpha={rep.alpha}, {rep.pairs_checked} pairs, "
        f"{len(rep.failures)} failing, {rep.elapsed:.1f}s ({rep.mode})")
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_witness(args) -> int:
    item = load_one(args)
    g = item.graph
    try:
        group = autom.automorphism_group(g, node_budget=args.node_budget)
    except autom.SearchBudgetExceeded:
        group = None
    res = hyper.weak_conjecture_witness(g, args.k, node_budget=args.node_budget, group=group)
    if res.witness is None:
        status = "exhausted" if res.exhausted else "budget"
        emit({"k": args.k, "witness": None, "status": status, "nodes": res.nodes})
        say(f"no witness for k={args.k} ({status} after {res.nodes} nodes)")
        return EXIT_FAILED
    w = res.witness
    check = alpha_avoiding(g, w.removed)
    emit({"k": args.k, "status": "found", "nodes": res.nodes,
          "edges": [[item.name(v) for v in e] for e in w.edges],
          "alpha": w.alpha, "achieved": w.achieved, "drop": w.drop, "recheck": check.size})
    ok = check.size == w.achieved and w.drop >= args.k
    say(f"witness for k={args.k}: drop {w.drop} (re-check alpha {check.size})")
    return EXIT_OK if ok else EXIT_FAILED


def paper_reports():
    """(name, thunk) for every claim check on the built-in instance, in a fixed order."""
    bs = construct.build_biggs_smith()
    g = bs.graph
    cache = {}

    def group():
        if "group" not in cache:
            cache["group"] = autom.automorphism_group(g)
        return cache["group"]

    return [
        ("invariants", lambda: _bs_invariants(bs)),
        ("level-sets", lambda: levels.verify_level_set_properties(g, bs.label)),
        ("a-cycle-geodesics", lambda: construct.verify_acycle_geodesics(bs)),
        ("displaced-paths", lambda: construct.verify_displaced_paths(bs)),
        ("symmetry", lambda: _bs_symmetry(bs, group())),
        ("pair-transitivity", lambda: autom.verify_pair_transitivity(g, group())),
        ("case-certificates", lambda: certificates.verify_case_certificates(bs)),
        ("appendix-claims", lambda: appendix.verify_claims(bs)),
        ("final-check-all", lambda: appendix.final_disjointness_check("all")),
        ("final-check-left-maximal", lambda: appendix.final_disjointness_check("left-maximal")),
        ("final-check-unbalanced", appendix.unbalanced_case_check),
    ]


def _bs_invariants(bs):
    from .report import VerificationReport

    g = bs.graph
    inv = distance_invariants(g)
    rep = VerificationReport("construction invariants")
    want = {"n": 102, "m": 153, "degree": 3, "girth": 9, "diameter": 7,
            "array": ((3, 2, 2, 2, 1, 1, 1), (1, 1, 1, 1, 1, 1, 3))}
    got = {"n": g.n, "m": g.m, "degree": inv.regular_degree, "girth": inv.girth,
           "diameter": inv.diameter, "array": inv.intersection_array}
    for key in want:
        rep.expect(got[key] == want[key], field=key, expected=want[key], got=got[key])
    return rep


def _bs_symmetry(bs, group):
    from .report import VerificationReport

    g = bs.graph
    rep = VerificationReport("automorphism group")
    rep.expect(group.order == 2448, order=group.order)
    rep.expect(len(group.vertex_orbits) == 1, vertex_orbits=len(group.vertex_orbits))
    rep.expect(len(group.edge_orbits) == 1, edge_orbits=len(group.edge_orbits))
    per_distance = autom.pair_orbits_by_distance(g, group)
    rep.expect(all(c == 1 for c in per_distance.values()), pair_orbits=per_distance)
    maps = autom.h_preserving_group(bs)
    rep.expect(len(set(maps)) == 136, h_preserving=len(set(maps)))
    rep.expect(all(autom.is_automorphism(g, p) for p in maps), problem="map is not an automorphism")
    rep.details.update(order=group.order, pair_orbits=per_distance)
    return rep


def cmd_verify_paper(args) -> int:
    skip = set(args.skip_check or [])
    checks = paper_reports()
    unknown = skip - {name for name, _ in checks}
    if unknown:
        raise InputError(f"unknown check(s) {sorted(unknown)}; known: {[n for n, _ in checks]}")
    ok = True
    for name, run in checks:
        if name in skip:
            continue
        rep = run()
        emit({"check": name, **rep.as_dict()})
        say(f"{'PASS' if rep.passed else 'FAIL'} {name} ({rep.checked} checks)")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_FAILED


def cmd_scan(args) -> int:
    cfg = RunConfig(jobs=args.jobs, mode=args.mode, node_budget=args.node_budget,
                    min_n=args.min_n, max_n=args.max_n, require_cubic=args.filter_cubic,
                    require_colorable=args.filter_colorable, skip=args.skip,
                    timing=not args.no_timing)
    try:
        cfg.validate()
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = _read_lines(args.input)
    t0 = time.perf_counter()
    counts = {"records": 0, "errors": 0, "holds": 0}
    for rec in scan_census(lines, cfg):
        d = rec.as_dict()
        emit(d)
        if "error" in d:
            counts["errors"] += 1
            say(f"line {d['source_line']}: {d['error']}")
        else:
            counts["records"] += 1
            counts["holds"] += bool(d["property_holds"])
    say(f"scanned {counts['records']} graphs ({counts['errors']} parse errors); "
        f"property holds for {counts['holds']}; {time.perf_counter() - t0:.1f}s")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------


def _input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="graph6 file ('-' or omitted: stdin)")
    p.add_argument("--builtin", choices=["biggs-smith"], help="use the built-in instance")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=hyper.default_jobs(),
                        help="worker processes (default: RF_THREADS or 1)")
    common.add_argument("--node-budget", type=int, default=200_000,
                        help="search node cap for automorphism / witness / colouring searches")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="lovaszcheck", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit graph6 and labels of an H-expansion")
    p.add_argument("--builtin", choices=["biggs-smith"], default="biggs-smith")
    p.add_argument("--n", type=int, help="order of a custom H-expansion")
    p.add_argument("--offsets", default="1,4,2,8", help="a,b,c,d cycle steps")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invariants", parents=[common], help="distance invariants per graph")
    _input_args(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("alpha", parents=[common], help="independence number")
    _input_args(p)
    p.add_argument("--avoid", help="comma-separated vertices (indices or labels) to exclude")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("autom", parents=[common], help="automorphism group")
    _input_args(p)
    p.add_argument("--pairs", action="store_true", help="add the edge-pair class table")
    p.set_defaults(func=cmd_autom)

    p = sub.add_parser("verify-lovasz", parents=[common], help="pair-deletion check")
    _input_args(p)
    p.add_argument("--mode", choices=["brute", "orbit"], default="orbit")
    p.set_defaults(func=cmd_verify_lovasz)

    p = sub.add_parser("verify-paper", parents=[common], help="all claim checks on the built-in graph")
    p.add_argument("--skip-check", action="append", metavar="NAME",
                   help="omit a named check (repeatable)")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("witness", parents=[common], help="2k edges whose deletion drops alpha by k")
    _input_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("scan", parents=[common], help="scan a graph6 census file")
    p.add_argument("input", help="graph6 file ('-' for stdin)")
    p.add_argument("--mode", choices=["brute", "orbit"], default="orbit")
    p.add_argument("--skip", type=int, default=0, help="skip the first N records (resume)")
    p.add_argument("--filter-cubic", action="store_true")
    p.add_argument("--filter-colorable", action="store_true")
    p.add_argument("--min-n", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--no-timing", action="store_true", help="write elapsed as 0 (reproducible output)")
    p.set_defaults(func=cmd_scan)
    return ap


def run_command(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        say("error: --jobs must be >= 1")
        return EXIT_USAGE
    needs_input = args.command not in ("build", "verify-paper", "scan")
    if needs_input and not args.builtin and args.input is None and sys.stdin.isatty():
        say("error: give a graph6 file, '-' for stdin, or --builtin biggs-smith")
        return EXIT_USAGE
    try:
        return args.func(args)
    except autom.SearchBudgetExceeded as exc:
        emit({"status": "budget", "detail": str(exc)})
        say(f"search budget exhausted: {exc}")
        return EXIT_FAILED
    except (InputError, Graph6Error) as exc:
        say(f"error: {exc}")
        return EXIT_USAGE
    except ValueError as exc:
        say(f"error: {exc}")
        return EXIT_USAGE


def main() -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    sys.exit(run_command())


if __name__ == "__main__":
    main()
