"""Command-line entry point: ``coarse-wiring <subcommand> ...``.

Exit codes: 0 success, 1 relation fails or search proved infeasible within the cap,
2 validation/verification failure, 3 solver budget exhausted, 4 parse error,
5 instance refused (too large for materialization or search).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import canonical
from .experiments import (
    RelationSample,
    check_precedes,
    read_points,
    rows_to_csv,
    run_separation_experiment,
)
from .families import (
    FamilyConfig,
    build_X,
    build_Y,
    get_column_function,
    parse_schedule,
    verify_lower_bound_arithmetic,
    verify_phi_precondition,
    verify_theorem_constants,
    verify_upper_bound_chain,
)
from .graph import GraphError, LadderSpec, build_ladder
from .search import SearchBudget, SearchRefused, Status, enumerate_subgraphs, min_wiring_volume, wiring_profile_point
from .textio import ParseError, read_graph, read_wiring, write_graph, write_wiring
from .wiring import edge_congestion, validate, vertex_multiplicity, volume, wiring_k

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_EXHAUSTED, EXIT_PARSE, EXIT_REFUSED = 0, 1, 2, 3, 4, 5


def _config(args) -> FamilyConfig:
    return FamilyConfig(schedule=parse_schedule(args.schedule), colfn=get_column_function(args.colfn))


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--schedule", default="paper", help="paper | toy:<base>[:<offset>]")
    p.add_argument("--colfn", default="default", help="column function name")


def cmd_build(args) -> int:
    if args.kind == "ladder":
        g = build_ladder(LadderSpec(args.columns, args.spacing, args.segments), family=args.family)
    else:
        cfg = _config(args)
        g = (build_X if args.kind == "X" else build_Y)(args.n, cfg)
    write_graph(g, args.output)
    print(f"{g.name}: {g.num_vertices} vertices, {g.num_edges} edges -> {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    guest, host = read_graph(args.guest), read_graph(args.host)
    w = read_wiring(args.wiring, guest, host)
    bad = validate(w)
    if bad:
        for v in bad:
            print(f"violation [{v.kind}] {v.message}")
        return EXIT_INVALID
    print(f"valid: multiplicity={vertex_multiplicity(w)} congestion={edge_congestion(w)} "
          f"k={wiring_k(w)} volume={volume(w)}")
    if args.k is not None and wiring_k(w) > args.k:
        print(f"not a coarse {args.k}-wiring")
        return EXIT_INVALID
    return EXIT_OK


def cmd_wire(args) -> int:
    cfg = _config(args)
    gamma = read_graph(args.gamma)
    if args.method == "composite":
        w = canonical.composite_wiring(gamma, cfg)
    else:
        if args.n is None:
            raise SystemExit("--n is required for this method")
        fn = {
            "subdivide": canonical.subdivision_wiring,
            "collapse": canonical.collapse_wiring,
            "phi": canonical.compact_reembedding_wiring,
        }[args.method]
        w = fn(gamma, args.n, cfg)
    write_wiring(w, args.output)
    if args.host_out:
        write_graph(w.host, args.host_out)
    print(f"{args.method}: k={wiring_k(w)} volume={volume(w)} -> {args.output}")
    return EXIT_OK


def cmd_solve(args) -> int:
    guest, host = read_graph(args.gamma), read_graph(args.host)
    budget = SearchBudget(args.k, volume_cap=args.volume_cap, node_limit=args.node_limit, jobs=args.jobs)
    res = min_wiring_volume(guest, host, budget)
    print(f"status={res.status.value} min_volume={res.min_volume} lower_bound={res.lower_bound} explored={res.explored}")
    if res.witness is not None and args.output:
        write_wiring(res.witness, args.output)
    return {Status.EXACT: EXIT_OK, Status.INFEASIBLE: EXIT_INFEASIBLE, Status.EXHAUSTED: EXIT_EXHAUSTED}[res.status]


def cmd_profile(args) -> int:
    g, host = read_graph(args.graph), read_graph(args.host)
    cands = enumerate_subgraphs(g, args.max_vertices, connected_only=not args.all_subgraphs)
    value, arg = wiring_profile_point(args.k, args.max_vertices, cands, host)
    print(f"wir^{args.k} profile at {args.max_vertices}: {value}")
    if arg is not None and args.output:
        write_graph(arg, args.output)
    return EXIT_OK


def cmd_check_bounds(args) -> int:
    cfg = _config(args)
    reports = []
    for n in range(2, args.n_max + 1):
        reports.append(verify_theorem_constants(n, cfg))
        reports.append(verify_upper_bound_chain(n, cfg))
        reports += [verify_lower_bound_arithmetic(n, m, cfg) for m in range(1, n)]
    reports += [verify_phi_precondition(n, cfg) for n in range(1, args.n_max + 1)]
    for r in reports:
        print(r if args.verbose else f"{r.name}: {'PASS' if r.ok else 'FAIL'}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_INVALID


def cmd_experiment(args) -> int:
    cfg = _config(args)
    witness_dir = Path(args.witness_dir) if args.witness_dir else None
    rows = run_separation_experiment(cfg, args.n, args.mode, args.horizon, witness_dir=witness_dir)
    text = rows_to_csv(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_relation(args) -> int:
    sample = RelationSample(read_points(args.f), read_points(args.g), args.C)
    holds = check_precedes(sample)
    print("holds" if holds else "fails")
    return EXIT_OK if holds else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coarse-wiring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a ladder, X_n or Y_n graph file")
    p.add_argument("kind", choices=["ladder", "X", "Y"])
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--columns", type=int, default=2)
    p.add_argument("--spacing", type=int, default=2)
    p.add_argument("--segments", type=int, default=2)
    p.add_argument("--family", type=int, default=1)
    _add_family_flags(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="validate and measure a wiring file")
    p.add_argument("--guest", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--wiring", required=True)
    p.add_argument("--k", type=int, help="also require a coarse k-wiring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wire", help="build a canonical wiring of a subgraph of X")
    p.add_argument("--method", choices=["subdivide", "collapse", "phi", "composite"], required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int)
    _add_family_flags(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--host-out", help="also write the host graph")
    p.set_defaults(func=cmd_wire)

    p = sub.add_parser("solve", help="exact minimal-volume k-wiring search")
    p.add_argument("--gamma", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--volume-cap", type=int)
    p.add_argument("--node-limit", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("profile", help="wiring profile point over subgraphs of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--all-subgraphs", action="store_true", help="include disconnected subgraphs")
    p.add_argument("-o", "--output", help="write the attaining subgraph")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("check-bounds", help="exact integer checks of every proof inequality")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("-v", "--verbose", action="store_true")
    _add_family_flags(p)
    p.set_defaults(func=cmd_check_bounds)

    p = sub.add_parser("experiment", help="run an experiment and emit CSV")
    p.add_argument("name", choices=["separation"])
    p.add_argument("--n", type=int, nargs="*", default=[])
    p.add_argument("--mode", choices=["oracle", "certificate"], default="oracle")
    p.add_argument("--horizon", type=int)
    p.add_argument("--witness-dir")
    _add_family_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("relation", help="check f <~ g on sampled points")
    p.add_argument("--f", required=True, help="CSV of n,value")
    p.add_argument("--g", required=True, help="CSV of n,value")
    p.add_argument("--C", type=int, required=True)
    p.set_defaults(func=cmd_relation)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SearchRefused, GraphError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
