"""Command-line driver: check, analyze, search, construct, export-dot.

Report bodies carry no timestamps or machine identifiers; run metadata
goes to a ``<out>.meta.json`` sidecar when writing to a file.  Exit
codes: 0 success / all requested properties hold, 1 a property fails,
2 bad input, 3 enumeration budget exceeded, 4 search deadline hit.
"""

import argparse
import json
import os
import sys
import time

from consular import rules as rules_mod
from consular.core import (
    BudgetExceededError,
    RuleTable,
    alt_names,
    load_table,
    save_table,
    tabulate,
)
from consular.linked import build_alpha_domain, is_linked
from consular.prefs import SetOrderKind
from consular.rangegraph import (
    build_range_graph,
    check_weak_viability,
    diameter,
    is_acyclic,
    is_bipartite,
    is_edge_connected,
    is_onto,
    to_dot,
)
from consular.search import (
    SearchIncomplete,
    SearchSpec,
    enumerate_all_rules,
    pruned_search,
    summarize,
)
from consular.strategy import (
    check_unanimous,
    check_veto,
    find_manipulation,
    verify_downward_monotonicity,
    verify_upward_monotonicity,
)
from consular.structure import (
    check_committee_unanimity,
    check_range_dictator,
    check_strong_dictator,
    check_weak_dictator,
    decompose,
    dictator_report,
)

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3
EXIT_INCOMPLETE = 4

CHECKABLE_PROPERTIES = (
    "spo",
    "spp",
    "lex-sp",
    "weak-viability",
    "onto",
    "unanimity",
    "veto",
    "weak-dictator",
    "strong-dictator",
    "range-dictator",
    "committee-unanimity",
    "upward-monotonicity",
    "downward-monotonicity",
    "edge-connectivity",
)


def _resolve_rule(source: str) -> tuple[RuleTable, str, str]:
    """Return a tabulated rule, its display name, and its origin kind."""
    if source.endswith(".json") or os.path.exists(source):
        table = load_table(source)
        name = os.path.splitext(os.path.basename(source))[0]
        return table, name, "file"
    rule = rules_mod.make_rule(source)
    return tabulate(rule, rule.m, rule.n), rule.name, "constructor"


def _check_one(table: RuleTable, prop: str) -> dict:
    m, n = table.m, table.n
    if prop in ("spo", "spp", "lex-sp"):
        kind = {
            "spo": SetOrderKind.OPTIMISTIC,
            "spp": SetOrderKind.PESSIMISTIC,
            "lex-sp": SetOrderKind.LEXICOGRAPHIC,
        }[prop]
        witness = find_manipulation(table, kind, m, n)
        entry = {"holds": witness is None}
        if witness is not None:
            entry["witness"] = witness.as_dict()
        return entry
    if prop == "weak-viability":
        return {"holds": check_weak_viability(build_range_graph(table, m, n))}
    if prop == "onto":
        return {"holds": is_onto(build_range_graph(table, m, n))}
    if prop == "unanimity":
        return {"holds": check_unanimous(table, m, n)}
    if prop == "veto":
        return {"holds": check_veto(table, m, n)}
    if prop == "committee-unanimity":
        return {"holds": check_committee_unanimity(table, m, n)}
    if prop in ("weak-dictator", "strong-dictator", "range-dictator"):
        checker = {
            "weak-dictator": check_weak_dictator,
            "strong-dictator": check_strong_dictator,
            "range-dictator": check_range_dictator,
        }[prop]
        voters = sorted(checker(table, m, n))
        return {"holds": bool(voters), "voters": voters}
    if prop in ("upward-monotonicity", "downward-monotonicity"):
        verifier = (
            verify_upward_monotonicity
            if prop == "upward-monotonicity"
            else verify_downward_monotonicity
        )
        violation = verifier(table, m, n)
        entry = {"holds": violation is None}
        if violation is not None:
            entry["witness"] = violation.as_dict()
        return entry
    if prop == "edge-connectivity":
        violation = is_edge_connected(build_range_graph(table, m, n))
        entry = {"holds": violation is None}
        if violation is not None:
            entry["witness"] = [list(violation[0]), list(violation[1])]
        return entry
    raise ValueError(f"unknown property {prop!r}")


def _emit_report(
    report: dict, out: str | None, started: float, argv: list[str], source: str | None = None
) -> None:
    """Write the stable report body; run metadata goes to the sidecar only."""
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)
    meta = {"elapsed_secs": round(time.time() - started, 3), "argv": argv}
    if source is not None:
        meta["rule_source"] = source
    with open(out + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_check(args, argv) -> int:
    started = time.time()
    table, name, origin = _resolve_rule(args.rule)
    wanted = [p.strip() for p in args.properties.split(",") if p.strip()]
    for p in wanted:
        if p not in CHECKABLE_PROPERTIES:
            raise ValueError(f"unknown property {p!r}; choose from {CHECKABLE_PROPERTIES}")
    results = {p: _check_one(table, p) for p in wanted}
    report = {
        "rule": {"name": name, "m": table.m, "n": table.n},
        "properties": results,
        "all_hold": all(entry["holds"] for entry in results.values()),
    }
    _emit_report(report, args.out, started, argv, source=origin)
    return EXIT_OK if report["all_hold"] else EXIT_PROPERTY_FAILED


def cmd_analyze(args, argv) -> int:
    started = time.time()
    table, name, origin = _resolve_rule(args.rule)
    m, n = table.m, table.n
    graph = build_range_graph(table, m, n)
    parts = is_bipartite(graph)
    decomposition = decompose(table, m, n)
    report_dict = dictator_report(table, m, n)
    dia = diameter(graph)
    linked_entry: dict = {}
    if len(graph.edges) >= 2:
        witness = is_linked(build_alpha_domain(m, graph))
        linked_entry = {
            "is_linked": witness is not None,
            "witness": [list(e) for e in witness] if witness else None,
        }
    else:
        linked_entry = {"is_linked": None, "witness": None}
    violation = is_edge_connected(graph)
    report = {
        "rule": {"name": name, "m": m, "n": n},
        "alternatives": alt_names(m),
        "range_graph": {
            "edges": [list(e) for e in sorted(graph.edges)],
            "weakly_viable": check_weak_viability(graph),
            "onto": is_onto(graph),
            "acyclic": is_acyclic(graph),
            "bipartition": [list(parts[0]), list(parts[1])] if parts else None,
            "edge_connected": violation is None,
            "edge_connectivity_violation": (
                [list(violation[0]), list(violation[1])] if violation else None
            ),
            "diameter": dia if dia != float("inf") else "infinity",
        },
        "decomposition": decomposition.as_dict() if decomposition else None,
        "dictators": report_dict.as_dict(),
        "linked_domain": linked_entry,
    }
    _emit_report(report, args.out, started, argv, source=origin)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(to_dot(graph, name))
    return EXIT_OK


def cmd_search(args, argv) -> int:
    started = time.time()
    required = frozenset(
        p.strip().replace("-", "_") for p in args.require.split(",") if p.strip()
    )
    spec = SearchSpec(m=args.m, n=args.n, required=required, classify=not args.no_classify)
    engine = pruned_search if args.engine == "pruned" else enumerate_all_rules
    kwargs = {}
    if args.engine == "pruned" and args.timeout_secs is not None:
        kwargs["timeout_secs"] = args.timeout_secs
    results = []
    incomplete = False
    ldjson_path = args.out + ".ldjson"
    try:
        with open(ldjson_path, "w", encoding="utf-8") as fh:
            for result in engine(spec, **kwargs):
                results.append(result)
                fh.write(json.dumps(result.as_dict(), sort_keys=True) + "\n")
    except SearchIncomplete:
        incomplete = True
    summary = summarize(results)
    summary["complete"] = not incomplete
    summary["engine"] = args.engine
    summary["spec"] = {"m": spec.m, "n": spec.n, "required": sorted(spec.required)}
    _emit_report(summary, args.out + ".summary.json", started, argv)
    return EXIT_INCOMPLETE if incomplete else EXIT_OK


def cmd_construct(args, argv) -> int:
    rule = rules_mod.make_rule(args.rule)
    table = tabulate(rule, rule.m, rule.n)
    save_table(table, args.out)
    return EXIT_OK


def cmd_export_dot(args, argv) -> int:
    table, name, origin = _resolve_rule(args.rule)
    graph = build_range_graph(table, table.m, table.n)
    text = to_dot(graph, name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="consular",
        description="Verify, analyse and search two-seat committee election rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check named properties of a rule")
    check.add_argument("--rule", required=True, help="table file or constructor name[:params]")
    check.add_argument(
        "--properties",
        required=True,
        help="comma-separated list, e.g. spo,spp,weak-viability",
    )
    check.add_argument("--out", help="write the JSON report here instead of stdout")
    check.set_defaults(func=cmd_check)

    analyze = sub.add_parser("analyze", help="full structural report for a rule")
    analyze.add_argument("--rule", required=True)
    analyze.add_argument("--out")
    analyze.add_argument("--dot", help="also write the range graph in DOT format")
    analyze.set_defaults(func=cmd_analyze)

    search = sub.add_parser("search", help="enumerate rules satisfying properties")
    search.add_argument("--m", type=int, required=True)
    search.add_argument("--n", type=int, required=True)
    search.add_argument(
        "--require",
        default="",
        help="comma-separated properties: spo,spp,weak-viability,unanimity,irreducible,non-marian",
    )
    search.add_argument("--engine", choices=("naive", "pruned"), default="naive")
    search.add_argument("--timeout-secs", type=float)
    search.add_argument("--no-classify", action="store_true")
    search.add_argument("--out", required=True, help="output prefix for .ldjson and .summary.json")
    search.set_defaults(func=cmd_search)

    construct = sub.add_parser("construct", help="tabulate a constructor to a table file")
    construct.add_argument("--rule", required=True)
    construct.add_argument("--out", required=True)
    construct.set_defaults(func=cmd_construct)

    export = sub.add_parser("export-dot", help="write a rule's range graph as DOT")
    export.add_argument("--rule", required=True)
    export.add_argument("--out")
    export.set_defaults(func=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
