"""Exhaustive and constraint-pruned enumeration of rule tables.

The naive engine walks every table and filters; the pruned engine
assigns outcomes to profiles in canonical order with forward checking
against already-assigned single-voter deviations, so its leaves satisfy
the requested no-manipulation properties by construction.  When both
optimist and pessimist strategy-proofness are requested, adjacent-swap
neighbours additionally carry the tighter single-swap monotonicity
constraint, and unanimity is forced onto cell domains whenever it is
entailed by the requested property set.  Both engines emit rules in
canonical table order, so their outputs are directly comparable.
"""

import hashlib
import json
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

from consular.core import (
    BudgetExceededError,
    Committee,
    RuleTable,
    all_ballots,
    all_committees,
    ballot_position_table,
    committee,
    enumeration_budget,
    ensure_budget,
    profile_count,
)
from consular.rangegraph import (
    RangeGraph,
    build_range_graph,
    is_bipartite,
    is_onto,
    check_weak_viability,
)
from consular.strategy import check_spo, check_spp, check_unanimous
from consular.structure import DictatorReport, dictator_report, find_marius

PROPERTY_NAMES = (
    "spo",
    "spp",
    "weak_viability",
    "unanimity",
    "irreducible",
    "non_marian",
)


class SearchIncomplete(RuntimeError):
    """The pruned search hit its deadline; partial output is not a result."""


@dataclass(frozen=True)
class SearchSpec:
    m: int
    n: int
    required: frozenset[str] = frozenset()
    classify: bool = True

    def __post_init__(self):
        if self.m < 2 or self.n < 1:
            raise ValueError("need m >= 2 and n >= 1")
        object.__setattr__(self, "required", frozenset(self.required))
        unknown = self.required - set(PROPERTY_NAMES)
        if unknown:
            raise ValueError(f"unknown properties: {sorted(unknown)}")


@dataclass(frozen=True)
class SearchResult:
    m: int
    n: int
    outcomes: tuple[Committee, ...]
    digest: str
    properties: dict
    range_edges: tuple[Committee, ...] | None = None
    range_class: str | None = None
    dictators: DictatorReport | None = None

    def as_dict(self) -> dict:
        record = {
            "m": self.m,
            "n": self.n,
            "table": [list(c) for c in self.outcomes],
            "digest": self.digest,
            "properties": dict(self.properties),
        }
        if self.range_edges is not None:
            record["range_edges"] = [list(e) for e in self.range_edges]
            record["range_class"] = self.range_class
        if self.dictators is not None:
            record["dictators"] = self.dictators.as_dict()
        return record


def table_digest(table: RuleTable) -> str:
    blob = json.dumps([table.m, table.n, [list(c) for c in table.outcomes]])
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def rule_properties(table: RuleTable, m: int, n: int, names=PROPERTY_NAMES) -> dict:
    """Evaluate the named properties of a table, short-circuit free."""
    graph = build_range_graph(table, m, n)
    out = {}
    for name in names:
        if name == "spo":
            out[name] = check_spo(table, m, n)
        elif name == "spp":
            out[name] = check_spp(table, m, n)
        elif name == "weak_viability":
            out[name] = check_weak_viability(graph)
        elif name == "unanimity":
            out[name] = check_unanimous(table, m, n)
        elif name == "irreducible":
            out[name] = is_bipartite(graph) is None
        elif name == "non_marian":
            out[name] = find_marius(table, m, n) is None
        else:
            raise ValueError(f"unknown property {name!r}")
    return out


def _range_class(graph: RangeGraph) -> str:
    if is_onto(graph):
        return "complete"
    parts = is_bipartite(graph)
    if parts is not None:
        cross = {committee(u, v) for u in parts[0] for v in parts[1]}
        if graph.edges == cross:
            return "complete-bipartite"
    return "other"


def classify(table: RuleTable, m: int, n: int, properties: dict | None = None) -> SearchResult:
    """Attach range-graph class and dictator report to a rule record."""
    graph = build_range_graph(table, m, n)
    props = properties if properties is not None else rule_properties(table, m, n)
    return SearchResult(
        m=m,
        n=n,
        outcomes=table.outcomes,
        digest=table_digest(table),
        properties=props,
        range_edges=tuple(sorted(graph.edges)),
        range_class=_range_class(graph),
        dictators=dictator_report(table, m, n),
    )


def _emit(spec: SearchSpec, table: RuleTable) -> SearchResult:
    if spec.classify:
        return classify(table, spec.m, spec.n, rule_properties(table, spec.m, spec.n))
    props = rule_properties(table, spec.m, spec.n, names=tuple(sorted(spec.required)))
    return SearchResult(
        m=spec.m,
        n=spec.n,
        outcomes=table.outcomes,
        digest=table_digest(table),
        properties=props,
    )


def _passes(table: RuleTable, m: int, n: int, required: frozenset[str]) -> bool:
    graph = build_range_graph(table, m, n)
    if "weak_viability" in required and not check_weak_viability(graph):
        return False
    if "irreducible" in required and is_bipartite(graph) is not None:
        return False
    if "non_marian" in required and find_marius(table, m, n) is not None:
        return False
    if "unanimity" in required and not check_unanimous(table, m, n):
        return False
    if "spo" in required and not check_spo(table, m, n):
        return False
    if "spp" in required and not check_spp(table, m, n):
        return False
    return True


def enumerate_all_rules(spec: SearchSpec, budget: int | None = None) -> Iterator[SearchResult]:
    """Visit every table in canonical order and yield those passing the spec."""
    cells = profile_count(spec.m, spec.n)
    total = len(all_committees(spec.m)) ** cells
    limit = enumeration_budget(budget)
    if total > limit:
        raise BudgetExceededError(
            f"{total} tables exceed the naive budget of {limit}; use pruned_search"
        )
    for combo in product(all_committees(spec.m), repeat=cells):
        table = RuleTable(spec.m, spec.n, combo)
        if _passes(table, spec.m, spec.n, spec.required):
            yield _emit(spec, table)


def pruned_search(
    spec: SearchSpec,
    budget: int | None = None,
    timeout_secs: float | None = None,
    on_reject: Callable | None = None,
) -> Iterator[SearchResult]:
    """Depth-first outcome assignment with forward checking.

    Complete and sound for the requested property set: yields exactly the
    rules enumerate_all_rules would yield.  ``on_reject(cell, value,
    neighbour, neighbour_value, reason)`` is invoked on every forward-check
    failure; a deadline raises SearchIncomplete after whatever results were
    already yielded.
    """
    m, n, req = spec.m, spec.n, spec.required
    cells = profile_count(m, n)
    ensure_budget(cells, budget)
    ballots = all_ballots(m)
    pos = ballot_position_table(m)
    comms = all_committees(m)
    nc = len(comms)
    fact = len(ballots)
    radix = [fact ** (n - 1 - i) for i in range(n)]

    spo, spp = "spo" in req, "spp" in req
    best_worst = [
        [(min(p[c0], p[c1]), max(p[c0], p[c1])) for c0, c1 in comms] for p in pos
    ]
    # dev_ok[b][w][w2]: deviating away from a profile where the voter's
    # sincere ballot is b and the outcome w may not improve w2 for them.
    dev_ok = []
    for b in range(fact):
        by_w = []
        for w in range(nc):
            bw, ww = best_worst[b][w]
            row = []
            for w2 in range(nc):
                bw2, ww2 = best_worst[b][w2]
                row.append(not ((spo and bw2 < bw) or (spp and ww2 < ww)))
            by_w.append(row)
        dev_ok.append(by_w)

    # single-swap monotonicity constraints, sound only under SPO +  SPP
    mono_pair: dict[tuple[int, int], list[list[bool]]] = {}
    if spo and spp:
        rank_of = {b: r for r, b in enumerate(ballots)}
        for b1, ballot in enumerate(ballots):
            for p in range(1, m):
                s, x = ballot[p], ballot[p - 1]
                swapped = ballot[: p - 1] + (s, x) + ballot[p + 1 :]
                b2 = rank_of[swapped]
                table = [[True] * nc for _ in range(nc)]
                for w1i, w1 in enumerate(comms):
                    if s in w1 or x not in w1:
                        allowed = {w1}
                    else:
                        partner = w1[0] if w1[1] == x else w1[1]
                        allowed = {w1, committee(s, partner)}
                    for w2i, w2 in enumerate(comms):
                        if w2 not in allowed:
                            table[w1i][w2i] = False
                mono_pair[(b1, b2)] = table

    force_unanimity = "unanimity" in req or {"spo", "spp", "weak_viability"} <= req
    all_values = list(range(nc))
    digit_list = list(product(range(fact), repeat=n))
    domains = []
    for digits in digit_list:
        if force_unanimity:
            tops = {ballots[d][0] for d in digits}
            if len(tops) == 1:
                t = tops.pop()
                domains.append([ci for ci, c in enumerate(comms) if t in c])
                continue
        domains.append(all_values)

    neighbours: list[list[tuple[int, int, int]]] = [[] for _ in range(cells)]
    for idx, digits in enumerate(digit_list):
        for i in range(n):
            base = idx - digits[i] * radix[i]
            for r in range(fact):
                if r == digits[i]:
                    continue
                k = base + r * radix[i]
                if k < idx:
                    neighbours[idx].append((k, digits[i], r))

    deadline = None if timeout_secs is None else time.monotonic() + timeout_secs
    assignment = [0] * cells
    nodes = 0

    def leaf_ok(outcomes: tuple[Committee, ...]) -> bool:
        table = RuleTable(m, n, outcomes)
        rest = req - {"spo", "spp", "unanimity"} if force_unanimity else req - {"spo", "spp"}
        return _passes(table, m, n, rest)

    def dfs(j: int) -> Iterator[SearchResult]:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise SearchIncomplete(
                f"pruned search stopped at the deadline after {nodes} nodes"
            )
        if j == cells:
            outcomes = tuple(comms[ci] for ci in assignment)
            if leaf_ok(outcomes):
                yield _emit(spec, RuleTable(m, n, outcomes))
            return
        for w in domains[j]:
            ok = True
            for k, bj, bk in neighbours[j]:
                wk = assignment[k]
                if not (dev_ok[bj][w][wk] and dev_ok[bk][wk][w]):
                    ok = False
                    if on_reject is not None:
                        on_reject(j, w, k, wk, "deviation")
                    break
                forward = mono_pair.get((bj, bk))
                if forward is not None and not forward[w][wk]:
                    ok = False
                    if on_reject is not None:
                        on_reject(j, w, k, wk, "monotonicity")
                    break
                backward = mono_pair.get((bk, bj))
                if backward is not None and not backward[wk][w]:
                    ok = False
                    if on_reject is not None:
                        on_reject(j, w, k, wk, "monotonicity")
                    break
            if ok:
                assignment[j] = w
                yield from dfs(j + 1)
        return

    return dfs(0)


def summarize(results) -> dict:
    """Aggregate counts over a finished result stream."""
    summary = {
        "emitted": 0,
        "by_range_class": {},
        "with_range_dictator": 0,
        "marian": 0,
    }
    for r in results:
        summary["emitted"] += 1
        if r.range_class is not None:
            summary["by_range_class"][r.range_class] = (
                summary["by_range_class"].get(r.range_class, 0) + 1
            )
        if r.dictators is not None:
            if r.dictators.range_dictators:
                summary["with_range_dictator"] += 1
            if r.dictators.marius is not None:
                summary["marian"] += 1
    return summary
