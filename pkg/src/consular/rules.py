"""Constructors for the benchmark rules, each exposed as a callable oracle.

Every constructor returns a ConsularRule whose ``name`` doubles as its
registry identifier for the command line.  Tie-breaking is always
lexicographic by alternative index, which keeps every rule
deterministic.
"""

from dataclasses import dataclass, field
from typing import Callable

from consular.core import (
    Committee,
    Profile,
    RuleTable,
    alt_index,
    committee,
)
from consular.rangegraph import RangeGraph, is_edge_connected, range_graph
from consular.structure import favourite_committee


@dataclass(frozen=True)
class ConsularRule:
    """A named rule: evaluation function plus its (m, n) signature."""

    name: str
    m: int
    n: int
    evaluate: Callable[[Profile], Committee] = field(compare=False)

    def __call__(self, profile: Profile) -> Committee:
        return self.evaluate(profile)


def marian_majority(m: int, n: int) -> ConsularRule:
    """Alternative 0 always wins; the second seat goes to the pairwise
    majority champion.

    Among the other alternatives, x beats y when a strict majority of
    voters rank x above y; the seat goes to the lowest-indexed undominated
    alternative (lowest-indexed overall if a majority cycle leaves none
    undominated, which needs m >= 4 and n >= 3).  For m = 3 this is plain
    majority voting between the two non-fixed alternatives with ties to
    the lower index.
    """
    if m < 3:
        raise ValueError("needs at least three alternatives")

    def evaluate(profile: Profile) -> Committee:
        half = len(profile)
        others = range(1, m)

        def beats(x: int, y: int) -> bool:
            wins = sum(1 for b in profile if b.index(x) < b.index(y))
            return 2 * wins > half

        undominated = [
            x for x in others if not any(beats(y, x) for y in others if y != x)
        ]
        second = undominated[0] if undominated else 1
        return committee(0, second)

    return ConsularRule(f"marian_majority:m={m},n={n}", m, n, evaluate)


def marian_dictator(m: int, n: int, voter: int = 0) -> ConsularRule:
    """Alternative 0 always wins; one voter's best other alternative takes
    the second seat."""
    if m < 3:
        raise ValueError("needs at least three alternatives")
    if not 0 <= voter < n:
        raise ValueError("voter out of range")

    def evaluate(profile: Profile) -> Committee:
        second = next(a for a in profile[voter] if a != 0)
        return committee(0, second)

    return ConsularRule(f"marian_dictator:m={m},n={n},voter={voter}", m, n, evaluate)


def split_majority(n: int) -> ConsularRule:
    """Majority vote on {a,b} for one seat and on {c,d} for the other,
    ties to the lower index."""

    def evaluate(profile: Profile) -> Committee:
        half = len(profile)

        def seat(x: int, y: int) -> int:
            wins_y = sum(1 for b in profile if b.index(y) < b.index(x))
            return y if 2 * wins_y > half else x

        return committee(seat(0, 1), seat(2, 3))

    return ConsularRule(f"split_majority:n={n}", 4, n, evaluate)


def apple_orange() -> ConsularRule:
    """Single voter picks from four alternatives where {b,c} are apples and
    {a,d} oranges, and the pair must contain an apple: the top two choices
    win unless they are {a,d}, in which case the first and third do."""

    def evaluate(profile: Profile) -> Committee:
        b = profile[0]
        if committee(b[0], b[1]) == (0, 3):
            return committee(b[0], b[2])
        return committee(b[0], b[1])

    return ConsularRule("apple_orange", 4, 1, evaluate)


def dictator_rule(m: int, n: int, voter: int = 0) -> ConsularRule:
    """One voter's top two choices always win."""
    if not 0 <= voter < n:
        raise ValueError("voter out of range")

    def evaluate(profile: Profile) -> Committee:
        b = profile[voter]
        return committee(b[0], b[1])

    return ConsularRule(f"dictator:m={m},n={n},voter={voter}", m, n, evaluate)


def graph_dictator_rule(graph: RangeGraph, voter: int, n: int) -> ConsularRule:
    """One voter always receives their favourite committee in a fixed
    edge-connected graph; the rule's range reproduces the graph exactly."""
    if not graph.edges:
        raise ValueError("graph needs at least one edge")
    violation = is_edge_connected(graph)
    if violation is not None:
        raise ValueError(f"graph is not edge-connected: {violation}")
    if not 0 <= voter < n:
        raise ValueError("voter out of range")

    def evaluate(profile: Profile) -> Committee:
        return favourite_committee(profile[voter], graph)

    edges = "+".join(f"{u}{v}" for u, v in sorted(graph.edges))
    return ConsularRule(
        f"graph_dictator:m={graph.m},n={n},voter={voter},edges={edges}",
        graph.m,
        n,
        evaluate,
    )


def irreducible_bipartite_example() -> ConsularRule:
    """Single-voter rule whose range is bipartite yet which cannot be split:
    a wins iff c is preferred to d, and c wins iff a is preferred to b."""

    def evaluate(profile: Profile) -> Committee:
        b = profile[0]
        first = 0 if b.index(2) < b.index(3) else 1
        second = 2 if b.index(0) < b.index(1) else 3
        return committee(first, second)

    return ConsularRule("irreducible_bipartite_example", 4, 1, evaluate)


def mutate_table(table: RuleTable, index: int, new_outcome: Committee) -> RuleTable:
    """Copy of the table with a single outcome replaced."""
    if not 0 <= index < len(table.outcomes):
        raise ValueError(f"index {index} out of range")
    new_outcome = committee(*new_outcome)
    outcomes = table.outcomes[:index] + (new_outcome,) + table.outcomes[index + 1 :]
    return RuleTable(table.m, table.n, outcomes)


def _parse_edges(text: str, m: int) -> RangeGraph:
    edges = []
    for token in text.split("+"):
        token = token.strip()
        if len(token) != 2:
            raise ValueError(f"edge tokens are two letters, got {token!r}")
        edges.append((alt_index(token[0]), alt_index(token[1])))
    return range_graph(m, edges)


def make_rule(spec: str) -> ConsularRule:
    """Build a rule from a registry string like ``marian_majority:m=3,n=2``."""
    name, _, tail = spec.partition(":")
    params: dict[str, str] = {}
    if tail:
        for item in tail.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise ValueError(f"malformed parameter {item!r}, expected key=value")
            params[key.strip()] = value.strip()

    def intp(key: str, default: int | None = None) -> int:
        if key in params:
            return int(params[key])
        if default is None:
            raise ValueError(f"constructor {name!r} needs parameter {key!r}")
        return default

    if name == "apple_orange":
        return apple_orange()
    if name == "irreducible_bipartite_example":
        return irreducible_bipartite_example()
    if name == "marian_majority":
        return marian_majority(intp("m"), intp("n"))
    if name == "marian_dictator":
        return marian_dictator(intp("m"), intp("n"), intp("voter", 0))
    if name == "split_majority":
        return split_majority(intp("n"))
    if name == "dictator":
        return dictator_rule(intp("m"), intp("n"), intp("voter", 0))
    if name == "graph_dictator":
        if "edges" not in params:
            raise ValueError("graph_dictator needs parameter 'edges'")
        m = intp("m")
        graph = _parse_edges(params["edges"], m)
        return graph_dictator_rule(graph, intp("voter", 0), intp("n"))
    raise ValueError(f"unknown constructor {name!r}")


CONSTRUCTOR_NAMES = (
    "apple_orange",
    "dictator",
    "graph_dictator",
    "irreducible_bipartite_example",
    "marian_dictator",
    "marian_majority",
    "split_majority",
)
