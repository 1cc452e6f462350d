"""Lexicographic extension of ballots to committee orders, and linkedness.

A ballot extends to a strict total order over all committees (best
member first, worst member as tie-break).  Restricting those orders to
the edges of a range graph yields a domain of committee orders; two
committees are connected in such a domain when each can be ranked first
with the other second, and the domain is linked when the committees can
be enumerated so that every one (after the second) is connected to at
least two predecessors.
"""

from dataclasses import dataclass

from consular.core import Ballot, Committee, all_ballots, all_committees
from consular.rangegraph import RangeGraph

CommitteeOrder = tuple[Committee, ...]


@dataclass(frozen=True)
class LinearDomain:
    """A set of strict total orders over a common committee universe."""

    universe: frozenset[Committee]
    orders: tuple[CommitteeOrder, ...]

    def __post_init__(self):
        if not self.orders:
            raise ValueError("a domain needs at least one order")
        for order in self.orders:
            if len(order) != len(self.universe) or set(order) != self.universe:
                raise ValueError("every order must cover the universe exactly")


def extend_lex(ballot: Ballot) -> CommitteeOrder:
    """Total order over all committees: by best member, then by worst."""
    m = len(ballot)
    if m < 2:
        raise ValueError("need at least two alternatives")
    pos = {a: i for i, a in enumerate(ballot)}
    return tuple(
        sorted(
            all_committees(m),
            key=lambda e: (min(pos[e[0]], pos[e[1]]), max(pos[e[0]], pos[e[1]])),
        )
    )


def restrict_order(order: CommitteeOrder, graph: RangeGraph) -> CommitteeOrder:
    """Subsequence of the order containing exactly the graph's edges."""
    if not graph.edges:
        raise ValueError("cannot restrict to an empty range")
    if not graph.edges <= set(order):
        raise ValueError("the order does not cover the graph's edges")
    return tuple(e for e in order if e in graph.edges)


def build_alpha_domain(m: int, graph: RangeGraph) -> LinearDomain:
    """Restricted lexicographic orders of all m! ballots, deduplicated."""
    if not graph.edges:
        raise ValueError("cannot build a domain over an empty range")
    orders = sorted({restrict_order(extend_lex(b), graph) for b in all_ballots(m)})
    return LinearDomain(universe=graph.edges, orders=tuple(orders))


def are_connected(domain: LinearDomain, x: Committee, y: Committee) -> bool:
    """True iff some order ranks x first with y second, and some order the
    reverse."""
    if x == y:
        raise ValueError("connectedness is defined for distinct committees")
    if x not in domain.universe or y not in domain.universe:
        raise ValueError("both committees must belong to the domain universe")
    forward = any(o[0] == x and o[1] == y for o in domain.orders)
    backward = any(o[0] == y and o[1] == x for o in domain.orders)
    return forward and backward


def is_linked(domain: LinearDomain) -> tuple[Committee, ...] | None:
    """Witness ordering per the linked-domain definition, or None.

    Starts from the lowest connected pair and greedily adds the lowest
    committee connected to at least two already placed, backtracking on
    dead ends, so the search is a complete decision procedure and the
    witness deterministic.
    """
    universe = sorted(domain.universe)
    if len(universe) < 2:
        raise ValueError("linkedness needs a universe of at least two committees")
    heads = {(o[0], o[1]) for o in domain.orders}
    connected = {
        (x, y)
        for x in universe
        for y in universe
        if x != y and (x, y) in heads and (y, x) in heads
    }
    neighbours = {x: {y for y in universe if (x, y) in connected} for x in universe}

    def extend(placed: list[Committee], remaining: list[Committee]):
        if not remaining:
            return placed
        placed_set = set(placed)
        for cand in remaining:
            if len(neighbours[cand] & placed_set) >= 2:
                found = extend(placed + [cand], [r for r in remaining if r != cand])
                if found:
                    return found
        return None

    for x1 in universe:
        for x2 in universe:
            if x2 == x1 or (x1, x2) not in connected:
                continue
            rest = [r for r in universe if r not in (x1, x2)]
            found = extend([x1, x2], rest)
            if found:
                return tuple(found)
    return None
