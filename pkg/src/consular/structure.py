"""Rule classification: Marius detection, reducibility, favourites, dictators.

A rule is reducible when it splits into two independent single-winner
rules over a partition of the alternatives.  Decomposition follows the
constructive recipe (complete sub-profiles by appending the other side
at the bottom of every ballot) and then verifies the candidate on every
profile, so rules with a bipartite range that are nevertheless entangled
are correctly rejected.
"""

from dataclasses import dataclass

from consular.core import (
    Ballot,
    Committee,
    Profile,
    RuleOracle,
    RuleTable,
    all_ballots,
    committee,
    enumerate_profiles,
    ensure_budget,
    profile_count,
    profile_index,
)
from consular.rangegraph import RangeGraph, build_range_graph, is_bipartite


@dataclass(frozen=True)
class ScfTable:
    """Single-winner component rule over a subset of the alternatives.

    Profiles are over local indices 0..k-1; ``alternatives`` maps those
    back to global labels.  Outcomes are stored locally.
    """

    alternatives: tuple[int, ...]
    n: int
    outcomes: tuple[int, ...]

    def __post_init__(self):
        k = len(self.alternatives)
        if len(self.outcomes) != profile_count(k, self.n):
            raise ValueError("component table has the wrong length")
        if any(not 0 <= o < k for o in self.outcomes):
            raise ValueError("component outcomes must be local indices")

    @property
    def k(self) -> int:
        return len(self.alternatives)

    def __call__(self, profile: Profile) -> int:
        return self.outcomes[profile_index(profile)]


@dataclass(frozen=True)
class Decomposition:
    """A verified split of a rule into two independent single-winner rules."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    left_rule: ScfTable
    right_rule: ScfTable

    def evaluate(self, profile: Profile) -> Committee:
        lp = tuple(restrict_ballot(b, self.left) for b in profile)
        rp = tuple(restrict_ballot(b, self.right) for b in profile)
        return committee(self.left[self.left_rule(lp)], self.right[self.right_rule(rp)])

    def as_dict(self) -> dict:
        return {
            "left": list(self.left),
            "right": list(self.right),
            "left_outcomes": [self.left[o] for o in self.left_rule.outcomes],
            "right_outcomes": [self.right[o] for o in self.right_rule.outcomes],
        }


@dataclass(frozen=True)
class DictatorReport:
    weak_dictators: frozenset[int]
    strong_dictators: frozenset[int]
    range_dictators: frozenset[int]
    marius: int | None

    def as_dict(self) -> dict:
        return {
            "weak_dictators": sorted(self.weak_dictators),
            "strong_dictators": sorted(self.strong_dictators),
            "range_dictators": sorted(self.range_dictators),
            "marius": self.marius,
        }


def restrict_ballot(ballot: Ballot, members: tuple[int, ...]) -> Ballot:
    """Project a ballot onto a subset, re-labelled to local indices."""
    keep = set(members)
    return tuple(members.index(a) for a in ballot if a in keep)


def find_marius(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> int | None:
    """Lowest alternative present in every outcome, or None."""
    ensure_budget(profile_count(m, n), budget)
    if isinstance(rule, RuleTable) and rule.m == m and rule.n == n:
        outcomes = iter(rule.outcomes)
    else:
        outcomes = (rule(p) for p in enumerate_profiles(m, n, budget))
    ever_present = set(range(m))
    for w in outcomes:
        ever_present &= set(w)
        if not ever_present:
            return None
    return min(ever_present)


def _component_table(
    rule: RuleOracle, n: int, members: tuple[int, ...], rest: tuple[int, ...]
) -> ScfTable | None:
    tail = tuple(sorted(rest))
    keep = set(members)
    outcomes = []
    for local_profile in enumerate_profiles(len(members), n):
        lifted = tuple(
            tuple(members[x] for x in ballot) + tail for ballot in local_profile
        )
        winners = [a for a in rule(lifted) if a in keep]
        if len(winners) != 1:
            return None
        outcomes.append(members.index(winners[0]))
    return ScfTable(members, n, tuple(outcomes))


def decompose(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> Decomposition | None:
    """Split the rule along the canonical bipartition of its range graph.

    Returns the decomposition only after verifying it reproduces the rule
    at every profile; returns None when the range is non-bipartite or the
    verification fails.
    """
    ensure_budget(profile_count(m, n), budget)
    graph = build_range_graph(rule, m, n, budget)
    parts = is_bipartite(graph)
    if parts is None:
        return None
    left, right = parts
    if not left or not right:
        return None
    left_rule = _component_table(rule, n, left, right)
    right_rule = _component_table(rule, n, right, left)
    if left_rule is None or right_rule is None:
        return None
    candidate = Decomposition(left, right, left_rule, right_rule)
    for p in enumerate_profiles(m, n, budget):
        if rule(p) != candidate.evaluate(p):
            return None
    return candidate


def favourite_committee(ballot: Ballot, graph: RangeGraph) -> Committee:
    """The lexicographically best edge of the graph for this ballot."""
    if not graph.edges:
        raise ValueError("favourite committee needs a graph with at least one edge")
    return min(
        sorted(graph.edges),
        key=lambda e: (
            min(ballot.index(e[0]), ballot.index(e[1])),
            max(ballot.index(e[0]), ballot.index(e[1])),
        ),
    )


def check_favourite_is_bimaximal(ballot: Ballot, graph: RangeGraph) -> bool:
    """True iff the favourite is the unique edge maximal under both the
    optimistic and the pessimistic order.  Meaningful for edge-connected
    graphs; elsewhere the answer is whatever the brute-force scan finds."""
    fav = favourite_committee(ballot, graph)
    bests = {e: min(ballot.index(e[0]), ballot.index(e[1])) for e in graph.edges}
    worsts = {e: max(ballot.index(e[0]), ballot.index(e[1])) for e in graph.edges}
    top_best = min(bests.values())
    top_worst = min(worsts.values())
    bimaximal = [
        e for e in sorted(graph.edges)
        if bests[e] == top_best and worsts[e] == top_worst
    ]
    return bimaximal == [fav]


def check_weak_dictator(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> frozenset[int]:
    """Voters whose first choice is elected at every profile."""
    ensure_budget(profile_count(m, n), budget)
    candidates = set(range(n))
    for p in enumerate_profiles(m, n, budget):
        w = rule(p)
        candidates = {i for i in candidates if p[i][0] in w}
        if not candidates:
            break
    return frozenset(candidates)


def check_strong_dictator(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> frozenset[int]:
    """Voters whose top two choices form the outcome at every profile."""
    ensure_budget(profile_count(m, n), budget)
    candidates = set(range(n))
    for p in enumerate_profiles(m, n, budget):
        w = rule(p)
        candidates = {i for i in candidates if committee(p[i][0], p[i][1]) == w}
        if not candidates:
            break
    return frozenset(candidates)


def check_range_dictator(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> frozenset[int]:
    """Voters whose favourite committee in the rule's own range graph is
    always elected."""
    ensure_budget(profile_count(m, n), budget)
    graph = build_range_graph(rule, m, n, budget)
    favourites = {b: favourite_committee(b, graph) for b in all_ballots(m)}
    candidates = set(range(n))
    for p in enumerate_profiles(m, n, budget):
        w = rule(p)
        candidates = {i for i in candidates if favourites[p[i]] == w}
        if not candidates:
            break
    return frozenset(candidates)


def check_committee_unanimity(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    """Whenever all voters share the same favourite committee, it is elected."""
    ensure_budget(profile_count(m, n), budget)
    graph = build_range_graph(rule, m, n, budget)
    favourites = {b: favourite_committee(b, graph) for b in all_ballots(m)}
    for p in enumerate_profiles(m, n, budget):
        shared = {favourites[b] for b in p}
        if len(shared) == 1 and rule(p) != next(iter(shared)):
            return False
    return True


def dictator_report(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> DictatorReport:
    return DictatorReport(
        weak_dictators=check_weak_dictator(rule, m, n, budget),
        strong_dictators=check_strong_dictator(rule, m, n, budget),
        range_dictators=check_range_dictator(rule, m, n, budget),
        marius=find_marius(rule, m, n, budget),
    )
