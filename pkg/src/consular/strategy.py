"""Manipulation search and ballot-monotonicity verification.

All scans run in a fixed canonical order (profile index ascending, then
voter, then misreport rank / move target), so any witness returned is
the globally first one and repeated runs are identical.  Budgets are
checked before a scan starts; a partial scan never stands in for a
proof.
"""

from dataclasses import dataclass
from itertools import product

from consular.core import (
    Ballot,
    Committee,
    Profile,
    RuleOracle,
    RuleTable,
    all_ballots,
    ballot_position_table,
    ensure_budget,
    profile_count,
    tabulate,
)
from consular.prefs import SetOrderKind


@dataclass(frozen=True)
class Manipulation:
    """A profitable misreport: the deviation outcome beats the sincere one."""

    profile: Profile
    voter: int
    misreport: Ballot
    sincere_outcome: Committee
    manipulated_outcome: Committee
    kind: SetOrderKind

    def as_dict(self) -> dict:
        return {
            "profile": [list(b) for b in self.profile],
            "voter": self.voter,
            "misreport": list(self.misreport),
            "sincere_outcome": list(self.sincere_outcome),
            "manipulated_outcome": list(self.manipulated_outcome),
            "kind": self.kind.value,
        }


@dataclass(frozen=True)
class MonotonicityViolation:
    """A single-ballot move whose outcome transition the rule may not make.

    Clause "1" means the committee changed although it had to stay fixed;
    clause "2" means a member was replaced without the required overtake.
    """

    profile: Profile
    voter: int
    alternative: int
    edited_ballot: Ballot
    before: Committee
    after: Committee
    clause: str

    def as_dict(self) -> dict:
        return {
            "profile": [list(b) for b in self.profile],
            "voter": self.voter,
            "alternative": self.alternative,
            "edited_ballot": list(self.edited_ballot),
            "before": list(self.before),
            "after": list(self.after),
            "clause": self.clause,
        }


def _materialize(rule: RuleOracle, m: int, n: int, budget: int | None) -> tuple[Committee, ...]:
    if isinstance(rule, RuleTable) and rule.m == m and rule.n == n:
        return rule.outcomes
    return tabulate(rule, m, n, budget).outcomes


def find_manipulation(
    rule: RuleOracle, kind: SetOrderKind, m: int, n: int, budget: int | None = None
) -> Manipulation | None:
    """First profitable misreport in canonical scan order, or None.

    The misreport scan covers all m!-1 alternative ballots, not only
    adjacent swaps.
    """
    ensure_budget(profile_count(m, n), budget)
    outcomes = _materialize(rule, m, n, budget)
    ballots = all_ballots(m)
    pos = ballot_position_table(m)
    fact = len(ballots)
    radix = [fact ** (n - 1 - i) for i in range(n)]
    optimistic = kind in (SetOrderKind.OPTIMISTIC, SetOrderKind.DUGGAN_SCHWARTZ)
    pessimistic = kind in (SetOrderKind.PESSIMISTIC, SetOrderKind.DUGGAN_SCHWARTZ)
    lexicographic = kind is SetOrderKind.LEXICOGRAPHIC

    for index, digits in enumerate(product(range(fact), repeat=n)):
        w = outcomes[index]
        for voter in range(n):
            p = pos[digits[voter]]
            bw = p[w[0]] if p[w[0]] < p[w[1]] else p[w[1]]
            ww = p[w[0]] if p[w[0]] > p[w[1]] else p[w[1]]
            base = index - digits[voter] * radix[voter]
            for mis in range(fact):
                if mis == digits[voter]:
                    continue
                w2 = outcomes[base + mis * radix[voter]]
                if w2 == w:
                    continue
                bw2 = p[w2[0]] if p[w2[0]] < p[w2[1]] else p[w2[1]]
                ww2 = p[w2[0]] if p[w2[0]] > p[w2[1]] else p[w2[1]]
                better = (
                    (optimistic and bw2 < bw)
                    or (pessimistic and ww2 < ww)
                    or (lexicographic and (bw2, ww2) < (bw, ww))
                )
                if better:
                    profile = tuple(ballots[d] for d in digits)
                    return Manipulation(profile, voter, ballots[mis], w, w2, kind)
    return None


def check_spo(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    return find_manipulation(rule, SetOrderKind.OPTIMISTIC, m, n, budget) is None


def check_spp(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    return find_manipulation(rule, SetOrderKind.PESSIMISTIC, m, n, budget) is None


def check_lex_sp(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    return find_manipulation(rule, SetOrderKind.LEXICOGRAPHIC, m, n, budget) is None


def _moved(ballot: Ballot, src: int, dst: int) -> Ballot:
    items = list(ballot)
    a = items.pop(src)
    items.insert(dst, a)
    return tuple(items)


def verify_upward_monotonicity(
    rule: RuleOracle, m: int, n: int, budget: int | None = None
) -> MonotonicityViolation | None:
    """Check every upward move of every alternative in every ballot.

    Allowed transitions: a committee member moving up never changes the
    outcome; a non-member either leaves the outcome unchanged or replaces
    exactly one member it overtook.
    """
    ensure_budget(profile_count(m, n), budget)
    outcomes = _materialize(rule, m, n, budget)
    ballots = all_ballots(m)
    rank_of = {b: r for r, b in enumerate(ballots)}
    fact = len(ballots)
    radix = [fact ** (n - 1 - i) for i in range(n)]

    for index, digits in enumerate(product(range(fact), repeat=n)):
        w = outcomes[index]
        for voter in range(n):
            ballot = ballots[digits[voter]]
            base = index - digits[voter] * radix[voter]
            for src in range(1, m):
                s = ballot[src]
                for dst in range(src):
                    edited = _moved(ballot, src, dst)
                    w2 = outcomes[base + rank_of[edited] * radix[voter]]
                    if w2 == w:
                        continue
                    profile = tuple(ballots[d] for d in digits)
                    if s == w[0] or s == w[1]:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "upward-1"
                        )
                    kept = w[0] if w[0] in w2 else (w[1] if w[1] in w2 else None)
                    if kept is None or s not in w2:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "upward-2"
                        )
                    replaced = w[1] if kept == w[0] else w[0]
                    px = ballot.index(replaced)
                    if not dst <= px < src:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "upward-2"
                        )
    return None


def verify_downward_monotonicity(
    rule: RuleOracle, m: int, n: int, budget: int | None = None
) -> MonotonicityViolation | None:
    """Mirror of the upward verifier for downward moves.

    A non-member moving down never changes the outcome; a member may only
    be replaced by an alternative that overtook it.
    """
    ensure_budget(profile_count(m, n), budget)
    outcomes = _materialize(rule, m, n, budget)
    ballots = all_ballots(m)
    rank_of = {b: r for r, b in enumerate(ballots)}
    fact = len(ballots)
    radix = [fact ** (n - 1 - i) for i in range(n)]

    for index, digits in enumerate(product(range(fact), repeat=n)):
        w = outcomes[index]
        for voter in range(n):
            ballot = ballots[digits[voter]]
            base = index - digits[voter] * radix[voter]
            for src in range(m - 1):
                s = ballot[src]
                for dst in range(src + 1, m):
                    edited = _moved(ballot, src, dst)
                    w2 = outcomes[base + rank_of[edited] * radix[voter]]
                    if w2 == w:
                        continue
                    profile = tuple(ballots[d] for d in digits)
                    if s != w[0] and s != w[1]:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "downward-1"
                        )
                    partner = w[1] if s == w[0] else w[0]
                    if partner not in w2 or s in w2:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "downward-2"
                        )
                    entrant = w2[0] if w2[0] != partner else w2[1]
                    pe = ballot.index(entrant)
                    if not src < pe <= dst:
                        return MonotonicityViolation(
                            profile, voter, s, edited, w, w2, "downward-2"
                        )
    return None


def check_unanimous(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    """Whenever all voters rank the same alternative first, it is elected."""
    ensure_budget(profile_count(m, n), budget)
    outcomes = _materialize(rule, m, n, budget)
    ballots = all_ballots(m)
    tops = [b[0] for b in ballots]
    fact = len(ballots)
    for index, digits in enumerate(product(range(fact), repeat=n)):
        t = tops[digits[0]]
        if all(tops[d] == t for d in digits):
            if t not in outcomes[index]:
                return False
    return True


def check_veto(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> bool:
    """A unanimously last-ranked alternative is never elected."""
    ensure_budget(profile_count(m, n), budget)
    outcomes = _materialize(rule, m, n, budget)
    ballots = all_ballots(m)
    bottoms = [b[-1] for b in ballots]
    fact = len(ballots)
    for index, digits in enumerate(product(range(fact), repeat=n)):
        t = bottoms[digits[0]]
        if all(bottoms[d] == t for d in digits):
            if t in outcomes[index]:
                return False
    return True


def check_scf_strategyproof(scf, k: int, n: int, budget: int | None = None) -> bool:
    """Classical strategy-proofness for a single-winner rule over k alternatives."""
    ensure_budget(profile_count(k, n), budget)
    ballots = all_ballots(k)
    for profile in product(ballots, repeat=n):
        a = scf(profile)
        for voter in range(n):
            sincere = profile[voter]
            for mis in ballots:
                if mis == sincere:
                    continue
                b = scf(profile[:voter] + (mis,) + profile[voter + 1 :])
                if sincere.index(b) < sincere.index(a):
                    return False
    return True
