"""Core value types and canonical indexing for two-seat election rules.

Alternatives are integers ``0..m-1``, displayed as letters ``a, b, c, ...``.
A ballot is a permutation of ``range(m)``, most preferred first; a profile
is one ballot per voter.  Committees are canonically sorted pairs
``(lo, hi)``.  Profiles are numbered in a mixed radix built from the
lexicographic (Lehmer) rank of each ballot, voter 0 most significant;
this pins the table file format bit-exactly and makes every scan
reproducible.
"""

import json
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from string import ascii_lowercase
from typing import Callable, Iterator

Ballot = tuple[int, ...]
Profile = tuple[Ballot, ...]
Committee = tuple[int, int]

# Any deterministic evaluator mapping a profile to a committee.  Realised
# by RuleTable and by the constructors in consular.rules.
RuleOracle = Callable[[Profile], Committee]

DEFAULT_BUDGET = 10**8
BUDGET_ENV_VAR = "CONSUL_BUDGET"


class BudgetExceededError(RuntimeError):
    """A scan was requested over more profiles or tables than allowed."""


def enumeration_budget(budget: int | None = None) -> int:
    """Resolve the effective budget: explicit value, else env, else default."""
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_BUDGET


def ensure_budget(count: int, budget: int | None = None, what: str = "profiles") -> None:
    limit = enumeration_budget(budget)
    if count > limit:
        raise BudgetExceededError(
            f"{count} {what} exceed the enumeration budget of {limit} "
            f"(override with {BUDGET_ENV_VAR} or an explicit budget)"
        )


def alt_name(index: int) -> str:
    return ascii_lowercase[index] if index < 26 else f"a{index}"


def alt_names(m: int) -> list[str]:
    return [alt_name(i) for i in range(m)]


def alt_index(name: str) -> int:
    name = name.strip()
    if len(name) == 1 and name in ascii_lowercase:
        return ascii_lowercase.index(name)
    if name.startswith("a") and name[1:].isdigit():
        return int(name[1:])
    raise ValueError(f"unknown alternative name: {name!r}")


def committee(x: int, y: int) -> Committee:
    """Canonical unordered pair; committees always store lo < hi."""
    if x == y:
        raise ValueError(f"committee members must be distinct, got {x} twice")
    return (x, y) if x < y else (y, x)


@lru_cache(maxsize=None)
def all_committees(m: int) -> tuple[Committee, ...]:
    return tuple(combinations(range(m), 2))


@lru_cache(maxsize=None)
def all_ballots(m: int) -> tuple[Ballot, ...]:
    """Every ballot over m alternatives, in lexicographic (rank) order."""
    return tuple(permutations(range(m)))


@lru_cache(maxsize=None)
def ballot_position_table(m: int) -> tuple[tuple[int, ...], ...]:
    """``table[rank][alt]`` is the position of ``alt`` in the ballot of that rank."""
    tables = []
    for ballot in all_ballots(m):
        pos = [0] * m
        for i, a in enumerate(ballot):
            pos[a] = i
        tables.append(tuple(pos))
    return tuple(tables)


def ballot_rank(ballot: Ballot) -> int:
    """Lexicographic rank of a ballot among all m! orderings (Lehmer code)."""
    m = len(ballot)
    rank = 0
    for i, x in enumerate(ballot):
        smaller_right = sum(1 for y in ballot[i + 1 :] if y < x)
        rank += smaller_right * math.factorial(m - 1 - i)
    return rank


def ballot_unrank(rank: int, m: int) -> Ballot:
    """Inverse of ballot_rank."""
    if not 0 <= rank < math.factorial(m):
        raise ValueError(f"rank {rank} out of range for m={m}")
    remaining = list(range(m))
    out = []
    for i in range(m):
        f = math.factorial(m - 1 - i)
        digit, rank = divmod(rank, f)
        out.append(remaining.pop(digit))
    return tuple(out)


def profile_count(m: int, n: int) -> int:
    return math.factorial(m) ** n


def profile_index(profile: Profile) -> int:
    """Mixed-radix index of a profile, voter 0 most significant."""
    m = len(profile[0])
    f = math.factorial(m)
    index = 0
    for ballot in profile:
        index = index * f + ballot_rank(ballot)
    return index


def profile_from_index(index: int, m: int, n: int) -> Profile:
    f = math.factorial(m)
    if not 0 <= index < f**n:
        raise ValueError(f"profile index {index} out of range for m={m}, n={n}")
    digits = []
    for _ in range(n):
        index, d = divmod(index, f)
        digits.append(d)
    ballots = all_ballots(m)
    return tuple(ballots[d] for d in reversed(digits))


def enumerate_profiles(m: int, n: int, budget: int | None = None) -> Iterator[Profile]:
    """Yield every profile exactly once, in increasing profile_index order."""
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    ensure_budget(profile_count(m, n), budget)
    return iter(product(all_ballots(m), repeat=n))


@dataclass(frozen=True)
class RuleTable:
    """Explicit rule: one committee per profile, in profile_index order."""

    m: int
    n: int
    outcomes: tuple[Committee, ...]

    def __post_init__(self):
        if self.m < 2 or self.n < 1:
            raise ValueError("a rule table needs m >= 2 and n >= 1")
        expected = profile_count(self.m, self.n)
        if len(self.outcomes) != expected:
            raise ValueError(
                f"table has {len(self.outcomes)} entries, expected {expected}"
            )
        for c in self.outcomes:
            if not (isinstance(c, tuple) and len(c) == 2 and 0 <= c[0] < c[1] < self.m):
                raise ValueError(f"invalid committee {c!r} for m={self.m}")

    def __call__(self, profile: Profile) -> Committee:
        return self.outcomes[profile_index(profile)]


def tabulate(rule: RuleOracle, m: int, n: int, budget: int | None = None) -> RuleTable:
    """Materialise any oracle as an explicit table."""
    if isinstance(rule, RuleTable) and rule.m == m and rule.n == n:
        return rule
    outcomes = tuple(rule(p) for p in enumerate_profiles(m, n, budget))
    return RuleTable(m, n, outcomes)


def save_table(table: RuleTable, path: str, names: list[str] | None = None) -> None:
    if names is None:
        names = alt_names(table.m)
    if len(names) != table.m or len(set(names)) != table.m:
        raise ValueError("need one distinct name per alternative")
    payload = {
        "m": table.m,
        "n": table.n,
        "alternatives": names,
        "table": [[lo, hi] for lo, hi in table.outcomes],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def load_table(path: str) -> RuleTable:
    """Load and validate a rule-table file; reject anything malformed."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, dict):
        raise ValueError("rule-table file must hold a JSON object")
    for key in ("m", "n", "alternatives", "table"):
        if key not in payload:
            raise ValueError(f"rule-table file missing key {key!r}")
    m, n = payload["m"], payload["n"]
    if not (isinstance(m, int) and isinstance(n, int)):
        raise ValueError("m and n must be integers")
    names = payload["alternatives"]
    if not (isinstance(names, list) and len(names) == m and len(set(names)) == m):
        raise ValueError("alternatives must list one distinct name per index")
    rows = payload["table"]
    if not isinstance(rows, list) or len(rows) != profile_count(m, n):
        raise ValueError(
            f"table must have exactly {profile_count(m, n)} rows for m={m}, n={n}"
        )
    outcomes = []
    for row in rows:
        if not (isinstance(row, list) and len(row) == 2):
            raise ValueError(f"table rows must be [lo, hi] pairs, got {row!r}")
        outcomes.append(committee(int(row[0]), int(row[1])))
        if not row[0] < row[1]:
            raise ValueError(f"table rows must be canonically sorted, got {row!r}")
    return RuleTable(m, n, tuple(outcomes))
