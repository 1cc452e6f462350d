"""Committee comparisons induced by a ballot, plus ballot surgery.

A ballot induces three strict relations over committees: optimistic
(compare best members), pessimistic (compare worst members), and the
Duggan-Schwartz relation, their union.  The first two are total
preorders; the Duggan-Schwartz relation is manipulation-oriented and
not transitive, so it never yields a preference order.  The
lexicographic order refines both, comparing best members first and
breaking ties by the worst, and is a strict total order on committees.
"""

from enum import Enum

from consular.core import Ballot, Committee, Profile


class SetOrderKind(Enum):
    OPTIMISTIC = "optimistic"
    PESSIMISTIC = "pessimistic"
    DUGGAN_SCHWARTZ = "duggan-schwartz"
    LEXICOGRAPHIC = "lexicographic"


class Comparison(Enum):
    FIRST = "first"
    SECOND = "second"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


def best(ballot: Ballot, members) -> int:
    """The element of a nonempty subset appearing earliest in the ballot."""
    if not members:
        raise ValueError("best() needs a nonempty set")
    return min(members, key=ballot.index)


def worst(ballot: Ballot, members) -> int:
    if not members:
        raise ValueError("worst() needs a nonempty set")
    return max(members, key=ballot.index)


def strictly_prefers(kind: SetOrderKind, ballot: Ballot, x: Committee, y: Committee) -> bool:
    """True iff committee x is strictly preferred to y under the given relation.

    For the Duggan-Schwartz kind this is the one-directional strict
    relation; both directions may hold at once for conflicting pairs.
    """
    bx = min(ballot.index(x[0]), ballot.index(x[1]))
    by = min(ballot.index(y[0]), ballot.index(y[1]))
    wx = max(ballot.index(x[0]), ballot.index(x[1]))
    wy = max(ballot.index(y[0]), ballot.index(y[1]))
    if kind is SetOrderKind.OPTIMISTIC:
        return bx < by
    if kind is SetOrderKind.PESSIMISTIC:
        return wx < wy
    if kind is SetOrderKind.DUGGAN_SCHWARTZ:
        return bx < by or wx < wy
    if kind is SetOrderKind.LEXICOGRAPHIC:
        return (bx, wx) < (by, wy)
    raise ValueError(f"unknown kind {kind!r}")


def cmp_set(kind: SetOrderKind, ballot: Ballot, x: Committee, y: Committee) -> Comparison:
    """Compare two committees under one of the four relations.

    Optimistic and pessimistic results may be EQUIVALENT for distinct
    committees; the lexicographic order is antisymmetric.  The
    Duggan-Schwartz answer is checked in the first-argument direction
    first, so for conflicting pairs (each strictly preferred to the
    other) both argument orders report FIRST.
    """
    if kind is SetOrderKind.DUGGAN_SCHWARTZ:
        if x == y:
            return Comparison.EQUIVALENT
        if strictly_prefers(kind, ballot, x, y):
            return Comparison.FIRST
        if strictly_prefers(kind, ballot, y, x):
            return Comparison.SECOND
        return Comparison.INCOMPARABLE
    if strictly_prefers(kind, ballot, x, y):
        return Comparison.FIRST
    if strictly_prefers(kind, ballot, y, x):
        return Comparison.SECOND
    return Comparison.EQUIVALENT


def swap_up(profile: Profile, voter: int, alternative: int) -> Profile:
    """Swap an alternative with the one directly above it in one ballot."""
    ballot = profile[voter]
    pos = ballot.index(alternative)
    if pos == 0:
        raise ValueError(f"alternative {alternative} is already ranked first")
    edited = list(ballot)
    edited[pos - 1], edited[pos] = edited[pos], edited[pos - 1]
    return profile[:voter] + (tuple(edited),) + profile[voter + 1 :]


def move_to(profile: Profile, voter: int, alternative: int, position: int) -> Profile:
    """Reinsert an alternative at a given position, preserving the rest."""
    ballot = profile[voter]
    if not 0 <= position < len(ballot):
        raise ValueError(f"position {position} out of range")
    edited = [a for a in ballot if a != alternative]
    edited.insert(position, alternative)
    return profile[:voter] + (tuple(edited),) + profile[voter + 1 :]
