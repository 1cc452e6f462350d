"""Canonical indexing, enumeration, tables and the file format."""

import json
import math
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from consular.core import (
    BudgetExceededError,
    RuleTable,
    all_ballots,
    ballot_rank,
    ballot_unrank,
    committee,
    enumerate_profiles,
    load_table,
    profile_count,
    profile_from_index,
    profile_index,
    save_table,
    tabulate,
)
from consular.rules import apple_orange, dictator_rule


def test_ballot_rank_identity_and_reverse():
    assert ballot_rank((0, 1, 2)) == 0
    assert ballot_rank((2, 1, 0)) == 5


def test_ballot_rank_matches_enumeration_oracle():
    # independent oracle: position in the sorted list of all permutations
    expected = sorted(permutations(range(4))).index((0, 3, 1, 2))
    assert ballot_rank((0, 3, 1, 2)) == expected
    assert expected == 4


def test_ballot_rank_is_lexicographic_everywhere():
    for m in range(1, 6):
        for want, ballot in enumerate(sorted(permutations(range(m)))):
            assert ballot_rank(ballot) == want
            assert ballot_unrank(want, m) == ballot


@given(st.integers(2, 7), st.randoms())
@settings(max_examples=100, deadline=None)
def test_ballot_rank_unrank_round_trip(m, rng):
    ballot = list(range(m))
    rng.shuffle(ballot)
    ballot = tuple(ballot)
    assert ballot_unrank(ballot_rank(ballot), m) == ballot
    rank = rng.randrange(math.factorial(m))
    assert ballot_rank(ballot_unrank(rank, m)) == rank


def test_profile_index_single_voter_is_ballot_rank():
    for ballot in all_ballots(4):
        assert profile_index((ballot,)) == ballot_rank(ballot)


def test_profile_index_examples():
    assert profile_index(((0, 1, 2), (0, 1, 2))) == 0
    assert profile_index(((2, 1, 0), (0, 1, 2))) == 30


def test_profile_index_cross_checked_against_enumeration():
    target = ((2, 1, 0), (0, 1, 2))
    for i, p in enumerate(enumerate_profiles(3, 2)):
        if p == target:
            assert i == 30
            break
    else:
        pytest.fail("profile not visited")


def test_enumerate_profiles_counts_and_bounds():
    assert sum(1 for _ in enumerate_profiles(2, 1)) == 2
    assert sum(1 for _ in enumerate_profiles(3, 2)) == 36
    profiles = list(enumerate_profiles(4, 1))
    assert len(profiles) == 24
    assert profiles[0] == ((0, 1, 2, 3),)
    assert profiles[-1] == ((3, 2, 1, 0),)


def test_profile_index_is_a_bijection():
    seen = [profile_index(p) for p in enumerate_profiles(3, 2)]
    assert seen == list(range(36))
    for i in (0, 7, 35):
        assert profile_index(profile_from_index(i, 3, 2)) == i


def test_enumeration_budget_guard(monkeypatch):
    with pytest.raises(BudgetExceededError):
        enumerate_profiles(4, 10, budget=1000)
    monkeypatch.setenv("CONSUL_BUDGET", "10")
    with pytest.raises(BudgetExceededError):
        enumerate_profiles(3, 2)
    monkeypatch.setenv("CONSUL_BUDGET", "100")
    assert sum(1 for _ in enumerate_profiles(3, 2)) == 36


def test_tabulate_constant_rule():
    table = tabulate(lambda p: (0, 1), 3, 2)
    assert len(table.outcomes) == 36
    assert set(table.outcomes) == {(0, 1)}


def test_tabulate_apple_orange_range_omits_exactly_ad():
    table = tabulate(apple_orange(), 4, 1)
    assert len(table.outcomes) == 24
    missing = set(committee(x, y) for x in range(4) for y in range(x + 1, 4)) - set(
        table.outcomes
    )
    assert missing == {(0, 3)}


def test_tabulate_dictator_depends_only_on_most_significant_digit():
    table = tabulate(dictator_rule(3, 2, 0), 3, 2)
    for r0 in range(6):
        block = table.outcomes[r0 * 6 : (r0 + 1) * 6]
        assert len(set(block)) == 1


def test_tabulate_round_trips_with_oracle():
    rule = apple_orange()
    table = tabulate(rule, 4, 1)
    for p in enumerate_profiles(4, 1):
        assert table(p) == rule(p)


def test_committee_is_canonical():
    assert committee(2, 0) == (0, 2)
    with pytest.raises(ValueError):
        committee(1, 1)


def test_rule_table_validation():
    with pytest.raises(ValueError):
        RuleTable(3, 1, ((0, 1),) * 5)
    with pytest.raises(ValueError):
        RuleTable(3, 1, ((0, 3),) * 6)
    with pytest.raises(ValueError):
        RuleTable(3, 1, ((1, 0),) * 6)


def test_table_file_round_trip(tmp_path):
    table = tabulate(apple_orange(), 4, 1)
    path = tmp_path / "apple.json"
    save_table(table, str(path))
    again = load_table(str(path))
    assert again == table
    payload = json.loads(path.read_text())
    assert payload["m"] == 4
    assert payload["alternatives"] == ["a", "b", "c", "d"]
    assert payload["table"][0] == [0, 1]


def test_table_file_rejects_malformed(tmp_path):
    table = tabulate(apple_orange(), 4, 1)
    path = tmp_path / "apple.json"
    save_table(table, str(path))
    payload = json.loads(path.read_text())

    short = dict(payload, table=payload["table"][:-1])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(short))
    with pytest.raises(ValueError):
        load_table(str(bad))

    unsorted = dict(payload, table=[[1, 0]] + payload["table"][1:])
    bad.write_text(json.dumps(unsorted))
    with pytest.raises(ValueError):
        load_table(str(bad))

    out_of_range = dict(payload, table=[[0, 9]] + payload["table"][1:])
    bad.write_text(json.dumps(out_of_range))
    with pytest.raises(ValueError):
        load_table(str(bad))

    missing = {k: v for k, v in payload.items() if k != "n"}
    bad.write_text(json.dumps(missing))
    with pytest.raises(ValueError):
        load_table(str(bad))


def test_profile_count():
    assert profile_count(3, 2) == 36
    assert profile_count(4, 3) == 13824
