import pytest

from consular import rules
from consular.core import tabulate


@pytest.fixture(scope="session")
def apple_table():
    return tabulate(rules.apple_orange(), 4, 1)


@pytest.fixture(scope="session")
def marian3_table():
    return tabulate(rules.marian_majority(3, 2), 3, 2)


@pytest.fixture(scope="session")
def marian_dictator4_table():
    return tabulate(rules.marian_dictator(4, 2), 4, 2)


@pytest.fixture(scope="session")
def split2_table():
    return tabulate(rules.split_majority(2), 4, 2)


@pytest.fixture(scope="session")
def split3_table():
    return tabulate(rules.split_majority(3), 4, 3)


@pytest.fixture(scope="session")
def example5_table():
    return tabulate(rules.irreducible_bipartite_example(), 4, 1)
