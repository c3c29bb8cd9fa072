import pytest

from prime_gauge import PiTable, build_basis

from oracles import TrialPrefix


@pytest.fixture(scope="session")
def oracle_100k() -> TrialPrefix:
    return TrialPrefix(100_000)


@pytest.fixture(scope="session")
def table_2m() -> PiTable:
    return PiTable(budget=2_000_000)


@pytest.fixture(scope="session")
def basis_2k():
    return build_basis(2000)
