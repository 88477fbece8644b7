import pytest

from oagspine.laws import default_roster


@pytest.fixture(scope="session")
def roster():
    return {e.name: e for e in default_roster()}


@pytest.fixture(scope="session")
def groups(roster):
    return {name: e.schema for name, e in roster.items()}
