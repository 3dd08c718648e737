"""Shared fixtures for the semichu test suite"""

import pytest

from semichu.fixtures import load_fixture
from semichu.verify import natural_space, reduced_space


@pytest.fixture(scope='session')
def bool_l():
    return load_fixture('BOOL')


@pytest.fixture(scope='session')
def chain2():
    return load_fixture('CHAIN2')


@pytest.fixture(scope='session')
def chain3():
    return load_fixture('CHAIN3')


@pytest.fixture(scope='session')
def flat3():
    return load_fixture('FLAT3')


@pytest.fixture(scope='session')
def flat4():
    return load_fixture('FLAT4star')


@pytest.fixture(scope='session')
def singleton():
    return load_fixture('singleton')


@pytest.fixture(scope='session')
def natural():
    """Cached natural effect space of a semilattice."""
    return natural_space


@pytest.fixture(scope='session')
def reduced():
    """Cached reduced effect space of a semilattice with a valid star."""
    return reduced_space
