"""Shared fixtures.

The JRing objects are expensive (their KL tables reach radius ~35 so
that every a-value in the working ball is certified), so they are built
once per session and shared by all test modules.
"""

import pytest

from heckej import GroupDescriptor, JRing


@pytest.fixture(scope="session")
def a1_desc():
    return GroupDescriptor("A1~")


@pytest.fixture(scope="session")
def a2_desc():
    return GroupDescriptor("A2~")


@pytest.fixture(scope="session")
def a1_ring(a1_desc):
    # radius 15 covers triple J-products of factors up to length 5
    # and phi for arguments up to length 14
    return JRing(a1_desc, 15)


@pytest.fixture(scope="session")
def a2_ring(a2_desc):
    # radius 10 covers triple J-products of factors up to length 3 and
    # phi for arguments up to length 5 (distinguished d reach length 5)
    return JRing(a2_desc, 10)
