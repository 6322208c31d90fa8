import pytest

from ocp.io import load_fixture


@pytest.fixture
def testA():
    return load_fixture("testA")


@pytest.fixture
def testB():
    return load_fixture("testB")
