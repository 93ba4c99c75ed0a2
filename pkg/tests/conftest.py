import pytest

from wpbench.core import FinSet


@pytest.fixture
def X1():
    return FinSet("X", ("x0",))


@pytest.fixture
def X2():
    return FinSet("X", ("x0", "x1"))


@pytest.fixture
def Y2():
    return FinSet("Y", ("y0", "y1"))


@pytest.fixture
def Y3():
    return FinSet("Y", ("y0", "y1", "y2"))
