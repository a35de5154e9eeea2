import pytest

from sheafforms import FreeModule, PrimeField, RationalField, validate_topology


@pytest.fixture
def point_space():
    return validate_topology(("a",), [(), ("a",)])


@pytest.fixture
def sierpinski():
    return validate_topology(("a", "b"), [(), ("a",), ("a", "b")])


@pytest.fixture
def discrete_pair():
    return validate_topology(("a", "b"), [(), ("a",), ("b",), ("a", "b")])


@pytest.fixture
def three_point():
    # {a} and {b} open, c only inside the total set
    return validate_topology(
        ("a", "b", "c"), [(), ("a",), ("b",), ("a", "b"), ("a", "b", "c")]
    )


@pytest.fixture
def rationals():
    return RationalField()


@pytest.fixture
def gf3():
    return PrimeField(3)


@pytest.fixture
def module2(sierpinski, rationals):
    return FreeModule(sierpinski, rationals, 2)


@pytest.fixture
def module2_pair(discrete_pair, rationals):
    return FreeModule(discrete_pair, rationals, 2)
