import pytest

from ramshift import build_quaternionic_datum, make_field
from ramshift.subshift import build_xd


@pytest.fixture(scope="session")
def f3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def f5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def f9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def d12_q3(f3):
    return build_quaternionic_datum(f3, 1, 2)


@pytest.fixture(scope="session")
def d12_q5(f5):
    return build_quaternionic_datum(f5, 1, 2)


@pytest.fixture(scope="session")
def xd_q3(d12_q3):
    return build_xd(d12_q3)
