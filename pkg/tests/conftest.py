import pytest

from qpdense.parser import parse_form


@pytest.fixture(scope="session")
def quintic():
    return parse_form("x^5 + x^3*y*z + y*z^4 + x^4*z + x*y^4 + y^5")


@pytest.fixture(scope="session")
def sextic():
    return parse_form("x^6 + x^5*y + x^4*y^2 + x^2*y^4 + y^6 + x^2*z^4 + z^6")


@pytest.fixture(scope="session")
def cyclo3():
    return parse_form("x^2 - x*y + y^2")
