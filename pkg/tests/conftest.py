import pytest

from pairzeta.curve import CurveDatum
from pairzeta.scalar import ScalarValue


@pytest.fixture(scope="session")
def g0():
    return CurveDatum.make_symbolic(0)


@pytest.fixture(scope="session")
def g1():
    return CurveDatum.make_symbolic(1)


@pytest.fixture(scope="session")
def g2():
    return CurveDatum.make_symbolic(2)


@pytest.fixture(scope="session")
def elliptic():
    """Numeric genus-1 datum with a_1 = -1 (q left symbolic)."""
    return CurveDatum.make_numeric(1, [ScalarValue.from_rational(-1)])
