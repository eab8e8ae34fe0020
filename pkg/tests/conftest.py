import numpy as np
import pytest

from cosserat_weyl import Metric3, TorusGrid, build_pauli

TWO_PI = 2.0 * np.pi


@pytest.fixture
def grid8():
    return TorusGrid((8, 8, 8), (TWO_PI, TWO_PI, TWO_PI))


@pytest.fixture
def grid16():
    return TorusGrid((16, 16, 16), (TWO_PI, TWO_PI, TWO_PI))


@pytest.fixture
def identity_metric():
    return Metric3.identity()


@pytest.fixture
def pauli_identity(identity_metric):
    return build_pauli(identity_metric)
