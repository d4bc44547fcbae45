import numpy as np
import pytest
from hypothesis import settings

from psdfactor.matpoly import MatPoly

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# real-eigenvalue worked example: Q = G^T G with G = I + x [[1, -2], [-1, 2]]
EX1 = [np.eye(2), [[2.0, -3.0], [-3.0, 4.0]], [[2.0, -4.0], [-4.0, 8.0]]]
EX1_X = np.array([[0.0, -0.5], [0.5, 0.0]])
EX1_FX = np.array([[1, 0, 1, -2], [0, 1, -1, 2], [1, -1, 2, -4], [-2, 2, -4, 8]], dtype=float)
EX1_G1 = np.array([[1.0, -2.0], [-1.0, 2.0]])
EX1_S = np.array([[2 / 9, 37 / 54, -5 / 18, 17 / 54],
                  [1 / 9, 10 / 27, 5 / 18, -10 / 27],
                  [-1 / 18, -19 / 54, -5 / 36, 19 / 54],
                  [1 / 9, 19 / 108, -5 / 36, -19 / 108]])

# complex-eigenvalue worked example: G = I + x [[1, 3], [-1, 2]]
EX2 = [np.eye(2), [[2.0, 2.0], [2.0, 4.0]], [[2.0, 1.0], [1.0, 13.0]]]
EX2_X = np.array([[0.0, 2.0], [-2.0, 0.0]])
EX2_FX = np.array([[1, 0, 1, 3], [0, 1, -1, 2], [1, -1, 2, 1], [3, 2, 1, 13]], dtype=float)
EX2_G1 = np.array([[1.0, 3.0], [-1.0, 2.0]])
_r = np.sqrt(11.0)
EX2_S = np.array([[4 / 11, -2 * _r / 11, 1 / 2, 5 * _r / 242],
                  [-3 / 11, -_r / 11, 0, 5 * _r / 121],
                  [-6 / 11, -2 * _r / 11, 0, -12 * _r / 121],
                  [-8 / 11, 4 * _r / 11, 0, 6 * _r / 121]])


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the full-size (n, m <= 8) experiment")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def q_ex1():
    return MatPoly.from_list(EX1, symmetric=True)


@pytest.fixture
def q_ex2():
    return MatPoly.from_list(EX2, symmetric=True)


def scalar(*coeffs, symmetric=True):
    """n = 1 polynomial from scalar coefficients c_0, c_1, ..."""
    return MatPoly(np.array(coeffs, dtype=float).reshape(-1, 1, 1), symmetric=symmetric)
