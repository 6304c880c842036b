import pytest

from ppcalc.examples import (
    embedding_bimodule,
    kronecker_algebra,
    lambda_algebra,
    simple_lambda_module,
)
from ppcalc.linalg import GF, QQ
from ppcalc.modules import regular_module


@pytest.fixture(scope="session")
def lam2():
    return lambda_algebra(GF(2))


@pytest.fixture(scope="session")
def lam3():
    return lambda_algebra(GF(3))


@pytest.fixture(scope="session")
def lamq():
    return lambda_algebra(QQ)


@pytest.fixture(scope="session")
def kron2():
    return kronecker_algebra(GF(2))


@pytest.fixture(scope="session")
def s1_2(lam2):
    return simple_lambda_module(lam2)


@pytest.fixture(scope="session")
def reg2(lam2):
    return regular_module(lam2)


@pytest.fixture(scope="session")
def bim2(lam2, kron2):
    return embedding_bimodule(lam2, kron2)
