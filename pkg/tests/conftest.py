import pytest

from hypercert import QuadratureConfig, reference_params


@pytest.fixture(scope="session")
def ref_params():
    return reference_params()


@pytest.fixture(scope="session")
def quad_cfg():
    return QuadratureConfig()
