import math

import pytest

from sae_radial import RadialProblem, SAEParameter


@pytest.fixture(scope="session")
def p_quarter():
    """Attractive Coulomb problem with exponent parameter P = 1/4."""
    return RadialProblem(m=1.0, l=0, v0=0.09375, coulomb=-1.0)


@pytest.fixture(scope="session")
def isq_quarter():
    """Pure inverse-square problem with P = 1/4."""
    return RadialProblem(m=1.0, l=0, v0=0.09375)


@pytest.fixture(scope="session")
def hydrogen():
    return RadialProblem(m=1.0, l=0, v0=0.0, coulomb=-1.0)


@pytest.fixture(scope="session")
def tau_zero():
    return SAEParameter.from_tau(0.0)


@pytest.fixture(scope="session")
def tau_inf():
    return SAEParameter.from_tau(math.inf)


@pytest.fixture(scope="session")
def tau_minus_one():
    return SAEParameter.from_tau(-1.0)


def v0_for_p(p: float, m: float = 1.0, l: int = 0) -> float:
    """Inverse-square strength giving exponent parameter P at this l."""
    return ((l + 0.5) ** 2 - p * p) / (2.0 * m)
