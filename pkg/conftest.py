import random
from fractions import Fraction

import pytest

from src.main.geometry.forms import Coframe
from src.main.geometry.complex_structures import build_nonregular_q, skt_subframe
from src.main.lie.real_forms import build_involutions
from src.main.lie.sl import build_sl
from src.main.numeric.gaussian import GaussRational


@pytest.fixture(scope="session")
def sl2():
    return build_sl(2)


@pytest.fixture(scope="session")
def sl3():
    return build_sl(3)


@pytest.fixture(scope="session")
def sl4():
    return build_sl(4)


@pytest.fixture(scope="session")
def forms2():
    return build_involutions(2)


@pytest.fixture(scope="session")
def forms3():
    return build_involutions(3)


@pytest.fixture(scope="session")
def forms4():
    return build_involutions(4)


@pytest.fixture(scope="session")
def sl3_block(forms2):
    """Coframe dual to (H̃_1, e0, e_{α2}, e_{α1+α2}) on sl(3,R)."""
    structure = build_nonregular_q(2, forms2)
    vectors, _ = skt_subframe(structure, forms2)
    return Coframe(forms2.algebra, vectors, forms2.sigma, names=["0", "1", "2", "3"])


def random_gaussian(rng: random.Random, bound: int = 5) -> GaussRational:
    return GaussRational(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
                         Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))


@pytest.fixture
def gaussian_sampler():
    return random_gaussian
