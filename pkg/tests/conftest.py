import numpy as np
import pytest

from orbitframes.scenarios import cyclic_scenario, dihedral_scenario


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


@pytest.fixture(scope="session")
def z6_bundle():
    # length-6 signals sampled every 2 shifts through deltas at 0 and 1
    return cyclic_scenario(6, 2)


@pytest.fixture(scope="session")
def d3_bundle():
    # dihedral group of order 6, sampling at {e, t}, deltas at the rotations
    return dihedral_scenario(3)
