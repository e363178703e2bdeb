import numpy as np
import pytest

from mrclab.lib.cubic_lab import fermat_cubic
from mrclab.lib.ideal_ops import ProjectivePoint
from mrclab.lib.polyring import PolyRing, PrimeField


@pytest.fixture(scope="session")
def ring():
    return PolyRing()


@pytest.fixture(scope="session")
def small_ring():
    return PolyRing(PrimeField(101))


@pytest.fixture(scope="session")
def fermat():
    return fermat_cubic(32003)


@pytest.fixture(scope="session")
def small_fermat():
    return fermat_cubic(101)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_points(count, field, rng):
    """count distinct random points of P^3 over the field."""
    seen = []
    while len(seen) < count:
        coords = [int(v) for v in rng.integers(0, field.p, size=4)]
        if not any(coords):
            continue
        pt = ProjectivePoint.of(coords, field)
        if pt not in seen:
            seen.append(pt)
    return seen
