"""
Pytest configuration and fixtures for Residue Localizer tests
"""

import pytest
import os
import random
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from sympy.polys.domains import QQ

from residue_localizer.catalog import WeightSpec, blowup_plane, cpn_weighted

SAMPLES = Path(__file__).resolve().parent.parent / 'samples'


@pytest.fixture(scope="session")
def samples_dir():
    """Directory with the committed sample instance files"""
    return SAMPLES


@pytest.fixture(scope="session")
def cp1():
    """CP^1 with two fixed points"""
    return cpn_weighted("0*1,1*1")


@pytest.fixture(scope="session")
def cp2_points():
    """CP^2 with three isolated fixed points"""
    return cpn_weighted("0*1,1*1,2*1")


@pytest.fixture(scope="session")
def cp2_mixed():
    """CP^2 with a CP^1 component and a point"""
    return cpn_weighted("0*2,5*1")


@pytest.fixture(scope="session")
def cp3_mixed():
    """CP^3 with two CP^1 components"""
    return cpn_weighted("0*2,3*2")


@pytest.fixture(scope="session")
def blowup():
    """Blown-up projective plane from the packaged data"""
    return blowup_plane()


def random_weight_spec(rng, n, denominators=(1, 2, 3)):
    """Random blocks summing to n+1 with distinct rational weights"""
    sizes = []
    remaining = n + 1
    while remaining:
        size = rng.randint(1, remaining)
        sizes.append(size)
        remaining -= size
    weights = set()
    while len(weights) < len(sizes):
        weights.add(QQ(rng.randint(-7, 7), rng.choice(denominators)))
    ordered = sorted(weights)
    rng.shuffle(ordered)
    return WeightSpec(tuple(zip(ordered, sizes)))


@pytest.fixture
def weight_specs():
    """Factory for seeded randomized weight specs"""

    def make(count, max_n=4, seed=20240601, integral=False):
        rng = random.Random(seed)
        denominators = (1,) if integral else (1, 2, 3)
        return [random_weight_spec(rng, rng.randint(1, max_n), denominators) for _ in range(count)]

    return make


def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "validation: mark test as a validation test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )
