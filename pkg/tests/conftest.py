import numpy as np
import pytest

from src.experiments.base import ExperimentConfig, cached_family
from src.presets import seed_triangle
from src.structures.triangle import Triangle


@pytest.fixture
def scalene() -> Triangle:
    return seed_triangle("scalene-A")


@pytest.fixture
def raw_scalene() -> Triangle:
    return Triangle((0.0, 0.0), (4.0, 0.0), (1.2, 2.7))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(7)


@pytest.fixture
def family():
    def build(kind: str, **params):
        return cached_family(kind, "scalene-A", tuple(sorted(params.items())))

    return build


@pytest.fixture
def small_config() -> ExperimentConfig:
    """Reduced grids for experiment tests."""
    return ExperimentConfig(samples=180, envelope_samples=360, anchors=8, pencil_samples=36)
