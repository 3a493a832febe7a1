import numpy as np
import pytest

from slitdiff import reference_parameters


@pytest.fixture(scope="session")
def reference():
    """Geometry, setup, weights, and coherence for the published run."""
    return reference_parameters()


@pytest.fixture()
def rng():
    return np.random.default_rng(20250821)
