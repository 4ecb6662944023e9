import math

import pytest

from ddc_rates import AtomPairParams, PreparedState


@pytest.fixture
def unit_params():
    """omega0 = mu = 1 for every state."""
    return {s: AtomPairParams(1.0, 1.0, s) for s in PreparedState}


EIGHT_PI = 8 * math.pi
