import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from invariant_burgers import coefficients


@pytest.fixture(scope="session")
def coeffs_nu01():
    """Coefficient table for the standard benchmark viscosity."""
    return coefficients(0.1)
