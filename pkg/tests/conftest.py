import numpy as np
import pytest

from dgsem.euler import GasParams, conservative


@pytest.fixture
def gas():
    return GasParams()


def random_states(rng, count, gas=GasParams(), rho_range=(0.2, 3.0),
                  v_range=(-2.0, 2.0), p_range=(0.2, 3.0)):
    """Valid conservative states drawn uniformly in primitive variables."""
    rho = rng.uniform(*rho_range, count)
    v = rng.uniform(*v_range, (count, 3))
    p = rng.uniform(*p_range, count)
    return conservative(rho, v, p, gas)


def nearby_state_pairs(rng, count, gas=GasParams(), jump=0.1):
    """State pairs with moderate relative jumps, like resolved DG traces."""
    uL = random_states(rng, count, gas, rho_range=(0.5, 2.0),
                       v_range=(-1.5, 1.5), p_range=(0.5, 2.0))
    rho = uL[:, 0] * (1.0 + rng.uniform(-jump, jump, count))
    vL = uL[:, 1:4] / uL[:, 0:1]
    v = vL + rng.uniform(-jump, jump, (count, 3))
    gm1 = gas.gamma - 1.0
    pL = gm1 * (uL[:, 4] - 0.5 * np.sum(uL[:, 1:4] ** 2, axis=1) / uL[:, 0])
    p = pL * (1.0 + rng.uniform(-jump, jump, count))
    return uL, conservative(rho, v, p, gas)
