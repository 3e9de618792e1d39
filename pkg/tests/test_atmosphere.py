import numpy as np
import pytest

from econ_cruise.atmosphere import G, ISA, density
from econ_cruise.errors import DomainError


def test_sea_level_density():
    # p0 / (R T0) = 101325 / (287.05287 * 288.15)
    assert density(0.0) == pytest.approx(1.225, rel=1e-4)


@pytest.mark.parametrize("altitude, quoted", [(10000.0, 0.4135), (1000.0, 1.112)])
def test_quoted_cruise_densities(altitude, quoted):
    assert density(altitude) == pytest.approx(quoted, rel=5e-3)


def test_strictly_decreasing():
    h = np.linspace(0.0, 20000.0, 2001)
    rho = density(h)
    assert np.all(rho > 0)
    assert np.all(np.diff(rho) < 0)


def test_continuous_at_tropopause():
    below, above = density(11000.0 - 1e-6), density(11000.0 + 1e-6)
    assert above == pytest.approx(below, rel=1e-9)


def test_tropopause_temperature():
    assert ISA.temperature(15000.0) == pytest.approx(216.65)


@pytest.mark.parametrize("altitude", [-1.0, 20000.1])
def test_out_of_range(altitude):
    with pytest.raises(DomainError):
        density(altitude)


def test_g():
    assert G == 9.81
    assert ISA.g == 9.81
