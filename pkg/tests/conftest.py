import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from econ_cruise.ci_dynamics import CostIndexFilter  # noqa: E402
from econ_cruise.config import load_aircraft  # noqa: E402
from econ_cruise.optimizer import CruiseLeg  # noqa: E402

RHO_FUEL = 0.4135
RHO_ELEC = 1.112
ROUTE = 160e3

# criterion id ("1", "8a", ...) -> (passed, detail); printed after the run
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def electric():
    return load_aircraft("yuneec_e430")


@pytest.fixture(scope="session")
def fuel():
    return load_aircraft("gulfstream_g4")


@pytest.fixture
def electric_leg(electric):
    return CruiseLeg(ROUTE, RHO_ELEC, electric, electric.powertrain.initial_state(),
                     CostIndexFilter.constant(0.0))


@pytest.fixture
def fuel_leg(fuel):
    return CruiseLeg(ROUTE, RHO_FUEL, fuel, fuel.powertrain.initial_state(),
                     CostIndexFilter.constant(0.0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    def order(key):
        number, suffix = re.fullmatch(r"(\d+)(\w*)", key).groups()
        return int(number), suffix

    for key in sorted(ACCEPTANCE, key=order):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>3}: {'PASS' if passed else 'FAIL'}  {detail}")
