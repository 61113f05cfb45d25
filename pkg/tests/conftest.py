import time
from fractions import Fraction

import pytest

from chainforge import forcing
from chainforge.qline import Window


@pytest.fixture(scope="session")
def run3():
    t0 = time.monotonic()
    run = forcing.generic_run(3, 300, Window(Fraction(-10), Fraction(10), 16))
    return run, time.monotonic() - t0


@pytest.fixture(scope="session")
def run4():
    t0 = time.monotonic()
    run = forcing.generic_run(4, 200, Window(Fraction(-10), Fraction(10), 16))
    return run, time.monotonic() - t0
