import numpy as np
import pytest

from twoatom import GridSpec, PulseModel, make_gaussian


@pytest.fixture
def grid():
    return GridSpec(1024, -50.0, 50.0)


@pytest.fixture
def small_grid():
    return GridSpec(64, -16.0, 16.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def gaussian_overlap(d, dk, sigma=1.0):
    """Closed-form |<phi|psi>| for equal-width Gaussians offset by d and dk."""
    return np.exp(-(d**2) / (8 * sigma**2) - sigma**2 * dk**2 / 2)


def random_state(grid, rng):
    """Random normalised superposition of two Gaussians with random phases."""
    L = grid.x_max - grid.x_min
    a = make_gaussian(grid, rng.uniform(-L / 8, L / 8), rng.uniform(1, 2), rng.uniform(-1, 1))
    b = make_gaussian(grid, rng.uniform(-L / 8, L / 8), rng.uniform(1, 2), rng.uniform(-1, 1))
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    return (a.scaled(w[0]) + b.scaled(w[1])).normalized()


def random_model(rng, **kw):
    params = dict(
        theta=rng.uniform(0, np.pi / 2),
        k_recoil=rng.uniform(0, 3),
        t_pre=rng.uniform(0, 2),
        t_post=rng.uniform(0, 2),
    )
    params.update(kw)
    return PulseModel(**params)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
