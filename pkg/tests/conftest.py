import numpy as np
import pytest

from morswitch import SystemParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_params(rng, G2=False, probe=None, rate_range=None):
    rates = {}
    if rate_range is not None:
        rates = {k: float(rng.uniform(*rate_range)) for k in ("gamma1", "gamma2", "Gamma1", "Gamma2")}
    return SystemParams(
        Omega=float(rng.uniform(0, 100)),
        delta=float(rng.uniform(-200, 200)),
        Delta=float(rng.uniform(-200, 200)),
        G1=float(rng.uniform(0, 100)),
        G2=float(rng.uniform(0, 100)) if G2 else 0.0,
        g1=probe if probe is not None else float(rng.uniform(0, 100)),
        g2=probe if probe is not None else float(rng.uniform(0, 100)),
        **rates,
    )


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one acceptance line; the lines are printed in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def report(label, passed, detail):
        lines.append(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")
        return passed

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
