import pytest
from hypothesis import HealthCheck, settings

from higher_brackets.presets import build_finite, load_preset

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def sl2_xi_eta():
    return build_finite("sl2_xi_eta")


@pytest.fixture(scope="session")
def heisenberg():
    return build_finite("heisenberg_xi")


@pytest.fixture(scope="session")
def sl2_lie2():
    return build_finite("sl2_lie2")


@pytest.fixture(scope="session")
def symplectic():
    return load_preset("poisson_symplectic")


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
