import pytest

from rzfractal.potential import PotentialSpec, build_grid
from rzfractal.sweep import SweepConfig, resolve_settings, run_sweep, smooth_baseline
from rzfractal.zeros import load_zeros

_ACCEPTANCE = {}


@pytest.fixture(scope="session")
def zeros100():
    return load_zeros()


@pytest.fixture(scope="session")
def settings25(zeros100):
    return resolve_settings(25, zeros100.head(25))


@pytest.fixture(scope="session")
def settings50(zeros100):
    return resolve_settings(50, zeros100.head(50))


@pytest.fixture(scope="session")
def baseline25(zeros100, settings25):
    return smooth_baseline(25, zeros100.head(25), settings25)


@pytest.fixture(scope="session")
def baseline50(zeros100, settings50):
    return smooth_baseline(50, zeros100.head(50), settings50)


@pytest.fixture(scope="session")
def sweep500(zeros100, settings25):
    """Seeded 500-sample n=25 campaign over [1,10] x [0,10]."""
    return run_sweep(SweepConfig(n=25, samples=500, seed=7), zeros100, settings=settings25)


@pytest.fixture(scope="session")
def ws_grid25(settings25):
    return build_grid(PotentialSpec(), settings25.L, settings25.h)


@pytest.fixture
def acceptance():
    """Record one verdict line per acceptance criterion."""
    def record(number, passed, detail):
        _ACCEPTANCE[number] = (bool(passed), detail)
        assert passed, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
