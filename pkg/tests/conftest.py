import numpy as np
import pytest

from frameunc import generators as gen

ACCEPTANCE_LINES: list[str] = []


def build_catalog() -> dict:
    """Frame pairs used by the soundness sweeps."""
    return {
        "mub16": gen.mub_pair(16),
        "bmub[4,12]": gen.bmub([4, 12]),
        "random-onb32": gen.random_onb_pair(32, seed=0),
        "mdct32(8,16)": (gen.mdct_basis(32, 8), gen.mdct_basis(32, 16)),
        "mercedes-vs-rotation": (gen.mercedes(), gen.mercedes(np.pi / 7)),
        "random-frame16x8": (gen.random_frame(8, 16, seed=1), gen.random_frame(8, 16, seed=2)),
    }


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
