import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tiltgrasp.planner import GridSpec, closure_map  # noqa: E402
from tiltgrasp.scene import REFERENCE_OBJECT, REFERENCE_SUPPORTS, PalmModel  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def reference_maps():
    """100x100 closure maps of the reference scene for mu_C = 0.1 and 0.2, with build time."""
    spec = GridSpec()
    t0 = time.perf_counter()
    maps = {
        mu: closure_map(REFERENCE_OBJECT, REFERENCE_SUPPORTS, PalmModel(mu_C=mu), spec)
        for mu in (0.1, 0.2)
    }
    return maps, time.perf_counter() - t0


@pytest.fixture(scope="session")
def scenes_dir():
    return ROOT / "scenes"


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
