import warnings

import numpy as np
import pytest
from hypothesis import settings

import lrcmaps
import lrcmaps.cli
import lrcmaps.reproduce
from lrcmaps.field import GF

import acceptance_log
import bound_ledger

bound_ledger.install()

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_Q = (2, 3, 4, 5, 7, 8, 9, 13, 16, 25, 27)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_code(q: int, k: int, n: int, rng):
    """Row-reduced random code; returns None for the zero matrix."""
    from lrcmaps.analysis.code import measure

    G = rng.integers(0, q, (k, n))
    if not G.any():
        return None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return measure(G, GF(q))


def pytest_sessionfinish(session, exitstatus):
    bad = bound_ledger.violations()
    if bad:
        print("\nbound violations:\n" + "\n".join(bad))
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(acceptance_log.RESULTS):
            terminalreporter.write_line(acceptance_log.RESULTS[num])
    terminalreporter.write_line(f"bound ledger: {len(bound_ledger.ENTRIES)} distances checked, "
                                f"{len(bound_ledger.violations())} violations")
