"""One PASS/FAIL line per acceptance criterion, echoed in the terminal summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(num: int, title: str):
    t = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {num:2d} FAIL  {title}  ({time.perf_counter() - t:.1f} s): {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        RESULTS[num] = line
        print(line)
        raise
    line = f"criterion {num:2d} PASS  {title}  ({time.perf_counter() - t:.1f} s)"
    RESULTS[num] = line
    print(line)
