"""Session-wide record of every distance computed, checked against the bounds at exit.

The distance routines are wrapped in every loaded lrcmaps module so any code measured
anywhere in the suite lands here.  Codes built from a blueprint are checked with
the blueprint's locality and Goppa bound; any other code with r = k (plain Singleton).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import lrcmaps.analysis.distance as _dist
from lrcmaps.analysis.bounds import BoundViolation, bound_report
from lrcmaps.rational_map import CodeBlueprint


@dataclass(frozen=True)
class Entry:
    n: int
    k: int
    r: int
    lo: int
    hi: int
    status: str
    goppa_l: int | None
    label: str

    def check(self) -> str | None:
        from lrcmaps.analysis.distance import DistanceResult

        try:
            bound_report(self.n, self.k, self.r, DistanceResult(self.status, self.lo, self.hi), self.goppa_l)
        except BoundViolation as exc:
            return f"{self.label}: {exc}"
        return None


ENTRIES: list[Entry] = []
WRAPPED = ("min_distance", "exhaustive_distance", "brouwer_zimmermann")


def _entry(code, res) -> Entry:
    bp = code.origin
    if isinstance(bp, CodeBlueprint):
        return Entry(code.n, code.k, bp.structures[0].r, res.lo, res.hi, res.status, bp.goppa_l, str(bp.meta))
    return Entry(code.n, code.k, code.k, res.lo, res.hi, res.status, None, "plain code")


def _recorded(fn):
    def wrapper(code, *args, **kwargs):
        res = fn(code, *args, **kwargs)
        ENTRIES.append(_entry(code, res))
        return res

    wrapper.__wrapped__ = fn
    return wrapper


def install() -> None:
    for attr in WRAPPED:
        original = getattr(_dist, attr)
        if hasattr(original, "__wrapped__"):
            continue
        wrapped = _recorded(original)
        for name, mod in list(sys.modules.items()):
            if name.startswith("lrcmaps") and getattr(mod, attr, None) is original:
                setattr(mod, attr, wrapped)


def violations() -> list[str]:
    return [msg for e in ENTRIES if (msg := e.check())]
