"""Singleton-like bound ceil(k/r) <= n - k - d + 2, defect and classification."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .distance import DistanceResult


class BoundViolation(AssertionError):
    """A theorem-level bound failed; something upstream is wrong."""


def singleton_rhs(n: int, k: int, d: int) -> int:
    return n - k - d + 2


def singleton_lhs(k: int, r: int) -> int:
    return -(-k // r)


def defect(n: int, k: int, d: int, r: int) -> int:
    return singleton_rhs(n, k, d) - singleton_lhs(k, r)


def is_almost_optimal(n: int, k: int, d: int, r: int) -> bool:
    """Not optimal, and an (n, k+1, d) code with locality r would break the bound."""
    return defect(n, k, d, r) >= 1 and Fraction(k + 1, r) > n - (k + 1) - d + 2


def classify(n: int, k: int, d: int, r: int) -> str:
    df = defect(n, k, d, r)
    if df < 0:
        raise BoundViolation(f"[{n},{k},{d}] with r={r} violates ceil(k/r) <= n-k-d+2")
    if df == 0:
        return "optimal"
    if is_almost_optimal(n, k, d, r):
        return "almost_optimal"
    return f"defect_{df}"


def remark(classification: str) -> str:
    """Table wording: 'optimal', 'almost-optimal', 'defect 2'."""
    return classification.replace("_", " ").replace("almost optimal", "almost-optimal")


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    r: int
    d_lo: int
    d_hi: int
    distance_status: str
    singleton_rhs: int | None
    lhs: int
    defect: int | None
    classification: str | None
    goppa_lower: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(n: int, k: int, r: int, dist: DistanceResult | int, goppa_l: int | None = None) -> BoundReport:
    """Defect and class when d is exact; for an interval only the checks that stay sound."""
    if isinstance(dist, int):
        dist = DistanceResult("exact", dist, dist)
    lo, hi = dist.lo, dist.hi
    goppa = n - goppa_l if goppa_l is not None else None
    if goppa is not None and hi < goppa:
        raise BoundViolation(f"codeword of weight {hi} below the Goppa bound {goppa}")
    # the defect only grows as d shrinks, so the largest admissible d must satisfy the bound
    if defect(n, k, hi, r) < 0 and dist.exact:
        raise BoundViolation(f"[{n},{k},{hi}] with r={r} violates the Singleton-like bound")
    if defect(n, k, lo, r) < 0:
        raise BoundViolation(f"[{n},{k},>={lo}] with r={r} violates the Singleton-like bound")
    if dist.exact:
        return BoundReport(n, k, r, lo, hi, "exact", singleton_rhs(n, k, lo), singleton_lhs(k, r),
                           defect(n, k, lo, r), classify(n, k, lo, r), goppa)
    return BoundReport(n, k, r, lo, hi, "interval", None, singleton_lhs(k, r), None, None, goppa)
