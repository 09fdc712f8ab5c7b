"""Machine-readable code reports (JSON) and table rows (TSV)."""

from __future__ import annotations

import hashlib
import json
from typing import Any, Iterable, Sequence

from .bounds import BoundReport, remark
from .code import LinearCode
from .distance import DistanceResult


def distance_dict(dist: DistanceResult, field=None) -> dict:
    out: dict[str, Any] = {"status": dist.status}
    if dist.exact:
        out["value"] = dist.lo
    else:
        out["lo"], out["hi"] = dist.lo, dist.hi
    if dist.witness is not None:
        w = dist.witness if field is None else field.indices_of(dist.witness)
        out["witness"] = [int(x) for x in w]
    out["method"] = dist.method
    out["work"] = int(dist.work)
    return out


def code_report(
    code: LinearCode,
    dist: DistanceResult,
    bounds: BoundReport | None = None,
    profile: dict | None = None,
    timings: dict | None = None,
) -> dict:
    """``{n, k, d, r, rho, availability, defect, classification, timings}``."""
    prof = profile or {}
    return {
        "n": code.n,
        "k": code.k,
        "d": distance_dict(dist, code.field),
        "r": prof.get("r"),
        "rho": prof.get("rho"),
        "availability": prof.get("availability"),
        "achievable_locality": prof.get("achievable_locality"),
        "defect": None if bounds is None else bounds.defect,
        "classification": None if bounds is None else bounds.classification,
        "goppa_lower": None if bounds is None else bounds.goppa_lower,
        "timings": dict(timings or {}),
    }


def parameters_text(n: int, k: int, d: int | None, lo: int | None = None, hi: int | None = None) -> str:
    if d is not None:
        return f"[{n},{k},{d}]"
    return f"[{n},{k},{lo}..{hi}]"


def remark_text(classification: str | None, extra: Sequence[str] = ()) -> str:
    parts = [] if classification is None else [remark(classification)]
    return "; ".join(parts + list(extra))


TSV_COLUMNS = ("polytope", "parameters", "locality", "remarks")


def to_tsv(rows: Iterable[dict], columns: Sequence[str] = TSV_COLUMNS) -> str:
    lines = ["\t".join(columns)]
    for row in rows:
        lines.append("\t".join("" if row.get(c) is None else str(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def content_hash(obj: Any) -> str:
    """sha256 of the canonical JSON text of ``obj``."""
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def strip_timings(obj: Any) -> Any:
    """Drop every ``timings`` key, recursively; what is left is deterministic."""
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "timings"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj
