"""Command-line driver: ``build``, ``analyze``, ``recover`` and ``reproduce``.

Exit codes: 0 ok, 1 mismatch, 2 input error, 3 budget exhausted where a
certified distance was required.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .analysis.bounds import BoundViolation, bound_report, remark
from .analysis.distance import DEFAULT_BUDGET, min_distance
from .analysis.recovery import ErasedWord, LRCProfile, RecoveryError, recover, verify_recovery
from .analysis.report import canonical_json, code_report, content_hash, to_tsv
from .curves import (
    HERMITIAN_SHAPES,
    CurveError,
    artin_schreier_blueprint,
    elliptic_blueprint,
    hermitian_blueprint,
    klein_blueprint,
    norm_trace_blueprint,
)
from .field import GF, FieldError
from .grid import GridSpec, grid_blueprint
from .poly import MultiPoly, UniPoly
from .polytope import parse_drops, parse_shape
from .rational_map import CodeBlueprint, LocalityError, build_code
from .reproduce import EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, TARGETS, reproduce

FAMILIES = ("klein", "elliptic", "hermitian", "artin-schreier", "norm-trace")
GRIDS = ("affine-variety", "toric", "rm")


class InputError(ValueError):
    """Bad flags or unreadable input files (exit code 2)."""


@dataclass
class RunConfig:
    subcommand: str
    field: int | None = None
    family: str | None = None
    grid: str | None = None
    shape: str | None = None
    drop: str | None = None
    q: int | None = None
    B: int | None = None
    l: int | None = None
    ns: str | None = None
    m: int | None = None
    u_poly: str | None = None
    v_poly: str | None = None
    u: int | None = None
    axis: int | None = None
    rho: int = 1
    mode: str = "auto"
    availability: bool = False
    budget: int = DEFAULT_BUDGET
    format: str = "json"
    seed: int = 0
    certify: bool = False
    target: str | None = None
    blueprint: str | None = None
    word: str | None = None
    erase: str | None = None
    inputs: dict = dc_field(default_factory=dict)  # sha256 of each input file

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        names = set(cls.__dataclass_fields__) - {"inputs"}
        cfg = cls(**{k: v for k, v in vars(args).items() if k in names})
        for key in ("blueprint", "word"):
            path = getattr(cfg, key)
            if path:
                cfg.inputs[key] = hashlib.sha256(_read(path).encode()).hexdigest()
        return cfg

    def to_dict(self) -> dict:
        return asdict(self)

    def stamp(self) -> dict:
        d = self.to_dict()
        return {"config": d, "input_hash": content_hash(d)}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _need(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _unipoly(text: str, q: int) -> UniPoly:
    F = GF(q)
    mp = MultiPoly.parse(text, F, 1)
    top = max((e[0] for e in mp.terms), default=0)
    coeffs = [0] * (top + 1)
    for (e,), c in mp.terms.items():
        coeffs[e] = c
    return UniPoly(F, coeffs)


def build_blueprint(cfg: RunConfig) -> CodeBlueprint:
    if (cfg.family is None) == (cfg.grid is None):
        raise InputError("give exactly one of --family or --grid")
    drops = parse_drops(cfg.drop)
    if cfg.family == "klein":
        _need(cfg, "l")
        return klein_blueprint(cfg.l, drops)
    if cfg.family == "elliptic":
        _need(cfg, "l")
        return elliptic_blueprint(cfg.B if cfg.B is not None else 4, cfg.l, cfg.q or cfg.field or 13)
    if cfg.family == "hermitian":
        _need(cfg, "q", "l")
        shape = cfg.shape or "weighted"
        if shape not in HERMITIAN_SHAPES:
            raise InputError(f"--shape must be one of {', '.join(HERMITIAN_SHAPES)} for hermitian")
        return hermitian_blueprint(cfg.q, shape, cfg.l)
    if cfg.family == "norm-trace":
        _need(cfg, "q", "u", "l")
        return norm_trace_blueprint(cfg.q, cfg.u, cfg.l)
    if cfg.family == "artin-schreier":
        _need(cfg, "field", "u_poly", "v_poly", "l")
        return artin_schreier_blueprint(_unipoly(cfg.u_poly, cfg.field), _unipoly(cfg.v_poly, cfg.field), cfg.l)
    q = cfg.field or cfg.q
    if q is None:
        raise InputError("grids need --field")
    if cfg.grid == "affine-variety":
        _need(cfg, "ns")
        grid = GridSpec.affine_variety(q, [int(x) for x in cfg.ns.split(",")])
    elif cfg.grid == "toric":
        grid = GridSpec.toric(q, cfg.m or 2)
    else:
        grid = GridSpec.reed_muller(q, cfg.m or 2)
    _need(cfg, "shape")
    shape = parse_shape(cfg.shape)
    if drops:
        shape = shape.remove(*drops)
    axis = grid.m - 1 if cfg.axis is None else cfg.axis
    return grid_blueprint(grid, shape, axis, cfg.rho, cfg.mode, cfg.availability)


def cmd_build(cfg: RunConfig, out: str | None) -> int:
    bp = build_blueprint(cfg)
    d = bp.to_dict()
    d["run"] = cfg.stamp()
    _emit(canonical_json(d), out)
    return EXIT_OK


def _load_blueprint(cfg: RunConfig) -> CodeBlueprint:
    if cfg.blueprint:
        try:
            return CodeBlueprint.from_json(_read(cfg.blueprint))
        except (KeyError, json.JSONDecodeError) as exc:
            raise InputError(f"malformed blueprint {cfg.blueprint}: {exc}") from exc
    return build_blueprint(cfg)


def cmd_analyze(cfg: RunConfig, out: str | None) -> int:
    bp = _load_blueprint(cfg)
    t0 = time.perf_counter()
    code = build_code(bp)
    t1 = time.perf_counter()
    dist = min_distance(code, budget=cfg.budget)
    t2 = time.perf_counter()
    bounds = bound_report(code.n, code.k, bp.r, dist, bp.goppa_l)
    profile = LRCProfile.from_blueprint(bp).attach(code)
    rec = verify_recovery(code, profile, seed=cfg.seed)
    t3 = time.perf_counter()
    rep = code_report(code, dist, bounds, profile.to_dict(),
                      {"build": round(t1 - t0, 3), "distance": round(t2 - t1, 3), "recovery": round(t3 - t2, 3)})
    rep["bounds"] = bounds.to_dict()
    rep["recovery"] = rec.to_dict()
    rep["meta"] = bp.meta
    rep["run"] = cfg.stamp()
    if cfg.format == "tsv":
        d = dist.value
        params = f"[{code.n},{code.k},{d}]" if d is not None else f"[{code.n},{code.k},{dist.lo}..{dist.hi}]"
        label = " ".join(f"{k}={bp.meta[k]}" for k in ("family", "grid", "q", "l", "sizes", "axis") if k in bp.meta)
        rem = remark(bounds.classification) if bounds.classification else "interval"
        _emit(to_tsv([{"polytope": label, "parameters": params, "locality": bp.r, "remarks": rem}]), out)
    else:
        _emit(canonical_json(rep), out)
    if not rec.passed:
        return EXIT_MISMATCH
    if cfg.certify and not dist.exact:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_recover(cfg: RunConfig, out: str | None) -> int:
    bp = _load_blueprint(cfg)
    code = build_code(bp)
    F = bp.field
    profile = LRCProfile.from_blueprint(bp).attach(code)
    truth = None
    if cfg.word:
        try:
            word = ErasedWord.from_dict(json.loads(_read(cfg.word)), F)
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise InputError(f"malformed word file {cfg.word}: {exc}") from exc
        if word.values.shape[-1] != code.n:
            raise InputError(f"word has length {word.values.shape[-1]}, code has n = {code.n}")
    else:
        _need(cfg, "erase")
        rng = np.random.default_rng(cfg.seed)
        truth = code.random_codewords(1, rng)[0]
        positions = [int(x) for x in cfg.erase.split(",") if x.strip()]
        if any(not 0 <= p < code.n for p in positions):
            raise InputError(f"erase positions must lie in 0..{code.n - 1}")
        word = ErasedWord.erase(truth, positions)
    try:
        filled, trace = recover(word, profile)
    except RecoveryError as exc:
        msg = {"error": str(exc), "fibre": exc.fibre, "run": cfg.stamp()}
        _emit(canonical_json(msg), out)
        return EXIT_INPUT
    ok = code.contains(filled) and (truth is None or np.array_equal(filled, truth))
    result = {
        "input": word.to_dict(F)["values"],
        "trace": [s.describe() for s in trace],
        "steps": [asdict(s) for s in trace],
        "word": F.indices_of(filled).tolist(),
        "is_codeword": bool(ok),
        "run": cfg.stamp(),
    }
    if cfg.format == "tsv":
        lines = ["step\tdescription"] + [f"{i}\t{s}" for i, s in enumerate(result["trace"])]
        lines.append("word\t" + " ".join(str(v) for v in result["word"]))
        _emit("\n".join(lines) + "\n", out)
    else:
        _emit(canonical_json(result), out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_reproduce(cfg: RunConfig, out: str | None) -> int:
    targets = TARGETS if cfg.target == "all" else (cfg.target,)
    bundles = [reproduce(t, cfg.budget, cfg.seed) for t in targets]
    if cfg.format == "tsv":
        rows = [dict(r, target=b["target"]) for b in bundles for r in b["table"]]
        _emit(to_tsv(rows, ("target", "polytope", "parameters", "locality", "remarks", "status")), out)
    else:
        _emit(canonical_json({"run": cfg.stamp(), "targets": bundles}), out)
    for b in bundles:
        for r in b["rows"]:
            if r["status"] != "PASS":
                print(f"{r['status']}: {r['id']} {r['mismatches']} {r['note']}", file=sys.stderr)
    codes = {b["exit_code"] for b in bundles}
    for code in (EXIT_BUDGET, EXIT_MISMATCH):
        if code in codes:
            return code
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lrcmaps", description="Locally recoverable codes from rational maps.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="message budget for distance search")
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    def construction(sp):
        sp.add_argument("--field", type=int, help="field size q")
        sp.add_argument("--family", choices=FAMILIES)
        sp.add_argument("--grid", choices=GRIDS)
        sp.add_argument("--shape", help="rect|weighted|dist for hermitian; simplex:m,l, hypercube:a,b, ... for grids")
        sp.add_argument("--drop", help='points to remove, e.g. "1,1;0,6"')
        sp.add_argument("--q", type=int, help="family parameter q (Hermitian and norm-trace use GF(q^2), GF(q^u))")
        sp.add_argument("--B", type=int, help="elliptic constant term")
        sp.add_argument("--l", type=int, help="pole-order bound")
        sp.add_argument("--ns", help="affine-variety axis sizes, e.g. 2,3")
        sp.add_argument("--m", type=int, help="number of grid axes")
        sp.add_argument("--u", type=int, help="norm-trace extension degree")
        sp.add_argument("--u-poly", dest="u_poly", help="Artin-Schreier u(x) in x1, e.g. x1^3")
        sp.add_argument("--v-poly", dest="v_poly", help="Artin-Schreier v(y) in x1, e.g. x1^2 + x1")
        sp.add_argument("--axis", type=int, help="fibre axis, 0-based (default last)")
        sp.add_argument("--rho", type=int, default=1)
        sp.add_argument("--mode", choices=("auto", "interpolation", "checksum"), default="auto")
        sp.add_argument("--availability", action="store_true", help="add a recovery structure per eligible axis")

    sp = sub.add_parser("build", help="write a blueprint JSON")
    construction(sp)
    common(sp)

    for name, helptext in (("analyze", "measure a code and emit a report"), ("recover", "fill erasures and print the trace")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("blueprint", nargs="?", help="blueprint JSON (or build from flags)")
        construction(sp)
        common(sp)
        if name == "analyze":
            sp.add_argument("--certify", action="store_true", help="exit 3 if the distance is only an interval")
        else:
            sp.add_argument("--word", help='JSON {"values": [index or null, ...]}')
            sp.add_argument("--erase", help="demo: erase these positions of a random codeword")

    sp = sub.add_parser("reproduce", help="rebuild a target and diff against its printed values")
    sp.add_argument("target", choices=TARGETS + ("all",))
    common(sp)
    return p


COMMANDS = {"build": cmd_build, "analyze": cmd_analyze, "recover": cmd_recover, "reproduce": cmd_reproduce}


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.subcommand](cfg, args.out)
    except BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (InputError, CurveError, LocalityError, FieldError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
