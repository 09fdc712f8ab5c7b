"""Erasure recovery inside fibres, by interpolation or by a single checksum addition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..field import FieldSpec
from ..poly import lagrange_weights
from ..rational_map import CodeBlueprint, RecoveryStructure, fibre_sums
from .code import LinearCode

EXHAUSTIVE_WORDS = 10**5


class RecoveryError(ValueError):
    """An erasure pattern the profile cannot fill."""

    def __init__(self, msg: str, fibre: int | None = None):
        super().__init__(msg)
        self.fibre = fibre


@dataclass
class ErasedWord:
    """Symbol values plus a separate erasure mask; erased values are ignored."""

    values: np.ndarray
    erased: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)
        self.erased = np.asarray(self.erased, dtype=bool)
        if self.values.shape[-1] != self.erased.shape[-1]:
            raise ValueError("values and erasure mask differ in length")

    @classmethod
    def erase(cls, word, positions) -> "ErasedWord":
        word = np.asarray(word, dtype=np.int64)
        mask = np.zeros(word.shape[-1], dtype=bool)
        mask[list(positions)] = True
        vals = word.copy()
        vals[..., mask] = 0
        return cls(vals, mask)

    def to_dict(self, F: FieldSpec) -> dict:
        return {
            "values": [None if e else int(i) for i, e in zip(F.indices_of(self.values), self.erased)],
        }

    @classmethod
    def from_dict(cls, d: dict, F: FieldSpec) -> "ErasedWord":
        raw = d["values"]
        mask = np.array([v is None for v in raw], dtype=bool)
        idx = np.array([0 if v is None else int(v) for v in raw], dtype=np.int64)
        return cls(F.codes_of_indices(idx), mask)


@dataclass(frozen=True)
class RecoveryStep:
    structure: int
    fibre: int
    erased: tuple[int, ...]
    used: tuple[int, ...]
    method: str  # "interpolation" or "checksum"
    nodes: tuple[int, ...] = ()  # field indices of the nodes used

    def describe(self) -> str:
        if self.method == "checksum":
            return f"fibre {self.fibre}: x[{self.erased[0]}] = -(" + " + ".join(f"x[{i}]" for i in self.used) + ")"
        return (
            f"fibre {self.fibre}: interpolate degree <= {len(self.used) - 1} through positions "
            f"{list(self.used)} (nodes {list(self.nodes)}) -> fill {list(self.erased)}"
        )


@dataclass(frozen=True)
class LRCProfile:
    field: FieldSpec
    structures: tuple[RecoveryStructure, ...]

    @classmethod
    def from_blueprint(cls, bp: CodeBlueprint) -> "LRCProfile":
        return cls(bp.field, tuple(bp.structures))

    @property
    def r(self) -> int:
        return self.structures[0].r

    @property
    def rho(self) -> int:
        return self.structures[0].rho

    @property
    def availability(self) -> int:
        return len(self.structures)

    def attach(self, code: LinearCode) -> "LRCProfile":
        """Check every structure's mode against the code; returns self."""
        for j, s in enumerate(self.structures):
            if s.fibres.n != code.n:
                raise ValueError(f"structure {j} covers {s.fibres.n} coordinates, code has {code.n}")
            if s.mode == "checksum" and np.any(fibre_sums(code.generator, s.fibres, self.field)):
                raise ValueError(f"structure {j}: fibre sums are not zero, checksum mode is invalid")
        return self

    def achievable_locality(self) -> tuple[int, int]:
        """(min, max) over coordinates of the smallest recovering set any structure offers."""
        best = None
        for s in self.structures:
            need = np.array(
                [s.r if s.mode == "interpolation" else len(s.fibres.fibres[s.fibres.fibre_of(i)]) - 1
                 for i in range(s.fibres.n)]
            )
            best = need if best is None else np.minimum(best, need)
        return int(best.min()), int(best.max())

    def to_dict(self) -> dict:
        lo, hi = self.achievable_locality()
        return {
            "r": self.r,
            "rho": self.rho,
            "availability": self.availability,
            "modes": [s.mode for s in self.structures],
            "achievable_locality": [lo, hi],
        }


def _fill_fibre(values, erased, s: RecoveryStructure, j: int, F: FieldSpec, si: int):
    """Fill one fibre in place; returns a RecoveryStep or raises RecoveryError."""
    fs = s.fibres
    members = fs.fibres[j]
    lost = [i for i in members if erased[i]]
    alive = [i for i in members if not erased[i]]
    if len(lost) > s.rho:
        raise RecoveryError(f"fibre {j} has {len(lost)} erasures, capability is {s.rho}", j)
    if s.mode == "checksum":
        acc = np.zeros(values.shape[:-1], dtype=np.int64)
        for i in alive:
            acc = F.vadd(acc, values[..., i])
        values[..., lost[0]] = F.vneg(acc)
        erased[lost[0]] = False
        return RecoveryStep(si, j, tuple(lost), tuple(alive), "checksum")
    chosen: dict[int, int] = {}
    for i in alive:
        chosen.setdefault(int(fs.nodes[i]), i)
    if len(chosen) < s.r:
        raise RecoveryError(f"fibre {j} keeps {len(chosen)} distinct nodes, needs {s.r}", j)
    used = list(chosen.values())[: s.r]
    nodes = [int(fs.nodes[i]) for i in used]
    for t in lost:
        w = lagrange_weights(F, nodes, int(fs.nodes[t]))
        acc = np.zeros(values.shape[:-1], dtype=np.int64)
        for wi, i in zip(w, used):
            acc = F.vadd(acc, F.vmul(values[..., i], int(wi)))
        values[..., t] = acc
        erased[t] = False
    return RecoveryStep(si, j, tuple(lost), tuple(used), "interpolation", tuple(F.indices_of(np.array(nodes)).tolist()))


def recover_many(values: np.ndarray, erased: np.ndarray, profile: LRCProfile) -> tuple[np.ndarray, list[RecoveryStep]]:
    """Fill a shared erasure pattern in a batch of words, shape (..., n).

    Fibres are processed structure by structure and repeated while progress is
    made, so a second recovering set can finish what the first could not.
    """
    F = profile.field
    vals = np.array(values, dtype=np.int64, copy=True)
    mask = np.array(erased, dtype=bool, copy=True)
    trace: list[RecoveryStep] = []
    last_error: RecoveryError | None = None
    while mask.any():
        progress = False
        for si, s in enumerate(profile.structures):
            fs = s.fibres
            for j in sorted({fs.fibre_of(i) for i in np.flatnonzero(mask)}):
                try:
                    trace.append(_fill_fibre(vals, mask, s, j, F, si))
                    progress = True
                except RecoveryError as exc:
                    last_error = exc
        if not progress:
            raise last_error or RecoveryError("no recovery structure applies")
    return vals, trace


def recover(word: ErasedWord, profile: LRCProfile) -> tuple[np.ndarray, list[RecoveryStep]]:
    return recover_many(word.values, word.erased, profile)


@dataclass
class RecoveryReport:
    passed: bool
    mode: str
    patterns: int
    words: int
    counterexample: dict | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mode": self.mode,
            "patterns": self.patterns,
            "words": self.words,
            "counterexample": self.counterexample,
        }


def _patterns(profile: LRCProfile):
    """Every erasure set of size 1..rho inside one fibre, for every structure."""
    seen = set()
    for s in profile.structures:
        for f in s.fibres.fibres:
            for size in range(1, s.rho + 1):
                for pat in itertools.combinations(f, size):
                    if pat not in seen:
                        seen.add(pat)
                        yield pat


def verify_recovery(
    code: LinearCode,
    profile: LRCProfile,
    mode: str = "auto",
    trials: int = 10**4,
    seed: int = 0,
) -> RecoveryReport:
    """Erase, recover and compare: all codewords when q^k <= 1e5, else sampled ones."""
    if mode == "auto":
        mode = "exhaustive" if code.size <= EXHAUSTIVE_WORDS else "randomized"
    pats = list(_patterns(profile))
    if mode == "exhaustive":
        words = code.all_codewords()
    else:
        rng = np.random.default_rng(seed)
        per = max(1, -(-trials // max(1, len(pats))))
        words = code.random_codewords(per, rng)
    for pat in pats:
        mask = np.zeros(code.n, dtype=bool)
        mask[list(pat)] = True
        vals = words.copy()
        vals[:, mask] = 0
        try:
            got, _ = recover_many(vals, mask, profile)
        except RecoveryError as exc:
            return RecoveryReport(False, mode, len(pats), words.shape[0], {"erased": list(pat), "error": str(exc)})
        bad = np.flatnonzero(np.any(got != words, axis=1))
        if bad.size:
            w = words[bad[0]]
            return RecoveryReport(
                False, mode, len(pats), words.shape[0],
                {"erased": list(pat), "word": code.field.indices_of(w).tolist(),
                 "recovered": code.field.indices_of(got[bad[0]]).tolist()},
            )
    return RecoveryReport(True, mode, len(pats), words.shape[0])
