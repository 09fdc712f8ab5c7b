"""Evaluation codes from rational maps, grouped into fibres for local recovery.

A map phi = (phi_1, .., phi_t) partitions the evaluation points into fibres and
a further function phi_last supplies interpolation nodes inside each fibre.
Functions of the form g * phi_last^i with g constant on fibres restrict to
polynomials of degree i in the node, which is what makes erasures local.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .field import FieldSpec
from .poly import MultiPoly


class PoleError(ValueError):
    """A rational function was evaluated at one of its poles."""


class LocalityError(ValueError):
    """A fibre is too small for the requested locality or capability."""


# --------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True, eq=False)
class RationalFunction:
    numerator: MultiPoly
    denominator: MultiPoly

    def __post_init__(self):
        n, d = self.numerator, self.denominator
        if n.field != d.field or n.nvars != d.nvars:
            raise ValueError("numerator and denominator live in different rings")
        if d.is_zero():
            raise ZeroDivisionError("denominator is identically zero")

    @classmethod
    def poly(cls, p: MultiPoly) -> "RationalFunction":
        return cls(p, MultiPoly.constant(p.field, p.nvars, 1))

    @classmethod
    def const(cls, field: FieldSpec, nvars: int, c=1) -> "RationalFunction":
        return cls.poly(MultiPoly.constant(field, nvars, c))

    @classmethod
    def var(cls, field: FieldSpec, nvars: int, i: int) -> "RationalFunction":
        return cls.poly(MultiPoly.var(field, nvars, i))

    @property
    def field(self) -> FieldSpec:
        return self.numerator.field

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction.poly(other)
        return RationalFunction.const(self.field, self.nvars, other)

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __add__(self, other):
        o = self._lift(other)
        return RationalFunction(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return self + RationalFunction(-o.numerator, o.denominator)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        return RationalFunction(self.numerator**e, self.denominator**e)

    def pole_mask(self, points: np.ndarray) -> np.ndarray:
        return self.denominator.evaluate_many(points) == 0

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64)
        den = self.denominator.evaluate_many(points)
        if np.any(den == 0):
            bad = points[int(np.flatnonzero(den == 0)[0])]
            raise PoleError(f"pole of {self.to_text()} at point {self.field.indices_of(bad).tolist()}")
        num = self.numerator.evaluate_many(points)
        return self.field.vmul(num, self.field.vinv(den))

    def to_text(self) -> str:
        if self.denominator.is_constant() and self.denominator.terms.get((0,) * self.nvars) == self.field.one:
            return self.numerator.to_text()
        return f"({self.numerator.to_text()})/({self.denominator.to_text()})"

    @classmethod
    def parse(cls, text: str, field: FieldSpec, nvars: int) -> "RationalFunction":
        """``"num"`` or ``"(num)/(den)"`` in the polynomial text format."""
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m:
            return cls(MultiPoly.parse(m.group(1), field, nvars), MultiPoly.parse(m.group(2), field, nvars))
        return cls.poly(MultiPoly.parse(text, field, nvars))

    def __repr__(self):
        return f"RationalFunction({self.to_text()})"


def as_rational(f, field: FieldSpec | None = None, nvars: int | None = None) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, MultiPoly):
        return RationalFunction.poly(f)
    if field is None or nvars is None:
        raise TypeError(f"cannot lift {f!r} to a rational function")
    return RationalFunction.const(field, nvars, f)


def domain_filter(functions: Sequence[RationalFunction], candidates: np.ndarray) -> np.ndarray:
    """Rows of ``candidates`` at which no function has a pole."""
    pts = np.asarray(candidates, dtype=np.int64)
    if pts.shape[0] == 0:
        return pts
    keep = np.ones(pts.shape[0], dtype=bool)
    for f in functions:
        keep &= ~as_rational(f).pole_mask(pts)
    return pts[keep]


# --------------------------------------------------------------------------
# fibres


@dataclass(frozen=True, eq=False)
class FibreStructure:
    fibres: tuple[tuple[int, ...], ...]
    nodes: np.ndarray  # node value (field code) of every coordinate
    base_values: tuple[tuple[int, ...], ...]  # phi-value of each fibre, as codes

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.int64)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "fibres", tuple(tuple(int(i) for i in f) for f in self.fibres))
        object.__setattr__(self, "base_values", tuple(tuple(int(v) for v in b) for b in self.base_values))
        seen = sorted(i for f in self.fibres for i in f)
        if seen != list(range(nodes.size)):
            raise ValueError("fibres do not partition the coordinates")
        if any(len(f) == 0 for f in self.fibres):
            raise ValueError("empty fibre")
        if len(self.base_values) != len(self.fibres):
            raise ValueError("one base value per fibre expected")
        owner = np.empty(nodes.size, dtype=np.int64)
        for j, f in enumerate(self.fibres):
            owner[list(f)] = j
        object.__setattr__(self, "_owner", owner)

    @property
    def n(self) -> int:
        return self.nodes.size

    def __len__(self):
        return len(self.fibres)

    def fibre_of(self, i: int) -> int:
        return int(self._owner[i])

    def distinct_nodes(self, j: int) -> int:
        return len({int(self.nodes[i]) for i in self.fibres[j]})

    def min_distinct_nodes(self) -> int:
        return min(self.distinct_nodes(j) for j in range(len(self.fibres)))

    def sizes(self) -> list[int]:
        return [len(f) for f in self.fibres]

    def to_dict(self, F: FieldSpec) -> dict:
        return {
            "fibres": [list(f) for f in self.fibres],
            "nodes": F.indices_of(self.nodes).tolist(),
            "base_values": [F.indices_of(np.array(b, dtype=np.int64)).tolist() for b in self.base_values],
        }

    @classmethod
    def from_dict(cls, d: dict, F: FieldSpec) -> "FibreStructure":
        return cls(
            tuple(tuple(f) for f in d["fibres"]),
            F.codes_of_indices(np.array(d["nodes"], dtype=np.int64)),
            tuple(tuple(F.codes_of_indices(np.array(b, dtype=np.int64)).tolist()) for b in d["base_values"]),
        )


def fibres(phis: Sequence, phi_last, points: np.ndarray) -> FibreStructure:
    """Group point indices by the value of (phi_1, .., phi_t); fibres in first-seen order."""
    pts = np.asarray(points, dtype=np.int64)
    if pts.ndim != 2:
        raise ValueError("points must be an (n, m) array")
    vals = [as_rational(f).evaluate_many(pts) for f in phis]
    keys = np.stack(vals, axis=1) if vals else np.zeros((pts.shape[0], 0), dtype=np.int64)
    nodes = as_rational(phi_last).evaluate_many(pts)
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, key in enumerate(map(tuple, keys.tolist())):
        groups.setdefault(key, []).append(i)
    return FibreStructure(tuple(tuple(g) for g in groups.values()), nodes, tuple(groups.keys()))


def projection_fibres(points: np.ndarray, axis: int) -> FibreStructure:
    """Fibres of the projection forgetting ``axis``; nodes are that coordinate."""
    pts = np.asarray(points, dtype=np.int64)
    rest = np.delete(pts, axis, axis=1)
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, key in enumerate(map(tuple, rest.tolist())):
        groups.setdefault(key, []).append(i)
    return FibreStructure(tuple(tuple(g) for g in groups.values()), pts[:, axis].copy(), tuple(groups.keys()))


def locality_of(fs: FibreStructure, rho: int = 1) -> int:
    """min over fibres of the number of distinct nodes, minus rho."""
    if rho < 1:
        raise ValueError("capability must be >= 1")
    r = fs.min_distinct_nodes() - rho
    if r <= 0:
        raise LocalityError(f"smallest fibre has {fs.min_distinct_nodes()} distinct nodes; too few for rho={rho}")
    return r


def prune_points(points: np.ndarray, phis: Sequence, phi_last) -> np.ndarray:
    """Keep one point per (fibre, node) pair, the first in enumeration order."""
    pts = np.asarray(points, dtype=np.int64)
    fs = fibres(phis, phi_last, pts)
    keep = []
    for f in fs.fibres:
        seen = set()
        for i in f:
            v = int(fs.nodes[i])
            if v not in seen:
                seen.add(v)
                keep.append(i)
    return pts[sorted(keep)]


# --------------------------------------------------------------------------
# function spaces


@dataclass(frozen=True, eq=False)
class BasisFunction:
    function: RationalFunction
    power: int  # exponent of phi_last
    label: str = ""

    def to_dict(self) -> dict:
        return {"function": self.function.to_text(), "power": self.power, "label": self.label}


def assemble_space(components: Sequence[Sequence], phi_last) -> list[BasisFunction]:
    """Basis of V = sum_i V_i * phi_last^i, keeping the power i as a tag."""
    phi = as_rational(phi_last)
    out = []
    for i, comp in enumerate(components):
        power = phi**i
        for j, g in enumerate(comp):
            g = as_rational(g, phi.field, phi.nvars)
            out.append(BasisFunction(g * power, i, f"V{i}[{j}]"))
    return out


def monomial_space(field: FieldSpec, nvars: int, exponents: Sequence[Sequence[int]], power_axis: int | None):
    """Basis functions x^alpha, tagged with the exponent on ``power_axis`` (or 0)."""
    out = []
    for e in exponents:
        f = RationalFunction.poly(MultiPoly.monomial(field, e))
        out.append(BasisFunction(f, int(e[power_axis]) if power_axis is not None else 0, str(tuple(e))))
    return out


# --------------------------------------------------------------------------
# blueprints


MODES = ("interpolation", "checksum")


@dataclass(frozen=True, eq=False)
class RecoveryStructure:
    fibres: FibreStructure
    r: int
    rho: int = 1
    mode: str = "interpolation"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown recovery mode {self.mode!r}")
        if self.r < 1 or self.rho < 1:
            raise ValueError("locality and capability must be >= 1")
        if self.mode == "checksum" and self.rho != 1:
            raise ValueError("checksum recovery handles one erasure per fibre")
        if self.fibres.min_distinct_nodes() < self.r + self.rho and self.mode == "interpolation":
            raise LocalityError("a fibre has fewer than r + rho distinct nodes")

    def to_dict(self, F: FieldSpec) -> dict:
        return {"r": self.r, "rho": self.rho, "mode": self.mode, **self.fibres.to_dict(F)}

    @classmethod
    def from_dict(cls, d: dict, F: FieldSpec) -> "RecoveryStructure":
        return cls(FibreStructure.from_dict(d, F), int(d["r"]), int(d.get("rho", 1)), d.get("mode", "interpolation"))


@dataclass(eq=False)
class CodeBlueprint:
    field: FieldSpec
    points: np.ndarray  # (n, m) field codes
    basis: list[BasisFunction]
    structures: list[RecoveryStructure]  # first entry is the primary one
    goppa_l: int | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.int64)
        if self.points.ndim != 2:
            raise ValueError("points must be an (n, m) array")
        if not self.basis:
            raise ValueError("empty function basis")
        if not self.structures:
            raise ValueError("at least one recovery structure is required")
        for s in self.structures:
            if s.fibres.n != self.n:
                raise ValueError("fibre structure and point list differ in length")
        # power tags refer to the primary node function
        deg = max(b.power for b in self.basis)
        if self.primary.mode == "interpolation" and deg > self.primary.r - 1:
            raise LocalityError(f"basis has node degree {deg} > r - 1 = {self.primary.r - 1}")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def nvars(self) -> int:
        return self.points.shape[1]

    @property
    def primary(self) -> RecoveryStructure:
        return self.structures[0]

    @property
    def fibre_structure(self) -> FibreStructure:
        return self.primary.fibres

    @property
    def r(self) -> int:
        return self.primary.r

    @property
    def rho(self) -> int:
        return self.primary.rho

    @property
    def mode(self) -> str:
        return self.primary.mode

    @property
    def availability(self) -> int:
        return len(self.structures)

    def evaluation_matrix(self) -> np.ndarray:
        return np.stack([b.function.evaluate_many(self.points) for b in self.basis])

    def to_dict(self) -> dict:
        F = self.field
        return {
            "field": F.to_dict(),
            "points": F.indices_of(self.points).tolist(),
            "basis": [b.to_dict() for b in self.basis],
            "structures": [s.to_dict(F) for s in self.structures],
            "goppa_l": self.goppa_l,
            "meta": self.meta,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "CodeBlueprint":
        F = FieldSpec.from_dict(d["field"])
        pts = F.codes_of_indices(np.array(d["points"], dtype=np.int64))
        m = pts.shape[1]
        basis = [
            BasisFunction(RationalFunction.parse(b["function"], F, m), int(b["power"]), b.get("label", ""))
            for b in d["basis"]
        ]
        structs = [RecoveryStructure.from_dict(s, F) for s in d["structures"]]
        return cls(F, pts, basis, structs, d.get("goppa_l"), dict(d.get("meta", {})))

    @classmethod
    def from_json(cls, text: str) -> "CodeBlueprint":
        return cls.from_dict(json.loads(text))


def fibre_sums(M: np.ndarray, fs: FibreStructure, F: FieldSpec) -> np.ndarray:
    """(rows, fibres) array of per-fibre coordinate sums of each row of M."""
    out = np.zeros((M.shape[0], len(fs)), dtype=np.int64)
    for j, f in enumerate(fs.fibres):
        acc = np.zeros(M.shape[0], dtype=np.int64)
        for i in f:
            acc = F.vadd(acc, M[:, i])
        out[:, j] = acc
    return out


def checksum_eligible(bp: CodeBlueprint, structure: RecoveryStructure | None = None) -> bool:
    """True when every basis codeword sums to zero over every fibre."""
    s = structure or bp.primary
    return not np.any(fibre_sums(bp.evaluation_matrix(), s.fibres, bp.field))


def restriction_degrees_ok(bp: CodeBlueprint, structure: RecoveryStructure | None = None) -> bool:
    """Every basis function agrees on each fibre with a node polynomial of degree < r.

    Interpolate through r distinct nodes and compare at the rest of the fibre.
    """
    from .poly import lagrange_weights

    s = structure or bp.primary
    F, M, fs = bp.field, bp.evaluation_matrix(), s.fibres
    for f in fs.fibres:
        first: dict[int, int] = {}
        for i in f:
            first.setdefault(int(fs.nodes[i]), i)
        base = list(first.values())[: s.r]
        if len(base) < s.r:
            return False
        base_nodes = [int(fs.nodes[i]) for i in base]
        for i in f:
            if i in base:
                continue
            w = lagrange_weights(F, base_nodes, int(fs.nodes[i]))
            pred = np.zeros(M.shape[0], dtype=np.int64)
            for wj, bj in zip(w, base):
                pred = F.vadd(pred, F.vmul(M[:, bj], int(wj)))
            if np.any(pred != M[:, i]):
                return False
    return True


def build_code(bp: CodeBlueprint):
    """Generator of ev_P(V), row reduced; warns if evaluation is not injective."""
    from .analysis.code import measure

    return measure(bp.evaluation_matrix(), bp.field, origin=bp)
