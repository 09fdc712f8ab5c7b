"""Finite lattice-point sets in N_0^d indexing monomial bases."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import Monomial, grlex_key


@dataclass(frozen=True)
class Polytope:
    dim: int
    points: frozenset[Monomial]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        pts = frozenset(tuple(int(a) for a in p) for p in self.points)
        for p in pts:
            if len(p) != self.dim or min(p) < 0:
                raise ValueError(f"point {p} is not in N_0^{self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "Polytope":
        pts = [tuple(p) for p in points]
        if dim is None:
            if not pts:
                raise ValueError("cannot infer the dimension of an empty point list")
            dim = len(pts[0])
        return cls(dim, frozenset(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, p):
        return tuple(p) in self.points

    def sorted(self) -> list[Monomial]:
        return sorted(self.points, key=grlex_key)

    def remove(self, *drops: Sequence[int]) -> "Polytope":
        return remove_points(self, drops)[0]

    def add(self, *pts: Sequence[int]) -> "Polytope":
        return Polytope(self.dim, self.points | {tuple(p) for p in pts})

    def max_total_degree(self) -> int:
        if not self.points:
            raise ValueError("empty polytope")
        return max(sum(p) for p in self.points)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "points": [list(p) for p in self.sorted()]}

    @classmethod
    def from_dict(cls, d: dict) -> "Polytope":
        return cls(int(d["dim"]), frozenset(tuple(p) for p in d["points"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Polytope":
        return cls.from_dict(json.loads(text))


def simplex(m: int, l: int) -> Polytope:
    """Delta(l): vectors in N_0^m with coordinate sum <= l."""
    if l < 0:
        raise ValueError("degree bound must be >= 0")
    pts = [p for p in itertools.product(range(l + 1), repeat=m) if sum(p) <= l]
    return Polytope(m, frozenset(pts))


def hypercube(*bounds: int) -> Polytope:
    """H(l_1, ..., l_m): the box with 0 <= alpha_i < l_i."""
    if len(bounds) == 1 and isinstance(bounds[0], (list, tuple)):
        bounds = tuple(bounds[0])
    if any(b < 1 for b in bounds):
        raise ValueError("hypercube bounds must be >= 1")
    return Polytope(len(bounds), frozenset(itertools.product(*(range(b) for b in bounds))))


def weighted_polytope(weights: Sequence[int], l: int, cap: int, cap_axis: int = -1) -> Polytope:
    """{alpha : sum w_i alpha_i <= l, alpha[cap_axis] <= cap}."""
    if any(w < 1 for w in weights):
        raise ValueError("weights must be >= 1")
    if l < 0 or cap < 0:
        raise ValueError("bound and cap must be >= 0")
    d = len(weights)
    axis = cap_axis % d
    ranges = []
    for i, w in enumerate(weights):
        top = l // w
        if i == axis:
            top = min(top, cap)
        ranges.append(range(top + 1))
    pts = [p for p in itertools.product(*ranges) if sum(w * a for w, a in zip(weights, p)) <= l]
    return Polytope(d, frozenset(pts))


def remove_points(P: Polytope, drops: Iterable[Sequence[int]]) -> tuple[Polytope, list[Monomial]]:
    """Set difference; also returns the drops that were not in P."""
    drops = [tuple(d) for d in drops]
    absent = [d for d in drops if d not in P.points]
    return Polytope(P.dim, P.points - set(drops)), absent


def i_degree(P: Polytope, axis: int) -> int:
    if not P.points:
        raise ValueError("empty polytope has no degree")
    return max(p[axis] for p in P.points)


def monomial_basis(P: Polytope) -> list[Monomial]:
    return P.sorted()


def product(P1: Polytope, P2: Polytope) -> Polytope:
    return Polytope(P1.dim + P2.dim, frozenset(a + b for a in P1.points for b in P2.points))


def parse_shape(text: str) -> Polytope:
    """Shape constructor strings: ``simplex:m,l``, ``hypercube:l1,l2,...``,
    ``weighted:w1,w2,...;l;cap[;axis]`` or a path to a polytope JSON file."""
    kind, _, args = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("simplex", "delta", "d"):
        m, l = (int(x) for x in args.split(","))
        return simplex(m, l)
    if kind in ("hypercube", "h"):
        return hypercube(*(int(x) for x in args.split(",")))
    if kind in ("weighted", "w"):
        parts = args.split(";")
        weights = [int(x) for x in parts[0].split(",")]
        axis = int(parts[3]) if len(parts) > 3 else -1
        return weighted_polytope(weights, int(parts[1]), int(parts[2]), axis)
    with open(text) as fh:
        return Polytope.from_json(fh.read())


def parse_drops(text: str | None) -> list[Monomial]:
    """``"1,1;0,6"`` -> [(1, 1), (0, 6)]."""
    if not text:
        return []
    return [tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip()]
