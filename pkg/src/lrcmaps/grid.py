"""Codes on Cartesian grids: affine variety, toric and Reed-Muller families.

Points are ordered row-major over the per-axis enumerations. Fibres are the
lines parallel to a chosen axis, and the node is that axis' coordinate.
Axes are 0-based throughout the Python API.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .field import FieldSpec, GF
from .polytope import Polytope, i_degree, product as polytope_product
from .rational_map import (
    CodeBlueprint,
    LocalityError,
    RecoveryStructure,
    monomial_space,
    projection_fibres,
)

KINDS = ("affine_variety", "toric", "reed_muller", "custom")


@dataclass(frozen=True, eq=False)
class GridSpec:
    field: FieldSpec
    axes: tuple[tuple[int, ...], ...]  # field codes per axis
    kind: str = "custom"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown grid kind {self.kind!r}")
        axes = tuple(tuple(int(c) for c in a) for a in self.axes)
        for a in axes:
            if not a or len(set(a)) != len(a):
                raise ValueError("each axis needs distinct points")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def affine_variety(cls, q: int, ns: Sequence[int]) -> "GridSpec":
        """Axis i holds the n_i-th roots of unity xi^(v_i j), v_i = (q - 1) / n_i."""
        F = GF(q)
        axes = []
        for n in ns:
            if n < 1 or (q - 1) % n:
                raise ValueError(f"{n} does not divide q - 1 = {q - 1}")
            v = (q - 1) // n
            axes.append(tuple(F.pow(F.primitive_code, v * j) for j in range(n)))
        return cls(F, tuple(axes), "affine_variety")

    @classmethod
    def toric(cls, q: int, m: int) -> "GridSpec":
        g = cls.affine_variety(q, [q - 1] * m)
        return cls(g.field, g.axes, "toric")

    @classmethod
    def reed_muller(cls, q: int, m: int) -> "GridSpec":
        F = GF(q)
        return cls(F, tuple(tuple(F.element_codes().tolist()) for _ in range(m)), "reed_muller")

    @property
    def m(self) -> int:
        return len(self.axes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.axes)

    @property
    def n(self) -> int:
        return math.prod(self.sizes)

    def is_full_axis(self, i: int) -> bool:
        return len(self.axes[i]) == self.field.q

    def points(self) -> np.ndarray:
        return np.array(list(itertools.product(*self.axes)), dtype=np.int64).reshape(-1, self.m)

    def reduce_exponent(self, i: int, e: int) -> int:
        """Exponent with the same values on axis i: mod n_i on roots of unity, (e-1) mod (q-1) + 1 on GF(q)."""
        if e == 0:
            return 0
        if self.kind in ("affine_variety", "toric"):
            return e % len(self.axes[i])
        return (e - 1) % (self.field.q - 1) + 1

    def reduce_shape(self, shape: Polytope) -> Polytope:
        if shape.dim != self.m:
            raise ValueError(f"shape has dimension {shape.dim}, grid has {self.m} axes")
        pts = {tuple(self.reduce_exponent(i, e) for i, e in enumerate(p)) for p in shape.points}
        if len(pts) != len(shape):
            raise ValueError("shape exponents collide after reduction")
        return Polytope(self.m, frozenset(pts))


def _structure(grid: GridSpec, points: np.ndarray, shape: Polytope, axis: int, rho: int, mode: str) -> RecoveryStructure:
    deg = i_degree(shape, axis)
    size = len(grid.axes[axis])
    if deg > size - 2:
        raise LocalityError(f"axis {axis} degree {deg} exceeds {size - 2}")
    r = deg + 1
    if r + rho > size:
        raise LocalityError(f"capability {rho} too large for axis {axis}: at most {size - r}")
    if mode == "checksum" and not grid.is_full_axis(axis):
        raise ValueError("checksum recovery needs the axis to cover all of GF(q)")
    return RecoveryStructure(projection_fibres(points, axis), r, rho, mode)


def grid_blueprint(
    grid: GridSpec,
    shape: Polytope,
    axis: int,
    rho: int = 1,
    mode: str = "interpolation",
    availability: bool = False,
) -> CodeBlueprint:
    """Monomials over ``shape`` evaluated on the grid, fibres along ``axis``.

    ``mode="auto"`` selects checksum when the axis is all of GF(q).
    With ``availability`` every other eligible axis adds a recovery structure.
    """
    shape = grid.reduce_shape(shape)
    if not 0 <= axis < grid.m:
        raise ValueError(f"axis {axis} outside 0..{grid.m - 1}")
    if mode == "auto":
        mode = "checksum" if grid.is_full_axis(axis) and rho == 1 else "interpolation"
    pts = grid.points()
    structs = [_structure(grid, pts, shape, axis, rho, mode)]
    if availability:
        for ax, r_ax in availability_profile(shape, grid):
            if ax != axis:
                m_ax = mode if grid.is_full_axis(ax) else "interpolation"
                rho_ax = 1 if m_ax == "checksum" else min(rho, len(grid.axes[ax]) - r_ax)
                structs.append(_structure(grid, pts, shape, ax, rho_ax, m_ax))
    basis = monomial_space(grid.field, grid.m, shape.sorted(), axis)
    meta = {"grid": grid.kind, "sizes": list(grid.sizes), "axis": axis, "shape": shape.to_dict()}
    return CodeBlueprint(grid.field, pts, basis, structs, None, meta)


def rm_distance_bound(shape: Polytope, m: int, q: int, n: int) -> int:
    """delta - q^m + n with (q-1)m - l = theta (q-1) + mu and delta = (mu + 1) q^theta."""
    l = shape.max_total_degree()
    if l > (q - 1) * m:
        raise ValueError("total degree exceeds (q - 1) m")
    theta, mu = divmod((q - 1) * m - l, q - 1)
    return (mu + 1) * q**theta - q**m + n


def product_distance(d1: int, d2: int) -> int:
    return d1 * d2


def hypercube_distance(bounds: Sequence[int], sizes: Sequence[int]) -> int:
    """prod (n_i - l_i + 1) for the box H(l_1, .., l_m) on axes of sizes n_i >= l_i."""
    if len(bounds) != len(sizes):
        raise ValueError("one bound per axis")
    if any(l > n for l, n in zip(bounds, sizes)):
        raise ValueError("box larger than the grid")
    return math.prod(n - l + 1 for l, n in zip(bounds, sizes))


def product_grid(g1: GridSpec, g2: GridSpec) -> GridSpec:
    if g1.field != g2.field:
        raise ValueError("grids over different fields")
    kind = g1.kind if g1.kind == g2.kind else "custom"
    return GridSpec(g1.field, g1.axes + g2.axes, kind)


def evaluation_code(grid: GridSpec, shape: Polytope, check_rank: bool = True):
    """Plain evaluation code of the monomials in ``shape`` on the grid."""
    from .analysis.code import measure
    from .linalg import rank

    shape = grid.reduce_shape(shape)
    pts = grid.points()
    M = np.stack([b.function.evaluate_many(pts) for b in monomial_space(grid.field, grid.m, shape.sorted(), None)])
    if check_rank and rank(M, grid.field) < M.shape[0]:
        raise LocalityError("evaluation is not injective on this shape")
    return measure(M, grid.field, origin={"grid": grid.kind, "shape": shape.to_dict()})


def product_code(g1: GridSpec, P1: Polytope, g2: GridSpec, P2: Polytope):
    """Code of P1 x P2 on the product grid; components must be injective."""
    evaluation_code(g1, P1)
    evaluation_code(g2, P2)
    return evaluation_code(product_grid(g1, g2), polytope_product(P1, P2))


class Capability(NamedTuple):
    r: int
    rho: int


def capability_profile(shape: Polytope, grid: GridSpec, axis: int) -> Capability:
    """Locality r = i_degree + 1 and the number rho of erasures a fibre absorbs.

    A fibre has |P_i| distinct nodes and interpolation needs i_degree + 1 of
    them, so rho = |P_i| - i_degree - 1.
    """
    deg = i_degree(grid.reduce_shape(shape), axis)
    size = len(grid.axes[axis])
    rho = size - deg - 1
    if rho < 1:
        raise LocalityError(f"axis {axis} has degree {deg}: no local recovery on {size} points")
    return Capability(deg + 1, rho)


def availability_profile(shape: Polytope, grid: GridSpec) -> list[tuple[int, int]]:
    """(axis, r) for every axis with i-degree <= |P_i| - 2.

    The fibres of two different axes through a point meet only at that point;
    this is checked on the actual grid.
    """
    shape = grid.reduce_shape(shape)
    out = []
    for ax in range(grid.m):
        deg = i_degree(shape, ax)
        if deg <= len(grid.axes[ax]) - 2:
            out.append((ax, deg + 1))
    if len(out) > 1:
        pts = grid.points()
        fss = [projection_fibres(pts, ax) for ax, _ in out]
        for a, b in itertools.combinations(fss, 2):
            for i in range(grid.n):
                common = set(a.fibres[a.fibre_of(i)]) & set(b.fibres[b.fibre_of(i)])
                if common != {i}:
                    raise AssertionError("recovering sets are not disjoint")
    return out
