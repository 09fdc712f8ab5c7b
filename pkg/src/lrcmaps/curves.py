"""Blueprints from plane curves with one designated point at infinity.

Pole orders at that point are family constants here, not computed from a
valuation engine: Klein (3, 5) for x/y and x/y^2, Hermitian (q, q + 1) for
x and y, and (deg v, deg u) for x and y on u(x) = v(y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .field import FieldSpec, GF
from .poly import MultiPoly, UniPoly, is_affine_p_polynomial
from .polytope import Polytope, hypercube, remove_points, weighted_polytope
from .rational_map import (
    BasisFunction,
    CodeBlueprint,
    LocalityError,
    RationalFunction,
    RecoveryStructure,
    fibres,
    locality_of,
)

FAMILIES = ("klein", "elliptic", "hermitian", "artin_schreier", "custom")


class CurveError(ValueError):
    """Curve parameters outside the family's admissible range."""


@dataclass(frozen=True, eq=False)
class PlaneCurveSpec:
    equation: MultiPoly  # affine curve is its zero set
    family: str
    pole_orders: tuple[int, int]
    params: dict = field(default_factory=dict)
    infinite_points: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CurveError(f"unknown family {self.family!r}")
        if self.equation.nvars != 2:
            raise CurveError("plane curves need a bivariate equation")
        if self.family == "artin_schreier":
            u, v = self.params["u"], self.params["v"]
            _check_artin_schreier(u, v)

    @property
    def field(self) -> FieldSpec:
        return self.equation.field


def grid_points(F: FieldSpec, m: int = 2) -> np.ndarray:
    """All of A^m(F) as codes, first coordinate slowest, field enumeration order."""
    e = F.element_codes()
    mesh = np.meshgrid(*([e] * m), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def rational_points(curve: PlaneCurveSpec) -> np.ndarray:
    """Affine points of the curve, (N, 2) codes, by exhaustive evaluation."""
    pts = grid_points(curve.field, 2)
    return pts[curve.equation.evaluate_many(pts) == 0]


def _blueprint_from_polytope(
    F: FieldSpec,
    points: np.ndarray,
    phis: Sequence[RationalFunction],
    shape: Polytope,
    structure: RecoveryStructure,
    goppa_l: int | None,
    meta: dict,
) -> CodeBlueprint:
    """Basis phi_1^a_1 .. phi_{t+1}^a_{t+1} over the polytope; last exponent is the node power."""
    basis = []
    for e in shape.sorted():
        f = RationalFunction.const(F, points.shape[1])
        for phi, a in zip(phis, e):
            if a:
                f = f * phi**a
        basis.append(BasisFunction(f, int(e[-1]), str(e)))
    meta = dict(meta, shape=shape.to_dict())
    return CodeBlueprint(F, points, basis, [structure], goppa_l, meta)


# --------------------------------------------------------------------------
# Klein quartic over GF(8)


def klein_curve() -> PlaneCurveSpec:
    F = GF(8)
    x, y = MultiPoly.variables(F, 2)
    return PlaneCurveSpec(x**3 * y + y**3 + x, "klein", (3, 5), infinite_points=2)


def klein_shape(l: int) -> Polytope:
    return weighted_polytope((3, 5), l, cap=1)


def klein_blueprint(l: int, drops: Sequence[Sequence[int]] = ()) -> CodeBlueprint:
    """phi_1 = x/y, node phi_2 = x/y^2, on the 21 affine points other than (0, 0)."""
    if not 1 <= l <= 20:
        raise CurveError("Klein bound must satisfy 1 <= l <= 20")
    curve = klein_curve()
    F = curve.field
    A = rational_points(curve)
    P = A[~np.all(A == 0, axis=1)]
    phi1 = RationalFunction.parse("(x1)/(x2)", F, 2)
    phi2 = RationalFunction.parse("(x1)/(x2^2)", F, 2)
    fs = fibres([phi1], phi2, P)
    # the only ramified point is (0, 0): all other fibres have exactly 3 points
    if sorted(fs.sizes()) != [3] * (F.q - 1):
        raise CurveError(f"unexpected Klein fibre sizes {fs.sizes()}")
    shape, absent = remove_points(klein_shape(l), drops)
    if absent:
        raise CurveError(f"points {absent} are not in the polytope")
    st = RecoveryStructure(fs, locality_of(fs, 1), 1, "interpolation")
    return _blueprint_from_polytope(F, P, [phi1, phi2], shape, st, l, {"family": "klein", "l": l})


# --------------------------------------------------------------------------
# elliptic curves y^2 = x^3 + B, q = 1 mod 3


def elliptic_curve(B: int, q: int) -> PlaneCurveSpec:
    F = GF(q)
    x, y = MultiPoly.variables(F, 2)
    return PlaneCurveSpec(y**2 - x**3 - B, "elliptic", (2, 3), {"B": B})


def elliptic_shape(l: int) -> Polytope:
    return weighted_polytope((2, 3), l, cap=1, cap_axis=0)


def elliptic_dimension(l: int) -> int:
    return l - (l - 1) // 3


def elliptic_blueprint(B: int, l: int, q: int) -> CodeBlueprint:
    """Fibres of y are the triples (a, b), (wa, b), (w^2 a, b) with a != 0; node x.

    ``B`` is a field code (for prime q, the integer itself).
    """
    F = GF(q)
    if (q - 1) % 3:
        raise CurveError("need q = 1 mod 3 for cube roots of unity")
    if B % q == 0:
        raise CurveError("B must be nonzero")
    curve = elliptic_curve(B, q)
    A = rational_points(curve)
    P = A[A[:, 0] != 0]
    if not 1 <= l < P.shape[0]:
        raise CurveError(f"bound l = {l} outside 1..{P.shape[0] - 1}")
    x = RationalFunction.var(F, 2, 0)
    y = RationalFunction.var(F, 2, 1)
    fs = fibres([y], x, P)
    if set(fs.sizes()) != {3}:
        raise CurveError(f"unexpected fibre sizes {fs.sizes()}")
    shape = elliptic_shape(l)
    # node power is the x-exponent, which sits on axis 0: reorder to (y, x)
    swapped = Polytope(2, frozenset((b, a) for a, b in shape.points))
    st = RecoveryStructure(fs, locality_of(fs, 1), 1, "interpolation")
    bp = _blueprint_from_polytope(F, P, [y, x], swapped, st, l, {"family": "elliptic", "B": B, "q": q, "l": l})
    bp.meta["shape"] = shape.to_dict()
    return bp


def smallest_elliptic_l(k: int) -> int:
    l = 1
    while elliptic_dimension(l) < k:
        l += 1
    if elliptic_dimension(l) != k:
        raise CurveError(f"no bound gives dimension {k}")
    return l


def twist_counts(q: int) -> list[int]:
    """S_i = #X_i - q - 1 for X_i : y^2 = x^3 + xi^i, i = 0..5, counting the point at infinity."""
    F = GF(q)
    e = F.element_codes()
    cubes = F.vpow(e, 3)
    squares = F.vpow(e, 2)
    sq_count = np.bincount(squares, minlength=q)  # number of y with y^2 = c
    out = []
    for i in range(6):
        B = F.pow(F.primitive_code, i)
        rhs = F.vadd(cubes, B)
        affine = int(sq_count[rhs].sum())
        out.append(affine + 1 - q - 1)
    return out


# --------------------------------------------------------------------------
# Artin-Schreier curves u(x) = v(y)


def _check_artin_schreier(u: UniPoly, v: UniPoly) -> None:
    kind = is_affine_p_polynomial(v)
    if kind.kind != "linearized":
        raise CurveError("v must be a linearized polynomial")
    if not v.coeff(1):
        raise CurveError("v must be separable (nonzero linear term)")
    if math.gcd(u.degree, v.degree) != 1:
        raise CurveError("deg u and deg v must be coprime")


def artin_schreier_curve(u: UniPoly, v: UniPoly) -> PlaneCurveSpec:
    F = u.field
    x, y = MultiPoly.variables(F, 2)
    eq = MultiPoly(F, 2)
    for i, c in enumerate(u.coeffs):
        if c:
            eq = eq + x**i * c
    for i, c in enumerate(v.coeffs):
        if c:
            eq = eq - y**i * c
    return PlaneCurveSpec(eq, "artin_schreier", (v.degree, u.degree), {"u": u, "v": v})


def artin_schreier_points(u: UniPoly, v: UniPoly) -> np.ndarray:
    """Affine points grouped by x, (N, 2) codes; each nonempty fibre validated to size deg v."""
    F = u.field
    e = F.element_codes()
    ua = u.evaluate_many(e)
    vb = v.evaluate_many(e)
    m = v.degree
    pts = []
    for a, ta in zip(e, ua):
        bs = e[vb == ta]
        if bs.size == 0:
            continue
        if bs.size != m:
            raise CurveError(f"fibre over x = {F.index_of(int(a))} has {bs.size} points, expected {m}")
        pts.extend((int(a), int(b)) for b in bs)
    return np.array(pts, dtype=np.int64).reshape(-1, 2)


def artin_schreier_shape(u: UniPoly, v: UniPoly, l: int) -> Polytope:
    return weighted_polytope((v.degree, u.degree), l, cap=v.degree - 2)


def _as_blueprint(u, v, shape: Polytope, goppa_l: int | None, meta: dict, mode: str = "checksum") -> CodeBlueprint:
    _check_artin_schreier(u, v)
    F = u.field
    P = artin_schreier_points(u, v)
    if goppa_l is not None and goppa_l >= P.shape[0]:
        raise CurveError(f"bound {goppa_l} >= n = {P.shape[0]}: evaluation may not be injective")
    x = RationalFunction.var(F, 2, 0)
    y = RationalFunction.var(F, 2, 1)
    fs = fibres([x], y, P)
    m = v.degree
    # one erasure per fibre: r = m - 1 from the fibre size, recovered by one addition
    st = RecoveryStructure(fs, m - 1, 1, mode)
    return _blueprint_from_polytope(F, P, [x, y], shape, st, goppa_l, meta)


def artin_schreier_blueprint(u: UniPoly, v: UniPoly, l: int) -> CodeBlueprint:
    m = v.degree
    if m < 2:
        raise CurveError("need deg v >= 2")
    shape = artin_schreier_shape(u, v, l)
    return _as_blueprint(u, v, shape, l, {"family": "artin_schreier", "l": l, "deg_u": u.degree, "deg_v": m})


def norm_trace_polys(q: int, u_exp: int) -> tuple[UniPoly, UniPoly]:
    """x^(1 + q + .. + q^(u-1)) and y + y^q + .. + y^(q^(u-1)) over GF(q^u)."""
    F = GF(q**u_exp)
    norm = UniPoly.monomial(F, sum(q**i for i in range(u_exp)))
    trace = UniPoly(F)
    for i in range(u_exp):
        trace = trace + UniPoly.monomial(F, q**i)
    return norm, trace


def norm_trace_blueprint(q: int, u_exp: int, l: int) -> CodeBlueprint:
    u, v = norm_trace_polys(q, u_exp)
    bp = artin_schreier_blueprint(u, v, l)
    bp.meta.update(family="norm_trace", q=q, u=u_exp)
    return bp


# --------------------------------------------------------------------------
# Hermitian curves x^(q+1) = y^q + y over GF(q^2)


HERMITIAN_SHAPES = ("rect", "weighted", "dist")


def hermitian_polys(q_base: int) -> tuple[UniPoly, UniPoly]:
    F = GF(q_base**2)
    return UniPoly.monomial(F, q_base + 1), UniPoly.monomial(F, q_base) + UniPoly.x(F)


def hermitian_curve(q_base: int) -> PlaneCurveSpec:
    u, v = hermitian_polys(q_base)
    c = artin_schreier_curve(u, v)
    return PlaneCurveSpec(c.equation, "hermitian", (q_base, q_base + 1), {"q": q_base, "u": u, "v": v})


def hermitian_shape(q_base: int, shape: str, l: int) -> tuple[Polytope, int]:
    """Polytope and the pole-order bound s with V inside L(sQ)."""
    q, r = q_base, q_base - 1
    if shape == "rect":
        return hypercube(l + 1, r), l * q + (r - 1) * (q + 1)
    if shape == "weighted":
        s = l * q + (r - 1) * (q + 1)
        return weighted_polytope((q, q + 1), s, cap=r - 1), s
    if shape == "dist":
        lp = l - (r * (r - 1)) // (2 * q)
        if lp < 0:
            raise CurveError(f"l = {l} too small for the distance-improved shape")
        s = lp * q + (r - 1) * (q + 1)
        return weighted_polytope((q, q + 1), s, cap=r - 1), s
    raise CurveError(f"unknown Hermitian shape {shape!r}")


def hermitian_blueprint(q_base: int, shape: str = "weighted", l: int = 1, mode: str = "checksum") -> CodeBlueprint:
    """phi = x on all q^3 affine points, node y, r = q - 1."""
    if q_base < 2:
        raise CurveError("need q >= 2")
    P, s = hermitian_shape(q_base, shape, l)
    if s >= q_base**3:
        raise CurveError(f"pole bound {s} >= n = {q_base**3}: evaluation may not be injective")
    u, v = hermitian_polys(q_base)
    return _as_blueprint(u, v, P, s, {"family": "hermitian", "q": q_base, "shape": shape, "l": l}, mode)


# --------------------------------------------------------------------------
# Riemann-Roch characterisation on the Hermitian curve


class RRResult(NamedTuple):
    is_rr_space: bool
    s: int | None


def riemann_roch_test(t: int, caps: Sequence[int], q_base: int) -> RRResult:
    """Is sum_{i<=t} <1, x, .., x^caps[i]> y^i a full space L(sQ)?"""
    if t > q_base - 2:
        raise CurveError("need t <= q - 2")
    if len(caps) != t + 1:
        raise ValueError(f"expected {t + 1} caps")
    q = q_base
    for j in range(t + 2):
        if all(caps[t - i] == (i if i < j else i + 1) for i in range(t + 1)):
            s = (t + 1) * q + t - j if j <= t else t * (q + 1)
            return RRResult(True, s)
    return RRResult(False, None)
