"""Sparse multivariate and dense univariate polynomials over GF(q)."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .field import FieldElement, FieldError, FieldMismatchError, FieldSpec

Monomial = tuple[int, ...]


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


class MultiPoly:
    """Polynomial in ``nvars`` variables, stored as {exponent tuple: coefficient}."""

    __slots__ = ("field", "nvars", "_terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Mapping[Monomial, FieldElement | int] | None = None):
        self.field = field
        self.nvars = nvars
        clean: dict[Monomial, FieldElement] = {}
        for mono, c in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            c = field(c)
            if c:
                prev = clean.get(mono)
                c = c if prev is None else prev + c
                if c:
                    clean[mono] = c
                else:
                    del clean[mono]
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c=1) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: FieldSpec, nvars: int, i: int) -> "MultiPoly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(field, nvars, {tuple(mono): 1})

    @classmethod
    def monomial(cls, field: FieldSpec, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def variables(cls, field: FieldSpec, nvars: int) -> list["MultiPoly"]:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, FieldElement]:
        return dict(self._terms)

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=grlex_key)

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset((m, c.code) for m, c in self._terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise FieldMismatchError("polynomials over different fields")
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different numbers of variables")
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return MultiPoly(self.field, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[Monomial, FieldElement] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                terms[m] = terms[m] + c if m in terms else c
        return MultiPoly(self.field, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.field, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- evaluation -----------------------------------------------------

    def evaluate(self, point: Sequence) -> FieldElement:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [self.field(x) for x in point]
        total = self.field.zero
        for mono, c in self._terms.items():
            term = c
            for x, e in zip(pt, mono):
                if e:
                    term = term * x**e
            total = total + term
        return total

    __call__ = evaluate

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of an (N, nvars) array of field codes."""
        points = np.asarray(points, dtype=np.int64)
        if points.ndim != 2 or points.shape[1] != self.nvars:
            raise ValueError(f"expected an (N, {self.nvars}) array of points")
        F = self.field
        out = np.zeros(points.shape[0], dtype=np.int64)
        powers: dict[tuple[int, int], np.ndarray] = {}
        for mono, c in self._terms.items():
            term = np.full(points.shape[0], c.code, dtype=np.int64)
            for i, e in enumerate(mono):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = F.vpow(points[:, i], e)
                    term = F.vmul(term, powers[key])
            out = F.vadd(out, term)
        return out

    def reduce_exponents(self) -> "MultiPoly":
        """Pointwise-equal polynomial with every exponent in [0, q-1]."""
        q = self.field.q
        terms: dict[Monomial, FieldElement] = {}
        for mono, c in self._terms.items():
            red = tuple(0 if e == 0 else (e - 1) % (q - 1) + 1 for e in mono)
            terms[red] = terms[red] + c if red in terms else c
        return MultiPoly(self.field, self.nvars, terms)

    # -- text format ----------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=grlex_key, reverse=True):
            factors = [str(self._terms[mono].index)]
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, field: FieldSpec, nvars: int) -> "MultiPoly":
        text = text.strip()
        if text in ("", "0"):
            return cls(field, nvars)
        terms: dict[Monomial, FieldElement] = {}
        for raw in text.split("+"):
            raw = raw.strip()
            if not raw:
                raise ValueError(f"empty term in {text!r}")
            coeff = field.one
            mono = [0] * nvars
            for tok in raw.split("*"):
                tok = tok.strip()
                if re.fullmatch(r"\d+", tok):
                    coeff = coeff * field.from_index(int(tok))
                    continue
                m = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"cannot parse factor {tok!r}")
                i = int(m.group(1)) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable x{i + 1} outside 1..{nvars}")
                mono[i] += int(m.group(2) or 1)
            key = tuple(mono)
            terms[key] = terms[key] + coeff if key in terms else coeff
        return cls(field, nvars, terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


def evaluate(f: MultiPoly, point: Sequence) -> FieldElement:
    return f.evaluate(point)


def reduce_exponents(f: MultiPoly) -> MultiPoly:
    return f.reduce_exponents()


class UniPoly:
    """Dense univariate polynomial, coefficients low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[FieldElement, ...] = tuple(cs)

    @classmethod
    def from_codes(cls, field: FieldSpec, codes: Iterable[int]) -> "UniPoly":
        return cls(field, [field.from_code(c) for c in codes])

    @classmethod
    def monomial(cls, field: FieldSpec, e: int, c=1) -> "UniPoly":
        return cls(field, [0] * e + [c])

    @classmethod
    def x(cls, field: FieldSpec) -> "UniPoly":
        return cls.monomial(field, 1)

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable) -> "UniPoly":
        out = cls(field, [1])
        for z in roots:
            out = out * cls(field, [-field(z), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.code for c in self.coeffs))

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise FieldMismatchError("polynomials over different fields")
            return other
        return UniPoly(self.field, [other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lead = other.coeffs[-1].inv()
        quot = [self.field.zero] * max(0, len(rem) - dq)
        while len(rem) - 1 >= dq and rem:
            c = rem[-1] * inv_lead
            shift = len(rem) - 1 - dq
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return UniPoly(self.field, quot), UniPoly(self.field, rem)

    def evaluate(self, x) -> FieldElement:
        x = self.field(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    __call__ = evaluate

    def evaluate_many(self, xs) -> np.ndarray:
        F = self.field
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in reversed(self.coeffs):
            acc = F.vadd(F.vmul(acc, xs), c.code)
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        lead = self.coeffs[-1].inv()
        return UniPoly(self.field, [c * lead for c in self.coeffs])

    def to_multi(self) -> MultiPoly:
        return MultiPoly(self.field, 1, {(i,): c for i, c in enumerate(self.coeffs)})

    def __repr__(self):
        return f"UniPoly({[c for c in self.coeffs]})"


def univariate_roots(f: UniPoly, spec: FieldSpec | None = None) -> list[FieldElement]:
    """All roots in GF(q) with multiplicity, in field enumeration order."""
    spec = spec or f.field
    if f.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    roots = []
    codes = spec.element_codes()
    vals = f.evaluate_many(codes)
    for code in codes[vals == 0]:
        z = spec.from_code(int(code))
        g = f
        lin = UniPoly(spec, [-z, 1])
        while g.degree >= 1 and not g.evaluate(z):
            g, _ = divmod(g, lin)
            roots.append(z)
    return roots


def lagrange_interpolate(nodes: Sequence, values: Sequence) -> UniPoly:
    """The unique polynomial of degree < len(nodes) through (nodes[i], values[i])."""
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    if not nodes:
        raise ValueError("need at least one node")
    F = _field_of(list(nodes) + list(values))
    xs = [F(x) for x in nodes]
    if len({x.code for x in xs}) != len(xs):
        raise ValueError("repeated interpolation node")
    result = UniPoly(F)
    for j, (xj, yj) in enumerate(zip(xs, values)):
        basis = UniPoly(F, [1])
        denom = F.one
        for i, xi in enumerate(xs):
            if i != j:
                basis = basis * UniPoly(F, [-xi, 1])
                denom = denom * (xj - xi)
        result = result + basis * (F(yj) / denom)
    return result


def lagrange_weights(field: FieldSpec, nodes: Sequence[int], target: int) -> np.ndarray:
    """Codes w_j with f(target) = sum_j w_j f(nodes[j]) for deg f < len(nodes)."""
    F = field
    w = []
    for j, xj in enumerate(nodes):
        num, den = 1, 1
        for i, xi in enumerate(nodes):
            if i != j:
                num = F.mul(num, F.sub(target, xi))
                den = F.mul(den, F.sub(xj, xi))
        if den == 0:
            raise ValueError("repeated interpolation node")
        w.append(F.div(num, den))
    return np.array(w, dtype=np.int64)


def _field_of(values) -> FieldSpec:
    for v in values:
        if isinstance(v, FieldElement):
            return v.spec
    raise FieldError("cannot infer the field from plain integers")


def elementary_symmetric(roots: Sequence[FieldElement]) -> list[FieldElement]:
    """sigma_1..sigma_d of the roots."""
    F = _field_of(roots)
    e = [F.one] + [F.zero] * len(roots)
    for z in roots:
        for j in range(len(e) - 1, 0, -1):
            e[j] = e[j] + e[j - 1] * z
    return e[1:]


def newton_girard(sigmas: Sequence[FieldElement], upto: int) -> list[FieldElement]:
    """Power sums pi_1..pi_upto from elementary symmetric values."""
    F = _field_of(sigmas)
    d = len(sigmas)
    sig = lambda i: sigmas[i - 1] if i <= d else F.zero  # noqa: E731
    pis: list[FieldElement] = []
    for i in range(1, upto + 1):
        val = sig(i) * ((-1) ** (i - 1) * i)
        for j in range(1, i):
            val = val - pis[i - j - 1] * sig(j) * ((-1) ** j)
        pis.append(val)
    return pis


def power_sums(roots: Sequence[FieldElement], upto: int) -> list[FieldElement]:
    """pi_i = sum z^i for i = 1..upto, cross-checked against Newton-Girard."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    F = _field_of(roots)
    direct = []
    for i in range(1, upto + 1):
        s = F.zero
        for z in roots:
            s = s + z**i
        direct.append(s)
    recursive = newton_girard(elementary_symmetric(roots), upto)
    if direct != recursive:
        raise ArithmeticError("power sums disagree with the Newton-Girard recursion")
    return direct


class PPolyKind(NamedTuple):
    is_affine: bool
    kind: str  # "linearized", "affine" or "neither"


def _is_power_of(e: int, p: int) -> bool:
    while e % p == 0 and e > 1:
        e //= p
    return e == 1


def is_affine_p_polynomial(f: UniPoly) -> PPolyKind:
    """Classify f as linearized, affine p-polynomial, or neither."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    p = f.field.p
    exps = [i for i, c in enumerate(f.coeffs) if c and i > 0]
    if not exps or not all(_is_power_of(e, p) for e in exps):
        return PPolyKind(False, "neither")
    if f.coeff(0):
        return PPolyKind(True, "affine")
    return PPolyKind(True, "linearized")

