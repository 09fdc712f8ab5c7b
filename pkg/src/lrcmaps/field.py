"""Arithmetic in GF(p^m).

Elements are encoded as integers: the coefficient vector (c_0, ..., c_{m-1})
of the polynomial-basis representation maps to ``sum(c_i * p**i)``.  For a
prime field the code is simply the residue.  All scalar and vectorised
arithmetic goes through log/antilog tables keyed by the primitive element.
"""

from __future__ import annotations

import itertools
import json
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

# Conway polynomials, low degree first, leading coefficient included.
CONWAY = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    9: (2, 2, 1),
    16: (1, 1, 0, 0, 1),
    25: (2, 4, 1),
    27: (1, 2, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    49: (3, 6, 1),
    64: (1, 1, 0, 1, 1, 0, 1),
    81: (2, 0, 0, 2, 1),
    121: (2, 7, 1),
    125: (3, 3, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    169: (2, 12, 1),
    243: (1, 2, 0, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
}

MAX_TABLE_ORDER = 1 << 16
_FULL_TABLE_ORDER = 1024


class FieldError(ValueError):
    pass


class FieldMismatchError(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m, raising FieldError if q is not a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            m, rest = 0, q
            while rest % p == 0:
                rest //= p
                m += 1
            if rest != 1 or not is_prime(p):
                raise FieldError(f"{q} is not a prime power")
            return p, m
    raise FieldError(f"{q} is not a prime power")  # pragma: no cover


# -- dense polynomial helpers over GF(p), coefficient lists low degree first --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim([c % p for c in modulus])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod_p(f, list(low) + [1], p):
                return False
    return True


class FieldSpec:
    """GF(p^m) with a fixed modulus and primitive element.

    Immutable after construction.  Two specs are equal when p, m, modulus and
    primitive all agree.
    """

    def __init__(
        self,
        p: int,
        m: int = 1,
        modulus: Sequence[int] | None = None,
        primitive: Sequence[int] | int | None = None,
    ):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        q = p**m
        if q > MAX_TABLE_ORDER:
            raise FieldError(f"GF({q}) exceeds the supported order {MAX_TABLE_ORDER}")
        self.p, self.m, self.q = p, m, q
        if m == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = CONWAY.get(q) or _first_irreducible(p, m)
            mod = [int(c) % p for c in modulus]
            _trim(mod)
            if len(mod) != m + 1 or mod[-1] != 1:
                raise FieldError("modulus must be monic of degree m")
            if not is_irreducible(mod, p):
                raise FieldError(f"modulus {mod} is reducible over GF({p})")
            self.modulus = tuple(mod)
        self._build_tables(primitive)

    # -- construction --------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        p, m = self.p, self.m
        ac, bc = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _polymod_p(prod, self.modulus, p)
        return self._undigits(rem)

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _is_generator(self, g: int) -> bool:
        if g == 0:
            return False
        n = self.q - 1
        if self._pow_slow(g, n) != 1:
            return False
        return all(self._pow_slow(g, n // ell) != 1 for ell in prime_factors(n)) if n > 1 else True

    def _build_tables(self, primitive) -> None:
        q = self.q
        if primitive is None:
            gen = next(g for g in range(1, q) if self._is_generator(g))
        else:
            gen = primitive if isinstance(primitive, int) else self._undigits(list(primitive))
            if not self._is_generator(gen):
                raise FieldError(f"{primitive} is not a primitive element of GF({q})")
        self.primitive_code = gen
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        exp[q - 1:] = exp[: q - 1]
        self._exp = exp
        self._log = log
        digits = np.array([self._digits(c) for c in range(q)], dtype=np.int64).reshape(q, self.m)
        self._digit_table = digits
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        self._weights = weights
        neg = (-digits) % self.p @ weights
        self._neg = neg.astype(np.int64)

    def _digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(code % self.p)
            code //= self.p
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(digits)):
            code = code * self.p + int(c) % self.p
        if len(digits) > self.m:
            raise FieldError("coefficient vector longer than the extension degree")
        return code

    # -- identity ------------------------------------------------------

    def _key(self):
        return (self.p, self.m, self.modulus, self.primitive_code)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.q})" if self.m == 1 else f"GF({self.p}^{self.m})"

    # -- scalar code arithmetic ---------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return int(((self._digit_table[a] + self._digit_table[b]) % self.p) @ self._weights)

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self._neg[b]))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        return int(self._exp[(self._log[a] * e) % (self.q - 1)])

    def from_integer(self, n: int) -> int:
        """Code of n * 1."""
        return n % self.p

    # -- vectorised code arithmetic -----------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        if self.q > _FULL_TABLE_ORDER:
            raise FieldError(f"full addition table not built for GF({self.q})")
        a = np.arange(self.q)
        return self.vadd(a[:, None], a[None, :], _use_table=False)

    @cached_property
    def mul_table(self) -> np.ndarray:
        if self.q > _FULL_TABLE_ORDER:
            raise FieldError(f"full multiplication table not built for GF({self.q})")
        a = np.arange(self.q)
        return self.vmul(a[:, None], a[None, :])

    def vadd(self, a, b, _use_table: bool = True) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if _use_table and self.q <= _FULL_TABLE_ORDER:
            return self.add_table[a, b]
        d = (self._digit_table[a] + self._digit_table[b]) % self.p
        return d @ self._weights

    def vneg(self, a) -> np.ndarray:
        return self._neg[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.vpow(self.vinv(a), -e)
        if e == 0:
            return np.ones_like(a)
        out = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    # -- elements -------------------------------------------------------

    def __call__(self, x) -> "FieldElement":
        """Coerce x into the field.

        ints map to ``x * 1`` (so ``F(5)`` is the residue 5 in a prime field),
        sequences are polynomial-basis coefficient vectors.
        """
        if isinstance(x, FieldElement):
            if x.spec != self:
                raise FieldMismatchError(f"{x!r} does not belong to {self!r}")
            return x
        if isinstance(x, (int, np.integer)):
            return FieldElement(self, self.from_integer(int(x)))
        return FieldElement(self, self._undigits(list(x)))

    def from_code(self, code: int) -> "FieldElement":
        code = int(code)
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} outside GF({self.q})")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def primitive(self) -> "FieldElement":
        return FieldElement(self, self.primitive_code)

    @property
    def gen(self) -> "FieldElement":
        """The class of x in GF(p)[x]/(modulus); equals 0*... only for m == 1."""
        return FieldElement(self, self.p if self.m > 1 else 1)

    def element_codes(self) -> np.ndarray:
        """Codes in enumeration order 0, xi^0, xi^1, ..., xi^(q-2)."""
        return np.concatenate([[0], self._exp[: self.q - 1]])

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, int(c)) for c in self.element_codes()]

    def index_of(self, code: int) -> int:
        return 0 if code == 0 else int(self._log[code]) + 1

    def code_of_index(self, index: int) -> int:
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} outside GF({self.q})")
        return 0 if index == 0 else int(self._exp[index - 1])

    def from_index(self, index: int) -> "FieldElement":
        return FieldElement(self, self.code_of_index(index))

    def indices_of(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return np.where(codes == 0, 0, self._log[codes] + 1)

    def codes_of_indices(self, indices) -> np.ndarray:
        return self.element_codes()[np.asarray(indices, dtype=np.int64)]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        d = {"p": self.p, "m": self.m}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        d["primitive"] = self._digits(self.primitive_code)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FieldSpec":
        return cls(int(d["p"]), int(d.get("m", 1)), d.get("modulus"), d.get("primitive"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "FieldSpec":
        return cls.from_dict(json.loads(text))


def _first_irreducible(p: int, m: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=m):
        cand = list(reversed(low)) + [1]
        if cand[0] and is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """Shared default field of order q (built-in modulus, smallest generator)."""
    p, m = prime_power(q)
    return FieldSpec(p, m)


class FieldElement:
    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = int(code)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec!r} and {other.spec!r}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.spec.from_integer(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(self.code, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.sub(o, self.code))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div(self.code, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec, self.spec.div(o, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, int(e)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def inv(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == self.spec.from_integer(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.spec.q, self.code))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.spec._digits(self.code))

    @property
    def index(self) -> int:
        return self.spec.index_of(self.code)

    def __repr__(self):
        if self.spec.m == 1:
            return f"{self.code}"
        return f"{self.spec!r}{list(self.coeffs)}"


def field_arith(a: FieldElement, b: FieldElement | int | None, op: str) -> FieldElement:
    """Dispatch one of add, sub, mul, div, pow, inv, neg."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** int(b)
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()


def nth_roots_of_unity(spec: FieldSpec, n: int) -> list[FieldElement]:
    """The n solutions of x^n = 1, as successive powers of xi^((q-1)/n)."""
    if n < 1 or (spec.q - 1) % n:
        raise FieldError(f"{n} does not divide q-1 = {spec.q - 1}")
    w = spec.primitive ** ((spec.q - 1) // n)
    return [w**j for j in range(n)]


def as_codes(values: Iterable) -> np.ndarray:
    return np.array([int(v) for v in values], dtype=np.int64)
