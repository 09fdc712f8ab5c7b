"""Minimum distance: exhaustive enumeration and Brouwer-Zimmermann.

The exhaustive path is plain numpy and serves as the reference for small
codes. The Brouwer-Zimmermann path walks messages by weight over several
disjoint information sets and stops once the running lower bound meets the
best weight found. When the work budget runs out it reports a certified
interval instead of a value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..linalg import rref
from .code import LinearCode

DEFAULT_BUDGET = 10**8
EXHAUSTIVE_LIMIT = 10**7


@dataclass
class DistanceResult:
    status: str  # "exact" | "interval" | "degenerate"
    lo: int
    hi: int
    witness: np.ndarray | None = field(default=None, repr=False)
    method: str = ""
    work: int = 0

    @property
    def exact(self) -> bool:
        return self.status in ("exact", "degenerate")

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def contains(self, d: int) -> bool:
        return self.lo <= d <= self.hi

    def to_dict(self) -> dict:
        out = {"status": self.status, "lo": self.lo, "hi": self.hi, "method": self.method, "work": self.work}
        if self.exact:
            out["value"] = self.lo
        return out


def _weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=1)


def _all_combinations(rows: np.ndarray, F) -> np.ndarray:
    """Every linear combination of ``rows``, shape (q^len(rows), n)."""
    addt, mult = F.add_table, F.mul_table
    out = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        scaled = mult[:, row]  # (q, n): c * row for every code c
        out = addt[out[None, :, :], scaled[:, None, :]].reshape(-1, rows.shape[1])
    return out


def exhaustive_distance(code: LinearCode) -> DistanceResult:
    """Enumerate one representative per projective class of nonzero messages."""
    F, G, k, q = code.field, code.generator, code.k, code.field.q
    if (q**k - 1) // (q - 1) > EXHAUSTIVE_LIMIT:
        raise ValueError(f"{q}^{k} messages is too many for exhaustive search")
    addt, mult = F.add_table, F.mul_table
    best, witness, work = code.n + 1, None, 0
    inner_len = max(0, min(k - 1, int(math.log(2**16, q))))
    for lead in range(k):
        # messages (0, .., 0, 1, *): leading coefficient one at position `lead`
        rest = G[lead + 1 :]
        n_in = min(inner_len, rest.shape[0])
        inner = _all_combinations(rest[rest.shape[0] - n_in :], F)
        outer_rows = rest[: rest.shape[0] - n_in]
        for coefs in np.ndindex(*([q] * outer_rows.shape[0])):
            acc = G[lead]
            for c, row in zip(coefs, outer_rows):
                if c:
                    acc = addt[acc, mult[c, row]]
            words = addt[inner, acc[None, :]]
            w = _weights(words)
            i = int(np.argmin(w))
            if w[i] < best:
                best, witness = int(w[i]), words[i].copy()
            work += inner.shape[0]
    return DistanceResult("exact", best, best, witness, "exhaustive", work)


@njit(cache=True)
def _bz_level(S, kinf, w, addt, q, best, known_lower):
    """Scan messages of Hamming weight w (first nonzero coefficient 1).

    S[i, c] is c times row i restricted to columns outside the information
    set; rows below ``kinf`` are the unit rows of the set. Returns the best
    weight seen (initialised to ``best``), its message support and
    coefficients, and the number of messages visited.
    """
    k, _, L = S.shape
    acc = np.zeros((w, L), dtype=np.int64)
    idx = np.zeros(w, dtype=np.int64)
    coef = np.ones(w, dtype=np.int64)
    wit_idx = -np.ones(w, dtype=np.int64)
    wit_coef = np.zeros(w, dtype=np.int64)
    leaves = 0
    if w > k:
        return best, wit_idx, wit_coef, leaves
    for j in range(w - 1):
        idx[j] = j
        prev = acc[j - 1] if j > 0 else np.zeros(L, dtype=np.int64)
        for t in range(L):
            acc[j, t] = addt[prev[t], S[idx[j], 1, t]]
    while True:
        infw = 0
        for j in range(w - 1):
            if idx[j] < kinf:
                infw += 1
        start = idx[w - 2] + 1 if w > 1 else 0
        cmax = q if w > 1 else 2
        for i in range(start, k):
            extra = 1 if i < kinf else 0
            for c in range(1, cmax):
                leaves += 1
                limit = best - 1 - infw - extra
                if limit < 0:
                    continue
                wt = 0
                for t in range(L):
                    base = acc[w - 2, t] if w > 1 else 0
                    if addt[base, S[i, c, t]] != 0:
                        wt += 1
                        if wt > limit:
                            break
                if wt <= limit:
                    best = infw + extra + wt
                    for j in range(w - 1):
                        wit_idx[j] = idx[j]
                        wit_coef[j] = coef[j]
                    wit_idx[w - 1] = i
                    wit_coef[w - 1] = c
                    if best <= known_lower:
                        return best, wit_idx, wit_coef, leaves
        if w == 1:
            break
        # advance the internal positions (levels 0 .. w-2) with carry
        j = w - 2
        while j >= 0:
            if j > 0 and coef[j] < q - 1:
                coef[j] += 1
                break
            coef[j] = 1
            if idx[j] < k - w + j:
                idx[j] += 1
                break
            j -= 1
        if j < 0:
            break
        for jj in range(j + 1, w - 1):
            idx[jj] = idx[jj - 1] + 1
            coef[jj] = 1
        for jj in range(j, w - 1):
            for t in range(L):
                prev = acc[jj - 1, t] if jj > 0 else 0
                acc[jj, t] = addt[prev, S[idx[jj], coef[jj], t]]
    return best, wit_idx, wit_coef, leaves


@dataclass
class _InfoSet:
    generator: np.ndarray  # k x n, unit rows on `pivots` first
    pivots: list[int]
    scaled: np.ndarray  # k x q x (n - rank), see _bz_level
    rank: int
    done: int = 0  # highest message weight fully scanned


def information_sets(code: LinearCode) -> list[tuple[np.ndarray, list[int]]]:
    """Greedy disjoint information sets, lowest-index columns first."""
    F, G = code.field, code.generator
    remaining = list(range(code.n))
    sets = []
    while remaining:
        R, piv = rref(G, F, col_order=remaining, keep_all=True)
        if not piv:
            break
        sets.append((R, piv))
        taken = set(piv)
        remaining = [c for c in remaining if c not in taken]
    return sets


def _prepare(code: LinearCode, R: np.ndarray, piv: list[int]) -> _InfoSet:
    F = code.field
    others = [c for c in range(code.n) if c not in set(piv)]
    P = R[:, others]
    # scaled[i, c, t] = c * P[i, t]
    scaled = np.ascontiguousarray(F.mul_table[:, P].transpose(1, 0, 2), dtype=np.int64)
    return _InfoSet(R, list(piv), scaled, len(piv))


def _level_count(k: int, w: int, q: int) -> int:
    return math.comb(k, w) * (q - 1) ** (w - 1)


def brouwer_zimmermann(
    code: LinearCode, budget: int = DEFAULT_BUDGET, lower_bound: int | None = None
) -> DistanceResult:
    """Minimum distance by Brouwer-Zimmermann.

    ``lower_bound`` is an externally proven bound on d; a codeword reaching it
    ends the search early with an exact answer.
    """
    F, k, n, q = code.field, code.k, code.n, code.field.q
    if F.q > 256:
        raise ValueError("field too large for the table-driven kernel")
    addt = np.ascontiguousarray(F.add_table, dtype=np.int64)
    sets = [_prepare(code, R, piv) for R, piv in information_sets(code)]
    known = int(lower_bound) if lower_bound else 0
    best, witness = n + 1, None
    # rows of each systematic generator are codewords: a cheap first upper bound
    for s in sets:
        w = _weights(s.generator)
        i = int(np.argmin(np.where(w > 0, w, n + 1)))
        if 0 < w[i] < best:
            best, witness = int(w[i]), s.generator[i].copy()
    work, lower = 0, max(1, known)

    def _result(status):
        if status == "exact":
            return DistanceResult("exact", best, best, witness, "brouwer-zimmermann", work)
        return DistanceResult("interval", min(lower, best), best, witness, "brouwer-zimmermann", work)

    if best <= lower:
        return _result("exact")
    for w in range(1, k + 1):
        for s in sets:
            if w + 1 - (k - s.rank) <= 0:
                continue  # no contribution yet; scanned lazily once it counts
            for ww in range(s.done + 1, w + 1):
                cost = _level_count(k, ww, q)
                if work + cost > budget:
                    return _result("interval")
                b, wi, wc, leaves = _bz_level(s.scaled, s.rank, ww, addt, q, best, known)
                work += int(leaves)
                if b < best:
                    msg = np.zeros(k, dtype=np.int64)
                    msg[wi] = wc
                    best = int(b)
                    witness = LinearCode(F, s.generator).encode(msg)
                s.done = ww
                if best <= known:
                    return _result("exact")
        lower = max(lower, sum(max(0, w + 1 - (k - s.rank)) for s in sets))
        if lower >= best:
            return _result("exact")
    return _result("exact")


def min_distance(
    code: LinearCode,
    budget: int = DEFAULT_BUDGET,
    method: str = "auto",
    lower_bound: int | None = None,
) -> DistanceResult:
    """Minimum Hamming distance, exact when affordable, otherwise an interval."""
    if method == "auto":
        method = "exhaustive" if code.field.q**code.k <= min(EXHAUSTIVE_LIMIT, budget) else "bz"
    if method == "exhaustive":
        return exhaustive_distance(code)
    if method in ("bz", "brouwer-zimmermann"):
        return brouwer_zimmermann(code, budget, lower_bound)
    raise ValueError(f"unknown method {method!r}")


def dual_distance(code: LinearCode, budget: int = DEFAULT_BUDGET, method: str = "auto") -> DistanceResult:
    """Distance of the dual; the full space has a zero dual, reported as n + 1."""
    dual = code.dual()
    if dual is None:
        return DistanceResult("degenerate", code.n + 1, code.n + 1, None, "full-space", 0)
    return min_distance(dual, budget, method)
