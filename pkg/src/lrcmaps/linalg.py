"""Row reduction over GF(q) on arrays of field codes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import FieldSpec


def rref(
    M, F: FieldSpec, col_order: Sequence[int] | None = None, keep_all: bool = False
) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Pivots are searched in ``col_order`` (default: left to right), so passing a
    permutation yields a basis that is systematic on the first independent
    columns of that order. ``keep_all`` also returns the non-pivot rows.
    """
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    nrows, ncols = A.shape
    order = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.vmul(A[r], F.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = F.vsub(A[mask], F.vmul(col[mask][:, None], A[r][None, :]))
        pivots.append(int(c))
        r += 1
    return (A if keep_all else A[:r]), pivots


def rank(M, F: FieldSpec) -> int:
    return len(rref(M, F)[1])


def null_space(M, F: FieldSpec) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    R, pivots = rref(M, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = F.neg(int(R[i, f]))
    return basis


def solve_left(G, target, F: FieldSpec) -> np.ndarray | None:
    """A message m with m @ G = target, or None if target is not in the row space."""
    G = np.asarray(G, dtype=np.int64)
    k = G.shape[0]
    aug = np.concatenate([G.T, np.asarray(target, dtype=np.int64)[:, None]], axis=1)
    R, pivots = rref(aug, F)
    if k in pivots:
        return None
    m = np.zeros(k, dtype=np.int64)
    for i, pc in enumerate(pivots):
        m[pc] = R[i, k]
    return m
