"""Linear codes over GF(q) given by a generator matrix of field codes."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..field import FieldSpec
from ..linalg import null_space, rref


class RankDeficiencyWarning(UserWarning):
    """Evaluation map not injective: fewer independent rows than basis functions."""


@dataclass(eq=False)
class LinearCode:
    field: FieldSpec
    generator: np.ndarray
    origin: Any = field(default=None, repr=False)

    def __post_init__(self):
        G = np.asarray(self.generator, dtype=np.int64)
        if G.ndim != 2 or G.shape[0] < 1:
            raise ValueError("generator must be a non-empty matrix")
        if G.shape[0] > G.shape[1]:
            raise ValueError("more generator rows than coordinates")
        self.generator = G

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def size(self) -> int:
        return self.field.q**self.k

    def encode(self, message) -> np.ndarray:
        return self.encode_many(np.asarray(message, dtype=np.int64)[None, :])[0]

    def encode_many(self, messages) -> np.ndarray:
        F, G = self.field, self.generator
        msgs = np.asarray(messages, dtype=np.int64)
        acc = np.zeros((msgs.shape[0], self.n), dtype=np.int64)
        for i in range(self.k):
            col = msgs[:, i]
            if np.any(col):
                acc = F.vadd(acc, F.vmul(col[:, None], G[i][None, :]))
        return acc

    def all_messages(self) -> np.ndarray:
        q, k = self.field.q, self.k
        if q**k > 10**7:
            raise ValueError(f"refusing to enumerate {q}^{k} messages")
        idx = np.arange(q**k)
        digits = (idx[:, None] // q ** np.arange(k)[None, :]) % q
        return self.field.element_codes()[digits]

    def all_codewords(self) -> np.ndarray:
        return self.encode_many(self.all_messages())

    def random_messages(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return rng.integers(0, self.field.q, size=(count, self.k))

    def random_codewords(self, count: int, rng: np.random.Generator) -> np.ndarray:
        return self.encode_many(self.random_messages(count, rng))

    def parity_check(self) -> np.ndarray:
        return null_space(self.generator, self.field)

    def dual(self) -> "LinearCode | None":
        H = self.parity_check()
        if H.shape[0] == 0:
            return None
        return LinearCode(self.field, H, origin=("dual", self))

    def contains(self, word) -> bool:
        H = self.parity_check()
        if H.shape[0] == 0:
            return True
        F = self.field
        word = np.asarray(word, dtype=np.int64)
        syn = np.zeros(H.shape[0], dtype=np.int64)
        for j in range(self.n):
            if word[j]:
                syn = F.vadd(syn, F.vmul(H[:, j], word[j]))
        return not np.any(syn)


def measure(G, field: FieldSpec, origin: Any = None) -> LinearCode:
    """Row-reduce an evaluation matrix to an independent basis; k = rank."""
    G = np.asarray(G, dtype=np.int64)
    if G.size == 0 or not np.any(G):
        raise ValueError("zero generator matrix")
    R, _ = rref(G, field)
    if R.shape[0] < G.shape[0]:
        warnings.warn(
            f"evaluation not injective: rank {R.shape[0]} < {G.shape[0]} basis functions",
            RankDeficiencyWarning,
            stacklevel=2,
        )
    return LinearCode(field, R, origin=origin)
