"""Random subsets ``[n]_p`` and reproducible seed derivation.

Streams come from NumPy's ``Philox`` (4x64, 10 rounds), a counter-based
generator whose output is fixed by its 128-bit key on every platform.  A
subset is drawn by taking ``n`` doubles from the stream keyed by
``seed`` and keeping ``k`` when the ``k``-th draw is below ``p``.

Per-trial seeds are ``derive_seed(master, *coords)``: the first 8 bytes
(little endian) of BLAKE2b-64 over the coordinates packed as signed
little-endian 64-bit integers.  Any cell of a sweep can therefore be
re-run on its own.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from .aps import DomainError

MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, *coords: int) -> int:
    payload = struct.pack(f"<{1 + len(coords)}q", *(_signed(v) for v in (master_seed, *coords)))
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def _signed(v: int) -> int:
    v &= MASK64
    return v - (1 << 64) if v >= 1 << 63 else v


def stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed & MASK64))


@dataclass(frozen=True)
class SamplingParams:
    n: int
    p: float
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be positive")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"p={self.p} is not a probability")
        if not 0 <= self.seed <= MASK64:
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class GroundSubset:
    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = self.elements
        if any(b <= a for a, b in zip(els, els[1:])):
            raise DomainError("elements must be strictly increasing")
        if els and (els[0] < 1 or els[-1] > self.n):
            raise DomainError(f"elements must lie in [1, {self.n}]")

    @classmethod
    def full(cls, n: int) -> "GroundSubset":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def of(cls, n: int, elements) -> "GroundSubset":
        return cls(n, tuple(sorted(set(elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.as_set()

    def as_set(self) -> frozenset[int]:
        s = self.__dict__.get("_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_set", s)
        return s


def random_subset(params: SamplingParams) -> GroundSubset:
    draws = stream(params.seed).random(params.n)
    idx = np.flatnonzero(draws < params.p) + 1
    return GroundSubset(params.n, tuple(int(k) for k in idx))
