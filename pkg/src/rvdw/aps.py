"""Arithmetic progressions in ``[n] = {1, ..., n}``.

Progressions are stored normalized as ``(first, diff, length)`` with
``diff >= 1``; that triple is their identity everywhere in the package
(hashing, dedup, serialization).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


@dataclass(frozen=True, order=True)
class ArithmeticProgression:
    first: int
    diff: int
    length: int

    def __post_init__(self):
        if self.first < 1 or self.diff < 1 or self.length < 3:
            raise DomainError(
                f"invalid progression (first={self.first}, diff={self.diff}, "
                f"length={self.length})"
            )

    @property
    def last(self) -> int:
        return self.first + (self.length - 1) * self.diff

    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.first, self.last + 1, self.diff))

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.first, self.last + 1, self.diff))

    def __len__(self) -> int:
        return self.length

    def __contains__(self, x) -> bool:
        off = x - self.first
        return 0 <= off <= (self.length - 1) * self.diff and off % self.diff == 0

    def fits(self, n: int) -> bool:
        return self.last <= n

    def as_triple(self) -> tuple[int, int, int]:
        return (self.first, self.diff, self.length)


AP = ArithmeticProgression


def ap_from_elements(elements: Iterable[int]) -> ArithmeticProgression:
    """Recover the progression whose element set is ``elements``."""
    xs = sorted(set(elements))
    if len(xs) < 3:
        raise DomainError("a progression needs at least 3 elements")
    d = xs[1] - xs[0]
    if any(b - a != d for a, b in zip(xs, xs[1:])):
        raise DomainError(f"{xs} is not an arithmetic progression")
    return ArithmeticProgression(xs[0], d, len(xs))


def ap_count(n: int, q: int) -> int:
    """Closed form for the number of ``q``-APs in ``[n]``."""
    return sum((n - a) // (q - 1) for a in range(1, n - q + 2))


def enumerate_aps(n: int, q: int) -> list[ArithmeticProgression]:
    """All ``q``-term progressions in ``[n]``, ordered by ``(first, diff)``."""
    if q < 3:
        raise DomainError("q must be at least 3")
    out = []
    for a in range(1, n - q + 2):
        for d in range(1, (n - a) // (q - 1) + 1):
            out.append(ArithmeticProgression(a, d, q))
    return out


def _check_vertex(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise DomainError(f"vertex {k} outside [1, {n}]")


def ap_degree_at(k: int, i: int, n: int, q: int) -> int:
    """Number of ``q``-APs in ``[n]`` whose ``i``-th term (1-based) is ``k``."""
    if i == 1:
        return (n - k) // (q - 1)
    if i == q:
        return (k - 1) // (q - 1)
    return min((k - 1) // (i - 1), (n - k) // (q - i))


def ap_degree(k: int, n: int, q: int) -> int:
    """Degree of ``k`` in the ``q``-AP hypergraph on ``[n]``."""
    _check_vertex(k, n)
    return sum(ap_degree_at(k, i, n, q) for i in range(1, q + 1))


def _through_one(k: int, n: int, q: int) -> list[ArithmeticProgression]:
    out = []
    for i in range(q):
        d = 1
        while True:
            first = k - i * d
            if first < 1 or first + (q - 1) * d > n:
                break
            out.append(ArithmeticProgression(first, d, q))
            d += 1
    out.sort()
    return out


def aps_through_points(points, n: int, q: int) -> list[ArithmeticProgression]:
    """All ``q``-APs in ``[n]`` containing every point of ``points``.

    With two or more points the progression is pinned down by the positions
    of two of them, so at most ``q**2`` candidates are examined.
    """
    pts = sorted(set(points))
    if not pts:
        raise DomainError("need at least one point")
    for k in pts:
        _check_vertex(k, n)
    if len(pts) == 1:
        return _through_one(pts[0], n, q)
    if len(pts) > q:
        return []
    u, w = pts[0], pts[-1]
    found = set()
    for i in range(q):
        for j in range(i + 1, q):
            d, rem = divmod(w - u, j - i)
            if rem:
                continue
            first = u - i * d
            if first < 1 or first + (q - 1) * d > n:
                continue
            ap = ArithmeticProgression(first, d, q)
            if all(x in ap for x in pts):
                found.add(ap)
    return sorted(found)


def has_ap_through(points, n: int, q: int) -> bool:
    return bool(aps_through_points(points, n, q))


def ap_intersection(a: ArithmeticProgression, b: ArithmeticProgression) -> set[int]:
    if a.diff > b.diff:
        a, b = b, a
    return {x for x in b if x in a}


def ap_intersection_bound(q: int, d1: int, d2: int) -> int:
    """``ceil(q * gcd(d1, d2) / max(d1, d2))`` for distinct differences."""
    hi = max(d1, d2)
    return -(-q * math.gcd(d1, d2) // hi)


def ap_residues_mod(a: ArithmeticProgression, modulus: int) -> set[int]:
    if modulus < 1:
        raise DomainError("modulus must be positive")
    return {x % modulus for x in a}


def residue_period(diff: int, modulus: int) -> int:
    """Additive order of ``diff`` modulo ``modulus``."""
    return modulus // math.gcd(modulus, diff)


def _position_ratios(q: int) -> list[Fraction]:
    # x - a = t (b - a) for terms at positions i_x, i_a != i_b of one q-AP
    ts = set()
    for ia in range(q):
        for ib in range(q):
            if ia == ib:
                continue
            for ix in range(q):
                ts.add(Fraction(ix - ia, ib - ia))
    return sorted(ts)


def count_common_cover_pairs(x: int, y: int, q: int, n: int) -> list[tuple[int, int]]:
    """Ordered pairs ``(a, b)``, ``a != b``, sharing a ``q``-AP with ``x`` and one with ``y``.

    Each candidate pair solves the 2x2 system
    ``(1 - t1) a + t1 b = x``, ``(1 - t2) a + t2 b = y`` for a pair of
    position ratios ``t1 != t2``; only integral solutions in ``[n]`` that
    really extend to progressions in ``[n]`` are kept.
    """
    if x == y:
        raise DomainError("x and y must differ")
    _check_vertex(x, n)
    _check_vertex(y, n)
    ts = _position_ratios(q)
    found = set()
    for t1 in ts:
        for t2 in ts:
            if t1 == t2:
                continue
            det = t2 - t1
            a = (x * t2 - y * t1) / det
            b = ((1 - t1) * y - (1 - t2) * x) / det
            if a.denominator != 1 or b.denominator != 1:
                continue
            a, b = int(a), int(b)
            if a == b or not (1 <= a <= n and 1 <= b <= n):
                continue
            if has_ap_through({x, a, b}, n, q) and has_ap_through({y, a, b}, n, q):
                found.add((a, b))
    return sorted(found)
