"""Test-form generation: lattice theta expansions and Eisenstein q-series.

Lattice vectors are handled internally in doubled coordinates (twice the
real coordinates), which makes every vector an integer tuple: the E8
coordinate model consists of vectors that are all-integer or all-half-odd
with even coordinate sum, so doubled vectors have coordinates of one common
parity and coordinate sum divisible by 4.  A vector of doubled norm y.y has
half-norm y.y / 8.

Inner products between enumerated vectors are computed with int64 numpy
arrays; the coordinate bounds established during enumeration keep every
product far below the int64 range (asserted), so exactness is preserved and
the counts re-enter Fraction arithmetic unchanged.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Sequence

import numpy as np

from .series import EllipticSeries, JacobiSeries
from .siegel import SiegelSeries

DoubledVector = tuple[int, ...]

E8_INDEX1_VECTOR: tuple[int, ...] = (1, -1, 0, 0, 0, 0, 0, 0)

_PAIR_BLOCK = 2_000_000  # target entries per matmul block


def _double(vector: Sequence[int | Fraction]) -> DoubledVector | None:
    doubled = []
    for x in vector:
        y = 2 * Fraction(x)
        if y.denominator != 1:
            return None
        doubled.append(int(y))
    return tuple(doubled)


class Lattice:
    """Coordinate model of an even unimodular lattice (standard inner product)."""

    name: str
    rank: int

    def contains_doubled(self, y: DoubledVector) -> bool:
        raise NotImplementedError

    def doubled_vectors(self, max_half_norm: int) -> list[DoubledVector]:
        raise NotImplementedError

    def contains(self, vector: Sequence[int | Fraction]) -> bool:
        """Membership of an exact coordinate vector."""
        if len(vector) != self.rank:
            return False
        doubled = _double(vector)
        return doubled is not None and self.contains_doubled(doubled)

    def __repr__(self) -> str:
        return f"Lattice({self.name}, rank={self.rank})"


class _E8(Lattice):
    name = "e8"
    rank = 8

    def contains_doubled(self, y: DoubledVector) -> bool:
        if len(y) != 8 or sum(y) % 4 != 0:
            return False
        parities = {a & 1 for a in y}
        return len(parities) == 1

    def doubled_vectors(self, max_half_norm: int) -> list[DoubledVector]:
        if max_half_norm < 0:
            raise ValueError("half-norm bound must be non-negative")
        budget = 8 * max_half_norm
        out: list[DoubledVector] = []

        def extend(prefix: list[int], norm: int, parity: int) -> None:
            depth = len(prefix)
            remaining = budget - norm
            if depth == 7:
                # last coordinate is pinned mod 4 by the coordinate-sum rule
                residue = (-sum(prefix)) % 4
                if residue % 2 != parity:
                    return
                limit = isqrt(remaining)
                y = -limit + ((residue + limit) % 4)
                while y <= limit:
                    out.append(tuple(prefix) + (y,))
                    y += 4
                return
            # each remaining odd coordinate costs at least 1
            floor_cost = (7 - depth) * parity
            limit = isqrt(remaining - floor_cost) if remaining >= floor_cost else -1
            y = -limit if (-limit) % 2 == parity else -limit + 1
            while y <= limit:
                extend(prefix + [y], norm + y * y, parity)
                y += 2

        for parity in (0, 1):
            if parity == 1 and budget < 8:
                continue
            extend([], 0, parity)
        out.sort()
        return out


class _ProductLattice(Lattice):
    def __init__(self, name: str, left: Lattice, right: Lattice):
        self.name = name
        self.rank = left.rank + right.rank
        self._left = left
        self._right = right

    def contains_doubled(self, y: DoubledVector) -> bool:
        if len(y) != self.rank:
            return False
        split = self._left.rank
        return self._left.contains_doubled(y[:split]) and self._right.contains_doubled(y[split:])

    def doubled_vectors(self, max_half_norm: int) -> list[DoubledVector]:
        left = self._left.doubled_vectors(max_half_norm)
        right = self._right.doubled_vectors(max_half_norm)
        right_by_norm: dict[int, list[DoubledVector]] = {}
        for y in right:
            right_by_norm.setdefault(sum(a * a for a in y) // 8, []).append(y)
        out = []
        for a in left:
            room = max_half_norm - sum(x * x for x in a) // 8
            for h in range(room + 1):
                for b in right_by_norm.get(h, ()):
                    out.append(a + b)
        out.sort()
        return out


E8 = _E8()
E8_E8 = _ProductLattice("e8e8", E8, E8)

LATTICES: dict[str, Lattice] = {E8.name: E8, E8_E8.name: E8_E8}


def enumerate_vectors(lattice: Lattice, max_half_norm: int) -> list[tuple[Fraction, ...]]:
    """All lattice vectors x with x.x/2 <= max_half_norm, lexicographic order."""
    half = Fraction(1, 2)
    return [tuple(half * y for y in doubled) for doubled in lattice.doubled_vectors(max_half_norm)]


def _doubled_array(vectors: list[DoubledVector]) -> np.ndarray:
    arr = np.array(vectors, dtype=np.int64)
    if arr.size:
        assert int(np.abs(arr).max()) < 2**20  # int64 dot products stay exact
    return arr


def jacobi_theta(
    lattice: Lattice, vector: Sequence[int | Fraction], trunc: int
) -> JacobiSeries:
    """Theta expansion c(n, r) = #{x in L : x.x/2 = n, x.v = r}.

    Weight rank/2, index v.v/2.  The fixed vector must lie in the lattice.
    """
    doubled_v = _double(vector)
    if doubled_v is None or not lattice.contains_doubled(doubled_v):
        raise ValueError(f"vector {tuple(vector)} is not in lattice {lattice.name}")
    index8 = sum(a * a for a in doubled_v)
    assert index8 % 8 == 0
    vectors = lattice.doubled_vectors(trunc)
    arr = _doubled_array(vectors)
    norms8 = (arr * arr).sum(axis=1)
    dots4 = arr @ np.array(doubled_v, dtype=np.int64)
    coeffs: dict[tuple[int, int], int] = {}
    for n8, r4 in zip(norms8.tolist(), dots4.tolist()):
        key = (n8 // 8, r4 // 4)
        coeffs[key] = coeffs.get(key, 0) + 1
    return JacobiSeries(lattice.rank // 2, index8 // 8, trunc, coeffs)


def siegel_theta(lattice: Lattice, trunc: int) -> SiegelSeries:
    """Degree-2 theta a(n, r, m) = #{(x, y) : x.x/2 = n, y.y/2 = m, x.y = r}.

    Pairs are counted one norm class against another; the (n, m) block is
    mirrored to (m, n), which realises the transpose symmetry exactly.
    """
    by_norm: dict[int, list[DoubledVector]] = {}
    for y in lattice.doubled_vectors(trunc):
        by_norm.setdefault(sum(a * a for a in y) // 8, []).append(y)
    arrays = {h: _doubled_array(vs) for h, vs in by_norm.items()}
    coeffs: dict[tuple[int, int, int], int] = {}
    for n in range(trunc + 1):
        if n not in arrays:
            continue
        A = arrays[n]
        for m in range(n, trunc + 1):
            if m not in arrays:
                continue
            B = arrays[m]
            histogram: dict[int, int] = {}
            step = max(1, _PAIR_BLOCK // max(1, len(B)))
            for start in range(0, len(A), step):
                block = A[start : start + step] @ B.T
                values, counts = np.unique(block, return_counts=True)
                for value, count in zip(values.tolist(), counts.tolist()):
                    histogram[value] = histogram.get(value, 0) + count
            for value, count in histogram.items():
                assert value % 4 == 0
                r = value // 4
                coeffs[(n, r, m)] = count
                coeffs[(m, r, n)] = count
    return SiegelSeries(lattice.rank // 2, trunc, coeffs)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n from the defining recurrence."""
    if n < 0:
        raise ValueError("Bernoulli numbers need n >= 0")
    if n == 0:
        return Fraction(1)
    return Fraction(-sum(comb(n + 1, j) * bernoulli(j) for j in range(n)), n + 1)


def divisor_power_sum(n: int, k: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein_q(weight: int, trunc: int) -> EllipticSeries:
    """Normalised Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if weight < 4 or weight % 2:
        raise ValueError(f"Eisenstein weight must be even and >= 4, got {weight}")
    factor = Fraction(-2 * weight) / bernoulli(weight)
    coeffs: dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, trunc + 1):
        coeffs[n] = factor * divisor_power_sum(n, weight - 1)
    return EllipticSeries(weight, trunc, coeffs)


def standard_index_vector(lattice: Lattice, index: int) -> tuple[Fraction, ...]:
    """Deterministic lattice vector of half-norm ``index`` for theta fixtures.

    For E8 at index 1 this is the pinned vector (1, -1, 0, ..., 0); in every
    other case the lexicographically smallest vector of the right norm.
    """
    if index < 1:
        raise ValueError("index must be >= 1")
    if lattice is E8 and index == 1:
        return tuple(Fraction(c) for c in E8_INDEX1_VECTOR)
    for doubled in lattice.doubled_vectors(index):
        if sum(a * a for a in doubled) == 8 * index:
            return tuple(Fraction(a, 2) for a in doubled)
    raise ValueError(f"no vector of half-norm {index} in {lattice.name}")
