"""Sparse truncated Fourier expansions over exact rationals.

A bivariate expansion sum c(n, r) q^n zeta^r is stored as a finite map
(n, r) -> Fraction with absent entries meaning zero; a series of truncation
N promises that every q^n coefficient with 0 <= n <= N is complete.  All
scalars are exact rationals; floats are rejected everywhere.

The differential operators are normalised so that coefficients stay
rational: ``theta_q`` is d/dtau divided by 2*pi*i (multiplier n), ``d_z``
is d/dz divided by 2*pi*i (multiplier r), and ``heat`` is the index-m heat
operator 8*pi*i*m*d/dtau - d^2/dz^2 divided by (2*pi*i)**2, which acts on
the (n, r) coefficient as multiplication by 4*n*m - r**2.  Weight tags
advance with the differential order of the operator (d_z by 1, theta_q and
heat by 2); for theta_q and d_z this is bookkeeping only and carries no
modularity claim.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping

Key = tuple[int, int]

DiscClassWitness = tuple[Key, Fraction, Key, Fraction]


def as_rational(x: int | Fraction) -> Fraction:
    """Coerce an exact scalar; anything float-like is rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact scalar expected (int or Fraction), got {type(x).__name__}")


class JacobiSeries:
    """Truncated expansion sum_{0<=n<=trunc, r} c(n, r) q^n zeta^r.

    ``weight`` and ``index`` are bookkeeping tags carried through every
    operation.  Instances are immutable after construction and safe to
    share; all operations return new series.
    """

    __slots__ = ("weight", "index", "trunc", "_coeffs")

    def __init__(
        self,
        weight: int,
        index: int,
        trunc: int,
        coeffs: Mapping[Key, int | Fraction] | Iterable[tuple[Key, int | Fraction]] = (),
    ):
        if index < 0:
            raise ValueError(f"index must be non-negative, got {index}")
        if trunc < 0:
            raise ValueError(f"truncation must be non-negative, got {trunc}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "trunc", trunc)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[Key, Fraction] = {}
        for (n, r), value in items:
            if not 0 <= n <= trunc:
                raise ValueError(f"coefficient key n={n} outside range [0, {trunc}]")
            value = as_rational(value)
            if value:
                store[(n, r)] = value
        object.__setattr__(self, "_coeffs", store)

    def __setattr__(self, name, value):
        raise AttributeError("JacobiSeries is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, weight: int, index: int, trunc: int) -> JacobiSeries:
        return cls(weight, index, trunc)

    @classmethod
    def one(cls, trunc: int) -> JacobiSeries:
        """Multiplicative unit: weight 0, index 0, c(0, 0) = 1."""
        return cls(0, 0, trunc, {(0, 0): 1})

    # -- queries -------------------------------------------------------------

    def __getitem__(self, key: Key) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def items(self) -> list[tuple[Key, Fraction]]:
        """Nonzero coefficients in lexicographic (n, r) order."""
        return sorted(self._coeffs.items())

    def support(self) -> list[Key]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def zeta_window(self, n: int | None = None) -> tuple[int, int] | None:
        """Range (rmin, rmax) of stored r values, for one n or overall."""
        rs = [r for (nn, r) in self._coeffs if n is None or nn == n]
        if not rs:
            return None
        return min(rs), max(rs)

    def has_holomorphic_support(self) -> bool:
        """True iff every nonzero c(n, r) satisfies r**2 <= 4*n*index."""
        return all(r * r <= 4 * n * self.index for (n, r) in self._coeffs)

    def has_cusp_support(self) -> bool:
        """True iff every nonzero c(n, r) satisfies r**2 < 4*n*index."""
        return all(r * r < 4 * n * self.index for (n, r) in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.index == other.index
            and self.trunc == other.trunc
            and self._coeffs == other._coeffs
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"JacobiSeries(weight={self.weight}, index={self.index}, "
            f"trunc={self.trunc}, terms={len(self._coeffs)})"
        )

    # -- ring operations -----------------------------------------------------

    def __neg__(self) -> JacobiSeries:
        return JacobiSeries(
            self.weight, self.index, self.trunc, {k: -v for k, v in self._coeffs.items()}
        )

    def __add__(self, other: JacobiSeries) -> JacobiSeries:
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        if self.weight != other.weight or self.index != other.index:
            raise ValueError(
                f"cannot add series of weight/index ({self.weight},{self.index}) "
                f"and ({other.weight},{other.index})"
            )
        trunc = min(self.trunc, other.trunc)
        out: dict[Key, Fraction] = {}
        for k, v in self._coeffs.items():
            if k[0] <= trunc:
                out[k] = v
        for k, v in other._coeffs.items():
            if k[0] <= trunc:
                out[k] = out.get(k, Fraction(0)) + v
        return JacobiSeries(self.weight, self.index, trunc, out)

    def __sub__(self, other: JacobiSeries) -> JacobiSeries:
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, JacobiSeries):
            trunc = min(self.trunc, other.trunc)
            out: dict[Key, Fraction] = {}
            for (n1, r1), a in self._coeffs.items():
                if n1 > trunc:
                    continue
                for (n2, r2), b in other._coeffs.items():
                    n = n1 + n2
                    if n > trunc:
                        continue
                    key = (n, r1 + r2)
                    out[key] = out.get(key, Fraction(0)) + a * b
            return JacobiSeries(
                self.weight + other.weight, self.index + other.index, trunc, out
            )
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return JacobiSeries(
                self.weight, self.index, self.trunc, {k: c * v for k, v in self._coeffs.items()}
            )
        return NotImplemented

    def __rmul__(self, other) -> JacobiSeries:
        return self.__mul__(other)

    def truncated(self, trunc: int) -> JacobiSeries:
        """Restriction to q^n terms with n <= trunc (trunc may only shrink)."""
        if trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {trunc}")
        return JacobiSeries(
            self.weight,
            self.index,
            trunc,
            {k: v for k, v in self._coeffs.items() if k[0] <= trunc},
        )


class EllipticSeries:
    """Univariate q-expansion sum_{0<=n<=trunc} c(n) q^n, exact coefficients."""

    __slots__ = ("weight", "trunc", "_coeffs")

    def __init__(
        self,
        weight: int,
        trunc: int,
        coeffs: Mapping[int, int | Fraction] | Iterable[tuple[int, int | Fraction]] = (),
    ):
        if trunc < 0:
            raise ValueError(f"truncation must be non-negative, got {trunc}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "trunc", trunc)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[int, Fraction] = {}
        for n, value in items:
            if not 0 <= n <= trunc:
                raise ValueError(f"coefficient key n={n} outside range [0, {trunc}]")
            value = as_rational(value)
            if value:
                store[n] = value
        object.__setattr__(self, "_coeffs", store)

    def __setattr__(self, name, value):
        raise AttributeError("EllipticSeries is immutable")

    def __getitem__(self, n: int) -> Fraction:
        return self._coeffs.get(n, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def as_jacobi(self) -> JacobiSeries:
        """Embedding as an index-0 series with all mass at r = 0."""
        return JacobiSeries(
            self.weight, 0, self.trunc, {(n, 0): v for n, v in self._coeffs.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, EllipticSeries):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.trunc == other.trunc
            and self._coeffs == other._coeffs
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"EllipticSeries(weight={self.weight}, trunc={self.trunc}, terms={len(self._coeffs)})"

    def __neg__(self) -> EllipticSeries:
        return EllipticSeries(self.weight, self.trunc, {n: -v for n, v in self._coeffs.items()})

    def __add__(self, other: EllipticSeries) -> EllipticSeries:
        if not isinstance(other, EllipticSeries):
            return NotImplemented
        if self.weight != other.weight:
            raise ValueError(f"cannot add weights {self.weight} and {other.weight}")
        trunc = min(self.trunc, other.trunc)
        out = {n: v for n, v in self._coeffs.items() if n <= trunc}
        for n, v in other._coeffs.items():
            if n <= trunc:
                out[n] = out.get(n, Fraction(0)) + v
        return EllipticSeries(self.weight, trunc, out)

    def __sub__(self, other: EllipticSeries) -> EllipticSeries:
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, EllipticSeries):
            trunc = min(self.trunc, other.trunc)
            out: dict[int, Fraction] = {}
            for n1, a in self._coeffs.items():
                for n2, b in other._coeffs.items():
                    n = n1 + n2
                    if n <= trunc:
                        out[n] = out.get(n, Fraction(0)) + a * b
            return EllipticSeries(self.weight + other.weight, trunc, out)
        if isinstance(other, JacobiSeries):
            return self.as_jacobi() * other
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return EllipticSeries(self.weight, self.trunc, {n: c * v for n, v in self._coeffs.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, JacobiSeries):
            return other * self.as_jacobi()
        return self.__mul__(other)


# -- scaled differential operators -------------------------------------------


def theta_q(f: JacobiSeries) -> JacobiSeries:
    """q d/dq: multiply c(n, r) by n.  Weight tag advances by 2."""
    return JacobiSeries(
        f.weight + 2, f.index, f.trunc, {(n, r): n * v for (n, r), v in f._coeffs.items()}
    )


def theta_q_elliptic(f: EllipticSeries) -> EllipticSeries:
    """q d/dq on a univariate expansion."""
    return EllipticSeries(f.weight + 2, f.trunc, {n: n * v for n, v in f._coeffs.items()})


def d_z(f: JacobiSeries) -> JacobiSeries:
    """zeta d/dzeta: multiply c(n, r) by r.  Weight tag advances by 1."""
    return JacobiSeries(
        f.weight + 1, f.index, f.trunc, {(n, r): r * v for (n, r), v in f._coeffs.items()}
    )


def heat(f: JacobiSeries) -> JacobiSeries:
    """Heat operator at the series' own index: multiply c(n, r) by 4*n*m - r**2."""
    m = f.index
    return JacobiSeries(
        f.weight + 2,
        m,
        f.trunc,
        {(n, r): (4 * n * m - r * r) * v for (n, r), v in f._coeffs.items()},
    )


def heat_power(f: JacobiSeries, p: int) -> JacobiSeries:
    for _ in range(p):
        f = heat(f)
    return f


# -- coefficient-level form checks -------------------------------------------


def check_parity(f: JacobiSeries) -> bool:
    """True iff c(n, -r) = (-1)**weight * c(n, r) on all stored entries."""
    sign = -1 if f.weight % 2 else 1
    return all(f[(n, -r)] == sign * v for (n, r), v in f._coeffs.items())


def _class_members(disc: int, rho: int, m: int, trunc: int) -> list[Key]:
    """All (n, r) with 0 <= n <= trunc, 4*n*m - r**2 = disc, r = rho mod 2*m."""
    rmax_sq = 4 * trunc * m - disc
    if rmax_sq < 0:
        return []
    rmax = isqrt(rmax_sq)
    period = 2 * m
    members = []
    # smallest representative >= -rmax congruent to rho
    r = rho - ((rho + rmax) // period) * period
    while r <= rmax:
        e = disc + r * r
        if e >= 0:
            assert e % (4 * m) == 0
            n = e // (4 * m)
            if 0 <= n <= trunc:
                members.append((n, r))
        r += period
    return members


def check_disc_class_invariance(f: JacobiSeries) -> tuple[bool, DiscClassWitness | None]:
    """Check that c(n, r) depends only on (4*n*m - r**2, r mod 2*m).

    This is the coefficient-level shadow of invariance under the lattice
    translations of the elliptic variable.  Absent entries count as zero,
    so the stored map must be the exact support (every constructor in this
    package guarantees that).  Returns (True, None) or (False, witness)
    with witness = ((n1, r1), c1, (n2, r2), c2) a violating pair.
    """
    m = f.index
    if m < 1:
        raise ValueError("disc-class invariance needs index >= 1")
    seen: set[tuple[int, int]] = set()
    for (n, r) in sorted(f._coeffs):
        disc = 4 * n * m - r * r
        rho = r % (2 * m)
        if (disc, rho) in seen:
            continue
        seen.add((disc, rho))
        members = _class_members(disc, rho, m, f.trunc)
        first = members[0]
        value = f[first]
        for other in members[1:]:
            if f[other] != value:
                return False, (first, value, other, f[other])
    return True, None
