"""Degree-2 expansions, the determinant-type heat operator, and its brackets.

A degree-2 expansion is a finite map (n, r, m) -> Fraction on the block
0 <= n, m <= trunc with the transpose symmetry a(n, r, m) = a(m, r, n); its
slice at fixed m is a Jacobi-type expansion of index m.  The operator
``delta_op`` multiplies a(n, r, m) by 4*n*m - r**2, which is the
(2*pi*i)**-2 scaling of the determinant of the matrix of partial
derivatives in the three variables; on each slice it restricts to the
index-m heat operator of :mod:`rcforms.series`.

The order-l bracket is computed along two independent routes that must
agree exactly: directly from delta_op powers of the triple series, and
slice by slice from the order-2l Jacobi brackets at x = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .brackets import BracketParams, bracket_jacobi, bracket_terms
from .series import (
    JacobiSeries,
    as_rational,
    check_disc_class_invariance,
    check_parity,
)

TripleKey = tuple[int, int, int]


class SymmetryError(ValueError):
    """A degree-2 coefficient map violates a(n, r, m) = a(m, r, n)."""

    def __init__(self, key: TripleKey, value, mirrored):
        n, r, m = key
        super().__init__(
            f"symmetry violation: a({n},{r},{m}) = {value} but a({m},{r},{n}) = {mirrored}"
        )
        self.key = key


class SiegelSeries:
    """Truncated expansion a(n, r, m) q^n zeta^r qq^m, symmetric in (n, m).

    Construction validates the transpose symmetry, so every series built by
    the package operations satisfies it by induction.  Immutable.
    """

    __slots__ = ("weight", "trunc", "_coeffs")

    def __init__(
        self,
        weight: int,
        trunc: int,
        coeffs: Mapping[TripleKey, int | Fraction] | Iterable[tuple[TripleKey, int | Fraction]] = (),
    ):
        if trunc < 0:
            raise ValueError(f"truncation must be non-negative, got {trunc}")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "trunc", trunc)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[TripleKey, Fraction] = {}
        for (n, r, m), value in items:
            if not (0 <= n <= trunc and 0 <= m <= trunc):
                raise ValueError(f"key (n={n}, m={m}) outside block [0, {trunc}]^2")
            value = as_rational(value)
            if value:
                store[(n, r, m)] = value
        for (n, r, m), value in store.items():
            mirrored = store.get((m, r, n), Fraction(0))
            if mirrored != value:
                raise SymmetryError((n, r, m), value, mirrored)
        object.__setattr__(self, "_coeffs", store)

    def __setattr__(self, name, value):
        raise AttributeError("SiegelSeries is immutable")

    @classmethod
    def zero(cls, weight: int, trunc: int) -> SiegelSeries:
        return cls(weight, trunc)

    def __getitem__(self, key: TripleKey) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def items(self) -> list[tuple[TripleKey, Fraction]]:
        """Nonzero coefficients in lexicographic (n, r, m) order."""
        return sorted(self._coeffs.items())

    def support(self) -> list[TripleKey]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, SiegelSeries):
            return NotImplemented
        return (
            self.weight == other.weight
            and self.trunc == other.trunc
            and self._coeffs == other._coeffs
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"SiegelSeries(weight={self.weight}, trunc={self.trunc}, terms={len(self._coeffs)})"

    def slice_component(self, m: int) -> JacobiSeries:
        """The index-m Jacobi slice f_m(n, r) = a(n, r, m)."""
        if not 0 <= m <= self.trunc:
            raise ValueError(f"slice index {m} outside [0, {self.trunc}]")
        return JacobiSeries(
            self.weight,
            m,
            self.trunc,
            {(n, r): v for (n, r, mm), v in self._coeffs.items() if mm == m},
        )

    def components(self) -> list[JacobiSeries]:
        return [self.slice_component(m) for m in range(self.trunc + 1)]

    def __neg__(self) -> SiegelSeries:
        return SiegelSeries(self.weight, self.trunc, {k: -v for k, v in self._coeffs.items()})

    def __add__(self, other: SiegelSeries) -> SiegelSeries:
        if not isinstance(other, SiegelSeries):
            return NotImplemented
        if self.weight != other.weight:
            raise ValueError(f"cannot add weights {self.weight} and {other.weight}")
        trunc = min(self.trunc, other.trunc)
        out: dict[TripleKey, Fraction] = {}
        for (n, r, m), v in self._coeffs.items():
            if n <= trunc and m <= trunc:
                out[(n, r, m)] = v
        for (n, r, m), v in other._coeffs.items():
            if n <= trunc and m <= trunc:
                out[(n, r, m)] = out.get((n, r, m), Fraction(0)) + v
        return SiegelSeries(self.weight, trunc, out)

    def __sub__(self, other: SiegelSeries) -> SiegelSeries:
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, SiegelSeries):
            trunc = min(self.trunc, other.trunc)
            out: dict[TripleKey, Fraction] = {}
            for (n1, r1, m1), a in self._coeffs.items():
                for (n2, r2, m2), b in other._coeffs.items():
                    n, m = n1 + n2, m1 + m2
                    if n > trunc or m > trunc:
                        continue
                    key = (n, r1 + r2, m)
                    out[key] = out.get(key, Fraction(0)) + a * b
            return SiegelSeries(self.weight + other.weight, trunc, out)
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return SiegelSeries(self.weight, self.trunc, {k: c * v for k, v in self._coeffs.items()})
        return NotImplemented

    def __rmul__(self, other) -> SiegelSeries:
        return self.__mul__(other)

    def truncated(self, trunc: int) -> SiegelSeries:
        if trunc > self.trunc:
            raise ValueError(f"cannot extend truncation {self.trunc} to {trunc}")
        return SiegelSeries(
            self.weight,
            trunc,
            {k: v for k, v in self._coeffs.items() if k[0] <= trunc and k[2] <= trunc},
        )


def siegel_from_components(components: list[JacobiSeries]) -> SiegelSeries:
    """Assemble a degree-2 expansion from its Jacobi slices f_0, ..., f_T.

    Slice m must have index m, all slices the common weight, and truncation
    at least T = len(components) - 1.  The transpose symmetry of the result
    is validated, not assumed.
    """
    if not components:
        raise ValueError("need at least the m = 0 component")
    trunc = len(components) - 1
    weight = components[0].weight
    coeffs: dict[TripleKey, Fraction] = {}
    for m, part in enumerate(components):
        if part.index != m:
            raise ValueError(f"component {m} has index {part.index}, expected {m}")
        if part.weight != weight:
            raise ValueError(f"component {m} has weight {part.weight}, expected {weight}")
        if part.trunc < trunc:
            raise ValueError(f"component {m} truncated at {part.trunc} < {trunc}")
        for (n, r), value in part.items():
            if n <= trunc:
                coeffs[(n, r, m)] = value
    return SiegelSeries(weight, trunc, coeffs)


def delta_op(F: SiegelSeries) -> SiegelSeries:
    """Multiply a(n, r, m) by 4*n*m - r**2; weight tag advances by 2.

    On the index-m slice this is exactly the heat operator, so slicing and
    delta_op commute through :func:`rcforms.series.heat`.
    """
    return SiegelSeries(
        F.weight + 2,
        F.trunc,
        {(n, r, m): (4 * n * m - r * r) * v for (n, r, m), v in F._coeffs.items()},
    )


def _delta_power(F: SiegelSeries, p: int) -> SiegelSeries:
    for _ in range(p):
        F = delta_op(F)
    return F


def bracket_siegel_direct(F: SiegelSeries, G: SiegelSeries, l: int) -> SiegelSeries:
    """Order-l bracket sum C(r, s, p) delta^p(delta^r(F) * delta^s(G)).

    Uses the even-order coefficient family of :mod:`rcforms.brackets` with
    v = 2*l; output weight is F.weight + G.weight + 2*l.  For l > 0 the
    m = 0 and n = 0 slices of the output vanish identically.
    """
    if l < 0:
        raise ValueError(f"bracket order must be non-negative, got {l}")
    params = BracketParams(F.weight, G.weight, 0, 0, 2 * l)
    out = SiegelSeries.zero(F.weight + G.weight + 2 * l, min(F.trunc, G.trunc))
    for term in bracket_terms(params):
        if not term.c_value:
            continue
        product = _delta_power(F, term.r) * _delta_power(G, term.s)
        out = out + term.c_value * _delta_power(product, term.p)
    return out


def bracket_siegel_via_jacobi(F: SiegelSeries, G: SiegelSeries, l: int) -> SiegelSeries:
    """Order-l bracket assembled slice by slice from Jacobi brackets at x = 0.

    Slice mu of the output is the sum over m + m' = mu of the order-2l
    brackets of the slices f_m and g_m'; only complete slices mu <= trunc
    are emitted.  Agrees exactly with :func:`bracket_siegel_direct`.
    """
    if l < 0:
        raise ValueError(f"bracket order must be non-negative, got {l}")
    trunc = min(F.trunc, G.trunc)
    weight = F.weight + G.weight + 2 * l
    f_slices = [F.slice_component(m).truncated(trunc) for m in range(trunc + 1)]
    g_slices = [G.slice_component(m).truncated(trunc) for m in range(trunc + 1)]
    parts = []
    for mu in range(trunc + 1):
        acc = JacobiSeries.zero(weight, mu, trunc)
        for m in range(mu + 1):
            acc = acc + bracket_jacobi(f_slices[m], g_slices[mu - m], 0, 2 * l)
        parts.append(acc)
    return siegel_from_components(parts)


@dataclass(frozen=True)
class CheckItem:
    name: str
    slice_index: int | None
    passed: bool
    witness: str = ""

    def describe(self) -> str:
        where = "global" if self.slice_index is None else f"slice {self.slice_index}"
        status = "pass" if self.passed else f"FAIL ({self.witness})"
        return f"{self.name} [{where}]: {status}"


@dataclass(frozen=True)
class ConsistencyReport:
    checks: tuple[CheckItem, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.checks)

    def failures(self) -> list[CheckItem]:
        return [item for item in self.checks if not item.passed]


def check_siegel_consistency(F: SiegelSeries) -> ConsistencyReport:
    """Run the coefficient-level form checks on a degree-2 expansion.

    Checks the global transpose symmetry plus, on every slice with index
    m >= 1: disc-class invariance, holomorphic support and parity.
    """
    checks: list[CheckItem] = []
    symmetry_witness = ""
    symmetric = True
    for (n, r, m), value in F.items():
        if F[(m, r, n)] != value:
            symmetric = False
            symmetry_witness = f"a({n},{r},{m})={value} vs a({m},{r},{n})={F[(m, r, n)]}"
            break
    checks.append(CheckItem("symmetry", None, symmetric, symmetry_witness))
    for m in range(1, F.trunc + 1):
        part = F.slice_component(m)
        ok, witness = check_disc_class_invariance(part)
        checks.append(
            CheckItem(
                "disc-class",
                m,
                ok,
                "" if ok else f"c{witness[0]}={witness[1]} vs c{witness[2]}={witness[3]}",
            )
        )
        holo = part.has_holomorphic_support()
        bad = [key for key in part.support() if key[1] ** 2 > 4 * key[0] * m]
        checks.append(
            CheckItem("holomorphic-support", m, holo, "" if holo else f"key {bad[0]}")
        )
        parity = check_parity(part)
        checks.append(CheckItem("parity", m, parity, "" if parity else "sign mismatch"))
    return ConsistencyReport(tuple(checks))
