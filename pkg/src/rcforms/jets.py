"""Second construction of the brackets through formal heat-operator jets.

A form f of weight k and index m is developed into a formal power series in
an auxiliary variable w whose nu-th coefficient is a rational multiple of
heat^nu(f).  Products of two such jets (with the w variable rescaled by
index-dependent linear factors of the bracket parameter x) admit a
projection ``zeta_nu`` that lands back in a single expansion of weight
k + 2*nu.  That projection reproduces the bracket of :mod:`rcforms.brackets`
up to one nonzero rational scalar, which makes the jet pipeline an
independent oracle for the bracket assembly: the two constructions share no
coefficient formulas beyond the heat operator itself.

The scalar relating the two constructions depends only on the weights,
indices and bracket order; it is measured, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .brackets import THREE_HALVES, bracket_jacobi, falling_factorial
from .series import JacobiSeries, as_rational, d_z, heat, heat_power


class CrosscheckError(ArithmeticError):
    """The two bracket constructions failed to be proportional."""


@dataclass(frozen=True)
class FormalJet:
    """Formal expansion sum chi_nu * w^nu with series coefficients.

    All components share the index and truncation; component nu carries
    weight tag base_weight + 2*nu.
    """

    base_weight: int
    index: int
    chis: tuple[JacobiSeries, ...]

    def __post_init__(self):
        for nu, chi in enumerate(self.chis):
            if chi.index != self.index:
                raise ValueError(f"component {nu} has index {chi.index}, expected {self.index}")
            if chi.weight != self.base_weight + 2 * nu:
                raise ValueError(
                    f"component {nu} has weight {chi.weight}, "
                    f"expected {self.base_weight + 2 * nu}"
                )
            if chi.trunc != self.chis[0].trunc:
                raise ValueError("jet components must share a truncation")

    @property
    def nu_max(self) -> int:
        return len(self.chis) - 1

    @property
    def trunc(self) -> int:
        return self.chis[0].trunc


def jet_of_form(f: JacobiSeries, nu_max: int) -> FormalJet:
    """Jet with chi_nu = heat^nu(f) / (nu! * prod_{i=1..nu} (k - 3/2 + i)).

    The normalising product keeps every component rational; nu-independent
    constants are irrelevant because the oracle only asserts
    proportionality.
    """
    chis = []
    current = f
    denominator = Fraction(1)
    for nu in range(nu_max + 1):
        if nu:
            current = heat(current)
            denominator *= nu * (f.weight - THREE_HALVES + nu)
        chis.append(current if denominator == 1 else current * (1 / denominator))
    return FormalJet(f.weight, f.index, tuple(chis))


def jet_scale_w(jet: FormalJet, scale: int | Fraction) -> FormalJet:
    """Substitute w -> scale * w: component nu picks up scale**nu."""
    scale = as_rational(scale)
    chis = tuple(chi * scale**nu for nu, chi in enumerate(jet.chis))
    return FormalJet(jet.base_weight, jet.index, chis)


def jet_mul(a: FormalJet, b: FormalJet) -> FormalJet:
    """Cauchy product in w; weights and indices add."""
    if a.trunc != b.trunc:
        raise ValueError(f"jet truncations differ: {a.trunc} vs {b.trunc}")
    nu_max = min(a.nu_max, b.nu_max)
    chis = []
    for nu in range(nu_max + 1):
        acc = a.chis[0] * b.chis[nu]
        for j in range(1, nu + 1):
            acc = acc + a.chis[j] * b.chis[nu - j]
        chis.append(acc)
    return FormalJet(a.base_weight + b.base_weight, a.index + b.index, tuple(chis))


def jet_odd_combine(a: FormalJet, b: FormalJet, m1: int, m2: int) -> FormalJet:
    """Antisymmetrised product m2*(d_z a)*b - m1*a*(d_z b); weight adds plus 1."""
    if a.trunc != b.trunc:
        raise ValueError(f"jet truncations differ: {a.trunc} vs {b.trunc}")
    nu_max = min(a.nu_max, b.nu_max)
    chis = []
    for nu in range(nu_max + 1):
        acc = None
        for j in range(nu + 1):
            piece = m2 * (d_z(a.chis[j]) * b.chis[nu - j]) - m1 * (
                a.chis[j] * d_z(b.chis[nu - j])
            )
            acc = piece if acc is None else acc + piece
        chis.append(acc)
    return FormalJet(a.base_weight + b.base_weight + 1, a.index + b.index, tuple(chis))


def zeta_nu(jet: FormalJet, nu: int) -> JacobiSeries:
    """Weight K + 2*nu projection sum_j (-(K-3/2+nu))_{nu-j} / j! * heat^j(chi_{nu-j})."""
    if nu > jet.nu_max:
        raise ValueError(f"jet only carries components up to {jet.nu_max}, asked for {nu}")
    base = as_rational(jet.base_weight) - THREE_HALVES + nu
    out = None
    for j in range(nu + 1):
        coefficient = falling_factorial(-base, nu - j) / factorial(j)
        piece = coefficient * heat_power(jet.chis[nu - j], j)
        out = piece if out is None else out + piece
    return out


def crosscheck_bracket(
    f: JacobiSeries, g: JacobiSeries, x: int | Fraction, v: int
) -> Fraction | None:
    """Rebuild the order-v bracket through the jet pipeline and compare.

    Returns the nonzero rational scalar lam with zeta = lam * bracket when
    both constructions are nonzero, None when both vanish identically
    (indeterminate), and raises :class:`CrosscheckError` when the two series
    fail to be proportional.

    The w-rescalings pair the factor (1 - m2*x) with f's jet and
    (1 + m1*x) with g's jet; this is the pairing under which the jet
    projection reproduces the bracket at the same parameter x.
    """
    x = as_rational(x)
    nu = v // 2
    a = jet_scale_w(jet_of_form(f, nu), 1 - g.index * x)
    b = jet_scale_w(jet_of_form(g, nu), 1 + f.index * x)
    if v % 2 == 0:
        combined = jet_mul(a, b)
    else:
        combined = jet_odd_combine(a, b, f.index, g.index)
    zeta = zeta_nu(combined, nu)
    bracket = bracket_jacobi(f, g, x, v)
    if zeta.is_zero() and bracket.is_zero():
        return None
    keys = sorted(set(zeta.support()) | set(bracket.support()))
    first = keys[0]
    if zeta[first] == 0 or bracket[first] == 0:
        raise CrosscheckError(
            f"constructions are not proportional at {first}: "
            f"jet side {zeta[first]}, bracket side {bracket[first]}"
        )
    lam = zeta[first] / bracket[first]
    for key in keys:
        if zeta[key] != lam * bracket[key]:
            raise CrosscheckError(
                f"no consistent scalar: key {key} gives {zeta[key]} vs "
                f"{lam} * {bracket[key]}"
            )
    return lam
