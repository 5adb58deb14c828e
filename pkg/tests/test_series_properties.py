"""Hypothesis properties: ring laws and operator identities on random series."""

from fractions import Fraction
from math import comb

from hypothesis import given, settings, strategies as st

from rcforms.brackets import bracket_jacobi
from rcforms.series import (
    EllipticSeries,
    JacobiSeries,
    check_disc_class_invariance,
    heat,
    heat_power,
    theta_q,
    theta_q_elliptic,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=6
)


def jacobi_series(weight=st.integers(0, 10), index=st.integers(0, 3), trunc=st.integers(1, 4)):
    @st.composite
    def build(draw):
        w = draw(weight)
        m = draw(index)
        n_max = draw(trunc)
        keys = st.tuples(st.integers(0, n_max), st.integers(-4, 4))
        coeffs = draw(st.dictionaries(keys, rationals, max_size=6))
        return JacobiSeries(w, m, n_max, coeffs)

    return build()


def compatible_triples():
    """Three series sharing weight/index/trunc, so sums are unrestricted."""

    @st.composite
    def build(draw):
        w = draw(st.integers(0, 8))
        m = draw(st.integers(0, 3))
        n_max = draw(st.integers(1, 3))
        keys = st.tuples(st.integers(0, n_max), st.integers(-3, 3))
        make = lambda: JacobiSeries(w, m, n_max, draw(st.dictionaries(keys, rationals, max_size=5)))
        return make(), make(), make()

    return build()


@given(compatible_triples())
def test_addition_laws(triple):
    f, g, h = triple
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f


@given(jacobi_series(), jacobi_series(), jacobi_series())
def test_multiplication_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f


@given(compatible_triples(), jacobi_series())
def test_distributivity(triple, h):
    f, g, _ = triple
    assert (f + g) * h == f * h + g * h


@given(jacobi_series(), jacobi_series())
def test_theta_q_derivation(f, g):
    assert theta_q(f * g) == theta_q(f) * g + f * theta_q(g)


@given(jacobi_series(index=st.integers(1, 3)))
def test_heat_preserves_support_predicates(f):
    if f.has_holomorphic_support():
        assert heat(f).has_holomorphic_support()
    if f.has_cusp_support():
        assert heat(f).has_cusp_support()


@given(jacobi_series(index=st.integers(1, 3)))
def test_heat_preserves_disc_class_invariance(f):
    ok, _ = check_disc_class_invariance(f)
    if ok:
        assert check_disc_class_invariance(heat(f)) == (True, None)


@given(jacobi_series(), jacobi_series(), st.integers(0, 3))
def test_truncation_monotonicity_of_mul(f, g, cut):
    cut = min(cut, f.trunc, g.trunc)
    assert (f * g).truncated(cut) == f.truncated(cut) * g.truncated(cut)


@settings(max_examples=25, deadline=None)
@given(
    jacobi_series(weight=st.integers(2, 8), trunc=st.integers(2, 3)),
    jacobi_series(weight=st.integers(2, 8), trunc=st.integers(2, 3)),
    st.integers(0, 4),
    st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=3),
)
def test_truncation_monotonicity_of_bracket(f, g, v, x):
    cut = min(f.trunc, g.trunc) - 1
    big = bracket_jacobi(f, g, x, v)
    small = bracket_jacobi(f.truncated(cut), g.truncated(cut), x, v)
    assert big.truncated(cut) == small


@settings(max_examples=30, deadline=None)
@given(
    st.integers(0, 3),
    st.dictionaries(st.integers(0, 3), rationals, max_size=4),
    jacobi_series(index=st.integers(0, 3), trunc=st.just(3)),
)
def test_heat_leibniz_expansion(r, elliptic_coeffs, g):
    """heat^r(f g) for q-only f expands through binomial heat/theta splits."""
    f = EllipticSeries(4, 3, elliptic_coeffs)
    m = g.index
    left = heat_power(f.as_jacobi() * g, r)
    right = None
    for j in range(r + 1):
        tau_part = f
        for _ in range(r - j):
            tau_part = theta_q_elliptic(tau_part)
        term = ((4 * m) ** (r - j) * comb(r, j)) * (tau_part.as_jacobi() * heat_power(g, j))
        right = term if right is None else right + term
    assert left == right


@settings(max_examples=20, deadline=None)
@given(
    compatible_triples(),
    st.integers(0, 4),
    st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=3),
    st.tuples(rationals, rationals),
)
def test_bracket_bilinearity(triple, v, x, scalars):
    f, g, h = triple
    a, b = scalars
    left = bracket_jacobi(a * f + b * g, h, x, v)
    right = a * bracket_jacobi(f, h, x, v) + b * bracket_jacobi(g, h, x, v)
    assert left == right
