from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fppcert.extfield import (
    CubicElem,
    KummerExtension,
    LambdaElem,
    NotTotallyRamified,
    QuadElem,
    ZeroElement,
    cubic_valuation,
    no_primitive_cube_root,
)
from fppcert.padic import PAdicApprox

MANY = settings(max_examples=500, deadline=None)
small = st.integers(-50, 50)
fracs = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


def test_quadratic_arithmetic():
    S = QuadElem.S()
    assert S * S == -15
    assert (S - 1) * (S + 1) == -16
    assert (S - 1).valuation() == 3
    assert ((S - 1) / 4).valuation() == 1
    assert (S + 1).valuation() == 1
    assert S.norm() == 15
    assert (S - 1) * (S - 1).inverse() == 1


def test_quadratic_embedding_matches_padic_root():
    S = QuadElem.S().to_padic(40)
    assert (S * S).congruent(PAdicApprox.from_int(-15, 40))
    assert S.residue(5) == 25


@MANY
@given(a=fracs, b=fracs, c=fracs, d=fracs)
def test_quadratic_valuation_multiplicative(a, b, c, d):
    x, y = QuadElem(a, b), QuadElem(c, d)
    if x == 0 or y == 0:
        return
    assert (x * y).valuation() == x.valuation() + y.valuation()
    assert x.to_padic(80).congruent((x * y).to_padic(80) / y.to_padic(80))


def test_lambda_gauss_valuation():
    lam = LambdaElem.lam()
    assert lam.valuation() == 1
    assert (lam**2 / 2).valuation() == 1
    assert (lam**3 / 2).valuation() == 2
    assert (1 + lam).valuation() == 0
    with pytest.raises(ZeroElement):
        LambdaElem().valuation()
    with pytest.raises(ArithmeticError):
        (1 + lam).inverse()


@MANY
@given(coeffs=st.lists(fracs, min_size=1, max_size=4), u=st.integers(-200, 200).map(lambda n: 2 * n + 1))
def test_lambda_valuation_bounds_specialisation(coeffs, u):
    x = LambdaElem.from_list(coeffs)
    if not x.coeffs:
        return
    value = x.evaluate(u)
    if value == 0:
        return
    # the Gauss valuation is a lower bound for every unit specialisation
    assert PAdicApprox.from_rational(value).valuation >= x.valuation()


def test_lambda_substitute():
    lam = LambdaElem.lam()
    y = (lam**2 / 2).substitute(lam * 2)
    assert y == lam**2 * 2


def test_cubic_mu_facts():
    lam = LambdaElem.lam()
    d = lam**2 / 2
    mu = CubicElem.mu(d)
    assert mu**3 == d
    assert cubic_valuation(mu) == Fraction(1, 3)
    assert cubic_valuation(mu * mu / 2) == Fraction(-1, 3)
    assert mu * mu.inverse() == 1
    with pytest.raises(NotTotallyRamified):
        cubic_valuation(CubicElem.mu(8))


@MANY
@given(a=st.tuples(small, small, small), b=st.tuples(small, small, small))
def test_cubic_norm_multiplicative(a, b):
    x, y = CubicElem(*a, 2), CubicElem(*b, 2)
    assert (x * y).norm() == x.norm() * y.norm()
    if x.norm() != 0:
        assert x * x.inverse() == 1
    if any(a) and any(b):
        assert cubic_valuation(x * y) == cubic_valuation(x) + cubic_valuation(y)


def test_residue_field_checks():
    lam, S = LambdaElem.lam(), QuadElem.S()
    assert no_primitive_cube_root(KummerExtension(lam**2 / 2))
    assert no_primitive_cube_root(KummerExtension((S - 1) / 4))
    assert not no_primitive_cube_root(KummerExtension(2, residue_degree=2))
    assert no_primitive_cube_root(KummerExtension(2, residue_degree=3))
    with pytest.raises(NotTotallyRamified):
        KummerExtension(8)
