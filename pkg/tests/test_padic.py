from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fppcert.padic import (
    INFINITY,
    AmbiguousConstraint,
    NoSquareRoot,
    NotAUnit,
    PAdicApprox,
    hensel_cube_root,
    hensel_sqrt,
    is_cube_in_Q2,
    residue_poly_irreducible,
    v2,
    valuation,
)

MANY = settings(max_examples=500, deadline=None)


def brute_sqrt(a: int, bits: int, constraint: int = 1) -> set:
    """Odd x mod 2^bits with x^2 = a mod 2^(bits+1) and x = constraint mod 4."""
    mod = 1 << (bits + 1)
    return {x % (1 << bits) for x in range(1, mod, 2) if (x * x - a) % mod == 0 and x % 4 == constraint % 4}


def test_valuation_examples():
    assert valuation(PAdicApprox.from_int(-16)) == 4
    assert valuation(Fraction(3, 8)) == -3
    assert valuation(PAdicApprox.zero(10)) == INFINITY
    assert valuation(0) == INFINITY


def test_sqrt_of_one_is_one():
    assert hensel_sqrt(1, 1, 10).residue(10) == 1


def test_sqrt_minus_15_mod_32_matches_brute_force():
    # oracle: odd residues mod 64 squaring to -15 that are 1 mod 4, reduced mod 32
    oracle = {x % 32 for x in range(1, 64, 2) if (x * x + 15) % 64 == 0 and x % 4 == 1}
    assert oracle == {25}
    assert hensel_sqrt(-15, 1, 5).residue(5) == 25


def test_sqrt_minus_15_facts():
    S = hensel_sqrt(-15, 1, 64)
    assert S.residue(2) == 1
    assert (S - 1).valuation == 3
    assert ((S - 1) / 4).valuation == 1
    prod = (S - 1) * (S + 1)
    assert prod.valuation == 4
    assert prod.congruent(-16)
    assert prod.unit_residue == (1 << prod.precision) - 1  # unit part is -1


@pytest.mark.parametrize("precision", range(3, 65))
def test_sqrt_squares_back_at_every_precision(precision):
    S = hensel_sqrt(-15, 1, precision)
    assert (S * S).congruent(PAdicApprox.from_int(-15, precision))


def test_sqrt_errors():
    with pytest.raises(NoSquareRoot):
        hensel_sqrt(3)
    with pytest.raises(NoSquareRoot):
        hensel_sqrt(5)
    with pytest.raises(AmbiguousConstraint):
        hensel_sqrt(17, 2)


def test_cube_root_examples():
    assert hensel_cube_root(PAdicApprox.from_int(1, 16)).residue(16) == 1
    assert hensel_cube_root(PAdicApprox.from_int(27, 16)).residue(16) == 3
    # oracle: cubing permutes odd residues mod 32
    cube_map = {x: x**3 % 32 for x in range(1, 32, 2)}
    assert sorted(cube_map.values()) == list(range(1, 32, 2))
    preimage = next(x for x, y in cube_map.items() if y == 17)
    assert preimage == 17
    assert hensel_cube_root(PAdicApprox.from_int(17, 5)).residue(5) == 17
    with pytest.raises(NotAUnit):
        hensel_cube_root(PAdicApprox.from_int(2, 8))


def test_is_cube():
    assert is_cube_in_Q2(PAdicApprox.from_int(8))
    S = hensel_sqrt(-15, 1, 64)
    assert not is_cube_in_Q2((S - 1) / 4)
    with pytest.raises(ValueError):
        is_cube_in_Q2(PAdicApprox.zero())


def test_residue_polynomials():
    assert residue_poly_irreducible([1, 1, 1])
    assert not residue_poly_irreducible([1, 0, 1])
    assert not residue_poly_irreducible([0, 1, 1])
    assert residue_poly_irreducible([1, 1, 0, 1])
    assert not residue_poly_irreducible([1, 1])


def test_cancellation_reduces_precision():
    x = PAdicApprox.from_int(1, 10)
    y = PAdicApprox.from_int(1 + 2**6, 10)
    d = y - x
    assert d.valuation == 6
    assert d.absolute_precision == 10
    assert (x - x).is_zero and (x - x).precision == 10


def test_zero_times_value_tracks_precision():
    z = PAdicApprox.zero(8)
    assert (z * PAdicApprox.from_int(4, 20)).precision == 10


odd = st.integers(min_value=0, max_value=2**70).map(lambda n: 2 * n + 1)
nonzero = st.integers(min_value=-(2**80), max_value=2**80).filter(bool)
precisions = st.integers(min_value=3, max_value=96)


@MANY
@given(k=st.integers(min_value=0, max_value=2**60), precision=precisions)
def test_hensel_sqrt_roundtrip(k, precision):
    a = 8 * k + 1
    for constraint in (1, 3):
        x = hensel_sqrt(a, constraint, precision)
        assert (x * x).congruent(PAdicApprox.from_int(a, precision))
        assert x.residue(2) == constraint


@MANY
@given(k=st.integers(min_value=0, max_value=2**12), bits=st.integers(min_value=3, max_value=8))
def test_hensel_sqrt_agrees_with_brute_force(k, bits):
    a = 8 * k + 1
    assert hensel_sqrt(a, 1, bits).residue(bits) in brute_sqrt(a, bits)


@MANY
@given(u=odd, precision=precisions)
def test_hensel_cube_roundtrip(u, precision):
    x = PAdicApprox.from_int(u, precision)
    assert (hensel_cube_root(x) ** 3).congruent(x)


@MANY
@given(k=st.integers(min_value=0, max_value=2**40), low=precisions, extra=st.integers(1, 64))
def test_precision_monotonicity(k, low, extra):
    a = 8 * k + 1
    hi = low + extra
    assert hensel_sqrt(a, 1, hi).residue(low) == hensel_sqrt(a, 1, low).residue(low)
    u = PAdicApprox.from_int(2 * k + 1, hi)
    assert hensel_cube_root(u).residue(low) == hensel_cube_root(u.reduce(low)).residue(low)


@MANY
@given(a=nonzero, b=nonzero, precision=precisions)
def test_valuation_additivity(a, b, precision):
    x, y = PAdicApprox.from_int(a, precision), PAdicApprox.from_int(b, precision)
    assert (x * y).valuation == v2(a) + v2(b) == x.valuation + y.valuation
    s = x + y
    if x.valuation != y.valuation:
        assert s.valuation == min(x.valuation, y.valuation)
    elif not s.is_zero:
        assert s.valuation >= x.valuation
    if a + b and not s.is_zero:
        assert s.valuation == v2(a + b)


@MANY
@given(
    n=st.integers(-(10**12), 10**12),
    d=st.integers(1, 10**6),
    precision=precisions,
)
def test_rational_roundtrip(n, d, precision):
    x = Fraction(n, d)
    p = PAdicApprox.from_rational(x, precision)
    if x == 0:
        assert p.is_zero
        return
    back = p * d
    assert back.congruent(n)
