"""One test per acceptance criterion; the summary hook prints PASS/FAIL per test."""

from __future__ import annotations

import time
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from fppcert import fano
from fppcert.divisor_search import search_lemma3
from fppcert.extfield import CubicElem
from fppcert.hochschild import (
    build_ext_table,
    degeneration_check,
    exceptional_check,
    les_solve,
    nhh_dims,
    nhh_e1_page,
    standard_collection,
)
from fppcert.invariants import (
    TANGENT_BUNDLE,
    all_classes,
    chi,
    cohomology,
    hh_ambient,
    hh_homology_total,
    hrr_chi,
)
from fppcert.lattice import PLANE_IDS, Mat3, cmsz_generators, det, mumford_generators, plane
from fppcert.padic import PAdicApprox, hensel_cube_root, hensel_sqrt


def test_lemma3_search_unsat_with_timing_and_negative_control():
    start = time.perf_counter()
    single = search_lemma3(jobs=1)
    single_s = time.perf_counter() - start
    start = time.perf_counter()
    pooled = search_lemma3(jobs=8)
    pooled_s = time.perf_counter() - start
    print(f"lemma3: single {single_s:.2f}s, 8 workers {pooled_s:.2f}s")
    assert single.candidates_examined * 5040 == 24_025_680
    assert single.feasible_pairs == 0 and pooled.feasible_pairs == 0
    assert single.witness_sha256 == pooled.witness_sha256
    assert single_s < 60
    assert pooled_s < 10
    control = search_lemma3(modulus=1)
    assert control.feasible_pairs > 0


def test_cohomology_table_exact():
    for L in all_classes(range(1, 3)):
        assert cohomology(L) == (0, 0, 0)
    for L in all_classes(range(3, 4)):
        assert cohomology(L) == ((0, 0, 1) if L.is_canonical else (1, 0, 0))
    for d, h0 in ((4, 3), (5, 6), (6, 10)):
        for L in all_classes(range(d, d + 1)):
            assert cohomology(L) == (h0, 0, 0)
    for L in all_classes(range(-10, 11)):
        h = cohomology(L)
        assert h[0] - h[1] + h[2] == chi(L)
        assert cohomology(L.serre_dual()) == h[::-1]


def test_hrr_tangent_bundle():
    assert hrr_chi(*TANGENT_BUNDLE) == 8


def test_ambient_hochschild():
    assert hh_ambient().as_list() == [1, 0, 0, 8, 10]


def test_e1_page_and_nhh():
    page = nhh_e1_page(build_ext_table(standard_collection()))
    assert page == {(0, 4): 30, (-1, 6): 54, (-2, 8): 27}
    assert degeneration_check(page)
    assert nhh_dims(page).as_list() == [0, 0, 0, 0, 30, 54, 27]


def test_quasiphantom_dimensions():
    coll = standard_collection()
    nhh = nhh_dims(nhh_e1_page(build_ext_table(coll)))
    assert les_solve(nhh, hh_ambient(), {4: 10}).as_list() == [1, 0, 0, 28, 54, 27]
    assert hh_homology_total() - len(coll) == 0


def test_two_adic_facts():
    for precision in (8, 16, 64):
        S = hensel_sqrt(-15, 1, precision)
        assert S.residue(2) == 1
        assert (S - 1).valuation == 3
        prod = (S - 1) * (S + 1)
        assert prod.congruent(-16) and prod.valuation == 4
    rho = mumford_generators()["rho"]
    d_rho = det(rho)
    assert d_rho.valuation() == 1
    assert det(cmsz_generators()["a3"]).valuation() == 1
    mu = CubicElem.mu(d_rho)
    lifted = rho.map(lambda x: CubicElem.scalar(x, d_rho)).scale(mu.inverse())
    assert det(lifted) == 1


def test_exceptional_collection_every_plane():
    for pid in PLANE_IDS:
        rank = plane(pid).two_torsion_rank
        for a in range(3):
            for bits in range(2**rank):
                tt = tuple((bits >> k) & 1 for k in range(rank))
                coll = standard_collection(rank, a, tt)
                assert exceptional_check(build_ext_table(coll))
                assert not exceptional_check(build_ext_table(coll[::-1]))


def test_fano_census_and_covers():
    start = time.perf_counter()
    assert fano.census() == {"Smooth": 28, "RationalLinePair": 21, "ConjugateLinePair": 7, "DoubleLine": 7}
    for q in fano.all_conics():
        if q.conic_class is fano.ConicClass.SMOOTH:
            assert len(q.rational_points) == 3
    triples = fano.covering_supports(3)
    assert len(triples) == 7 and all(fano.is_concurrent(t) for t in triples)
    assert len(fano.support_orbits(fano.covering_supports(4))) == 1
    assert len(fano.support_orbits(fano.covering_supports(5))) == 1
    assert time.perf_counter() - start < 1.0


odd = st.integers(0, 2**64).map(lambda n: 2 * n + 1)
fracs = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 8))


@settings(max_examples=500, deadline=None)
@given(k=st.integers(0, 2**60), low=st.integers(3, 64), extra=st.integers(1, 64), u=odd)
def test_property_suites_at_500_cases(k, low, extra, u):
    # Hensel round-trips and precision monotonicity
    a = 8 * k + 1
    x = hensel_sqrt(a, 1, low + extra)
    assert (x * x).congruent(PAdicApprox.from_int(a, low + extra))
    assert x.residue(low) == hensel_sqrt(a, 1, low).residue(low)
    c = PAdicApprox.from_int(u, low)
    assert (hensel_cube_root(c) ** 3).congruent(c)
    # valuation additivity
    y = PAdicApprox.from_int(a * 2**low, 32)
    z = PAdicApprox.from_int(u * 2**extra, 32)
    assert (y * z).valuation == y.valuation + z.valuation


@settings(max_examples=500, deadline=None)
@given(xs=st.lists(fracs, min_size=18, max_size=18))
def test_property_det_multiplicative_500_cases(xs):
    a = Mat3((tuple(xs[0:3]), tuple(xs[3:6]), tuple(xs[6:9])))
    b = Mat3((tuple(xs[9:12]), tuple(xs[12:15]), tuple(xs[15:18])))
    assert det(a @ b) == det(a) * det(b)
