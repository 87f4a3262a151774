"""Certifiers that turn module computations into report claims."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional

from fppcert import fano
from fppcert.divisor_search import case_breakdown, search_lemma3
from fppcert.hochschild import certify_hochschild
from fppcert.invariants import certify_cohomology
from fppcert.lattice import certify_lattices, plane
from fppcert.padic import (
    PAdicApprox,
    hensel_cube_root,
    hensel_sqrt,
    is_cube_in_Q2,
    residue_poly_irreducible,
)
from fppcert.report import CertReport, stopwatch


def certify_padic(precision: int = 64) -> CertReport:
    report = CertReport()
    anchor = "S^2 = -15, S = 1 mod 4"
    with stopwatch() as t:
        S = hensel_sqrt(-15, 1, precision)
        ok = all((hensel_sqrt(-15, 1, k) * hensel_sqrt(-15, 1, k)).congruent(PAdicApprox.from_int(-15, k))
                 for k in range(3, precision + 1))
    report.add(
        "padic.sqrt_minus_15",
        "S^2 = -15 at every precision from 3 bits up, with S = 1 mod 4",
        anchor,
        ok and S.residue(2) == 1,
        {"precision": precision, "S_mod_32": S.residue(5)},
        t["ms"],
    )
    one = PAdicApprox.from_int(1, precision)
    prod = (S - one) * (S + one)
    report.add(
        "padic.product_minus_16",
        "(S-1)(S+1) = -16",
        anchor,
        prod.congruent(PAdicApprox.from_int(-16, precision)) and prod.valuation == 4,
        {"valuation": prod.valuation, "precision": prod.precision},
    )
    v = (S - one).valuation
    report.add("padic.v_S_minus_1", "v(S-1) = 3", anchor, v == 3, {"valuation": v})
    quarter = (S - one) / Fraction(4)
    report.add(
        "padic.uniformizer_not_cube",
        "(S-1)/4 has valuation 1 and is not a cube in Q_2",
        anchor,
        quarter.valuation == 1 and not is_cube_in_Q2(quarter),
    )
    two = PAdicApprox.from_int(2, precision)
    report.add(
        "padic.valuation_one_not_cube",
        "2 u^2 is not a cube for odd u in 1..63",
        "det(rho) = lam^2/2 has valuation 1",
        all(not is_cube_in_Q2(two * PAdicApprox.from_int(u * u, precision)) for u in range(1, 64, 2)),
    )
    cube_ok = all(
        (hensel_cube_root(PAdicApprox.from_int(u, precision)) ** 3).congruent(PAdicApprox.from_int(u, precision))
        for u in range(1, 256, 2)
    )
    report.add("padic.cube_roots_of_units", "every odd residue below 256 has a unit cube root", "unit cube roots", cube_ok)
    report.add(
        "padic.unramified_quadratic",
        "x^2 + x + 1 has no root in F_2",
        "zeta^2 + zeta + 1 = 0",
        residue_poly_irreducible([1, 1, 1]),
    )
    return report


def certify_fano() -> CertReport:
    report = CertReport()
    anchor = "conics and line configurations over F_2"
    with stopwatch() as t:
        census = fano.census()
    report.add(
        "fano.conic_census",
        "63 conics split 28 smooth / 21 rational pairs / 7 conjugate pairs / 7 double lines",
        anchor,
        census == {"Smooth": 28, "RationalLinePair": 21, "ConjugateLinePair": 7, "DoubleLine": 7},
        {"census": census},
        t["ms"],
    )
    counts_ok = all(
        len(q.rational_points) == fano.EXPECTED_POINT_COUNT[q.conic_class] for q in fano.all_conics()
    )
    report.add("fano.conic_points", "smooth conics have 3 rational points (and the other classes 5, 1, 3)", anchor, counts_ok)
    triples = fano.covering_supports(3)
    report.add(
        "fano.three_line_covers",
        "the 3-line covers of all 7 points are exactly the 7 concurrent triples",
        anchor,
        len(triples) == 7 and all(fano.is_concurrent(s) for s in triples),
        {"covers": len(triples)},
    )
    orbit_stats = {}
    ok = True
    for size in (4, 5):
        supports = fano.covering_supports(size)
        orbits = fano.support_orbits(supports)
        orbit_stats[str(size)] = {"supports": len(supports), "orbits": len(orbits)}
        ok &= len(orbits) == 1
    report.add(
        "fano.covering_orbits",
        "4-line and 5-line covering supports each form one PGL_3(F_2) orbit",
        anchor,
        ok,
        orbit_stats,
    )
    report.add("fano.group_order", "|PGL_3(F_2)| = 168", anchor, len(fano.pgl3_f2()) == 168)
    return report


def certify_lemma3(
    modulus: int = 3,
    jobs: int = 1,
    branchwise: bool = False,
    witness_log: Optional[Path] = None,
) -> CertReport:
    report = CertReport()
    anchor = "no degree-8 Cartier divisor on the special fibre meets the gluing conditions"
    with stopwatch() as t:
        search = search_lemma3(modulus=modulus, branchwise=branchwise, jobs=jobs)
    if witness_log is not None:
        witness_log.write_text("".join(line + "\n" for line in search.witness_lines()))
    report.add(
        "lemma3.no_feasible_divisor",
        f"0 feasible (candidate, gluing) pairs at modulus {search.modulus}",
        anchor,
        search.certified,
        search.statistics(),
        t["ms"],
    )
    rows = case_breakdown(search)
    report.add(
        "lemma3.case_breakdown",
        "every admissible support bucket has 0 feasible pairs",
        anchor,
        all(r["feasible_pairs"] == 0 for r in rows),
        {"buckets": rows},
    )
    return report


def certify_all(
    plane_id: str = "mumford",
    precision: int = 64,
    modulus: int = 3,
    jobs: int = 1,
    branchwise: bool = False,
) -> CertReport:
    plane_data = plane(plane_id)
    report = CertReport()
    report.extend(certify_padic(precision))
    report.extend(certify_lattices(plane_id, precision))
    report.extend(certify_fano())
    report.extend(certify_lemma3(modulus, jobs, branchwise))
    report.extend(certify_cohomology(plane_data.two_torsion_rank))
    report.extend(certify_hochschild(plane_data.two_torsion_rank))
    return report

