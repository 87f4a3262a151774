from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fppcert.extfield import LambdaElem, QuadElem
from fppcert.lattice import (
    PLANE_IDS,
    Mat3,
    NotLiftable,
    build_and_verify_lift,
    certify_cmsz,
    certify_lattices,
    certify_mumford,
    cmsz_generators,
    det,
    export_generators,
    mumford_generators,
    plane,
)
from fppcert.report import Status

MANY = settings(max_examples=500, deadline=None)
fracs = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))


def leibniz_det(m: Mat3):
    """Permutation-sum determinant, independent of the cofactor code."""
    total = 0
    for perm in itertools.permutations(range(3)):
        inversions = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
        term = (-1) ** inversions
        for i in range(3):
            term = term * m[i, perm[i]]
        total = term + total
    return total


def mats(entries):
    return st.lists(entries, min_size=9, max_size=9).map(
        lambda xs: Mat3((tuple(xs[0:3]), tuple(xs[3:6]), tuple(xs[6:9])))
    )


@MANY
@given(a=mats(fracs), b=mats(fracs))
def test_det_multiplicative_rational(a, b):
    assert det(a @ b) == det(a) * det(b)
    assert det(a) == leibniz_det(a)


quads = st.builds(QuadElem, st.integers(-5, 5), st.integers(-5, 5))


@MANY
@given(a=mats(quads), b=mats(quads))
def test_det_multiplicative_quadratic(a, b):
    assert det(a @ b) == det(a) * det(b)


def test_mumford_determinants():
    g = mumford_generators()
    lam = LambdaElem.lam()
    assert det(g["sigma"]) == 1
    assert det(g["tau"]) == 1
    assert det(g["rho"]) == lam**2 / 2
    assert det(g["rho"]) == leibniz_det(g["rho"])
    assert det(g["rho"]).valuation() == 1


def test_cmsz_determinants():
    g = cmsz_generators()
    S = QuadElem.S()
    assert det(g["s"]) == 1
    # cofactor expansion gives the negative of the literature value
    assert det(g["a3"]) == -(S - 1) / 4
    assert det(g["a3"]).valuation() == 1


@pytest.mark.parametrize("plane_id", PLANE_IDS)
def test_plane_reports_have_no_refutations(plane_id):
    report = certify_lattices(plane_id)
    assert report.ok
    assert report.status(f"{plane_id}.hom_gamma_mu3") is Status.ASSERTED


def test_mumford_lift_has_det_one():
    report = build_and_verify_lift(plane("mumford"))
    assert report["mumford.lift_det"].statistics["sign"] == 1


def test_cmsz_lift_sign_is_reported():
    report = build_and_verify_lift(plane("cmsz-a"))
    assert report["cmsz-a.lift_det"].statistics["sign"] == -1
    custom = build_and_verify_lift(plane("cmsz-a"), cmsz_generators()["a3"])
    assert custom["cmsz-a.lift_det"].statistics["sign"] == 1


def test_negative_controls():
    scaled = certify_mumford(rho_scale=2)
    assert scaled.status("mumford.det_rho") is Status.REFUTED
    assert scaled.status("mumford.v_det_rho") is Status.REFUTED
    doubled = certify_mumford(lam=LambdaElem.lam() * 2)
    assert doubled.status("mumford.v_det_rho") is Status.REFUTED
    assert doubled.status("mumford.det_rho_not_cube") is Status.REFUTED


def test_identity_not_liftable():
    with pytest.raises(NotLiftable):
        build_and_verify_lift(plane("mumford"), Mat3.identity())


def test_cmsz_report():
    report = certify_cmsz()
    assert report.ok
    assert report["cmsz.det_a3"].statistics["sign"] == -1


def test_export_is_json_and_complete():
    data = json.loads(json.dumps(export_generators()))
    assert data["schema_version"] == 1
    assert set(data["planes"]) == set(PLANE_IDS)
    rho = data["planes"]["mumford"]["generators"]["rho"]
    assert rho[2][2] == {"lambda": {"2": "1/2"}}
    a3 = data["planes"]["cmsz-a"]["generators"]["a3"]
    assert a3[2][2] == {"quadratic": {"a": "-1/4", "b": "1/4"}}
