"""Numerical invariants of a fake projective plane M.

Line bundles in the Picard subgroup P are written additively as
``G^d (x) T3^a (x) T2^b`` where G is a fixed cube root of the canonical bundle
(degree 1), T3 a 3-torsion bundle and T2 ranges over the 2-torsion.  So the
canonical bundle is (3, 0, 0) and a class is ample iff d > 0.  With h the
class of G, h^2 = 1 and c_1(M) = -3h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Tuple

from fppcert.report import CertReport, Status, stopwatch


class NonIntegerResult(ArithmeticError):
    pass


@dataclass(frozen=True)
class SurfaceConstants:
    c1_sq: int = 9
    c2: int = 3
    chi_O: int = 1
    canonical_degree: int = 3
    betti: Tuple[int, ...] = (1, 0, 1, 0, 1)
    # h^{p,q} indexed [p][q]
    hodge: Tuple[Tuple[int, ...], ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    p_g: int = 0
    q: int = 0

    def noether_holds(self) -> bool:
        return Fraction(self.c1_sq + self.c2, 12) == self.chi_O

    def euler_number(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))


FPP = SurfaceConstants()


@dataclass(frozen=True)
class LineBundleClass:
    degree: int
    three_torsion: int = 0
    two_torsion: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "three_torsion", self.three_torsion % 3)
        object.__setattr__(self, "two_torsion", tuple(b % 2 for b in self.two_torsion))

    @classmethod
    def trivial(cls, two_rank: int = 0) -> "LineBundleClass":
        return cls(0, 0, (0,) * two_rank)

    @classmethod
    def canonical(cls, two_rank: int = 0) -> "LineBundleClass":
        return cls(FPP.canonical_degree, 0, (0,) * two_rank)

    def __add__(self, other: "LineBundleClass") -> "LineBundleClass":
        """Tensor product."""
        if len(self.two_torsion) != len(other.two_torsion):
            raise ValueError("classes from different Picard groups")
        return LineBundleClass(
            self.degree + other.degree,
            self.three_torsion + other.three_torsion,
            tuple(a + b for a, b in zip(self.two_torsion, other.two_torsion)),
        )

    def __neg__(self) -> "LineBundleClass":
        return LineBundleClass(-self.degree, -self.three_torsion, self.two_torsion)

    def __sub__(self, other: "LineBundleClass") -> "LineBundleClass":
        return self + (-other)

    @property
    def torsion_is_zero(self) -> bool:
        return self.three_torsion == 0 and not any(self.two_torsion)

    @property
    def is_trivial(self) -> bool:
        return self.degree == 0 and self.torsion_is_zero

    @property
    def is_canonical(self) -> bool:
        return self.degree == FPP.canonical_degree and self.torsion_is_zero

    def serre_dual(self) -> "LineBundleClass":
        return LineBundleClass.canonical(len(self.two_torsion)) - self


def all_classes(degrees: range, two_rank: int = 2) -> Iterator[LineBundleClass]:
    for d in degrees:
        for a in range(3):
            for bits in range(2**two_rank):
                yield LineBundleClass(d, a, tuple((bits >> k) & 1 for k in range(two_rank)))


def chi(L: LineBundleClass) -> int:
    d = L.degree
    return (d - 1) * (d - 2) // 2


def cohomology(L: LineBundleClass) -> Tuple[int, int, int]:
    """(h^0, h^1, h^2) for every class in P."""
    d = L.degree
    if d >= 4:
        return (chi(L), 0, 0)
    if d == 3:
        return (0, 0, 1) if L.is_canonical else (1, 0, 0)
    if d in (1, 2):
        return (0, 0, 0)
    h0, h1, h2 = cohomology(L.serre_dual())
    return (h2, h1, h0)


def hrr_chi(rank: int, c1: int, c2: int, surface: SurfaceConstants = FPP) -> int:
    """Hirzebruch-Riemann-Roch on M for a bundle with c_1 = c1 * h.

    chi = r (c1(M)^2 + c2(M))/12 + c1.c1(M)/2 + (c1^2 - 2 c2)/2.
    """
    c1_X = -surface.canonical_degree
    value = (
        Fraction(rank * (surface.c1_sq + surface.c2), 12)
        + Fraction(c1 * c1_X, 2)
        + Fraction(c1 * c1 - 2 * c2, 2)
    )
    if value.denominator != 1:
        raise NonIntegerResult(f"HRR gives {value} for rank={rank}, c1={c1}, c2={c2}")
    return int(value)


TANGENT_BUNDLE = (2, -FPP.canonical_degree, FPP.c2)


@dataclass(frozen=True)
class GradedDims:
    """Dimensions by cohomological degree; trailing zeros are dropped."""

    dims: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        d = [int(x) for x in self.dims]
        if any(x < 0 for x in d):
            raise ValueError("dimensions must be non-negative")
        while d and d[-1] == 0:
            d.pop()
        object.__setattr__(self, "dims", tuple(d))

    def __getitem__(self, t: int) -> int:
        return self.dims[t] if 0 <= t < len(self.dims) else 0

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def total(self) -> int:
        return sum(self.dims)

    def euler(self) -> int:
        return sum((-1) ** t * x for t, x in enumerate(self.dims))

    def as_list(self) -> list:
        return list(self.dims)


def tangent_cohomology() -> Tuple[int, int, int]:
    # h^0 = 0 (general type) and h^1 = 0 (rigidity) are inputs; h^2 = chi(T).
    return (0, 0, hrr_chi(*TANGENT_BUNDLE))


def hh_ambient() -> GradedDims:
    """HH^t(D^b(M)) = sum_p H^(t-p)(M, wedge^p T_M)."""
    pieces = [
        cohomology(LineBundleClass.trivial()),
        tangent_cohomology(),
        cohomology(-LineBundleClass.canonical()),  # wedge^2 T = omega^-1
    ]
    out = [0] * 5
    for p, h in enumerate(pieces):
        for i, x in enumerate(h):
            out[p + i] += x
    return GradedDims(tuple(out))


def hh_homology_total(surface: SurfaceConstants = FPP) -> int:
    """Total dimension of HH_*(D^b(M)): the sum of all Hodge numbers."""
    return sum(sum(row) for row in surface.hodge)


class EtaleCover(NamedTuple):
    chi_omega: int
    q: int
    p_g: int
    forced_h0: Tuple[int, ...]  # h^0(omega (x) L0^i), i = 0..e-1


def etale_cover_check(e: int, surface: SurfaceConstants = FPP) -> EtaleCover:
    """Degree-e cyclic cover attached to a torsion bundle L0 of order e.

    The cover has chi(omega') = e chi(omega), q' = 0 and p_g' = e - 1; since
    the i = 0 summand is p_g(M) = 0 and each i >= 1 summand is at least
    chi = 1, the lower bounds already exhaust p_g', so every summand with
    i >= 1 equals 1.
    """
    if e < 1:
        raise ValueError("order must be positive")
    chi_omega = e * surface.chi_O
    q = 0
    p_g = chi_omega - 1 + q
    # for i >= 1, h^2(omega + L0^i) = h^0(L0^-i) = 0, so h^0 >= chi = 1
    degree3 = chi(LineBundleClass(surface.canonical_degree))
    lower = [surface.p_g] + [degree3] * (e - 1)
    if sum(lower) != p_g:
        raise ArithmeticError(f"lower bounds {lower} do not exhaust p_g' = {p_g}")
    return EtaleCover(chi_omega, q, p_g, tuple(lower))


def certify_cohomology(two_rank: int = 2, degrees: range = range(-6, 7)) -> CertReport:
    report = CertReport()
    anchor = "cohomology of L in P: h^0 = (d-1)(d-2)/2 for d > 3, h^i = 0 for d in {1,2}, h^1 = 0"
    table = {}
    with stopwatch() as t:
        chi_ok = serre_ok = h1_ok = True
        for L in all_classes(range(-10, 11), two_rank):
            h = cohomology(L)
            chi_ok &= h[0] - h[1] + h[2] == chi(L)
            serre_ok &= h[::-1] == cohomology(L.serre_dual())
            h1_ok &= h[1] == 0
        for d in degrees:
            table[str(d)] = {
                "trivial_torsion": list(cohomology(LineBundleClass(d, 0, (0,) * two_rank))),
                "nontrivial_torsion": list(cohomology(LineBundleClass(d, 1, (0,) * two_rank))),
            }
    report.add(
        "cohomology.chi_consistency",
        "h0 - h1 + h2 = (d-1)(d-2)/2 for every class with |d| <= 10",
        anchor,
        chi_ok,
        {"table": table},
        t["ms"],
    )
    report.add("cohomology.serre_duality", "h^i(L) = h^(2-i)(omega - L)", anchor, serre_ok)
    report.add("cohomology.h1_vanishes", "h^1(L) = 0 for every L in P", anchor, h1_ok)

    expected = {1: (0, 0, 0), 2: (0, 0, 0), 4: (3, 0, 0), 5: (6, 0, 0), 6: (10, 0, 0)}
    report.add(
        "cohomology.ample_table",
        "d = 1, 2 -> 0; d = 4, 5, 6 -> h^0 = 3, 6, 10",
        anchor,
        all(cohomology(LineBundleClass(d)) == h for d, h in expected.items()),
    )
    report.add(
        "cohomology.degree_3_split",
        "d = 3: (0,0,1) for omega, (1,0,0) otherwise",
        anchor,
        cohomology(LineBundleClass.canonical()) == (0, 0, 1)
        and cohomology(LineBundleClass(3, 1)) == (1, 0, 0),
    )
    report.add(
        "invariants.noether",
        "(c1^2 + c2)/12 = chi(O) for c1^2 = 9, c2 = 3",
        "c1(T_M)^2 = 9 and c2(T_M) = 3",
        FPP.noether_holds() and FPP.euler_number() == FPP.c2,
        {"betti": list(FPP.betti)},
    )
    report.add(
        "invariants.hrr_tangent",
        "chi(T_M) = 8 by HRR",
        "HRR for T_M",
        hrr_chi(*TANGENT_BUNDLE) == 8,
        {"chi_T": hrr_chi(*TANGENT_BUNDLE)},
    )
    report.add(
        "invariants.hrr_matches_chi",
        "HRR for rank-1 bundles agrees with (d-1)(d-2)/2 on d in [-6, 6]",
        "Riemann-Roch on M",
        all(hrr_chi(1, d, 0) == chi(LineBundleClass(d)) for d in range(-6, 7)),
    )
    covers = {e: etale_cover_check(e) for e in (1, 2, 3, 6)}
    report.add(
        "invariants.etale_covers",
        "p_g of the cyclic cover is e - 1, forcing h^0(omega + L0^i) = 1 for i >= 1",
        "cyclic cover attached to a torsion bundle",
        all(c.p_g == e - 1 and all(x == 1 for x in c.forced_h0[1:]) for e, c in covers.items()),
        {str(e): list(c) for e, c in covers.items()},
    )
    report.add(
        "invariants.nine_divides_c1_sq",
        "9 | c1(L)^2 over unramified extensions; omega has no cube root there",
        "line bundles over unramified extensions",
        Status.ASSERTED,
    )
    report.add(
        "invariants.betti_numbers",
        "Betti numbers are (1,0,1,0,1)",
        "Betti numbers of a fake projective plane",
        Status.VERIFIED if FPP.betti == (1, 0, 1, 0, 1) and FPP.euler_number() == 3 else Status.REFUTED,
        {"note": "b_1 = 0 is used; a reading with b_1 = 1 contradicts e(M) = c2 = 3"},
    )
    return report
