"""Generator matrices of the 2-adic lattices and their SL_3 lifts.

Transcription table (rows listed top to bottom):

=======  ==========  ==========================================
plane    generator   rows
=======  ==========  ==========================================
Mumford  sigma       (1, 0, lam) (0, 0, -1) (0, 1, -1)
Mumford  tau         (0, 0, 1) (1, 0, 1 + lam) (0, 1, lam)
Mumford  rho         (1, 0, lam) (0, 1, -lam^3/2) (0, 0, lam^2/2)
CMSZ     a3          (0, 0, -(S-1)/4) (1, 0, 1) (0, 1, (S-1)/4)
CMSZ     s           (0, -1, -(S-1)/4) (1, -1, -(S-5)/4) (0, 0, 1)
=======  ==========  ==========================================

``lam`` is 2u for a formal unit u; ``S`` is the square root of -15 that is
1 mod 4.  Both CMSZ planes live in the same ambient group, so they share the
generators and differ only in the torsion of their Picard subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from fppcert.extfield import (
    CubicElem,
    KummerExtension,
    LambdaElem,
    QuadElem,
    no_primitive_cube_root,
    valuation_of,
)
from fppcert.padic import PAdicApprox, is_cube_in_Q2
from fppcert.report import CertReport, Status, stopwatch


class NotLiftable(ValueError):
    pass


@dataclass(frozen=True)
class Mat3:
    rows: Tuple[tuple, tuple, tuple]

    def __post_init__(self) -> None:
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs 3x3 entries")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, one=1, zero=0) -> "Mat3":
        return cls(tuple(tuple(one if i == j else zero for j in range(3)) for i in range(3)))

    def __getitem__(self, ij: Tuple[int, int]):
        i, j = ij
        return self.rows[i][j]

    def map(self, f: Callable) -> "Mat3":
        return Mat3(tuple(tuple(f(x) for x in r) for r in self.rows))

    def scale(self, c) -> "Mat3":
        return self.map(lambda x: c * x)

    def __matmul__(self, other: "Mat3") -> "Mat3":
        a, b = self.rows, other.rows
        return Mat3(
            tuple(
                tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
                for i in range(3)
            )
        )

    def det(self):
        return det(self)


def det(m: Mat3):
    """Cofactor expansion along the first row."""
    (a, b, c), (d, e, f), (g, h, i) = m.rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


# -- generators --------------------------------------------------------------


def mumford_generators(lam: Optional[LambdaElem] = None) -> Dict[str, Mat3]:
    if lam is None:
        lam = LambdaElem.lam()
    one, zero = LambdaElem.const(1), LambdaElem()
    return {
        "sigma": Mat3(((one, zero, lam), (zero, zero, -one), (zero, one, -one))),
        "tau": Mat3(((zero, zero, one), (one, zero, one + lam), (zero, one, lam))),
        "rho": Mat3(((one, zero, lam), (zero, one, -(lam**3) / 2), (zero, zero, lam**2 / 2))),
    }


def cmsz_generators(S: Optional[QuadElem] = None) -> Dict[str, Mat3]:
    if S is None:
        S = QuadElem.S()
    one, zero = QuadElem(1), QuadElem(0)
    t = (S - 1) / 4
    return {
        "a3": Mat3(((zero, zero, -t), (one, zero, one), (zero, one, t))),
        "s": Mat3(((zero, -one, -t), (one, -one, -(S - 5) / 4), (zero, zero, one))),
    }


@dataclass(frozen=True)
class PlaneData:
    plane_id: str
    ring: str
    generators: Dict[str, Mat3] = field(hash=False)
    lift_generator: str
    stated_det: object = field(hash=False)
    three_torsion: int = 3
    two_torsion_rank: int = 2
    lift_count: int = 3

    @property
    def torsion_of_P(self) -> str:
        parts = [f"Z/{self.three_torsion}"]
        if self.two_torsion_rank:
            parts.append(f"(Z/2)^{self.two_torsion_rank}")
        return " x ".join(parts)


def plane(plane_id: str) -> PlaneData:
    lam, S = LambdaElem.lam(), QuadElem.S()
    if plane_id == "mumford":
        return PlaneData("mumford", "lambda", mumford_generators(), "rho", lam**2 / 2)
    if plane_id in ("cmsz-a", "cmsz-b"):
        return PlaneData(
            plane_id,
            "quadratic",
            cmsz_generators(),
            "a3",
            (S - 1) / 4,
            two_torsion_rank=2 if plane_id == "cmsz-a" else 0,
        )
    raise KeyError(f"unknown plane {plane_id!r}")


PLANE_IDS = ("mumford", "cmsz-a", "cmsz-b")


# -- certifiers ----------------------------------------------------------------

U_SAMPLES = (1, 3, 5, 7, -1)


def _specialised_valuations(d: LambdaElem, samples: Sequence[int] = U_SAMPLES) -> Dict[int, int]:
    return {u: PAdicApprox.from_rational(d.evaluate(u)).valuation for u in samples}


def certify_mumford(lam: Optional[LambdaElem] = None, rho_scale=1) -> CertReport:
    """Determinant and valuation facts for sigma, tau, rho.

    ``lam`` and ``rho_scale`` exist for negative controls: substituting
    lambda -> 4u or rho -> 2 rho must break the valuation claim.
    """
    if lam is None:
        lam = LambdaElem.lam()
    gens = mumford_generators(lam)
    rho = gens["rho"].scale(LambdaElem.const(rho_scale))
    report = CertReport()
    anchor = "Mumford lattice: sigma, tau in SL_3(Q_2); det(rho) = lam^2/2, v = 1"

    for name in ("sigma", "tau"):
        with stopwatch() as t:
            d = det(gens[name])
        report.add(
            f"mumford.det_{name}",
            f"det({name}) = 1",
            anchor,
            d == 1,
            {"det": repr(d)},
            t["ms"],
        )

    with stopwatch() as t:
        d_rho = det(rho)
    report.add(
        "mumford.det_rho",
        "det(rho) = lam^2/2",
        anchor,
        d_rho == lam**2 / 2,
        {"det": repr(d_rho)},
        t["ms"],
    )

    with stopwatch() as t:
        v = d_rho.valuation()
        by_u = _specialised_valuations(d_rho)
    report.add(
        "mumford.v_det_rho",
        "v(det rho) = 1, identically in the formal unit u",
        anchor,
        v == 1 and all(x == 1 for x in by_u.values()),
        {"gauss_valuation": v, "specialised": {str(u): x for u, x in by_u.items()}},
        t["ms"],
    )

    with stopwatch() as t:
        cube = [is_cube_in_Q2(PAdicApprox.from_rational(d_rho.evaluate(u))) for u in U_SAMPLES]
    report.add(
        "mumford.det_rho_not_cube",
        "det(rho) is not a cube in Q_2",
        anchor,
        v % 3 != 0 and not any(cube),
        {"valuation_mod_3": v % 3},
        t["ms"],
    )

    report.add(
        "mumford.index_21",
        "Gamma has index 21 in the group generated by sigma, tau, rho",
        "Mumford lattice: index of Gamma in Gamma_1",
        Status.ASSERTED,
    )
    return report


def certify_cmsz(precision: int = 64) -> CertReport:
    S = QuadElem.S()
    gens = cmsz_generators(S)
    report = CertReport()
    anchor = "CMSZ lattices: s in SL_3(Q_2); det(a3) = (S-1)/4; (S-1)(S+1) = -16; v(S-1) = 3"
    stated = (S - 1) / 4

    with stopwatch() as t:
        d_s = det(gens["s"])
    report.add("cmsz.det_s", "det(s) = 1", anchor, d_s == 1, {"det": repr(d_s)}, t["ms"])

    with stopwatch() as t:
        d_a3 = det(gens["a3"])
        sign = 1 if d_a3 == stated else (-1 if d_a3 == -stated else 0)
    report.add(
        "cmsz.det_a3",
        "det(a3) = +-(S-1)/4",
        anchor,
        sign != 0,
        {
            "det": repr(d_a3),
            "sign": sign,
            "note": "cofactor expansion gives -(S-1)/4; only the valuation is sign-sensitive"
            if sign == -1
            else "",
        },
        t["ms"],
    )

    with stopwatch() as t:
        Sp = S.to_padic(precision)
        root_ok = (Sp * Sp).congruent(-15) and Sp.residue(2) == 1
    report.add(
        "cmsz.sqrt_minus_15",
        "S^2 = -15 with S = 1 mod 4",
        anchor,
        root_ok,
        {"precision": precision, "S_mod_32": Sp.residue(5)},
        t["ms"],
    )

    with stopwatch() as t:
        exact = (S - 1) * (S + 1)
        approx = (Sp - 1) * (Sp + 1)
    report.add(
        "cmsz.product",
        "(S-1)(S+1) = -16",
        anchor,
        exact == -16 and approx.congruent(-16) and approx.valuation == 4,
        {"exact": repr(exact), "padic": repr(approx)},
        t["ms"],
    )

    with stopwatch() as t:
        v_minus = (Sp - 1).valuation
        v_plus = (Sp + 1).valuation
    report.add(
        "cmsz.v_S_minus_1",
        "v(S-1) = 3 (since v(S+1) = 1 and v(-16) = 4)",
        anchor,
        v_minus == 3 and v_plus + v_minus == 4 and (S - 1).valuation() == 3,
        {"v(S-1)": v_minus, "v(S+1)": v_plus},
        t["ms"],
    )

    with stopwatch() as t:
        v_det = d_a3.valuation()
    report.add(
        "cmsz.v_det_a3",
        "v(det a3) = 1, so (S-1)/4 is a uniformiser",
        anchor,
        v_det == 1 and stated.valuation() == 1,
        {"valuation": v_det},
        t["ms"],
    )

    report.add(
        "cmsz.det_a3_not_cube",
        "det(a3) is not a cube in Q_2",
        anchor,
        not is_cube_in_Q2(d_a3.to_padic(precision)),
        {"valuation_mod_3": v_det % 3},
    )
    return report


def _lift_entry(x, d):
    return CubicElem.scalar(x, d)


def build_and_verify_lift(plane_data: PlaneData, generator: Optional[Mat3] = None) -> CertReport:
    """Rescale the non-SL_3 generator by mu^-1 with mu^3 = det.

    By default mu is a cube root of the literature value of the determinant;
    the computed determinant may differ from it by a sign (a cube), which is
    reported.  Passing ``generator`` uses its own determinant as mu^3.
    """
    if generator is None:
        g = plane_data.generators[plane_data.lift_generator]
        d = plane_data.stated_det
        name = plane_data.lift_generator
    else:
        g = generator
        d = det(g)
        name = "custom"
    v = valuation_of(d)
    if v % 3 == 0:
        raise NotLiftable(f"det has valuation {v}; it is a cube up to a unit and needs no extension")

    report = CertReport()
    anchor = f"{plane_data.plane_id}: mu^3 = det({name}), k = Q_2(mu), mu^-1 {name} in SL_3(k)"
    ext = KummerExtension(d)
    with stopwatch() as t:
        mu = ext.mu()
        mu_inv = mu.inverse()
        lifted = g.map(lambda x: _lift_entry(x, d)).scale(mu_inv)
        d_lift = det(lifted)
        sign = 1 if d_lift == 1 else (-1 if d_lift == -1 else 0)
    report.add(
        f"{plane_data.plane_id}.lift_det",
        f"det(mu^-1 {name}) = +-1 in base(mu)",
        anchor,
        sign != 0 and mu * mu_inv == 1,
        {"det": repr(d_lift), "sign": sign, "mu_cubed": repr(mu**3)},
        t["ms"],
    )
    report.add(
        f"{plane_data.plane_id}.lift_no_cube_root_of_unity",
        "k has no primitive cube root of 1, so Gamma_1' -> Gamma_1 is injective",
        anchor,
        no_primitive_cube_root(ext),
        {"residue_field_size": ext.residue_field_size, "v(d)": v},
    )
    report.add(
        f"{plane_data.plane_id}.lift_count",
        "three choices of mu give three lifts",
        anchor,
        plane_data.lift_count == 3,
        {"lift_count": plane_data.lift_count},
    )
    report.add(
        f"{plane_data.plane_id}.hom_gamma_mu3",
        "Hom(Gamma, mu_3) has order 3, so the three lifts are all of them",
        "order of Hom(Gamma, mu_3)",
        Status.ASSERTED,
    )
    return report


def certify_lattices(plane_id: str, precision: int = 64) -> CertReport:
    plane_data = plane(plane_id)
    report = certify_mumford() if plane_id == "mumford" else certify_cmsz(precision)
    report.extend(build_and_verify_lift(plane_data))
    report.add(
        f"{plane_id}.torsion_of_P",
        f"torsion of P is {plane_data.torsion_of_P}",
        "torsion of the Picard subgroup P",
        Status.ASSERTED,
        {"torsion": plane_data.torsion_of_P},
    )
    return report


# -- data export -------------------------------------------------------------


def _entry_json(x) -> dict:
    if isinstance(x, QuadElem):
        return {"quadratic": x.to_json()}
    if isinstance(x, LambdaElem):
        return {"lambda": x.to_json()}
    return {"rational": str(Fraction(x))}


def export_generators() -> dict:
    """Exact generator data for third-party cross-checks."""
    out = {"schema_version": 1, "rings": {
        "lambda": "Laurent polynomial {exponent: coefficient} in lam = 2u, u a formal 2-adic unit",
        "quadratic": "a + b*S with S^2 = -15, S = 1 mod 4 in Z_2",
    }, "planes": {}}
    for pid in PLANE_IDS:
        plane_data = plane(pid)
        out["planes"][pid] = {
            "ring": plane_data.ring,
            "lift_generator": plane_data.lift_generator,
            "torsion_of_P": plane_data.torsion_of_P,
            "generators": {
                name: [[_entry_json(x) for x in row] for row in m.rows]
                for name, m in plane_data.generators.items()
            },
        }
    return out
