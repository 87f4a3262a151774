"""The projective plane over F_2: points, lines, conics and PGL_3(F_2).

Points and lines are both indexed 0..6 by the nonzero vectors of F_2^3 in
increasing binary order (x is the high bit).  A line is a dual vector and
contains a point iff their dot product vanishes.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

Vec = Tuple[int, int, int]
Matrix = Tuple[Vec, Vec, Vec]

VECTORS: Tuple[Vec, ...] = tuple(((v >> 2) & 1, (v >> 1) & 1, v & 1) for v in range(1, 8))
POINTS = VECTORS
LINES = VECTORS
_INDEX = {v: i for i, v in enumerate(VECTORS)}


def dot(u: Vec, w: Vec) -> int:
    return (u[0] * w[0] + u[1] * w[1] + u[2] * w[2]) % 2


def incident(point: int, line: int) -> bool:
    return dot(POINTS[point], LINES[line]) == 0


LINE_POINTS: Tuple[FrozenSet[int], ...] = tuple(
    frozenset(p for p in range(7) if incident(p, l)) for l in range(7)
)
POINT_LINES: Tuple[FrozenSet[int], ...] = tuple(
    frozenset(l for l in range(7) if incident(p, l)) for p in range(7)
)


def incidence_matrix() -> List[List[int]]:
    return [[int(incident(p, l)) for l in range(7)] for p in range(7)]


# -- conics ----------------------------------------------------------------

# coefficient order: x^2, y^2, z^2, xy, xz, yz
MONOMIALS = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


class ConicClass(str, Enum):
    SMOOTH = "Smooth"
    RATIONAL_LINE_PAIR = "RationalLinePair"
    CONJUGATE_LINE_PAIR = "ConjugateLinePair"
    DOUBLE_LINE = "DoubleLine"


# F_4 = {0, 1, w, w^2} encoded as 0, 1, 2, 3 (bit vectors over the basis 1, w)
def _f4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    log = {1: 0, 2: 1, 3: 2}
    return (1, 2, 3)[(log[a] + log[b]) % 3]


def _f4_frob(a: int) -> int:
    return _f4_mul(a, a)


def linear_product(l1: Sequence[int], l2: Sequence[int], mul=_f4_mul) -> Tuple[int, ...]:
    """Coefficients of the quadratic form l1 * l2 (char 2; addition is xor)."""
    out = []
    for i, j in MONOMIALS:
        if i == j:
            out.append(mul(l1[i], l2[i]))
        else:
            out.append(mul(l1[i], l2[j]) ^ mul(l1[j], l2[i]))
    return tuple(out)


@lru_cache(maxsize=None)
def _factor_tables() -> Dict[Tuple[int, ...], Tuple[ConicClass, Tuple[int, ...]]]:
    table: Dict[Tuple[int, ...], Tuple[ConicClass, Tuple[int, ...]]] = {}
    for i in range(7):
        table[linear_product(LINES[i], LINES[i])] = (ConicClass.DOUBLE_LINE, (i,))
    for i, j in itertools.combinations(range(7), 2):
        table[linear_product(LINES[i], LINES[j])] = (ConicClass.RATIONAL_LINE_PAIR, (i, j))
    # F_4-lines not defined over F_2, normalised so the first nonzero entry is 1
    for v in itertools.product(range(4), repeat=3):
        if not any(v):
            continue
        first = next(x for x in v if x)
        if first != 1 or all(x in (0, 1) for x in v):
            continue
        q = linear_product(v, tuple(_f4_frob(x) for x in v))
        assert all(c in (0, 1) for c in q)
        # the pair meets in the unique rational point of the form
        node = next(p for p in range(7) if _vanishes_f4(v, POINTS[p]))
        table.setdefault(q, (ConicClass.CONJUGATE_LINE_PAIR, (node,)))
    return table


def _vanishes_f4(l: Sequence[int], p: Vec) -> bool:
    acc = 0
    for a, x in zip(l, p):
        acc ^= _f4_mul(a, x)
    return acc == 0


@dataclass(frozen=True)
class Conic:
    coeffs: Tuple[int, int, int, int, int, int]

    def __post_init__(self) -> None:
        c = tuple(int(x) % 2 for x in self.coeffs)
        if len(c) != 6 or not any(c):
            raise ValueError("a conic needs 6 coefficients, not all zero")
        object.__setattr__(self, "coeffs", c)

    def __call__(self, p: Vec) -> int:
        return sum(c * p[i] * p[j] for c, (i, j) in zip(self.coeffs, MONOMIALS)) % 2

    def polar(self, p: Vec, w: Vec) -> int:
        """The bilinear form q(p+w) - q(p) - q(w)."""
        s = tuple((a + b) % 2 for a, b in zip(p, w))
        return (self(s) + self(p) + self(w)) % 2

    @property
    def rational_points(self) -> FrozenSet[int]:
        return frozenset(i for i, p in enumerate(POINTS) if self(p) == 0)

    def local_multiplicity(self, point: int) -> int:
        """Order of vanishing at a rational point (0, 1 or 2)."""
        return _local_multiplicities(self)[point]

    @property
    def conic_class(self) -> ConicClass:
        return classify_conic(self)

    def transform(self, g: Matrix) -> "Conic":
        """The form q o g^-1, whose zero set is g applied to ours."""
        h = mat_inv(g)
        out = [0] * 6
        for c, (i, j) in zip(self.coeffs, MONOMIALS):
            if c:
                prod = linear_product(h[i], h[j], mul=lambda a, b: a * b % 2)
                out = [x ^ y for x, y in zip(out, prod)]
        return Conic(tuple(out))

    def __str__(self) -> str:
        names = ("x^2", "y^2", "z^2", "xy", "xz", "yz")
        return " + ".join(n for n, c in zip(names, self.coeffs) if c)


@lru_cache(maxsize=None)
def _local_multiplicities(q: Conic) -> Tuple[int, ...]:
    out = []
    for p in POINTS:
        if q(p):
            out.append(0)
        elif any(q.polar(p, w) for w in VECTORS):
            out.append(1)
        else:
            out.append(2)
    return tuple(out)


def all_conics() -> List[Conic]:
    return [Conic(tuple((v >> (5 - k)) & 1 for k in range(6))) for v in range(1, 64)]


def classify_conic(q: Conic) -> ConicClass:
    """Factorisation class over F_2 and F_4."""
    hit = _factor_tables().get(q.coeffs)
    return hit[0] if hit else ConicClass.SMOOTH


def conic_factors(q: Conic) -> Tuple[int, ...]:
    """Rational lines of a reducible-over-F_2 conic, or the node of a conjugate pair."""
    hit = _factor_tables().get(q.coeffs)
    return hit[1] if hit else ()


EXPECTED_POINT_COUNT = {
    ConicClass.SMOOTH: 3,
    ConicClass.RATIONAL_LINE_PAIR: 5,
    ConicClass.CONJUGATE_LINE_PAIR: 1,
    ConicClass.DOUBLE_LINE: 3,
}


def census() -> Dict[str, int]:
    counts = Counter(classify_conic(q).value for q in all_conics())
    return {c.value: counts.get(c.value, 0) for c in ConicClass}


# -- PGL_3(F_2) ------------------------------------------------------------


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) % 2 for j in range(3)) for i in range(3)
    )


def mat_vec(a: Matrix, v: Vec) -> Vec:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) % 2 for i in range(3))


def vec_mat(v: Vec, a: Matrix) -> Vec:
    return tuple(sum(v[k] * a[k][j] for k in range(3)) % 2 for j in range(3))


IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@lru_cache(maxsize=None)
def pgl3_f2() -> Tuple[Matrix, ...]:
    """All of PGL_3(F_2) = GL_3(F_2), by closure from elementary transvections."""
    gens = []
    for i, j in itertools.permutations(range(3), 2):
        m = [list(r) for r in IDENTITY]
        m[i][j] = 1
        gens.append(tuple(tuple(r) for r in m))
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mat_mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def _inverses() -> Dict[Matrix, Matrix]:
    group = pgl3_f2()
    return {a: next(b for b in group if mat_mul(a, b) == IDENTITY) for a in group}


def mat_inv(a: Matrix) -> Matrix:
    return _inverses()[a]


@lru_cache(maxsize=None)
def point_perm(g: Matrix) -> Tuple[int, ...]:
    return tuple(_INDEX[mat_vec(g, p)] for p in POINTS)


@lru_cache(maxsize=None)
def line_perm(g: Matrix) -> Tuple[int, ...]:
    h = mat_inv(g)
    return tuple(_INDEX[vec_mat(l, h)] for l in LINES)


# -- line configurations ---------------------------------------------------


def as_multiplicities(lines: Iterable[int]) -> Tuple[int, ...]:
    counts = Counter(lines)
    return tuple(counts.get(j, 0) for j in range(7))


def point_multiplicities(line_mults: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(line_mults[l] for l in POINT_LINES[p]) for p in range(7))


def permute_lines(line_mults: Sequence[int], g: Matrix) -> Tuple[int, ...]:
    perm = line_perm(g)
    out = [0] * 7
    for j, m in enumerate(line_mults):
        out[perm[j]] = m
    return tuple(out)


def canonical_form(line_mults: Sequence[int]) -> Tuple[int, ...]:
    return min(permute_lines(line_mults, g) for g in pgl3_f2())


@dataclass(frozen=True)
class LineConfig:
    line_multiplicities: Tuple[int, ...]
    point_multiplicities: Tuple[int, ...]
    orbit_label: str

    @property
    def covers_all_points(self) -> bool:
        return all(self.point_multiplicities)


def line_config_stats(lines: Iterable[int]) -> LineConfig:
    """Per-point coverage of a multiset of line indices and its orbit label."""
    mults = as_multiplicities(lines)
    label = "".join(str(m) for m in canonical_form(mults))
    return LineConfig(mults, point_multiplicities(mults), label)


def covering_supports(size: int) -> List[FrozenSet[int]]:
    return [
        frozenset(s)
        for s in itertools.combinations(range(7), size)
        if all(any(p in LINE_POINTS[l] for l in s) for p in range(7))
    ]


def is_concurrent(lines: Iterable[int]) -> bool:
    lines = list(lines)
    return any(all(p in LINE_POINTS[l] for l in lines) for p in range(7))


def support_orbits(supports: Iterable[FrozenSet[int]]) -> Dict[str, int]:
    labels = Counter(line_config_stats(s).orbit_label for s in supports)
    return dict(sorted(labels.items()))
