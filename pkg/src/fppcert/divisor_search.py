"""Exhaustive search for degree-8 plane curves compatible with a gluing.

A candidate is a curve C1 of degree 8 in P^2(F_2) built from the seven
rational lines (multiplicities f_j) and at most one conic component of
multiplicity m_c.  With m_i the multiplicity of C1 at the i-th rational point
and e_i = m_i - 2, a gluing sigma (point i -> line sigma(i)) is feasible when,
for every i,

    e_i > 0  <=>  f_sigma(i) > 0      and      e_i + f_sigma(i) = 0 mod 3.

Other components must carry multiplicity divisible by 3, so anything of degree
>= 3 would cost >= 9 > 8; irreducible-over-F_2 components of degree <= 2 are
lines and conics, which makes the enumeration below complete.  All 7!
gluings are tried for every candidate.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from fppcert import fano
from fppcert.fano import Conic, ConicClass

DEGREE = 8
MIN_POINT_MULT = 2

PERMUTATIONS = np.array(list(itertools.permutations(range(7))), dtype=np.intp)
_ROWS = np.arange(7)


class InvalidCandidate(ValueError):
    pass


@dataclass(frozen=True)
class CandidateDivisor:
    line_mults: Tuple[int, ...]
    conic: Optional[Conic] = None
    conic_mult: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "line_mults", tuple(int(x) for x in self.line_mults))
        if len(self.line_mults) != 7 or min(self.line_mults) < 0:
            raise ValueError("line_mults must be 7 non-negative integers")
        if (self.conic is None) != (self.conic_mult == 0):
            raise ValueError("conic and conic_mult must be given together")

    @property
    def degree(self) -> int:
        return sum(self.line_mults) + 2 * self.conic_mult

    @property
    def conic_label(self) -> str:
        return "none" if self.conic is None else self.conic.conic_class.value

    def normalized(self) -> "CandidateDivisor":
        """Fold conics that split into rational lines back into the line part."""
        if self.conic is None:
            return self
        cls = self.conic.conic_class
        if cls in (ConicClass.SMOOTH, ConicClass.CONJUGATE_LINE_PAIR):
            return self
        f = list(self.line_mults)
        for j in fano.conic_factors(self.conic):
            f[j] += self.conic_mult if cls is ConicClass.RATIONAL_LINE_PAIR else 2 * self.conic_mult
        return CandidateDivisor(tuple(f))

    @property
    def point_mults(self) -> Tuple[int, ...]:
        m = fano.point_multiplicities(self.line_mults)
        if self.conic is None:
            return m
        return tuple(
            mi + self.conic_mult * self.conic.local_multiplicity(i) for i, mi in enumerate(m)
        )

    @property
    def e_vector(self) -> Tuple[int, ...]:
        return tuple(m - MIN_POINT_MULT for m in self.point_mults)

    @property
    def support_lines(self) -> Tuple[int, ...]:
        return tuple(j for j, f in enumerate(self.line_mults) if f)

    def transform(self, g: fano.Matrix) -> "CandidateDivisor":
        conic = None if self.conic is None else self.conic.transform(g)
        return CandidateDivisor(fano.permute_lines(self.line_mults, g), conic, self.conic_mult)

    def describe(self) -> str:
        s = "f=" + "".join(map(str, self.line_mults))
        if self.conic is not None:
            s += f" conic=[{self.conic}]x{self.conic_mult}"
        return s


def invariant_violation(
    c: CandidateDivisor, modulus: int = 3, require_min_mult: bool = True
) -> Optional[str]:
    """Reason the candidate is not admissible, or None."""
    if c.degree != DEGREE:
        return f"degree {c.degree} != {DEGREE}"
    if c.conic is not None and c.conic_mult % modulus:
        return f"conic multiplicity {c.conic_mult} not divisible by {modulus}"
    if require_min_mult:
        m = c.point_mults
        low = [i for i in range(7) if m[i] < MIN_POINT_MULT]
        if low:
            i = low[0]
            return f"point {i} has multiplicity {m[i]} < {MIN_POINT_MULT}"
    return None


def compatible(e: int, f: int, modulus: int = 3, branchwise: bool = False) -> bool:
    if (e > 0) != (f > 0):
        return False
    if branchwise:
        return e % modulus == 0 and f % modulus == 0
    return (e + f) % modulus == 0


def compat_matrix(
    c: CandidateDivisor, modulus: int = 3, branchwise: bool = False
) -> np.ndarray:
    """[i, j] is True when point i may be glued to line j."""
    n = c.normalized()
    e, f = n.e_vector, n.line_mults
    return np.array(
        [[compatible(e[i], f[j], modulus, branchwise) for j in range(7)] for i in range(7)],
        dtype=bool,
    )


def feasible(
    c: CandidateDivisor,
    sigma: Sequence[int],
    modulus: int = 3,
    branchwise: bool = False,
) -> bool:
    reason = invariant_violation(c, modulus)
    if reason:
        raise InvalidCandidate(reason)
    if sorted(sigma) != list(range(7)):
        raise ValueError("sigma must be a bijection of 0..6")
    n = c.normalized()
    e, f = n.e_vector, n.line_mults
    return all(compatible(e[i], f[sigma[i]], modulus, branchwise) for i in range(7))


def count_feasible(c: CandidateDivisor, modulus: int = 3, branchwise: bool = False) -> int:
    """Number of the 5040 gluings that are feasible for an admissible candidate."""
    ok = compat_matrix(c, modulus, branchwise)[_ROWS, PERMUTATIONS]
    return int(ok.all(axis=1).sum())


def matching_obstruction(c: CandidateDivisor, modulus: int = 3, branchwise: bool = False) -> str:
    """A Hall-type witness: a group of points with too few compatible lines."""
    n = c.normalized()
    e, f = n.e_vector, n.line_mults
    C = compat_matrix(c, modulus, branchwise)
    groups: Dict[Tuple[bool, ...], List[int]] = {}
    for i in range(7):
        groups.setdefault(tuple(C[i]), []).append(i)
    for row, points in groups.items():
        lines = [j for j in range(7) if row[j]]
        if len(points) > len(lines):
            needed = sorted({e[i] for i in points})
            return (
                f"{len(points)} point(s) with e in {needed} need distinct compatible lines; "
                f"only {len(lines)} available (f={[f[j] for j in lines]})"
            )
    return "no perfect matching"


# -- enumeration ----------------------------------------------------------


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions in lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def conic_multiplicities(modulus: int) -> List[int]:
    return [m for m in range(modulus, DEGREE // 2 + 1, modulus)]


def enumerate_candidates(modulus: int = 3) -> Iterator[CandidateDivisor]:
    for f in compositions(DEGREE, 7):
        yield CandidateDivisor(f)
    for q in fano.all_conics():
        for mc in conic_multiplicities(modulus):
            for f in compositions(DEGREE - 2 * mc, 7):
                yield CandidateDivisor(f, q, mc)


@dataclass
class CandidateResult:
    candidate: CandidateDivisor
    admissible: bool
    feasible_pairs: int
    reason: str

    def log_line(self) -> str:
        status = "feasible" if self.feasible_pairs else ("infeasible" if self.admissible else "invalid")
        return json.dumps(
            {
                "candidate": self.candidate.describe(),
                "conic_class": self.candidate.conic_label,
                "status": status,
                "feasible_pairs": self.feasible_pairs,
                "reason": self.reason,
            },
            sort_keys=True,
        )


def evaluate(
    c: CandidateDivisor,
    modulus: int = 3,
    branchwise: bool = False,
    require_min_mult: bool = True,
) -> CandidateResult:
    reason = invariant_violation(c, modulus, require_min_mult)
    if reason:
        return CandidateResult(c, False, 0, reason)
    n = count_feasible(c, modulus, branchwise)
    if n:
        return CandidateResult(c, True, n, f"{n} feasible gluing(s)")
    return CandidateResult(c, True, 0, matching_obstruction(c, modulus, branchwise))


def _evaluate_chunk(args) -> List[Tuple[int, bool, int, str]]:
    chunk, modulus, branchwise, require_min_mult = args
    out = []
    for idx, c in chunk:
        r = evaluate(c, modulus, branchwise, require_min_mult)
        out.append((idx, r.admissible, r.feasible_pairs, r.reason))
    return out


@dataclass
class Bucket:
    support_size: int
    conic_class: str
    candidates: int = 0
    feasible_pairs: int = 0
    supports: set = field(default_factory=set)

    @property
    def key(self) -> str:
        return f"{self.support_size} lines, {self.conic_class}"


@dataclass
class SearchReport:
    modulus: int
    branchwise: bool
    require_min_mult: bool
    line_only_raw: int
    conic_raw: int
    candidates_passing: int
    pairs_examined: int
    feasible_pairs: int
    witness_sha256: str
    results: List[CandidateResult] = field(repr=False, default_factory=list)

    @property
    def candidates_examined(self) -> int:
        return self.line_only_raw + self.conic_raw

    @property
    def certified(self) -> bool:
        return self.feasible_pairs == 0

    def witness_lines(self) -> List[str]:
        return [r.log_line() for r in self.results]

    def statistics(self) -> dict:
        return {
            "modulus": self.modulus,
            "branchwise": self.branchwise,
            "candidates_examined": self.candidates_examined,
            "line_only_candidates": self.line_only_raw,
            "conic_candidates": self.conic_raw,
            "candidates_passing_invariants": self.candidates_passing,
            "bijections_per_candidate": len(PERMUTATIONS),
            "pair_space": self.candidates_examined * len(PERMUTATIONS),
            "pairs_examined": self.pairs_examined,
            "feasible_pairs": self.feasible_pairs,
            "witness_sha256": self.witness_sha256,
        }


def search_lemma3(
    modulus: int = 3,
    branchwise: bool = False,
    require_min_mult: bool = True,
    jobs: int = 1,
) -> SearchReport:
    """Run every candidate against every gluing and count feasible pairs.

    Work is split statically across ``jobs`` processes and merged by index,
    so the report does not depend on the worker count.
    """
    candidates = list(enumerate_candidates(modulus))
    line_only = sum(1 for c in candidates if c.conic is None)
    indexed = list(enumerate(candidates))
    if jobs <= 1:
        rows = _evaluate_chunk((indexed, modulus, branchwise, require_min_mult))
    else:
        chunks = [indexed[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _evaluate_chunk,
                [(ch, modulus, branchwise, require_min_mult) for ch in chunks],
            )
            rows = [r for part in parts for r in part]
    rows.sort(key=lambda r: r[0])
    results = [CandidateResult(candidates[i], adm, n, why) for i, adm, n, why in rows]

    digest = hashlib.sha256()
    for r in results:
        digest.update(r.log_line().encode())
        digest.update(b"\n")
    passing = sum(r.admissible for r in results)
    return SearchReport(
        modulus=modulus,
        branchwise=branchwise,
        require_min_mult=require_min_mult,
        line_only_raw=line_only,
        conic_raw=len(candidates) - line_only,
        candidates_passing=passing,
        pairs_examined=passing * len(PERMUTATIONS),
        feasible_pairs=sum(r.feasible_pairs for r in results),
        witness_sha256=digest.hexdigest(),
        results=results,
    )


def case_breakdown(report: SearchReport) -> List[dict]:
    """Admissible candidates grouped by support size and conic type."""
    buckets: Dict[Tuple[int, str], Bucket] = {}
    for r in report.results:
        if not r.admissible:
            continue
        c = r.candidate
        n = c.normalized()
        key = (len(n.support_lines), c.conic_label)
        b = buckets.setdefault(key, Bucket(*key))
        b.candidates += 1
        b.feasible_pairs += r.feasible_pairs
        b.supports.add(frozenset(n.support_lines))
    rows = []
    for key in sorted(buckets):
        b = buckets[key]
        supports = sorted(b.supports, key=sorted)
        rows.append(
            {
                "bucket": b.key,
                "support_size": b.support_size,
                "conic_class": b.conic_class,
                "candidates": b.candidates,
                "feasible_pairs": b.feasible_pairs,
                "distinct_supports": len(supports),
                "support_orbits": len(fano.support_orbits(supports)),
                "all_supports_concurrent": all(fano.is_concurrent(s) for s in supports),
            }
        )
    return rows
