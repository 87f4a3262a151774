"""2-adic numbers at tracked finite precision.

A nonzero value is stored as ``2**valuation * unit`` where ``unit`` is odd and
only known modulo ``2**precision``.  Arithmetic never claims more precision
than its inputs justify.  A value that cancels to zero within the known
precision becomes the distinguished zero, which carries the absolute
precision ``O(2**precision)`` it is known to instead of a fake valuation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

DEFAULT_PRECISION = 64
INFINITY = math.inf


class NoSquareRoot(ValueError):
    pass


class AmbiguousConstraint(ValueError):
    pass


class NotAUnit(ValueError):
    pass


def v2(n: int) -> int:
    """Exponent of 2 in a nonzero integer."""
    if n == 0:
        raise ValueError("v2(0) is infinite")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class PAdicApprox:
    valuation: int
    unit_residue: int
    precision: int
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.is_zero:
            return
        if self.precision < 1:
            raise ValueError("precision must be positive")
        if self.unit_residue % 2 == 0 or not 0 < self.unit_residue < 2**self.precision:
            raise ValueError(
                f"unit residue {self.unit_residue} is not an odd residue mod 2^{self.precision}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION) -> "PAdicApprox":
        """Zero known modulo ``2**precision`` (absolute)."""
        return cls(0, 0, precision, is_zero=True)

    @classmethod
    def from_rational(
        cls, x: Union[int, Fraction], precision: int = DEFAULT_PRECISION
    ) -> "PAdicApprox":
        x = Fraction(x)
        if x == 0:
            return cls.zero(precision)
        num, den = x.numerator, x.denominator
        a, b = v2(num), v2(den)
        mod = 1 << precision
        unit = (num >> a) * pow(den >> b, -1, mod) % mod
        return cls(a - b, unit, precision)

    from_int = from_rational

    # -- inspection -------------------------------------------------------

    @property
    def absolute_precision(self) -> int:
        if self.is_zero:
            return self.precision
        return self.valuation + self.precision

    def residue(self, bits: int) -> int:
        """The value reduced mod ``2**bits``; only defined for integral values."""
        if bits > self.absolute_precision:
            raise ValueError(f"value only known mod 2^{self.absolute_precision}")
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("value is not a 2-adic integer")
        return (self.unit_residue << self.valuation) % (1 << bits)

    def congruent(self, other: Union["PAdicApprox", int, Fraction]) -> bool:
        """True iff ``self - other`` vanishes at the precision available."""
        return (self - other).is_zero

    def reduce(self, precision: int) -> "PAdicApprox":
        """Drop relative precision down to ``precision`` bits."""
        if self.is_zero:
            return PAdicApprox.zero(min(self.precision, precision))
        p = min(self.precision, precision)
        return PAdicApprox(self.valuation, self.unit_residue % (1 << p), p)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "PAdicApprox":
        if isinstance(other, PAdicApprox):
            return other
        if isinstance(other, (int, Fraction)):
            # exact literals must never be the precision bottleneck
            prec = max(self.precision, self.absolute_precision - v2_or_zero(other), 1)
            return PAdicApprox.from_rational(other, prec)
        return NotImplemented

    def __neg__(self) -> "PAdicApprox":
        if self.is_zero:
            return self
        mod = 1 << self.precision
        return PAdicApprox(self.valuation, (-self.unit_residue) % mod, self.precision)

    def __add__(self, other) -> "PAdicApprox":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        bound = min(self.absolute_precision, other.absolute_precision)
        if self.is_zero and other.is_zero:
            return PAdicApprox.zero(bound)
        if self.is_zero:
            return other.reduce(bound - other.valuation) if bound > other.valuation else PAdicApprox.zero(bound)
        if other.is_zero:
            return self.reduce(bound - self.valuation) if bound > self.valuation else PAdicApprox.zero(bound)
        low = min(self.valuation, other.valuation)
        width = bound - low
        if width <= 0:
            return PAdicApprox.zero(bound)
        t = (
            (self.unit_residue << (self.valuation - low))
            + (other.unit_residue << (other.valuation - low))
        ) % (1 << width)
        if t == 0:
            return PAdicApprox.zero(bound)
        c = v2(t)
        return PAdicApprox(low + c, t >> c, width - c)

    __radd__ = __add__

    def __sub__(self, other) -> "PAdicApprox":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PAdicApprox":
        return (-self) + other

    def __mul__(self, other) -> "PAdicApprox":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            # a zero known to O(2^N) times something of valuation v is O(2^(N+v))
            if self.is_zero and other.is_zero:
                return PAdicApprox.zero(self.precision + other.precision)
            z, nz = (self, other) if self.is_zero else (other, self)
            return PAdicApprox.zero(z.precision + nz.valuation)
        p = min(self.precision, other.precision)
        return PAdicApprox(
            self.valuation + other.valuation,
            self.unit_residue * other.unit_residue % (1 << p),
            p,
        )

    __rmul__ = __mul__

    def inverse(self) -> "PAdicApprox":
        if self.is_zero:
            raise ZeroDivisionError("inverse of a 2-adic zero")
        mod = 1 << self.precision
        return PAdicApprox(-self.valuation, pow(self.unit_residue, -1, mod), self.precision)

    def __truediv__(self, other) -> "PAdicApprox":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "PAdicApprox":
        return self.inverse() * other

    def __pow__(self, n: int) -> "PAdicApprox":
        if n < 0:
            return self.inverse() ** (-n)
        result = PAdicApprox.from_int(1, self.precision)
        for _ in range(n):
            result = result * self
        return result

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PAdicApprox(0 + O(2^{self.precision}))"
        return f"PAdicApprox(2^{self.valuation} * {self.unit_residue} mod 2^{self.precision})"


def v2_or_zero(x: Union[int, Fraction]) -> int:
    x = Fraction(x)
    if x == 0:
        return 0
    return v2(x.numerator) - v2(x.denominator)


def valuation(x: Union[PAdicApprox, int, Fraction]) -> Union[int, float]:
    """2-adic valuation; ``INFINITY`` for zero."""
    if not isinstance(x, PAdicApprox):
        x = Fraction(x)
        return INFINITY if x == 0 else v2_or_zero(x)
    return INFINITY if x.is_zero else x.valuation


def _seed_sqrt(a: int, residue_constraint: int) -> int:
    candidates = [
        x for x in range(1, 64, 2) if (x * x - a) % 64 == 0 and x % 4 == residue_constraint % 4
    ]
    if not candidates:
        raise AmbiguousConstraint(
            f"no square root of {a} is congruent to {residue_constraint} mod 4"
        )
    return candidates[0]


def hensel_sqrt(
    a: int, residue_constraint: int = 1, precision: int = DEFAULT_PRECISION
) -> PAdicApprox:
    """Square root of ``a`` in the 2-adic integers selected by its class mod 4.

    ``a`` must be 1 mod 8.  The two roots are ``±x`` and differ mod 4, so the
    residue constraint must be odd.
    """
    if a % 8 != 1:
        raise NoSquareRoot(f"{a} is not 1 mod 8, so it has no 2-adic unit square root")
    if residue_constraint % 2 == 0:
        raise AmbiguousConstraint("square roots of a 1 mod 8 integer are odd")
    x = _seed_sqrt(a, residue_constraint)
    known = 6  # x*x == a mod 2^known
    # a root mod 2^k is only determined mod 2^(k-1)
    target = precision + 1
    while known < target:
        mod = 1 << (2 * known)
        # Newton step x - (x^2 - a)/(2x); the numerator is divisible by 2^known
        step = ((x * x - a) >> 1) * pow(x, -1, mod)
        x = (x - step) % mod
        known = 2 * known - 2
    return PAdicApprox(0, x % (1 << precision), precision)


def hensel_cube_root(u: PAdicApprox) -> PAdicApprox:
    """The unique unit cube root of a 2-adic unit."""
    if u.is_zero or u.valuation != 0:
        raise NotAUnit(f"{u!r} is not a 2-adic unit")
    p = u.precision
    mod_p = 1 << p
    target = u.unit_residue
    x = target % 8  # odd x satisfies x^3 == x mod 8
    known = 3
    while known < p:
        known = min(2 * known, p)
        mod = 1 << known
        # 3x^2 is a unit, so the Newton step needs no division by 2
        x = (x - (x**3 - target) * pow(3 * x * x, -1, mod)) % mod
    return PAdicApprox(0, x % mod_p, p)


def is_cube_in_Q2(x: PAdicApprox) -> bool:
    """Units are always cubes in Q_2, so only the valuation decides."""
    if x.is_zero:
        raise ValueError("cube test is undefined for a zero value")
    return x.valuation % 3 == 0


def residue_poly_irreducible(coeffs: Sequence[int]) -> bool:
    """Root-free test over F_2 for a monic polynomial of degree 2 or 3.

    ``coeffs`` are listed from the constant term upward.
    """
    coeffs = [c % 2 for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    degree = len(coeffs) - 1
    if degree < 1 or degree > 3:
        raise ValueError("expected a monic polynomial of degree 1..3 over F_2")
    if degree == 1:
        return False
    return all(sum(c * r**i for i, c in enumerate(coeffs)) % 2 for r in (0, 1))
