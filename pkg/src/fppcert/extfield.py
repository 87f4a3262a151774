"""Exact arithmetic in the coefficient rings used by the lattice generators.

* ``QuadElem``  -- a + b*S in Q(S) with S^2 = -15, embedded in Q_2 through the
  square root of -15 that is 1 mod 4.
* ``LambdaElem`` -- Laurent polynomials in lambda = 2u with u a formal 2-adic
  unit, valued by the Gauss valuation.
* ``CubicElem`` -- c0 + c1*mu + c2*mu^2 with mu^3 = d over any of the above
  (or over Q itself).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

from fppcert.padic import DEFAULT_PRECISION, PAdicApprox, hensel_sqrt, v2_or_zero

Rational = Union[int, Fraction]

QUAD_D = -15


class NotTotallyRamified(ValueError):
    pass


class ZeroElement(ValueError):
    pass


@lru_cache(maxsize=None)
def sqrt_minus_15(precision: int = DEFAULT_PRECISION) -> PAdicApprox:
    """The fixed embedding of S: the root of -15 that is 1 mod 4."""
    return hensel_sqrt(QUAD_D, 1, precision)


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def valuation_of(x) -> int:
    """2-adic valuation of a nonzero base-ring element."""
    if _is_rational(x):
        if x == 0:
            raise ZeroElement("valuation of zero")
        return v2_or_zero(x)
    return x.valuation()


def is_zero(x) -> bool:
    return x == 0


def _div(x, y):
    if _is_rational(x) and _is_rational(y):
        return Fraction(x) / Fraction(y)
    return x / y


# ---------------------------------------------------------------------------
# Q(S), S^2 = -15


@dataclass(frozen=True, eq=False)
class QuadElem:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def S(cls) -> "QuadElem":
        return cls(0, 1)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QuadElem):
            return other
        if _is_rational(other):
            return QuadElem(other, 0)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b)) if self.b else hash(self.a)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadElem(a * c + QUAD_D * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - QUAD_D * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(S)")
        return QuadElem(self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "QuadElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElem(1)
        for _ in range(n):
            out = out * self
        return out

    def to_padic(self, precision: int = DEFAULT_PRECISION) -> PAdicApprox:
        s = sqrt_minus_15(precision)
        return PAdicApprox.from_rational(self.a, precision) + s * self.b

    def valuation(self) -> int:
        if self == 0:
            raise ZeroElement("valuation of zero in Q(S)")
        # S is irrational, so a nonzero element never embeds to 0; widen
        # precision until the cancellation is resolved.
        precision = DEFAULT_PRECISION
        while True:
            x = self.to_padic(precision)
            if not x.is_zero:
                return x.valuation
            precision *= 2

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*S)"


# ---------------------------------------------------------------------------
# Q(lambda), lambda = 2u with u a formal unit


@dataclass(frozen=True, eq=False)
class LambdaElem:
    """Laurent polynomial sum c_i * lambda^i with rational c_i."""

    coeffs: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        merged: Dict[int, Fraction] = {}
        for i, c in self.coeffs:
            merged[i] = merged.get(i, Fraction(0)) + Fraction(c)
        object.__setattr__(
            self, "coeffs", tuple(sorted((i, c) for i, c in merged.items() if c != 0))
        )

    @classmethod
    def from_list(cls, cs: Iterable[Rational]) -> "LambdaElem":
        return cls(tuple(enumerate(cs)))

    @classmethod
    def lam(cls) -> "LambdaElem":
        return cls(((1, Fraction(1)),))

    @classmethod
    def const(cls, c: Rational) -> "LambdaElem":
        return cls(((0, Fraction(c)),))

    @staticmethod
    def _coerce(other):
        if isinstance(other, LambdaElem):
            return other
        if _is_rational(other):
            return LambdaElem.const(other)
        return NotImplemented

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if not self.coeffs:
            return hash(0)
        if len(self.coeffs) == 1 and self.coeffs[0][0] == 0:
            return hash(self.coeffs[0][1])
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LambdaElem(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self) -> "LambdaElem":
        return LambdaElem(tuple((i, -c) for i, c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LambdaElem(
            tuple((i + j, c * e) for i, c in self.coeffs for j, e in other.coeffs)
        )

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def inverse(self) -> "LambdaElem":
        if not self.coeffs:
            raise ZeroDivisionError("division by zero in Q(lambda)")
        if not self.is_monomial():
            # only monomials are units of the Laurent ring
            raise ArithmeticError(f"{self!r} is not invertible in Q[lambda, 1/lambda]")
        (i, c), = self.coeffs
        return LambdaElem(((-i, 1 / c),))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "LambdaElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = LambdaElem.const(1)
        for _ in range(n):
            out = out * self
        return out

    def valuation(self) -> int:
        """Gauss valuation min(v2(c_i) + i)."""
        if not self.coeffs:
            raise ZeroElement("valuation of zero in Q(lambda)")
        return min(v2_or_zero(c) + i for i, c in self.coeffs)

    def evaluate(self, u: Rational) -> Fraction:
        """Specialise the formal unit to ``u`` (lambda -> 2u)."""
        lam = 2 * Fraction(u)
        return sum((c * lam**i for i, c in self.coeffs), Fraction(0))

    def substitute(self, value: "LambdaElem") -> "LambdaElem":
        """Replace lambda by another element, e.g. lambda -> 2*lambda."""
        out = LambdaElem()
        for i, c in self.coeffs:
            out = out + value**i * c
        return out

    def to_json(self) -> dict:
        return {str(i): str(c) for i, c in self.coeffs}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in self.coeffs:
            if i == 0:
                terms.append(str(c))
            else:
                power = "lam" if i == 1 else f"lam^{i}"
                terms.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Kummer cubics base(mu), mu^3 = d


def _base_zero(like):
    return like - like


@dataclass(frozen=True, eq=False)
class CubicElem:
    c0: object
    c1: object
    c2: object
    modulus: object

    @classmethod
    def mu(cls, d) -> "CubicElem":
        return cls(0, 1, 0, d)

    @classmethod
    def scalar(cls, c, d) -> "CubicElem":
        return cls(c, 0, 0, d)

    def _coerce(self, other):
        if isinstance(other, CubicElem):
            if other.modulus != self.modulus:
                raise ValueError("cubic elements over different moduli")
            return other
        if isinstance(other, (int, Fraction, QuadElem, LambdaElem)):
            return CubicElem(other, 0, 0, self.modulus)
        return NotImplemented

    @property
    def coords(self) -> tuple:
        return (self.c0, self.c1, self.c2)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return all(x == y for x, y in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CubicElem(*(x + y for x, y in zip(self.coords, other.coords)), self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "CubicElem":
        return CubicElem(-self.c0, -self.c1, -self.c2, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2 = self.coords
        b0, b1, b2 = other.coords
        d = self.modulus
        return CubicElem(
            a0 * b0 + d * (a1 * b2 + a2 * b1),
            a0 * b1 + a1 * b0 + d * (a2 * b2),
            a0 * b2 + a1 * b1 + a2 * b0,
            d,
        )

    __rmul__ = __mul__

    def norm(self):
        a, b, c = self.coords
        d = self.modulus
        return a * a * a + d * b * b * b + d * d * c * c * c - 3 * d * a * b * c

    def inverse(self) -> "CubicElem":
        a, b, c = self.coords
        d = self.modulus
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in the cubic extension")
        adj = (a * a - d * b * c, d * c * c - a * b, b * b - a * c)
        return CubicElem(*(_div(x, n) for x in adj), d)

    def __truediv__(self, other):
        if isinstance(other, CubicElem):
            return self * other.inverse()
        return CubicElem(*(_div(x, other) for x in self.coords), self.modulus)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> "CubicElem":
        if n < 0:
            return self.inverse() ** (-n)
        out = CubicElem.scalar(1, self.modulus)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"({self.c0!r}) + ({self.c1!r})*mu + ({self.c2!r})*mu^2 [mu^3 = {self.modulus!r}]"


def cubic_valuation(x: CubicElem) -> Fraction:
    """Valuation on a totally ramified Kummer cubic, normalised so v(2) = 1."""
    vd = valuation_of(x.modulus)
    if vd % 3 == 0:
        raise NotTotallyRamified(f"v(d) = {vd} is divisible by 3")
    candidates = [
        Fraction(valuation_of(c)) + Fraction(i * vd, 3)
        for i, c in enumerate(x.coords)
        if not is_zero(c)
    ]
    if not candidates:
        raise ZeroElement("valuation of zero in the cubic extension")
    # distinct fractional parts mean no cancellation can occur
    fracs = [c - (c.numerator // c.denominator) for c in candidates]
    assert len(set(fracs)) == len(fracs)
    return min(candidates)


@dataclass(frozen=True)
class KummerExtension:
    """k = base(mu) with mu^3 = d, as seen from its residue field."""

    modulus: object
    residue_degree: int = field(default=0)

    def __post_init__(self) -> None:
        if self.residue_degree == 0:
            if valuation_of(self.modulus) % 3 == 0:
                raise NotTotallyRamified("pass residue_degree explicitly for this modulus")
            object.__setattr__(self, "residue_degree", 1)

    @property
    def residue_field_size(self) -> int:
        return 2**self.residue_degree

    def mu(self) -> CubicElem:
        return CubicElem.mu(self.modulus)


# F_{2^k} for k <= 3, elements as bit vectors, reduced by a root-free modulus
_GF_MODULI = {1: 0b10, 2: 0b111, 3: 0b1011}


def _gf_mul(x: int, y: int, k: int) -> int:
    mod = _GF_MODULI[k]
    out = 0
    while y:
        if y & 1:
            out ^= x
        y >>= 1
        x <<= 1
        if x >> k & 1:
            x ^= mod
    return out


def no_primitive_cube_root(ext: KummerExtension) -> bool:
    """True iff x^2 + x + 1 has no root in the residue field of ``ext``.

    A primitive cube root of 1 in k would reduce to a root of x^2 + x + 1
    (3 is a unit, so reduction is injective on mu_3); with none, the only
    scalar cube root of 1 is 1.
    """
    k = ext.residue_degree
    if k not in _GF_MODULI:
        raise ValueError("residue degrees above 3 are not supported")
    if k == 1:
        field_elems = [0, 1]
    else:
        field_elems = range(2**k)
    return not any(_gf_mul(x, x, k) ^ x ^ 1 == 0 for x in field_elems)
