"""Exact gamma functions and Pochhammer symbols on integers and half-integers.

Values are carried as :class:`ExactValue`, a rational coefficient times a
power of ``sqrt(pi)`` times a power of the imaginary unit, or a pole marker.
Everything here is pure; no module state is mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction]

# Branch used for (-1)**w with half-integer w inside the Pochhammer reflection:
# (-1)**w = exp(REFLECTION_BRANCH * i*pi*w), so (-1)**(1/2) = i**REFLECTION_BRANCH.
# -1 is the choice under which the continued moment carries the i**r prefactor.
REFLECTION_BRANCH = -1

# Principal branch, used for stand-alone half powers such as (-pi)**(1/2).
PRINCIPAL_BRANCH = +1


class SpecfunError(ValueError):
    """Base class for errors raised by the exact kernel."""


class DenominatorUnsupported(SpecfunError):
    pass


class IndeterminateRatio(SpecfunError):
    """Raised for pole/pole or zero*pole combinations that have no exact value."""


class MixedPowerError(SpecfunError):
    """Addition of values that differ in their power of sqrt(pi) or i."""


@dataclass(frozen=True)
class ExactValue:
    """``coeff * pi**(pi_half_power/2) * i**i_power``, or a pole of ``pole_order``.

    Instances are always canonical: ``i_power`` is folded into {0, 1} by
    absorbing ``i**2 = -1`` into the coefficient, zero has no powers attached,
    and a pole carries no finite data. Use the constructors below rather than
    building instances by hand.
    """

    coeff: Fraction = Fraction(0)
    pi_half_power: int = 0
    i_power: int = 0
    pole_order: int = 0

    # -- constructors -----------------------------------------------------
    @classmethod
    def make(cls, coeff: RationalLike, pi_half_power: int = 0, i_power: int = 0) -> "ExactValue":
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls()
        i_power %= 4
        if i_power >= 2:
            coeff = -coeff
            i_power -= 2
        return cls(coeff, pi_half_power, i_power, 0)

    @classmethod
    def pole(cls, order: int = 1) -> "ExactValue":
        if order < 1:
            raise ValueError("pole order must be positive")
        return cls(Fraction(0), 0, 0, order)

    @classmethod
    def one(cls) -> "ExactValue":
        return cls.make(1)

    @classmethod
    def zero(cls) -> "ExactValue":
        return cls()

    @classmethod
    def sqrt_pi(cls) -> "ExactValue":
        return cls.make(1, 1)

    @classmethod
    def unit(cls, i_power: int) -> "ExactValue":
        return cls.make(1, 0, i_power)

    # -- predicates -------------------------------------------------------
    @property
    def is_pole(self) -> bool:
        return self.pole_order > 0

    @property
    def is_zero(self) -> bool:
        return not self.is_pole and self.coeff == 0

    @property
    def is_finite(self) -> bool:
        return not self.is_pole

    @property
    def is_real(self) -> bool:
        return self.is_finite and self.i_power == 0

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.coeff, self.pi_half_power, self.i_power, self.pole_order) == (
            other.coeff,
            other.pi_half_power,
            other.i_power,
            other.pole_order,
        )

    def __hash__(self) -> int:
        return hash((self.coeff, self.pi_half_power, self.i_power, self.pole_order))

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other: object) -> "ExactValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_pole or other.is_pole:
            if self.is_zero or other.is_zero:
                raise IndeterminateRatio("zero times pole")
            return ExactValue.pole(self.pole_order + other.pole_order)
        return ExactValue.make(
            self.coeff * other.coeff,
            self.pi_half_power + other.pi_half_power,
            self.i_power + other.i_power,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "ExactValue":
        if self.is_pole:
            return ExactValue.zero()
        if self.is_zero:
            return ExactValue.pole(1)
        # 1/i = -i
        return ExactValue.make(1 / self.coeff, -self.pi_half_power, -self.i_power)

    def __truediv__(self, other: object) -> "ExactValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_pole and other.is_pole:
            raise IndeterminateRatio("pole divided by pole")
        if self.is_zero and other.is_zero:
            raise IndeterminateRatio("zero divided by zero")
        return self * other.reciprocal()

    def __rtruediv__(self, other: object) -> "ExactValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self) -> "ExactValue":
        if self.is_pole:
            return self
        return ExactValue.make(-self.coeff, self.pi_half_power, self.i_power)

    def __add__(self, other: object) -> "ExactValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_pole or other.is_pole:
            raise IndeterminateRatio("addition involving a pole")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if (self.pi_half_power, self.i_power) != (other.pi_half_power, other.i_power):
            raise MixedPowerError(f"cannot add {self} and {other} exactly")
        return ExactValue.make(self.coeff + other.coeff, self.pi_half_power, self.i_power)

    __radd__ = __add__

    def __sub__(self, other: object) -> "ExactValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __pow__(self, n: int) -> "ExactValue":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        out = ExactValue.one()
        for _ in range(n):
            out = out * self
        return out

    # -- rendering --------------------------------------------------------
    def to_complex(self) -> complex:
        if self.is_pole:
            return complex(math.inf, 0.0)
        mag = float(self.coeff) * math.pi ** (self.pi_half_power / 2)
        return complex(0.0, mag) if self.i_power else complex(mag, 0.0)

    def __float__(self) -> float:
        if self.is_pole:
            return math.inf
        if self.i_power:
            raise TypeError(f"{self} is imaginary")
        return float(self.coeff) * math.pi ** (self.pi_half_power / 2)

    def __str__(self) -> str:
        if self.is_pole:
            return f"pole(order {self.pole_order})"
        if self.is_zero:
            return "0"
        parts = [str(self.coeff)]
        if self.pi_half_power:
            e = self.pi_half_power
            if e == 1:
                parts.append("sqrt(pi)")
            elif e % 2 == 0:
                parts.append("pi" if e == 2 else f"pi^{e // 2}")
            else:
                parts.append(f"pi^({e}/2)")
        if self.i_power:
            parts.append("i")
        return "*".join(parts)


def _coerce(value: object) -> ExactValue:
    if isinstance(value, ExactValue):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return ExactValue.make(value)
    return NotImplemented  # type: ignore[return-value]


def as_half_integer(value: object) -> Fraction:
    """Convert to Fraction and check that the denominator is 1 or 2."""
    if isinstance(value, float):
        value = Fraction(value)
    if not isinstance(value, Rational):
        raise TypeError(f"expected a rational, got {type(value).__name__}")
    value = Fraction(value)
    if value.denominator not in (1, 2):
        raise DenominatorUnsupported(f"{value} has denominator {value.denominator}")
    return value


def minus_one_power(w: RationalLike, branch: int = PRINCIPAL_BRANCH) -> ExactValue:
    """(-1)**w for integer or half-integer w, with (-1)**(1/2) = i**branch."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    w = as_half_integer(w)
    # (-1)**w = i**(2*w*branch); 2*w is an integer here
    return ExactValue.unit(int(2 * w) * branch)


def gamma_exact(arg: RationalLike) -> ExactValue:
    """Gamma function at an integer or half-integer argument.

    Non-positive integers give a simple pole. Half-integers are reached from
    ``Gamma(1/2) = sqrt(pi)`` by the recurrence ``Gamma(z+1) = z Gamma(z)``.
    """
    z = as_half_integer(arg)
    if z.denominator == 1:
        n = int(z)
        if n <= 0:
            return ExactValue.pole(1)
        return ExactValue.make(math.factorial(n - 1))
    coeff = Fraction(1)
    x = Fraction(1, 2)
    while x < z:
        coeff *= x
        x += 1
    while x > z:
        x -= 1
        coeff /= x
    return ExactValue.make(coeff, 1)


def pochhammer(p: RationalLike, q: RationalLike) -> ExactValue:
    """Pochhammer symbol ``(p)_q = Gamma(p+q) / Gamma(p)``.

    Integer ``q`` goes through the finite product, so gamma poles in the
    numerator and denominator cancel exactly and ``(p)_0 = 1`` everywhere.
    Half-integer ``q`` uses the gamma ratio directly.

    Examples
    --------
    >>> pochhammer(3, 2)
    ExactValue(coeff=Fraction(12, 1), pi_half_power=0, i_power=0, pole_order=0)
    >>> str(pochhammer(1, -1))
    'pole(order 1)'
    """
    p = as_half_integer(p)
    q = as_half_integer(q)
    as_half_integer(p + q)
    if q.denominator == 1:
        n = int(q)
        prod = Fraction(1)
        if n >= 0:
            for j in range(n):
                prod *= p + j
            return ExactValue.make(prod)
        for j in range(1, -n + 1):
            prod *= p - j
        if prod == 0:
            return ExactValue.pole(1)
        return ExactValue.make(1 / prod)
    num = gamma_exact(p + q)
    den = gamma_exact(p)
    if num.is_pole and den.is_pole:
        raise IndeterminateRatio(f"({p})_{q}: both gamma factors are poles")
    return num / den


def pochhammer_reflect(p: RationalLike, q: RationalLike, branch: int = REFLECTION_BRANCH) -> ExactValue:
    """Evaluate ``(-1)**(-q) / (1-p)_(-q)``.

    For integer ``q`` this equals :func:`pochhammer` wherever both are
    finite. For half-integer ``q`` the two sides never agree: exactly one of
    them is finite and the other is zero or a pole, which is what makes the
    reflection usable as a continuation device. ``branch`` fixes
    ``(-1)**(1/2) = i**branch``.
    """
    p = as_half_integer(p)
    q = as_half_integer(q)
    return minus_one_power(-q, branch) / pochhammer(1 - p, -q)
