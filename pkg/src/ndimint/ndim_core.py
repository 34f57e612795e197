"""Negative-dimensional evaluation of the moments  int x**r (x**2 + a**2)**s dx.

The scale ``a`` stays symbolic: closed forms come back as a
:class:`ScaledValue`, an exact coefficient times an integer power of ``a``,
and are only bound to a number by :meth:`ScaledValue.at`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .specfun import (
    PRINCIPAL_BRANCH,
    REFLECTION_BRANCH,
    ExactValue,
    as_half_integer,
    gamma_exact,
    minus_one_power,
    pochhammer,
    pochhammer_reflect,
)

Number = Union[int, Fraction, float, str]


class NDIMError(ValueError):
    pass


class NonPositiveBeta(NDIMError):
    pass


class NoPreimage(NDIMError):
    """(r, s) is not produced by any term of the Gaussian expansion."""


class NegativeN(NDIMError):
    pass


def to_fraction(a: Number) -> Fraction:
    """Exact rational for a scale given as int, Fraction, decimal string or float.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(a, Fraction):
        return a
    if isinstance(a, bool):
        raise TypeError("bool is not a scale")
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, float):
        if not math.isfinite(a):
            raise ValueError(f"non-finite value {a!r}")
        return Fraction(repr(a))
    return Fraction(str(a).strip())


@dataclass(frozen=True)
class IntegralSpec:
    r: int
    s: Fraction
    a: Fraction = Fraction(1)

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 0:
            raise NDIMError(f"r must be a non-negative integer, got {self.r!r}")
        object.__setattr__(self, "s", as_half_integer(self.s))
        a = to_fraction(self.a)
        if a <= 0:
            raise NDIMError(f"a must be positive, got {a}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class GeneratingParams:
    alpha: float
    beta: float
    a: float

    def __post_init__(self):
        if not self.beta > 0:
            raise NonPositiveBeta(f"beta must be positive, got {self.beta}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.a) and math.isfinite(self.beta)):
            raise NDIMError("generating parameters must be finite")


@dataclass(frozen=True)
class SeriesIndex:
    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise NDIMError(f"series indices must be non-negative, got ({self.k}, {self.l})")


@dataclass(frozen=True)
class ScaledValue:
    """``value * a**a_power`` with ``a`` left symbolic."""

    value: ExactValue
    a_power: int

    @property
    def is_pole(self) -> bool:
        return self.value.is_pole

    def at(self, a: Number) -> ExactValue:
        if self.value.is_pole:
            return self.value
        return self.value * to_fraction(a) ** self.a_power

    def numeric(self, a: float) -> complex:
        return self.value.to_complex() * float(a) ** self.a_power


@dataclass(frozen=True)
class SeriesTerm:
    """One term of the expanded generating functional.

    coeff * a**a_power * alpha**alpha_power * beta**beta_power
    """

    coeff: ExactValue
    a_power: int
    alpha_power: int
    beta_power: Fraction


def generating_closed_form(p: GeneratingParams) -> float:
    """sqrt(pi/beta) * exp(-beta a^2 + alpha^2 / (4 beta))."""
    return math.sqrt(math.pi / p.beta) * math.exp(-p.beta * p.a**2 + p.alpha**2 / (4 * p.beta))


def generating_integrand(p: GeneratingParams):
    """The Gaussian integrand exp(-alpha x) exp(-beta (x^2 + a^2)) as a callable."""
    alpha, beta, a2 = p.alpha, p.beta, p.a**2

    def f(x: float) -> float:
        return math.exp(-alpha * x - beta * (x * x + a2))

    return f


def generating_series_coefficient(k: int, l: int) -> SeriesTerm:
    idx = SeriesIndex(k, l)
    coeff = Fraction((-1) ** idx.k, 4**idx.l * math.factorial(idx.k) * math.factorial(idx.l))
    return SeriesTerm(
        coeff=ExactValue.make(coeff, 1),
        a_power=2 * idx.k,
        alpha_power=2 * idx.l,
        beta_power=Fraction(2 * idx.k - 2 * idx.l - 1, 2),
    )


def solve_constraints_forward(idx: SeriesIndex) -> tuple[int, Fraction]:
    return 2 * idx.l, Fraction(2 * idx.k - 2 * idx.l - 1, 2)


def solve_constraints_inverse(r: int, s: Number) -> SeriesIndex:
    s = Fraction(s) if not isinstance(s, float) else to_fraction(s)
    if r < 0 or r % 2:
        raise NoPreimage(f"r={r} is not a non-negative even integer")
    l = r // 2
    k = s + l + Fraction(1, 2)
    if k.denominator != 1 or k < 0:
        raise NoPreimage(f"(r={r}, s={s}) gives k={k}")
    return SeriesIndex(int(k), l)


def _minus_pi_sqrt() -> ExactValue:
    # principal root: (-pi)^(1/2) = i sqrt(pi)
    return minus_one_power(Fraction(1, 2), PRINCIPAL_BRANCH) * ExactValue.sqrt_pi()


def _r_factor(r: int) -> ExactValue:
    # 2^r (r+1)_{-r/2}
    return ExactValue.make(2**r) * pochhammer(r + 1, Fraction(-r, 2))


def i_star(spec: IntegralSpec) -> ScaledValue:
    """Negative-dimensional moment for non-negative r and half-integer or integer s.

        i**r (-pi)**(1/2) a**(r+2s+1) / (2**r (r+1)_(-r/2) (s+1)_(r/2+1/2))

    This is the form fixed by matching coefficients of alpha**r beta**s in the
    two expansions of the generating functional; the ``i**r`` factor is what
    that matching requires at odd ``r/2``. A zero Pochhammer in the
    denominator turns the result into a pole.
    """
    r, s = spec.r, spec.s
    q = Fraction(r + 1, 2)
    den = _r_factor(r) * pochhammer(s + 1, q)
    value = ExactValue.unit(r) * _minus_pi_sqrt() / den
    return ScaledValue(value, int(r + 2 * s + 1))


def i_star_ac(spec: IntegralSpec, branch: int = REFLECTION_BRANCH) -> ScaledValue:
    """Moment continued to negative ``s`` through the Pochhammer reflection.

    The s-bearing symbol ``(s+1)_q`` with ``q = r/2 + 1/2`` is replaced by
    ``pochhammer_reflect(s+1, q)`` underneath the base prefactor
    ``(-pi)**(1/2)``; the ``i**r`` carried by :func:`i_star` is not applied
    here. With the default branch the result is

        i**r / 2**r * sqrt(pi) * a**(r+2s+1) * (-s)_(-r/2-1/2) / (r+1)_(-r/2)

    At ``s = -1`` and odd ``r`` the surviving symbol is ``(1)_(-n)``, a gamma
    pole, and the pole is returned as such.
    """
    r, s = spec.r, spec.s
    q = Fraction(r + 1, 2)
    reflected = pochhammer_reflect(s + 1, q, branch)
    value = _minus_pi_sqrt() / (_r_factor(r) * reflected)
    return ScaledValue(value, int(r + 2 * s + 1))


def a_of_r(r: int, a: Number) -> ExactValue:
    """NDIM value of int x**r / (x**2 + a**2) dx, taken as (pi/a) (-a)**r for every r.

    For even ``r`` this agrees with :func:`i_star_ac` at ``s = -1``; for odd
    ``r`` the continuation has a pole and this prescription is used instead.
    """
    if r < 0:
        raise NDIMError(f"r must be non-negative, got {r}")
    a = to_fraction(a)
    if a <= 0:
        raise NDIMError(f"a must be positive, got {a}")
    return ExactValue.make((-a) ** r / a, 2)


def i_pol_prefactor(n: int) -> ExactValue:
    """(-1)**n n! sqrt(pi), the coefficient in front of the Kronecker delta."""
    if n < 0:
        raise NegativeN(f"n must be non-negative, got {n}")
    return ExactValue.make((-1) ** n * math.factorial(n), 1)


def kronecker_delta(u: Fraction, v: Fraction) -> int:
    return int(Fraction(u) == Fraction(v))


def i_pol(n: int, continued: bool = False) -> ExactValue:
    """int (x**2)**n dx in positive dimension (always 0) or continued.

    The continued form is ``(-1)**n n! sqrt(pi) delta(n + 1/2, 0)``; the delta
    never fires for integer ``n``, so both modes return exact zero.
    """
    if not isinstance(n, int) or n < 0:
        raise NegativeN(f"n must be a non-negative integer, got {n!r}")
    if not continued:
        return ExactValue.zero()
    delta = kronecker_delta(Fraction(n) + Fraction(1, 2), Fraction(0))
    return i_pol_prefactor(n) * delta


def term_matching_lhs(k: int, l: int) -> ScaledValue:
    """Coefficient of alpha**r beta**s read off the moment expansion.

    ``(-1)**(r+s) i_star(r, s) / (r! s!)`` with ``s! = Gamma(s+1)`` and the
    principal branch for the half-integer power of -1. Compare with
    :func:`generating_series_coefficient`.
    """
    r, s = solve_constraints_forward(SeriesIndex(k, l))
    moment = i_star(IntegralSpec(r, s))
    factorials = gamma_exact(r + 1) * gamma_exact(s + 1)
    coeff = minus_one_power(r + s, PRINCIPAL_BRANCH) * moment.value / factorials
    return ScaledValue(coeff, moment.a_power)
