"""Real-line integrals of P(x) e^{i omega x} / Q(x) by upper-half-plane residues.

The denominator is given factored: each listed root ``rho`` (Im rho > 0) with
multiplicity ``m`` contributes ``((x - rho)(x - conj(rho)))**m`` to Q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as P


class ResidueError(ValueError):
    pass


class RootNotListed(ResidueError):
    pass


class DegreeConditionViolated(ResidueError):
    pass


class InvalidIntegrand(ResidueError):
    pass


ROOT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class RationalIntegrand:
    numerator: tuple[float, ...]
    roots: tuple[tuple[complex, int], ...]
    omega: float = 0.0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        num = tuple(float(c) for c in self.numerator)
        while len(num) > 1 and num[-1] == 0.0:
            num = num[:-1]
        object.__setattr__(self, "numerator", num or (0.0,))
        roots = tuple((complex(z), int(m)) for z, m in self.roots)
        object.__setattr__(self, "roots", roots)
        if self.omega < 0:
            raise InvalidIntegrand(f"omega must be >= 0, got {self.omega}")
        if not roots:
            raise InvalidIntegrand("denominator needs at least one root")
        for z, m in roots:
            if m < 1:
                raise InvalidIntegrand(f"multiplicity must be positive, got {m}")
            if not z.imag > 0:
                raise InvalidIntegrand(f"root {z} is not in the open upper half-plane")
        if len({z for z, _ in roots}) != len(roots):
            raise InvalidIntegrand("duplicate roots; merge them into one multiplicity")
        q = self.denominator_coefficients()
        for z, _ in roots:
            scale = sum(abs(c) * abs(z) ** j for j, c in enumerate(q))
            if abs(P.polyval(z, q)) > ROOT_RESIDUAL_TOL * scale:
                raise InvalidIntegrand(f"root {z} does not annihilate the denominator")

    @property
    def numerator_degree(self) -> int:
        return len(self.numerator) - 1

    @property
    def denominator_degree(self) -> int:
        return 2 * sum(m for _, m in self.roots)

    def denominator_coefficients(self) -> np.ndarray:
        """Real ascending coefficients of Q."""
        q = np.array([1.0])
        for z, m in self.roots:
            quad = np.array([abs(z) ** 2, -2.0 * z.real, 1.0])
            for _ in range(m):
                q = P.polymul(q, quad)
        return q

    def check_degree(self) -> None:
        need = 2 if self.omega == 0 else 1
        if self.denominator_degree < self.numerator_degree + need:
            raise DegreeConditionViolated(
                f"deg Q = {self.denominator_degree} must be at least deg P + {need} "
                f"(deg P = {self.numerator_degree}, omega = {self.omega})"
            )

    def __call__(self, x: complex) -> complex:
        q = self.denominator_coefficients()
        return P.polyval(x, self.numerator) * cmath.exp(1j * self.omega * x) / P.polyval(x, q)

    def real_part(self):
        """x -> P(x) cos(omega x) / Q(x) for real x."""
        num, den, w = np.asarray(self.numerator), self.denominator_coefficients(), self.omega

        def f(x: float) -> float:
            return float(P.polyval(x, num) * math.cos(w * x) / P.polyval(x, den))

        return f

    def imag_part(self):
        """x -> P(x) sin(omega x) / Q(x) for real x."""
        num, den, w = np.asarray(self.numerator), self.denominator_coefficients(), self.omega

        def f(x: float) -> float:
            return float(P.polyval(x, num) * math.sin(w * x) / P.polyval(x, den))

        return f


def _shift(coeffs: Sequence[complex], z0: complex) -> np.ndarray:
    """Taylor coefficients of the polynomial about z0 (ascending in t = z - z0)."""
    c = np.asarray(coeffs, dtype=complex)
    n = len(c)
    out = np.zeros(n, dtype=complex)
    # Horner-style synthetic division, repeated
    work = c[::-1].copy()
    for i in range(n):
        acc = 0j
        nxt = np.zeros(len(work) - 1, dtype=complex)
        for j, a in enumerate(work):
            acc = acc * z0 + a
            if j < len(work) - 1:
                nxt[j] = acc
        out[i] = acc
        work = nxt
    return out


def _series_inverse(c: np.ndarray, order: int) -> np.ndarray:
    """First ``order`` coefficients of 1 / (c0 + c1 t + ...)."""
    inv = np.zeros(order, dtype=complex)
    inv[0] = 1.0 / c[0]
    for n in range(1, order):
        acc = 0j
        for j in range(1, min(n, len(c) - 1) + 1):
            acc += c[j] * inv[n - j]
        inv[n] = -acc / c[0]
    return inv


def residue_at(integrand: RationalIntegrand, root: complex, multiplicity: int) -> complex:
    """Residue of P(z) e^{i omega z} / Q(z) at a listed upper-half-plane root.

    With ``g(z) = (z - root)**m f(z)``, the residue is the coefficient of
    ``t**(m-1)`` in the Taylor expansion of ``g`` about the root, i.e.
    ``g^{(m-1)}(root) / (m-1)!``. Each factor of ``g`` is expanded exactly
    as a polynomial and the pieces are multiplied as truncated series.
    """
    root = complex(root)
    listed = dict(integrand.roots)
    if root not in listed or listed[root] != multiplicity:
        raise RootNotListed(f"{root} with multiplicity {multiplicity} is not a root of the integrand")
    m = multiplicity

    # Q(z) / (z - root)^m
    rest = np.array([1.0 + 0j])
    for z, mult in integrand.roots:
        for _ in range(mult):
            rest = P.polymul(rest, [-z.conjugate(), 1.0])
            if z != root:
                rest = P.polymul(rest, [-z, 1.0])
    rest_t = _shift(rest, root)
    num_t = _shift(integrand.numerator, root)

    w = integrand.omega
    exp_t = np.array([cmath.exp(1j * w * root) * (1j * w) ** n / math.factorial(n) for n in range(m)])

    series = P.polymul(P.polymul(num_t[:m], exp_t)[:m], _series_inverse(rest_t, m))
    return complex(series[m - 1]) if len(series) >= m else 0j


def integrate_by_residues(integrand: RationalIntegrand) -> complex:
    """2 pi i times the sum of upper-half-plane residues."""
    integrand.check_degree()
    total = sum(residue_at(integrand, z, m) for z, m in integrand.roots)
    return 2j * math.pi * total
