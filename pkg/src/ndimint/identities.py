"""Exact-identity suites: each returns a SuiteResult with counts and failures."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .ndim_core import (
    GeneratingParams,
    IntegralSpec,
    SeriesIndex,
    a_of_r,
    generating_closed_form,
    generating_integrand,
    generating_series_coefficient,
    i_star_ac,
    solve_constraints_forward,
    solve_constraints_inverse,
    term_matching_lhs,
)
from .oracles.quadrature import QuadratureRequest, integrate_numeric
from .specfun import REFLECTION_BRANCH, ExactValue, gamma_exact, pochhammer, pochhammer_reflect

MAX_FAILURES_KEPT = 20


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(message)
        else:
            self.info["failures_truncated"] = self.info.get("failures_truncated", 0) + 1


def half_integer_grid(lo: Fraction, hi: Fraction) -> list[Fraction]:
    out, x = [], Fraction(lo)
    while x <= hi:
        out.append(x)
        x += Fraction(1, 2)
    return out


def expected_pochhammer_pole(p: Fraction, q: int) -> bool:
    """(p)_q for integer q is infinite exactly when p is a positive integer <= -q."""
    return q < 0 and p.denominator == 1 and 1 <= p <= -q


def pochhammer_suite(max_q: int = 20, p_max: int = 10, branch: int = REFLECTION_BRANCH) -> SuiteResult:
    """Reflection identity and inverse-product identity on integer q."""
    res = SuiteResult("pochhammer")
    grid = half_integer_grid(Fraction(-p_max), Fraction(p_max))
    total = finite = 0
    for p in grid:
        for q in range(-max_q, max_q + 1):
            total += 1
            lhs = pochhammer(p, q)
            rhs = pochhammer_reflect(p, q, branch)
            res.checked += 1
            if lhs.is_pole != expected_pochhammer_pole(p, q):
                res.fail(f"({p})_{q}: pole classification {lhs.is_pole} is wrong")
            if lhs.is_finite and rhs.is_finite:
                finite += 1
                if lhs != rhs:
                    res.fail(f"({p})_{q} = {lhs} but reflection gives {rhs}")
            elif lhs.is_pole != rhs.is_pole:
                res.fail(f"({p})_{q}: {lhs} vs reflection {rhs}")
            back = pochhammer(p + q, -q)
            if lhs.is_finite and back.is_finite and not lhs.is_zero and not back.is_zero:
                if lhs * back != ExactValue.one():
                    res.fail(f"({p})_{q} * ({p + q})_{-q} = {lhs * back}")
    res.info.update(grid_points=total, finite_points=finite, finite_fraction=finite / total)
    return res


def gamma_recurrence_suite() -> SuiteResult:
    res = SuiteResult("gamma-recurrence")
    for z in half_integer_grid(Fraction(-19, 2), Fraction(19, 2)):
        g, g1 = gamma_exact(z), gamma_exact(z + 1)
        if g.is_pole or g1.is_pole:
            continue
        res.checked += 1
        if g1 != z * g:
            res.fail(f"Gamma({z + 1}) = {g1} but {z} * Gamma({z}) = {z * g}")
    return res


def constraint_roundtrip_suite(n: int = 50) -> SuiteResult:
    res = SuiteResult("constraint-roundtrip")
    for k in range(n + 1):
        for l in range(n + 1):
            res.checked += 1
            r, s = solve_constraints_forward(SeriesIndex(k, l))
            back = solve_constraints_inverse(r, s)
            if back != SeriesIndex(k, l):
                res.fail(f"({k}, {l}) -> ({r}, {s}) -> ({back.k}, {back.l})")
    return res


CONTINUATION_SCALES = (Fraction(1, 2), Fraction(1), Fraction(2))


def continuation_suite(r_max: int = 40, branch: int = REFLECTION_BRANCH) -> SuiteResult:
    """Even r: continued moment at s=-1 equals (pi/a)(-a)^r exactly; odd r: a pole."""
    res = SuiteResult("continuation")
    for r in range(r_max + 1):
        cont = i_star_ac(IntegralSpec(r, Fraction(-1)), branch=branch)
        for a in CONTINUATION_SCALES:
            res.checked += 1
            prescribed = a_of_r(r, a)
            if r % 2 == 0:
                got = cont.at(a)
                if got != prescribed:
                    res.fail(f"r={r}, a={a}: continued {got} != {prescribed}")
            else:
                if not cont.is_pole:
                    res.fail(f"r={r}: expected a pole, got {cont.value}")
                if not prescribed.is_finite:
                    res.fail(f"r={r}, a={a}: prescription is not finite")
    return res


GENERATING_GRID = (
    (0.0, 1.0, 2.0),  # alpha
    (0.5, 1.0, 2.0),  # beta
    (0.0, 1.0, 2.0),  # a
)


def generating_suite(rel_tol: float = 1e-10) -> SuiteResult:
    """Closed-form Gaussian generating functional against tanh-sinh quadrature."""
    res = SuiteResult("generating-functional")
    worst = 0.0
    for alpha in GENERATING_GRID[0]:
        for beta in GENERATING_GRID[1]:
            for a in GENERATING_GRID[2]:
                p = GeneratingParams(alpha, beta, a)
                exact = generating_closed_form(p)
                quad = integrate_numeric(
                    QuadratureRequest(
                        generating_integrand(p),
                        abs_tol=1e-14,
                        rel_tol=1e-13,
                        center=-alpha / (2 * beta),
                        scale=1 / math.sqrt(beta),
                    )
                )
                rel = abs(quad.value - exact) / abs(exact)
                worst = max(worst, rel)
                res.checked += 1
                if rel > rel_tol:
                    res.fail(f"alpha={alpha} beta={beta} a={a}: rel diff {rel:.3e}")
    res.info["max_rel_diff"] = worst
    return res


def term_matching_suite(n: int = 12) -> SuiteResult:
    """Moment-side coefficient against the Gaussian-expansion coefficient, exactly."""
    res = SuiteResult("term-matching")
    for k in range(n + 1):
        for l in range(n + 1):
            res.checked += 1
            lhs = term_matching_lhs(k, l)
            rhs = generating_series_coefficient(k, l)
            if lhs.value != rhs.coeff or lhs.a_power != rhs.a_power:
                res.fail(f"(k={k}, l={l}): {lhs.value} a^{lhs.a_power} vs {rhs.coeff} a^{rhs.a_power}")
    return res


DEFAULT_SUITES = ("pochhammer", "gamma-recurrence", "constraint-roundtrip", "continuation", "generating-functional")
EXTRA_SUITES = ("term-matching",)


def run_suites(names=DEFAULT_SUITES, max_q: int = 20, branch: int = REFLECTION_BRANCH) -> list[SuiteResult]:
    runners: dict[str, Callable[[], SuiteResult]] = {
        "pochhammer": lambda: pochhammer_suite(max_q=max_q, branch=branch),
        "gamma-recurrence": gamma_recurrence_suite,
        "constraint-roundtrip": constraint_roundtrip_suite,
        "continuation": lambda: continuation_suite(branch=branch),
        "generating-functional": generating_suite,
        "term-matching": term_matching_suite,
    }
    unknown = [n for n in names if n not in runners]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [runners[n]() for n in names]
