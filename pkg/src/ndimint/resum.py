"""Resumming  sum_m i^m/m! int x^m/(x^2+a^2) dx  with NDIM moment values.

Each moment is taken as ``a_of_r(m, a) = (pi/a)(-a)^m``, so term m is the
exact rational ``(-a)^m / (a m!)`` times pi. Partial sums are kept exact and
only rendered to floats for reporting, which keeps the large-a case (terms
growing to ~a^a/a! before they shrink) free of cancellation noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .ndim_core import Number, a_of_r, to_fraction
from .specfun import ExactValue

TAIL_WINDOW = 8


class NotConverged(RuntimeError):
    pass


@dataclass
class SeriesDiagnostics:
    terms_used: int
    last_term_magnitude: float
    partial_sums: list[float] = field(default_factory=list)
    converged: bool = False
    closed_form_target: Optional[float] = None

    @property
    def error_vs_target(self) -> Optional[float]:
        if self.closed_form_target is None or not self.partial_sums:
            return None
        return abs(self.partial_sums[-1] - self.closed_form_target)


def closed_form(a: Number) -> float:
    """(pi/a) e^{-a}."""
    a = float(to_fraction(a))
    return math.pi / a * math.exp(-a)


def exp_series_term(m: int, a: Number) -> ExactValue:
    """NDIM moment over m!, exact: a rational multiple of pi."""
    return a_of_r(m, a) / math.factorial(m)


def resum_exp_series(a: Number, stop_tolerance: float = 1e-14, max_terms: int = 200) -> tuple[float, SeriesDiagnostics]:
    """Sum the series until two consecutive terms fall below the stop rule.

    A term is small when ``|term| <= stop_tolerance * max(1, |partial sum|)``.
    Raises :class:`NotConverged` if ``max_terms`` terms are not enough.
    """
    a = to_fraction(a)
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    if max_terms < 1:
        raise ValueError("max_terms must be at least 1")
    if not stop_tolerance > 0:
        raise ValueError("stop_tolerance must be positive")

    # every term is (rational) * pi; track the rational part
    total = Fraction(0)
    tail: list[float] = []
    quiet = 0
    last = math.inf
    for m in range(max_terms):
        term = exp_series_term(m, a)
        total += term.coeff
        partial = float(total) * math.pi
        tail.append(partial)
        del tail[:-TAIL_WINDOW]
        last = abs(float(term))
        if last <= stop_tolerance * max(1.0, abs(partial)):
            quiet += 1
            if quiet >= 2:
                diag = SeriesDiagnostics(m + 1, last, tail, True, closed_form(a))
                return partial, diag
        else:
            quiet = 0
    raise NotConverged(f"a={a}: {max_terms} terms, last term {last:.3e}")


@dataclass(frozen=True)
class TermRow:
    """One line of the term ledger.

    ``series_phase`` is the i^m of the exponential expansion and
    ``moment_phase`` the i^m prefactor of the continued moment; their product
    is (-1)^m, which is how the real alternating terms arise from
    ``(pi/a) a^m / m!``.
    """

    m: int
    series_phase: ExactValue
    moment_phase: ExactValue
    term: ExactValue
    partial_sum: float

    @property
    def combined_phase(self) -> ExactValue:
        return self.series_phase * self.moment_phase


def term_table(a: Number, m_max: int) -> list[TermRow]:
    if m_max < 0:
        raise ValueError("m_max must be non-negative")
    a = to_fraction(a)
    rows = []
    total = Fraction(0)
    for m in range(m_max + 1):
        term = exp_series_term(m, a)
        total += term.coeff
        phase = ExactValue.unit(m)
        rows.append(TermRow(m, phase, phase, term, float(total) * math.pi))
    return rows
