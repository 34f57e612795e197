"""Line-delimited corpus of rational x exponential integrands.

One JSON object per line::

    {"label": "...", "numerator": [c0, c1, ...], "roots": [[re, im, m], ...],
     "omega": 1.0, "expected": [re, im] or null, "provenance": "..."}

Numerator coefficients are ascending. Each root is listed once, in the upper
half-plane; its conjugate is implied. Blank lines and lines starting with
``#`` are skipped.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .quadrature import PANELS, TANH_SINH, QuadratureRequest, integrate_numeric
from .residues import RationalIntegrand, ResidueError, integrate_by_residues


class CorpusParse(ValueError):
    def __init__(self, line: int, message: str, label: str = ""):
        self.line = line
        self.label = label
        where = f"line {line}" + (f" ({label})" if label else "")
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class CorpusEntry:
    integrand: RationalIntegrand
    expected: Optional[complex]
    provenance: str
    line: int

    @property
    def label(self) -> str:
        return self.integrand.label


def parse_line(text: str, line: int) -> CorpusEntry:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusParse(line, f"invalid JSON: {exc.msg}") from None
    if not isinstance(record, dict):
        raise CorpusParse(line, "record must be a JSON object")
    label = str(record.get("label", ""))
    try:
        numerator = [float(c) for c in record["numerator"]]
        roots = []
        for triple in record["roots"]:
            re_, im_, mult = triple
            roots.append((complex(float(re_), float(im_)), int(mult)))
        omega = float(record.get("omega", 0.0))
        expected = record.get("expected")
        if expected is not None:
            expected = complex(float(expected[0]), float(expected[1]))
        provenance = str(record.get("provenance", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusParse(line, f"malformed field: {exc}", label) from None
    try:
        integrand = RationalIntegrand(tuple(numerator), tuple(roots), omega, label=label)
        integrand.check_degree()
    except ResidueError as exc:
        raise CorpusParse(line, str(exc), label) from None
    return CorpusEntry(integrand, expected, provenance, line)


def parse_corpus(lines: Iterable[str]) -> list[CorpusEntry]:
    entries = []
    for n, text in enumerate(lines, start=1):
        stripped = text.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_line(stripped, n))
    return entries


def load_corpus(path: Union[str, Path]) -> list[CorpusEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


def builtin_corpus_path() -> Path:
    return Path(str(resources.files("ndimint") / "data" / "corpus.jsonl"))


def load_builtin_corpus() -> list[CorpusEntry]:
    return load_corpus(builtin_corpus_path())


def entry_to_json(integrand: RationalIntegrand, expected: Optional[complex], provenance: str) -> str:
    record = {
        "label": integrand.label,
        "numerator": list(integrand.numerator),
        "roots": [[z.real, z.imag, m] for z, m in integrand.roots],
        "omega": integrand.omega,
        "expected": None if expected is None else [expected.real, expected.imag],
        "provenance": provenance,
    }
    return json.dumps(record)


@dataclass(frozen=True)
class NumericValue:
    value: complex
    error_estimate: float
    evaluations: int


def integrate_rational_numeric(
    integrand: RationalIntegrand, abs_tol: float = 1e-11, rel_tol: float = 1e-11, budget: Optional[int] = None
) -> NumericValue:
    """Quadrature of the real and (for omega > 0) imaginary parts separately."""
    scale = max(abs(z) for z, _ in integrand.roots)
    center = sum(z.real for z, _ in integrand.roots) / len(integrand.roots)
    if integrand.omega == 0:
        res = integrate_numeric(
            QuadratureRequest(integrand.real_part(), abs_tol, rel_tol, TANH_SINH, center=center, scale=scale, budget=budget)
        )
        return NumericValue(complex(res.value, 0.0), res.error_estimate, res.evaluations)
    common = dict(transform=PANELS, omega=integrand.omega, center=center, scale=scale)
    re_ = integrate_numeric(QuadratureRequest(integrand.real_part(), abs_tol, rel_tol, budget=budget, **common))
    remaining = None if budget is None else max(1, budget - re_.evaluations)
    im_ = integrate_numeric(QuadratureRequest(integrand.imag_part(), abs_tol, rel_tol, budget=remaining, **common))
    return NumericValue(
        complex(re_.value, im_.value),
        math.hypot(re_.error_estimate, im_.error_estimate),
        re_.evaluations + im_.evaluations,
    )


def agree(x: complex, y: complex, abs_tol: float, rel_tol: float) -> bool:
    return abs(x - y) <= max(abs_tol, rel_tol * max(abs(x), abs(y)))


@dataclass(frozen=True)
class CorpusOutcome:
    entry: CorpusEntry
    residue: Optional[complex]
    quadrature: Optional[complex]
    evaluations: int
    passed: bool
    message: str = ""

    @property
    def discrepancy(self) -> float:
        if self.residue is None or self.quadrature is None:
            return math.nan
        return abs(self.residue - self.quadrature)


def check_entry(entry: CorpusEntry, abs_tol: float = 1e-9, rel_tol: float = 1e-8) -> CorpusOutcome:
    """Residue value against quadrature (and against ``expected`` if present)."""
    try:
        res = integrate_by_residues(entry.integrand)
        num = integrate_rational_numeric(entry.integrand, abs_tol=min(abs_tol, 1e-11), rel_tol=min(rel_tol, 1e-11))
    except Exception as exc:  # reported in-band, the harness keeps going
        return CorpusOutcome(entry, None, None, 0, False, f"{type(exc).__name__}: {exc}")
    ok = agree(res, num.value, abs_tol, rel_tol)
    message = "" if ok else "residue and quadrature disagree"
    if ok and entry.expected is not None and not agree(res, entry.expected, abs_tol, rel_tol):
        ok, message = False, "residue value differs from the recorded expected value"
    return CorpusOutcome(entry, res, num.value, num.evaluations, ok, message)
