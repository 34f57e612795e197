"""Evaluation reports and their JSON / CSV / table encodings.

JSON is the format of record. CSV carries the same fields flattened with
``_`` joining nested keys. Floats are written with 17 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Optional

METHODS = ("ndim", "residue", "quad")
TIMING_KEY = "timing_ms"


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


@dataclass
class EvaluationReport:
    a: float
    a_exact: str
    methods: tuple[str, ...]
    closed_form: float
    ndim_value: Optional[float] = None
    residue_value: Optional[float] = None
    quadrature_value: Optional[float] = None
    quadrature_error: Optional[float] = None
    quadrature_evaluations: Optional[int] = None
    series: Optional[dict] = None
    timing_ms: dict = field(default_factory=dict)
    terms: Optional[list[dict]] = None

    def values(self) -> dict[str, float]:
        out = {}
        for name, v in (("ndim", self.ndim_value), ("residue", self.residue_value), ("quad", self.quadrature_value)):
            if name in self.methods and v is not None:
                out[name] = v
        return out

    def discrepancies(self) -> dict[str, dict[str, float]]:
        """Pairwise absolute and relative differences, recomputed on every call."""
        vals = self.values()
        out = {}
        for x, y in combinations([m for m in METHODS if m in vals], 2):
            diff = abs(vals[x] - vals[y])
            scale = max(abs(vals[x]), abs(vals[y]))
            out[f"{x}_vs_{y}"] = {"abs": diff, "rel": diff / scale if scale else 0.0}
        return out

    def max_relative_discrepancy(self) -> float:
        rels = [d["rel"] for d in self.discrepancies().values()]
        return max(rels) if rels else 0.0

    def to_dict(self, include_timing: bool = True) -> dict:
        d: dict[str, Any] = {
            "a": self.a,
            "a_exact": self.a_exact,
            "methods": list(self.methods),
            "closed_form": self.closed_form,
            "ndim": self.ndim_value,
            "residue": self.residue_value,
            "quadrature": None
            if self.quadrature_value is None
            else {
                "value": self.quadrature_value,
                "error_estimate": self.quadrature_error,
                "evaluations": self.quadrature_evaluations,
            },
            "series": self.series,
            "discrepancies": self.discrepancies(),
            "max_rel_discrepancy": self.max_relative_discrepancy(),
        }
        if self.terms is not None:
            d["terms"] = self.terms
        if include_timing:
            d[TIMING_KEY] = dict(self.timing_ms)
        return d


# -- JSON ---------------------------------------------------------------------

def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """json.dumps with floats fixed at 17 significant digits and sorted-free key order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(x is None or isinstance(x, (int, float, str, bool)) for x in obj):
            return "[" + ", ".join(dumps(x, indent, _level + 1) for x in obj) + "]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def strip_timing(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != TIMING_KEY}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


# -- CSV ----------------------------------------------------------------------

def flatten(d: dict, prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "_"))
        elif isinstance(v, list):
            out[key] = ";".join(str(x) for x in v)
        else:
            out[key] = v
    return out


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def to_csv(rows: Iterable[dict]) -> str:
    rows = [flatten(r) for r in rows]
    if not rows:
        return ""
    columns: list[str] = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


# -- human table --------------------------------------------------------------

def _short(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def to_table(headers: list[str], rows: list[list[Any]]) -> str:
    cells = [[_short(v) for v in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(out)
