"""Regenerate src/ndimint/data/corpus.jsonl.

Expected values come from the quadrature oracle; each one is also checked
against scipy.integrate.quad before it is written.
"""

import math
import sys
from pathlib import Path

import numpy as np
from scipy import integrate

from ndimint.oracles.corpus import entry_to_json, integrate_rational_numeric
from ndimint.oracles.residues import RationalIntegrand

ENTRIES = [
    ("lorentzian", (1,), ((1j, 1),), 0),
    ("lorentzian-squared", (1,), ((1j, 2),), 0),
    ("lorentzian-cubed", (1,), ((1j, 3),), 0),
    ("two-scale", (0, 0, 1), ((1j, 1), (2j, 1)), 0),
    ("shifted-double", (1,), ((-1 + 1j, 2),), 0),
    ("cos-a1", (1,), ((1j, 1),), 1),
    ("cos-2x-a2", (1,), ((2j, 1),), 2),
    ("x-sin", (0, 1), ((1j, 1),), 1),
    ("exp-double", (1,), ((1j, 2),), 1),
    ("exp-triple", (1,), ((1j, 3),), 2),
    ("offset-pair", (1, 1), ((1 + 1j, 1), (2j, 1)), 1),
    ("x2-two-scale", (0, 0, 1), ((1j, 1), (3j, 1)), 1),
    ("mixed-order", (2, 0, 1), ((0.5 + 1j, 2), (-1 + 1.5j, 1)), 2),
]


def scipy_value(ig: RationalIntegrand) -> complex:
    den = ig.denominator_coefficients()
    num = np.asarray(ig.numerator)
    P = np.polynomial.polynomial.polyval
    if ig.omega == 0:
        v, _ = integrate.quad(lambda x: P(x, num) / P(x, den), -np.inf, np.inf, epsabs=1e-13, epsrel=1e-13, limit=500)
        return complex(v, 0)
    parts = []
    for weight in ("cos", "sin"):
        # QAWF on [0, inf) for x and -x separately
        f_pos = lambda x: P(x, num) / P(x, den)
        f_neg = lambda x: P(-x, num) / P(-x, den)
        a, _ = integrate.quad(f_pos, 0, np.inf, weight=weight, wvar=ig.omega, limlst=200)
        b, _ = integrate.quad(f_neg, 0, np.inf, weight=weight, wvar=ig.omega, limlst=200)
        parts.append(a + b if weight == "cos" else a - b)
    return complex(*parts)


def main(out: Path) -> None:
    lines = []
    for label, num, roots, omega in ENTRIES:
        ig = RationalIntegrand(num, roots, omega, label=label)
        value = integrate_rational_numeric(ig, 1e-12, 1e-12).value
        check = scipy_value(ig)
        if abs(value - check) > 1e-9 * max(1.0, abs(value)):
            sys.exit(f"{label}: oracle {value} vs scipy {check}")
        value = complex(round(value.real, 15), round(value.imag, 15))
        lines.append(entry_to_json(ig, value, "quadrature-oracle"))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} entries to {out}")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parents[1] / "src/ndimint/data/corpus.jsonl")
