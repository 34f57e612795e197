"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed in the pytest terminal summary under
"acceptance criteria".
"""

import math
import time
from fractions import Fraction

import pytest

import conftest
from ndimint.identities import continuation_suite, generating_suite, pochhammer_suite, term_matching_suite
from ndimint.ndim_core import IntegralSpec, a_of_r, i_pol, i_star_ac
from ndimint.oracles.corpus import check_entry, load_builtin_corpus
from ndimint.oracles.quadrature import PANELS, QuadratureRequest, integrate_numeric
from ndimint.oracles.residues import RationalIntegrand, integrate_by_residues
from ndimint.resum import closed_form, resum_exp_series
from ndimint.specfun import REFLECTION_BRANCH, ExactValue


def record(n, ok, detail):
    conftest.ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
    return ok


def rel(x, y):
    return abs(x - y) / abs(y)


def test_c1_end_to_end():
    start = time.perf_counter()
    worst_closed = worst_oracles = 0.0
    for a in (Fraction(1, 2), 1, 2, 5):
        af = float(a)
        value, _ = resum_exp_series(a, stop_tolerance=1e-15, max_terms=400)
        res = integrate_by_residues(RationalIntegrand((1.0,), ((complex(0, af), 1),), 1.0)).real
        quad = integrate_numeric(
            QuadratureRequest(lambda x: math.cos(x) / (x * x + af * af), 1e-13, 1e-12, PANELS, omega=1.0, scale=af)
        ).value
        worst_closed = max(worst_closed, rel(value, closed_form(a)))
        worst_oracles = max(worst_oracles, rel(value, res), rel(value, quad))
    elapsed = time.perf_counter() - start
    ok = worst_closed <= 1e-12 and worst_oracles <= 1e-9 and elapsed < 1.0
    record(1, ok, f"resummation vs closed form rel {worst_closed:.2e} (<=1e-12), vs oracles rel {worst_oracles:.2e} (<=1e-9), {elapsed:.2f}s (<1s)")
    assert ok


def test_c2_cosine_lorentzian():
    r = integrate_numeric(QuadratureRequest(lambda x: math.cos(x) / (x * x + 1), 1e-12, 1e-12, PANELS, omega=1.0))
    err = abs(r.value - math.pi / math.e)
    ok = err <= 1e-9 and r.evaluations <= 2_000_000
    record(2, ok, f"|quad - pi/e| = {err:.2e} (<=1e-9) using {r.evaluations} evaluations (<=2e6)")
    assert ok


def test_c3_generating_functional():
    res = generating_suite(rel_tol=1e-10)
    ok = res.passed and res.checked == 27
    record(3, ok, f"{res.checked} grid points, max rel diff {res.info['max_rel_diff']:.2e} (<=1e-10)")
    assert ok, res.failures


def test_c4_term_matching():
    res = term_matching_suite(12)
    record(4, res.passed, f"{res.checked} (k,l) pairs matched exactly, {len(res.failures)} mismatches")
    assert res.passed, res.failures


def test_c5_continuation():
    res = continuation_suite(r_max=40)
    # both halves asserted directly as well as through the suite
    even_ok = all(
        i_star_ac(IntegralSpec(r, -1)).at(a) == ExactValue.make(Fraction(a) ** (r - 1), 2)
        for r in range(0, 41, 2)
        for a in (Fraction(1, 2), 1, 3)
    )
    odd_ok = all(i_star_ac(IntegralSpec(r, -1)).is_pole and a_of_r(r, 2).is_finite for r in range(1, 40, 2))
    ok = res.passed and even_ok and odd_ok
    record(5, ok, f"even r<=40 exact: {even_ok}; odd r<=39 pole with finite prescription: {odd_ok}")
    assert ok, res.failures


def test_c6_pochhammer_identity():
    res = pochhammer_suite(max_q=20, p_max=10)
    frac = res.info["finite_fraction"]
    ok = res.passed and frac >= 0.95
    record(
        6,
        ok,
        f"exact equality on {res.info['finite_points']} finite points: {res.passed}; "
        f"finite fraction {frac:.4f} of {res.info['grid_points']} (bound >=0.95)",
    )
    # 155 grid points are genuine poles of (p)_q, so the 0.95 bound cannot hold
    assert res.passed, res.failures
    assert frac >= 0.95, f"finite-testable fraction {frac:.4f} < 0.95"


def test_c7_polynomial_moments_vanish():
    ok = all(i_pol(n, continued=c).is_zero for n in range(21) for c in (False, True))
    record(7, ok, "i_pol(n) == 0 exactly for n in 0..20, both modes")
    assert ok


def test_c8_corpus():
    entries = load_builtin_corpus()
    outcomes = [check_entry(e, abs_tol=1e-9, rel_tol=1e-8) for e in entries]
    mults = {m for e in entries for _, m in e.integrand.roots}
    omegas = {e.integrand.omega for e in entries}
    worst = max(o.discrepancy for o in outcomes)
    ok = len(entries) >= 10 and max(mults) == 3 and {0.0, 1.0, 2.0} <= omegas and all(o.passed for o in outcomes)
    record(8, ok, f"{sum(o.passed for o in outcomes)}/{len(entries)} entries agree, worst |diff| {worst:.2e}")
    assert ok, [o.message for o in outcomes if not o.passed]


def test_c9_branch_mutation():
    flipped = continuation_suite(r_max=40, branch=-REFLECTION_BRANCH)
    even_failures = [f for f in flipped.failures if "expected a pole" not in f]
    ok = not flipped.passed and bool(even_failures)
    record(9, ok, f"flipped branch fails the even-r continuation suite: {ok} ({len(flipped.failures)} failures kept)")
    assert ok
