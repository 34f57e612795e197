import math

import pytest
from scipy import integrate

from ndimint.oracles.quadrature import (
    BUDGET_ENV,
    DEFAULT_BUDGET,
    PANELS,
    NonFiniteSample,
    QuadratureRequest,
    ToleranceNotReached,
    eval_budget,
    integrate_numeric,
    wynn_epsilon,
)


def test_lorentzian():
    r = integrate_numeric(QuadratureRequest(lambda x: 1 / (x * x + 1)))
    assert r.value == pytest.approx(math.pi, abs=1e-12)
    assert r.evaluations > 0 and r.error_estimate < 1e-10


def test_gaussian():
    r = integrate_numeric(QuadratureRequest(lambda x: math.exp(-x * x)))
    assert r.value == pytest.approx(math.sqrt(math.pi), rel=1e-13)


def test_cosine_lorentzian():
    r = integrate_numeric(QuadratureRequest(lambda x: math.cos(x) / (x * x + 1), 1e-12, 1e-12, PANELS, omega=1.0))
    assert r.value == pytest.approx(math.pi / math.e, abs=1e-11)


def test_slow_sine_tail():
    # x sin x / (x^2 + 1) decays like 1/x; the panel extrapolation has to do the work
    r = integrate_numeric(QuadratureRequest(lambda x: x * math.sin(x) / (x * x + 1), 1e-11, 1e-11, PANELS, omega=1.0))
    assert r.value == pytest.approx(math.pi / math.e, abs=1e-10)


@pytest.mark.parametrize("omega,a", [(2.0, 0.7), (0.5, 3.0), (3.0, 1.0)])
def test_against_closed_form_and_scipy(omega, a):
    f = lambda x: 1 / (x * x + a * a) ** 2
    exact = math.pi / (2 * a**3) * (1 + a * omega) * math.exp(-a * omega)
    ref, _ = integrate.quad(f, 0, math.inf, weight="cos", wvar=omega)
    r = integrate_numeric(
        QuadratureRequest(lambda x: math.cos(omega * x) * f(x), 1e-13, 1e-12, PANELS, omega=omega, scale=a)
    )
    assert r.value == pytest.approx(exact, rel=1e-11)
    # QAWF is the looser of the two
    assert r.value == pytest.approx(2 * ref, rel=1e-8)


def test_shifted_gaussian_with_center():
    f = lambda x: math.exp(-((x - 7) ** 2) * 4)
    r = integrate_numeric(QuadratureRequest(f, center=7.0, scale=0.5))
    assert r.value == pytest.approx(math.sqrt(math.pi / 4), rel=1e-13)


def test_deterministic():
    req = QuadratureRequest(lambda x: math.cos(2 * x) / (x * x + 2), 1e-12, 1e-12, PANELS, omega=2.0)
    assert integrate_numeric(req) == integrate_numeric(req)


def test_budget_exhaustion():
    with pytest.raises(ToleranceNotReached):
        integrate_numeric(QuadratureRequest(lambda x: 1 / (x * x + 1), budget=10))


def test_budget_from_environment(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV, raising=False)
    assert eval_budget() == DEFAULT_BUDGET
    monkeypatch.setenv(BUDGET_ENV, "50")
    assert eval_budget() == 50
    with pytest.raises(ToleranceNotReached):
        integrate_numeric(QuadratureRequest(lambda x: math.cos(x) / (x * x + 1), transform=PANELS, omega=1.0))


def test_non_finite_sample():
    with pytest.raises(NonFiniteSample):
        integrate_numeric(QuadratureRequest(lambda x: 1 / x if x != 0 else math.nan))


def test_bad_requests():
    with pytest.raises(ValueError):
        QuadratureRequest(lambda x: x, abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureRequest(lambda x: x, transform=PANELS)
    with pytest.raises(ValueError):
        QuadratureRequest(lambda x: x, transform="simpson")


def test_wynn_on_alternating_harmonic():
    partial, s = [], 0.0
    for n in range(1, 16):
        s += (-1) ** (n + 1) / n
        partial.append(s)
    est, err = wynn_epsilon(partial)
    assert est == pytest.approx(math.log(2), abs=1e-10)
    assert err < 1e-8
