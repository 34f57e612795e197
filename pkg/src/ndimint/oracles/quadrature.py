"""Numerical integration over the whole real line.

Two engines:

* ``tanh-sinh``: the double-exponential map x = c + h sinh(pi/2 sinh t) with
  the trapezoid rule, step halved until two levels agree. Good for smooth
  integrands that decay algebraically or faster and do not oscillate.
* ``panels``: for integrands carrying cos(omega x) or sin(omega x). The line
  is folded onto [0, inf), a core interval is done by adaptive Gauss-Legendre
  bisection, and the tail is cut into half-period panels whose partial sums
  are extrapolated with Wynn's epsilon algorithm.

Both are deterministic: fixed node schedules, sums in a fixed order.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "NDIM_EVAL_BUDGET"

TANH_SINH = "tanh-sinh"
PANELS = "panels"


class QuadratureError(RuntimeError):
    pass


class ToleranceNotReached(QuadratureError):
    pass


class NonFiniteSample(QuadratureError):
    pass


def eval_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    value = int(float(raw))
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {raw!r}")
    return value


@dataclass(frozen=True)
class QuadratureRequest:
    """What to integrate over (-inf, inf) and how hard to try.

    ``omega`` is the oscillation frequency for the ``panels`` engine;
    ``center`` and ``scale`` place the tanh-sinh map over the bulk of the
    integrand (a Gaussian peaked away from 0, say). ``budget`` of None means
    the environment default.
    """

    integrand: Callable[[float], float]
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    transform: str = TANH_SINH
    omega: float = 0.0
    center: float = 0.0
    scale: float = 1.0
    budget: Optional[int] = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.transform not in (TANH_SINH, PANELS):
            raise ValueError(f"unknown transform {self.transform!r}")
        if self.transform == PANELS and not self.omega > 0:
            raise ValueError("the panel engine needs omega > 0")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


class _Counter:
    def __init__(self, f: Callable[[float], float], budget: int):
        self.f = f
        self.budget = budget
        self.calls = 0

    def __call__(self, x: float) -> float:
        if self.calls >= self.budget:
            raise ToleranceNotReached(f"evaluation budget of {self.budget} exhausted")
        self.calls += 1
        y = self.f(x)
        if not math.isfinite(y):
            raise NonFiniteSample(f"integrand returned {y!r} at x = {x!r}")
        return y


def integrate_numeric(req: QuadratureRequest) -> QuadratureResult:
    budget = req.budget if req.budget is not None else eval_budget()
    f = _Counter(req.integrand, budget)
    if req.transform == TANH_SINH:
        value, err = _tanh_sinh(f, req)
    else:
        value, err = _panels(f, req)
    return QuadratureResult(value, err, f.calls)


def _target(req: QuadratureRequest, value: float) -> float:
    return max(req.abs_tol, req.rel_tol * abs(value))


# -- tanh-sinh ---------------------------------------------------------------

_T_MAX = 6.0
_MAX_LEVEL = 12


def _tanh_sinh(f: _Counter, req: QuadratureRequest) -> tuple[float, float]:
    c, sc = req.center, req.scale
    halfpi = math.pi / 2

    def term(t: float) -> float:
        u = halfpi * math.sinh(t)
        x = c + sc * math.sinh(u)
        # far tail: a decaying integrand contributes nothing representable here
        if not abs(x) < 1e30:
            return 0.0
        w = sc * halfpi * math.cosh(t) * math.cosh(u)
        y = f(x)
        return y * w

    def sweep(ts) -> float:
        # walk outward from 0 on each side and stop once terms are negligible
        total = 0.0
        for sign in (1.0, -1.0):
            small = 0
            for t in ts:
                v = term(sign * t)
                total += v
                if abs(v) < 1e-18 * max(1.0, abs(total)):
                    small += 1
                    if small >= 3:
                        break
                else:
                    small = 0
        return total

    h = 1.0
    n_pos = int(_T_MAX / h)
    s = term(0.0) + sweep([k * h for k in range(1, n_pos + 1)])
    estimate = s * h
    prev_err = math.inf
    for _level in range(_MAX_LEVEL):
        h /= 2
        n_pos = int(_T_MAX / h)
        s += sweep([k * h for k in range(1, n_pos + 1, 2)])
        new = s * h
        err = abs(new - estimate)
        estimate = new
        # quadratic convergence: once the change is tiny the next one is far smaller
        if err <= _target(req, new) and (err < 1e-3 * prev_err or err <= 1e-15 * abs(new) or err == 0.0):
            return new, err
        prev_err = err
    raise ToleranceNotReached(f"tanh-sinh did not settle: last change {err:.3e} for estimate {estimate!r}")


# -- Gauss-Legendre pieces ---------------------------------------------------

_GL_ORDER = 24
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)


def _gl(f: _Counter, a: float, b: float) -> float:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    total = 0.0
    for x, w in zip(_GL_X, _GL_W):
        total += w * f(mid + half * x)
    return float(total * half)


def _adaptive_gl(f: _Counter, a: float, b: float, tol: float, depth: int = 0) -> tuple[float, float]:
    whole = _gl(f, a, b)
    m = 0.5 * (a + b)
    left, right = _gl(f, a, m), _gl(f, m, b)
    err = abs(left + right - whole)
    # the split estimate is pessimistic; floor it at roundoff of the piece
    if err <= max(tol, 1e-15 * (abs(left) + abs(right))) or depth >= 40:
        return left + right, err
    lv, le = _adaptive_gl(f, a, m, tol / 2, depth + 1)
    rv, re = _adaptive_gl(f, m, b, tol / 2, depth + 1)
    return lv + rv, le + re


# -- Wynn epsilon ------------------------------------------------------------

def wynn_epsilon(partial_sums: list[float]) -> tuple[float, float]:
    """Limit estimate of a sequence via Wynn's epsilon table.

    Returns the deepest even-column entry and the gap to the one before it,
    which serves as the error estimate.
    """
    n = len(partial_sums)
    if n == 0:
        raise ValueError("no partial sums")
    if n < 3:
        return partial_sums[-1], math.inf
    if partial_sums[-1] == partial_sums[-2] == partial_sums[-3]:
        return partial_sums[-1], 0.0
    prev = [0.0] * (n + 1)
    cur = list(partial_sums)
    estimates = [partial_sums[-1]]
    col = 0
    while len(cur) > 1:
        nxt = []
        for j in range(len(cur) - 1):
            diff = cur[j + 1] - cur[j]
            if diff == 0.0:
                nxt.append(math.inf)
            else:
                nxt.append(prev[j + 1] + 1.0 / diff)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0 and cur and math.isfinite(cur[-1]):
            estimates.append(cur[-1])
    if len(estimates) < 2:
        return estimates[-1], math.inf
    return estimates[-1], abs(estimates[-1] - estimates[-2])


_MAX_PANELS = 400
_MIN_PANELS = 12


def _panels(f: _Counter, req: QuadratureRequest) -> tuple[float, float]:
    def g(x: float) -> float:
        return f(x) + f(-x)

    g_counted = _Counter(g, math.inf)  # evaluations are counted by f
    half_period = math.pi / req.omega
    core = max(8.0 * req.scale + abs(req.center), 4 * half_period)
    core = half_period * math.ceil(core / half_period)
    panel_tol = 0.1 * req.abs_tol
    core_value, core_err = _adaptive_gl(g_counted, 0.0, core, panel_tol)

    partial = [core_value]
    panel_err = core_err
    x = core
    best, best_err = core_value, math.inf
    history: list[float] = []
    for n in range(_MAX_PANELS):
        value, err = _adaptive_gl(g_counted, x, x + half_period, panel_tol)
        panel_err += err
        x += half_period
        partial.append(partial[-1] + value)
        if n + 1 < _MIN_PANELS:
            continue
        # extrapolate from a trailing window to keep the epsilon table well conditioned
        window = partial[-min(len(partial), 24):]
        est, gap = wynn_epsilon(window)
        history.append(est)
        if len(history) >= 2:
            gap = max(gap, abs(history[-1] - history[-2]))
        if gap < best_err:
            best, best_err = est, gap
        if gap + panel_err <= _target(req, est) and len(history) >= 3:
            return est, gap + panel_err
    if best_err + panel_err <= _target(req, best):
        return best, best_err + panel_err
    raise ToleranceNotReached(f"panel extrapolation stalled at {best!r} (error estimate {best_err:.3e})")
