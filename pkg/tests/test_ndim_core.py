import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st
from scipy import integrate

from conftest import to_sympy
from ndimint.ndim_core import (
    GeneratingParams,
    IntegralSpec,
    NegativeN,
    NoPreimage,
    NonPositiveBeta,
    SeriesIndex,
    a_of_r,
    generating_closed_form,
    generating_integrand,
    generating_series_coefficient,
    i_pol,
    i_pol_prefactor,
    i_star,
    i_star_ac,
    solve_constraints_forward,
    solve_constraints_inverse,
    term_matching_lhs,
)
from ndimint.specfun import REFLECTION_BRANCH, ExactValue

HALF = Fraction(1, 2)


def matched_moment(k: int, l: int):
    """Moment read off by equating coefficients of alpha^r beta^s, done in sympy.

    r! Gamma(s+1) (-1)^-(r+s) * sqrt(pi) (-1)^k / (4^l k! l!) with the
    principal (-1)^w = exp(i pi w).
    """
    r = 2 * l
    s = sp.Rational(2 * k - 2 * l - 1, 2)
    coeff = sp.sqrt(sp.pi) * (-1) ** k / (4**l * sp.factorial(k) * sp.factorial(l))
    return sp.factorial(r) * sp.gamma(s + 1) * sp.exp(-sp.I * sp.pi * (r + s)) * coeff


class TestGeneratingFunctional:
    def test_pure_gaussian(self):
        assert generating_closed_form(GeneratingParams(0, 1, 0)) == pytest.approx(1.7724538509, abs=1e-10)

    def test_exponent_cancels(self):
        assert generating_closed_form(GeneratingParams(2, 1, 1)) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_against_scipy(self):
        p = GeneratingParams(0, 2, 1)
        ref, _ = integrate.quad(generating_integrand(p), -math.inf, math.inf, epsabs=1e-15, epsrel=1e-13)
        assert generating_closed_form(p) == pytest.approx(ref, rel=1e-10)
        assert generating_closed_form(p) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-2), rel=1e-14)

    def test_beta_must_be_positive(self):
        with pytest.raises(NonPositiveBeta):
            GeneratingParams(1, 0, 1)


class TestSeriesCoefficient:
    def test_leading(self):
        t = generating_series_coefficient(0, 0)
        assert t.coeff == ExactValue.sqrt_pi()
        assert (t.a_power, t.alpha_power, t.beta_power) == (0, 0, -HALF)

    def test_k_sign(self):
        t = generating_series_coefficient(1, 0)
        assert t.coeff == ExactValue.make(-1, 1)
        assert t.a_power == 2 and t.beta_power == HALF

    def test_second_order_in_alpha(self):
        t = generating_series_coefficient(0, 2)
        assert t.coeff == ExactValue.make(Fraction(1, 32), 1)
        assert t.alpha_power == 4 and t.beta_power == Fraction(-5, 2)

    @pytest.mark.parametrize("k,l", [(0, 0), (1, 0), (0, 2), (3, 1), (2, 4), (5, 5)])
    def test_against_sympy_expansion(self, k, l):
        A, b, al = sp.symbols("A b alpha", positive=True)
        # expand exp(-b A) and exp(alpha^2/(4b)) separately and multiply coefficients
        c_k = sp.series(sp.exp(-b * A), A, 0, k + 1).removeO().coeff(A, k)
        c_l = sp.series(sp.exp(al**2 / (4 * b)), al, 0, 2 * l + 1).removeO().coeff(al, 2 * l)
        # sqrt(pi/b) carries the remaining b^(-1/2)
        stripped = sp.simplify(c_k * c_l / b ** (k - l))
        assert not stripped.has(b)
        t = generating_series_coefficient(k, l)
        assert sp.simplify(to_sympy(t.coeff) - sp.sqrt(sp.pi) * stripped) == 0
        assert t.beta_power == Fraction(2 * (k - l) - 1, 2)


class TestConstraints:
    @pytest.mark.parametrize("k,l,r,s", [(0, 0, 0, -HALF), (2, 1, 2, HALF), (0, 3, 6, Fraction(-7, 2))])
    def test_forward(self, k, l, r, s):
        assert solve_constraints_forward(SeriesIndex(k, l)) == (r, s)

    def test_inverse(self):
        assert solve_constraints_inverse(0, -HALF) == SeriesIndex(0, 0)
        assert solve_constraints_inverse(4, HALF) == SeriesIndex(3, 2)

    @pytest.mark.parametrize("r,s", [(1, -HALF), (0, Fraction(-3, 2)), (2, 0)])
    def test_no_preimage(self, r, s):
        with pytest.raises(NoPreimage):
            solve_constraints_inverse(r, s)

    @given(st.integers(0, 50), st.integers(0, 50))
    def test_roundtrip(self, k, l):
        r, s = solve_constraints_forward(SeriesIndex(k, l))
        assert solve_constraints_inverse(r, s) == SeriesIndex(k, l)


class TestIStar:
    def test_base_case(self):
        v = i_star(IntegralSpec(0, -HALF))
        assert v.value == ExactValue.make(1, 2, 1)  # i*pi
        assert v.a_power == 0

    @pytest.mark.parametrize("r,s,k,l", [(2, -HALF, 1, 1), (0, HALF, 1, 0), (4, Fraction(-5, 2), 0, 2), (6, Fraction(3, 2), 5, 3)])
    def test_matches_coefficient_oracle(self, r, s, k, l):
        assert solve_constraints_forward(SeriesIndex(k, l)) == (r, s)
        v = i_star(IntegralSpec(r, s))
        assert sp.simplify(to_sympy(v.value) - matched_moment(k, l)) == 0
        assert v.a_power == 2 * k

    def test_term_matching_grid(self):
        for k in range(13):
            for l in range(13):
                lhs = term_matching_lhs(k, l)
                rhs = generating_series_coefficient(k, l)
                assert lhs.value == rhs.coeff and lhs.a_power == rhs.a_power, (k, l)

    def test_without_i_power_prefactor_odd_half_r_fails(self):
        # dropping the i**r factor breaks coefficient matching whenever r/2 is odd
        v = i_star(IntegralSpec(2, -HALF)).value * ExactValue.unit(-2)
        assert sp.simplify(to_sympy(v) - matched_moment(1, 1)) != 0

    def test_pole_at_s_minus_one(self):
        assert i_star(IntegralSpec(0, Fraction(-1))).is_pole


class TestContinuation:
    def test_r0(self):
        v = i_star_ac(IntegralSpec(0, Fraction(-1)))
        assert v.value == ExactValue.make(1, 2) and v.a_power == -1

    def test_r2_gamma_form(self):
        # i^2/4 sqrt(pi) a (1)_{-3/2} / (3)_{-1} = (-1/4) sqrt(pi) (Gamma(-1/2)) * 2 = pi
        v = i_star_ac(IntegralSpec(2, Fraction(-1)))
        gamma_path = Fraction(-1, 4) * ExactValue.sqrt_pi() * ExactValue.make(-2, 1) / Fraction(1, 2)
        assert v.at(1) == gamma_path == ExactValue.make(1, 2)

    def test_r1_is_pole(self):
        assert i_star_ac(IntegralSpec(1, Fraction(-1))).is_pole

    @pytest.mark.parametrize("r", range(0, 41, 2))
    @pytest.mark.parametrize("a", [HALF, Fraction(1), Fraction(2)])
    def test_even_r_matches_prescription(self, r, a):
        assert i_star_ac(IntegralSpec(r, Fraction(-1))).at(a) == a_of_r(r, a)

    @pytest.mark.parametrize("r", range(1, 40, 2))
    def test_odd_r_pole(self, r):
        assert i_star_ac(IntegralSpec(r, Fraction(-1))).is_pole
        assert a_of_r(r, 1).is_finite

    def test_opposite_branch_flips_sign(self):
        for r in range(0, 20, 2):
            spec = IntegralSpec(r, Fraction(-1))
            assert i_star_ac(spec, branch=-REFLECTION_BRANCH).value == -i_star_ac(spec).value

    @pytest.mark.parametrize("r", [1, 3, 5])
    @pytest.mark.parametrize("s", [Fraction(1), Fraction(3), Fraction(1, 2)])
    def test_ratio_to_uncontinued_is_unit_phase(self, r, s):
        base, cont = i_star(IntegralSpec(r, s)), i_star_ac(IntegralSpec(r, s))
        if base.is_pole or cont.is_pole or base.value.is_zero:
            pytest.skip("not finite on both sides")
        ratio = cont.value / base.value
        assert abs(ratio.coeff) == 1 and ratio.pi_half_power == 0

    def test_true_moment_for_convergent_case(self):
        # int x^0 (x^2+a^2)^(-1) dx = pi/a, well inside the convergent range
        ref, _ = integrate.quad(lambda x: 1 / (x * x + 4), -math.inf, math.inf)
        assert float(i_star_ac(IntegralSpec(0, Fraction(-1))).at(2)) == pytest.approx(ref, rel=1e-12)


class TestAOfR:
    @pytest.mark.parametrize("r,a,expected", [(0, 1, math.pi), (1, 1, -math.pi), (2, 2, 2 * math.pi)])
    def test_values(self, r, a, expected):
        assert float(a_of_r(r, a)) == pytest.approx(expected, rel=1e-15)

    def test_float_scale_is_read_as_decimal(self):
        assert a_of_r(3, 0.1) == ExactValue.make(Fraction(-1, 100), 2)


class TestIPol:
    def test_positive_dimension(self):
        assert i_pol(0) == 0

    @pytest.mark.parametrize("n", [0, 3, 20])
    def test_continued_delta_never_fires(self, n):
        assert i_pol(n, continued=True).is_zero
        assert not i_pol_prefactor(n).is_zero

    def test_negative(self):
        with pytest.raises(NegativeN):
            i_pol(-1)
