import sympy as sp

from ndimint.specfun import ExactValue

ACCEPTANCE_LINES: list[str] = []


def to_sympy(v: ExactValue):
    assert v.is_finite, f"{v} is a pole"
    return sp.Rational(v.coeff.numerator, v.coeff.denominator) * sp.sqrt(sp.pi) ** v.pi_half_power * sp.I**v.i_power


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
