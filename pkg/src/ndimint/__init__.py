"""Negative-dimensional evaluation of real integrals, with residue and quadrature cross-checks."""

__version__ = "0.1.0"

from .specfun import ExactValue, gamma_exact, pochhammer, pochhammer_reflect
from .ndim_core import IntegralSpec, a_of_r, i_pol, i_star, i_star_ac
from .resum import resum_exp_series, term_table

__all__ = [
    "ExactValue",
    "IntegralSpec",
    "a_of_r",
    "gamma_exact",
    "i_pol",
    "i_star",
    "i_star_ac",
    "pochhammer",
    "pochhammer_reflect",
    "resum_exp_series",
    "term_table",
]
