"""Independent evaluators used to cross-check NDIM results."""

from .corpus import load_builtin_corpus, load_corpus
from .quadrature import QuadratureRequest, integrate_numeric
from .residues import RationalIntegrand, integrate_by_residues, residue_at

__all__ = [
    "QuadratureRequest",
    "RationalIntegrand",
    "integrate_by_residues",
    "integrate_numeric",
    "load_builtin_corpus",
    "load_corpus",
    "residue_at",
]
