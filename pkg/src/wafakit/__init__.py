"""Weighted alternating automata, weighted tree automata, and polynomial
automata over commutative semirings, with the constructive translations
between them and a zeroness/equivalence decision over the rationals."""

from .semiring import BOOLEAN, NATURAL, RATIONAL, Semiring, polynomial_ring
from .polynomial import Monomial, Polynomial, PolyInfo
from .trees import (
    RankedAlphabet,
    Term,
    TreeHom,
    WordHom,
    WordToTreeHom,
    compose_word_then_tree,
    generic_hom,
    node,
    var,
)
from .wafa import Wafa
from .wfta import StepFunction, Wfta
from .poly_automata import GroebnerBasis, Pa
from .transforms import NivatDecomposition, TreeTranslation

__version__ = "0.1.0"

__all__ = [
    "BOOLEAN",
    "NATURAL",
    "RATIONAL",
    "Semiring",
    "polynomial_ring",
    "Monomial",
    "Polynomial",
    "PolyInfo",
    "RankedAlphabet",
    "Term",
    "TreeHom",
    "WordHom",
    "WordToTreeHom",
    "compose_word_then_tree",
    "generic_hom",
    "node",
    "var",
    "Wafa",
    "StepFunction",
    "Wfta",
    "GroebnerBasis",
    "Pa",
    "NivatDecomposition",
    "TreeTranslation",
]
