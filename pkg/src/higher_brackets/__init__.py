"""Higher derived brackets on the positive truncation of a DGLA."""

__version__ = "0.1.0"

from .algebra import BasisSymbol, Element, Permutation, koszul_sign, unshuffles
from .bernoulli import bernoulli, bracket_coefficient
from .derived import DerivedStructure, derived_bracket
from .dgla import StructureConstantDgla, load_dgla, validate
from .linfinity import LInfinity, jacobi_defect

__all__ = [
    "BasisSymbol",
    "DerivedStructure",
    "Element",
    "LInfinity",
    "Permutation",
    "StructureConstantDgla",
    "bernoulli",
    "bracket_coefficient",
    "derived_bracket",
    "jacobi_defect",
    "koszul_sign",
    "load_dgla",
    "unshuffles",
    "validate",
]
