"""Exact computations in arrow categories of rational chain complexes,
colored operads, operadic algebras and Smith ideals."""

from .chain import ChainComplex, ChainMap, Check, homology
from .arrow import BOX, TENSOR, ArrowMap, ArrowObject, classify_arrow_map
from .operad import Operad, std_operad, validate_operad
from .algebra import AlgebraMap, Bimodule, OperadAlgebra, algebra_from_product
from .smith import SmithIdeal, algmap_ker, smith_coker, validate_smith_ideal
from .ratlin import Matrix

__all__ = [
    "ChainComplex", "ChainMap", "Check", "homology",
    "BOX", "TENSOR", "ArrowMap", "ArrowObject", "classify_arrow_map",
    "Operad", "std_operad", "validate_operad",
    "AlgebraMap", "Bimodule", "OperadAlgebra", "algebra_from_product",
    "SmithIdeal", "algmap_ker", "smith_coker", "validate_smith_ideal",
    "Matrix",
]

__version__ = "0.1.0"
