"""Exact arithmetic: rational functions, simple extensions, matrices."""

from .ext import (
    ExtDescriptor,
    ExtElem,
    artin_schreier,
    ext_arith,
    min_poly_of,
    quadratic_a,
    quadratic_b,
)
from .fields import GF3, QQ, VARIABLES, BaseField, RatFunc, ratfunc_arith
from .matrix import SqMatrix, matrix_ops
from .upoly import UniPoly

__all__ = [
    "BaseField",
    "ExtDescriptor",
    "ExtElem",
    "GF3",
    "QQ",
    "RatFunc",
    "SqMatrix",
    "UniPoly",
    "VARIABLES",
    "artin_schreier",
    "ext_arith",
    "matrix_ops",
    "min_poly_of",
    "quadratic_a",
    "quadratic_b",
    "ratfunc_arith",
]
