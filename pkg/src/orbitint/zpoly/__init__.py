"""Exact univariate integer polynomials: arithmetic, resultants, factorization, roots."""

from .poly import (
    IntPoly,
    add,
    subtract,
    multiply,
    compose,
    derivative,
    reversal,
    shift,
    content_primitive,
    primitive_part,
    naive_height,
    norm2_squared,
    pseudo_divmod,
    exact_divide,
    divides,
    gcd_q,
    squarefree_part,
    resultant,
    sylvester_resultant,
    discriminant,
    interpolate_integer,
)
from .gfp import factor_mod_p, gf_roots
from .factor import factor_z, is_irreducible
from .roots import ComplexBox, RootSet, complex_roots, eval_box

__all__ = [
    "IntPoly",
    "add",
    "subtract",
    "multiply",
    "compose",
    "derivative",
    "reversal",
    "shift",
    "content_primitive",
    "primitive_part",
    "naive_height",
    "norm2_squared",
    "pseudo_divmod",
    "exact_divide",
    "divides",
    "gcd_q",
    "squarefree_part",
    "resultant",
    "sylvester_resultant",
    "discriminant",
    "interpolate_integer",
    "factor_mod_p",
    "gf_roots",
    "factor_z",
    "is_irreducible",
    "ComplexBox",
    "RootSet",
    "complex_roots",
    "eval_box",
]
