"""Integral points in orbits of rational maps, with exact counting of algebraic points of bounded height."""

__version__ = "0.1.0"

from .errors import IterationBudgetError, PrecisionCapError
from .zpoly import IntPoly, factor_z, resultant
from .algnum import (
    INF,
    AlgebraicNumber,
    PlaceSet,
    diff,
    height_le,
    invert,
    is_S_integral,
    log_height,
    mahler_measure,
    norm_shift,
    roots_of,
    weil_height,
)
from .dynamics import (
    OrbitReport,
    RationalMap,
    canonical_height,
    compose,
    distinct_pole_count,
    eval_point,
    iterate,
    orbit,
    orbit_integral_census,
    second_iterate_is_polynomial,
)
from .enumeration import count_points, enum_minpolys, enum_points, enum_polys, exponent_fit
from .sieve import SieveContext, count_F_m, count_G_k, density_experiment, euler_product, in_I_p, split_primes
from .parsing import parse_map, parse_poly

__all__ = [
    "AlgebraicNumber",
    "INF",
    "IntPoly",
    "IterationBudgetError",
    "OrbitReport",
    "PlaceSet",
    "PrecisionCapError",
    "RationalMap",
    "SieveContext",
    "canonical_height",
    "compose",
    "count_F_m",
    "count_G_k",
    "count_points",
    "density_experiment",
    "diff",
    "distinct_pole_count",
    "enum_minpolys",
    "enum_points",
    "enum_polys",
    "euler_product",
    "eval_point",
    "exponent_fit",
    "factor_z",
    "height_le",
    "in_I_p",
    "invert",
    "is_S_integral",
    "iterate",
    "log_height",
    "mahler_measure",
    "norm_shift",
    "orbit",
    "orbit_integral_census",
    "parse_map",
    "parse_poly",
    "resultant",
    "roots_of",
    "second_iterate_is_polynomial",
    "split_primes",
    "weil_height",
]
