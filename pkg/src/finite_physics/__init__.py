"""Finite prime fields as a desk-scale laboratory for continuum formulas.

Submodules: :mod:`arith` (modular arithmetic), :mod:`universe`
(parameter search), :mod:`polar` (rational polar coordinates and the
place), :mod:`gauss` (quadratic Gauss sums), :mod:`riemann` (Riemann
sums and quadrature oracles), :mod:`statmech` (partition polynomials),
:mod:`cli` (command line).
"""

from .arith import ModElem, factorize, find_primitive_root, is_prime, multiplicative_order
from .errors import InvalidInput, NoSolution, ResourceLimit
from .gauss import U_SCALE, V_SCALE, GaussSumSpec, scaled_gauss_sum
from .polar import INFINITY, PlacedSymbol, PolarElem, lm_F_polar, lm_U, place_symbol
from .universe import SearchConfig, UniverseParams, search_universe, validate_universe

__version__ = "0.1.0"

__all__ = [
    "ModElem", "factorize", "find_primitive_root", "is_prime", "multiplicative_order",
    "InvalidInput", "NoSolution", "ResourceLimit",
    "U_SCALE", "V_SCALE", "GaussSumSpec", "scaled_gauss_sum",
    "INFINITY", "PlacedSymbol", "PolarElem", "lm_F_polar", "lm_U", "place_symbol",
    "SearchConfig", "UniverseParams", "search_universe", "validate_universe",
]
