# %% [markdown]
# # Polar coordinates and the place
# Rational coordinates (alpha, beta) name alpha*u + beta*v.  The place
# sends the radial part to e^{-pi alpha} and the angular part to the
# unit circle.

# %%
from fractions import Fraction

from finite_physics.polar import (PlacedSymbol, PolarElem, commutation_residual, lm_F_polar,
                                  lm_U, place_symbol, to_uelem)
from finite_physics.universe import SearchConfig, search_universe

u = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))
x = PolarElem(Fraction(1, 4), Fraction(1, 4), u)
print(to_uelem(x), lm_U(x), lm_F_polar(x), commutation_residual(x))

# %%
for tag in ("mu", "iota", "i_sym", "omega"):
    print(tag, place_symbol(PlacedSymbol(tag)))
print("iota*omega ->", place_symbol(PlacedSymbol("iota")) * place_symbol(PlacedSymbol("omega")))
