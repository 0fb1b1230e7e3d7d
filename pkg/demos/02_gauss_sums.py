# %% [markdown]
# # Quadratic Gauss sums, exactly
# For every admissible period root nu the brute-force sum equals nu
# times the canonical 8th root of unity.

# %%
from fractions import Fraction

from finite_physics.gauss import (U_SCALE, V_SCALE, GaussSumSpec, admissible_nus,
                                  gauss_sum_bruteforce, gauss_sum_closed_form, scaled_gauss_sum,
                                  xi_of)
from finite_physics.universe import SearchConfig, search_universe

u = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))
for nu in admissible_nus(u.p):
    print(nu, gauss_sum_bruteforce(u.p, xi_of(u, nu), nu), gauss_sum_closed_form(u, nu))

# %% [markdown]
# Scaled by the two length units, the sums land on 1/sqrt(a) and
# e^{i pi/4}/sqrt(a) under the place.

# %%
for a in (Fraction(1), Fraction(1, 4), Fraction(4)):
    for scale in (U_SCALE, V_SCALE):
        try:
            r = scaled_gauss_sum(GaussSumSpec(a, scale, u))
        except ValueError as exc:
            print(a, scale, "inadmissible:", exc)
            continue
        print(a, scale, r.nu, r.match, r.place_image)
