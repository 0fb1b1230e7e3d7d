# %% [markdown]
# # From sums to integrals
# On the real scale the Riemann sum of e^{-pi x^2} is exact to rounding
# almost immediately.  The oscillatory scale converges only like 1/l.

# %%
from finite_physics.gauss import U_SCALE, V_SCALE
from finite_physics.riemann import (TruncatedSumSpec, convergence_study,
                                    tail_cancellation_report, truncated_sum)
from finite_physics.universe import SearchConfig, search_universe

for row in convergence_study(1, U_SCALE, 3, [1, 10, 100, 1000]):
    print(row.mesh_mu, row.abs_error)

# %%
import cmath

for l in (10, 20, 40, 80):
    s = truncated_sum(TruncatedSumSpec(1, l, 1000, V_SCALE))
    print(l, abs(s), cmath.phase(s))

# %% [markdown]
# The finite-field value of the full period against the truncated sum:

# %%
u = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))
print(tail_cancellation_report(u, 1, U_SCALE))
print(tail_cancellation_report(u, 1, V_SCALE, l=40, mu=1000))
