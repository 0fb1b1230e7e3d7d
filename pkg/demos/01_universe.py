# %% [markdown]
# # Picking a prime field
# A universe is a prime p whose p-1 is divisible by a highly divisible
# square l and a larger square i.  We search for the smallest one that
# also authorizes the Gauss-sum modulus 288.

# %%
from finite_physics.universe import MODE_A, SearchConfig, exp_p, search_universe

u = search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))
print(u.to_record())

# %% [markdown]
# exp_p sends the additive group Z/((p-1) l) onto F_p^*; its kernel is
# (p-1) U, so the unit v = p - 1 is invisible.

# %%
print(exp_p(u, u.uelem(0)), exp_p(u, u.uelem(u.v)), exp_p(u, u.uelem(u.u)))

# %% [markdown]
# The other mode ties i to p through i**2 + 1 = p.

# %%
print(search_universe(SearchConfig(mode=MODE_A, iota=2)).to_record())
