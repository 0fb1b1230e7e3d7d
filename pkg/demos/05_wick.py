# %% [markdown]
# # Rotating the exponent
# Multiplying the exponent by i turns the real-scale term into the
# oscillatory one, pointwise.

# %%
from finite_physics.riemann import wick_rotation_check

for mu in (10, 100, 1000):
    print(mu, wick_rotation_check(1, 3, mu))
