# %% [markdown]
# # Partition polynomials, over C and over F_p
# The free gas has all zeros at -1.  A ferromagnetic ring, written in
# the rescaled activity, has all zeros on the unit circle.

# %%
from finite_physics.statmech import (FREE, LATTICE_GAS_1D, OPEN, PERIODIC, ModelSpec,
                                     bounds_report, circle_check, crit_mod_p, crit_prime_search,
                                     grand_partition, lee_yang_normalized, partition_zeros)

print(partition_zeros(grand_partition(ModelSpec(FREE, 5))).zeros)
ring = ModelSpec(LATTICE_GAS_1D, 12, 3, PERIODIC)
print(circle_check(partition_zeros(lee_yang_normalized(ring))))

# %% [markdown]
# Over F_p the question flips: which primes make y = 1 a root?  Exactly
# the prime divisors of P(1), and a prime below 2^N needs N > log2 p.

# %%
gas = ModelSpec(LATTICE_GAS_1D, 23, 2, OPEN)
poly = grand_partition(gas)
for q in crit_prime_search(poly):
    root = 1 in crit_mod_p(poly, q) if q <= 10**7 else poly.at_one() % q == 0
    print(q, root, bounds_report(gas.N, q))
