"""
Sieving and primality
=====================

The sieve returns a boolean table over a window [lo, hi). Counts, pair
counts and the shifted windows used later are all slices of such tables.
"""

import numpy as np

from sunconj import build_sieve, is_prime_u64, is_probable_prime_big, prime_count, prime_pair_count

# a window well above the square root working set
sv = build_sieve(10**6, 10**6 + 100)
print("primes in [1e6, 1e6+100):", sv.primes().tolist())

# exact counts come straight from the table
print("pi(1e6) =", prime_count(10**6))

# pairs p <= x with p + d prime
for d in (2, 4, 6):
    print(f"pi_{d}(1e5) =", prime_pair_count(10**5, d))

# below 2^64 the strong-probable-prime battery is exact
print("2^61 - 1 prime:", is_prime_u64(2**61 - 1))
print("2^61 + 1 prime:", is_prime_u64(2**61 + 1))

# above it the test is seeded by n, so reruns agree
print("2^127 - 1 probable prime:", is_probable_prime_big(2**127 - 1))

# gaps between consecutive primes in the window
print("gaps:", np.diff(sv.primes()).tolist())
