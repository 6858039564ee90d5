"""
Twin prime constant and the singular series
===========================================

C2 is an Euler product. Truncating at P leaves a tail whose log is below
1/(P-1), which gives a rigorous interval.
"""

from fractions import Fraction

from sunconj import (
    f_exact,
    inverse_c2_series,
    mertens_product,
    singular_series,
    twin_prime_constant,
)
from sunconj.arith_core import g_exact, odd_squarefree_divisors

for cutoff in (10**3, 10**5, 10**7):
    est = twin_prime_constant(cutoff)
    print(f"C2 up to {cutoff:>9}: [{est.lower:.10f}, {est.upper:.10f}]  width {est.width:.1e}")

c2 = twin_prime_constant(10**7)

# S(d) = 2 C2 f(d) only sees the odd primes dividing d
for d in (2, 4, 6, 30, 46):
    print(f"S({d}) = {singular_series(d, c2):.6f}   f = {f_exact(d)}")

# f(d) is also a divisor sum of g over odd square-free l | d
d = 2 * 3 * 5 * 7 * 11
total = sum((g_exact(l) for l in odd_squarefree_divisors(d)), Fraction(0))
print(f"sum of g(l) over l | {d}: {total}  f({d}) = {f_exact(d)}")

# summing g(eta)/eta over odd square-free eta gives 1/C2
s = inverse_c2_series(10**6)
print(f"series to 1e6: {s:.6f}   1/C2: {1 / c2.value:.6f}")

# Mertens' third theorem for the odd primes
mp = mertens_product(10**6)
print(f"prod (1-1/p)^-1 over 2<p<=1e6: {mp.product:.5f}  vs (e^g/2) ln x: {mp.asymptotic:.5f}")
