"""
Mean of the singular series over the index set
==============================================

Pairs (k2, h) with h even give differences d = 2^k2 (2^h - 1) - h.
Phi averages S(d) over them, normalised by K^2.
"""

from sunconj import capital_k, enumerate_index_set, pair_difference, phi, romanov_constant
from sunconj.phi_mean import m_l_bound, m_l_count, phi_bounds_report

for N in (10**6, 10**9, 10**12):
    print(f"K({N:.0e}) = {capital_k(N)}")

print([(i.k2, i.h, pair_difference(i)) for i in enumerate_index_set(5)])

for K in (10, 20, 30, 40):
    rep = phi(K)
    print(f"K={K}: Phi = {rep.phi:.4f}  floor {rep.lower_floor:.4f}  |I_K| = {rep.index_count}")

# the band is a statement about lim inf and lim sup; at finite K it is context only
band = phi_bounds_report(30, romanov_constant(60))
print(f"band [{band.band_lower}, {band.band_upper:.4f}], phi(30) = {band.phi:.4f}, inside: {band.in_band}")

# M_l(h) vanishes when gcd(l, 2^h - 1) does not divide h
for l, h in ((3, 2), (5, 2), (7, 6), (15, 4)):
    print(f"M_{l}({h}) = {m_l_count(l, h, 30)}  bound {m_l_bound(l, h, 30):.2f}")
