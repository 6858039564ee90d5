"""
Residues of d(k2, h) modulo odd primes
======================================

Over one period box the congruence 2^k2 (4^j - 1) = 2j (mod p) has exactly
ord_p(2) ord_p(4) solutions, a proportion 1/p. Over the index set the
proportion drifts towards 1/p as K grows.
"""

from sunconj import f_p_average, fundamental_domain_count, rho

for p in (3, 5, 7, 11, 13):
    rep = fundamental_domain_count(p)
    print(f"p={p:>2}: {rep.solutions}/{rep.domain_size} solutions, cases {rep.case_counts}")

for p in (3, 5, 7):
    devs = [rho(p, K) - 1 / p for K in (100, 200, 400)]
    print(f"p={p}: rho - 1/p at K=100,200,400:", [round(x, 4) for x in devs])

for P in (3, 7, 31):
    avg = f_p_average(P, 400)
    print(f"P={P}: average f_P {avg.average:.4f}  limit {avg.target:.4f}")
