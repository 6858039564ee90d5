"""
Moments of r(n) and minimal witnesses
=====================================

r(n) counts k <= K with n + 2^k - k prime. The second moment splits into
the first moment plus pair counts F, and Cauchy-Schwarz turns S1 and S2
into a lower bound for how many n have r(n) >= 1.
"""

from sunconj import moments, selberg_check, sun_witness, verify_sun_range

rep = moments(10**6)
print(f"N={rep.N} K={rep.K} S1={rep.S1} S2={rep.S2} D={rep.D}")
print(f"S2 - S1 - D = {rep.S2 - rep.S1 - rep.D}")
print(f"S1/N = {rep.s1_density:.4f}  S1^2/S2/N = {rep.cs_density:.4f}  |R*|/(N-K) = {rep.r_star_density:.4f}")

sel = selberg_check(10**6)
print(f"max F / (4 S(d) N / ln^2 N) over the index set: {sel.max_ratio:.3f}")

for n in (2, 3, 53, 2161):
    print(sun_witness(n, k_cap=400))

report = verify_sun_range(2, 10**5)
print(f"[2, 1e5]: checked {report.checked}, capped {len(report.capped)}, max k_min {report.max_k_min} at n={report.argmax_n}")
