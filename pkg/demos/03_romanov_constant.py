"""
The Romanov-type constant and the density chain
===============================================

Terms are grouped by the order of 2 mod b, and each group total W(k) is
recovered from T(j) = prod over p | 2^j - 1 of (p-1)/(p-2) by Moebius
inversion. That needs 2^j - 1 fully factored for every j <= M.
"""

import tempfile
from pathlib import Path

from sunconj import (
    FactorTableCache,
    conditional_chain,
    density_chain,
    mersenne_factorization,
    romanov_constant,
    romanov_terms,
    unconditional_chain,
)

cache = FactorTableCache()
for k in (4, 6, 11, 60):
    print(f"2^{k} - 1 = {mersenne_factorization(k, cache)}")

terms = romanov_terms(60, cache)
running = 0.0
for k, t in enumerate(terms, 1):
    running += float(t)
    if k in (1, 2, 5, 10, 20, 40, 60):
        print(f"M = {k:>2}: main term {running:.6f}")

est = romanov_constant(60, cache)
print(f"C_Rom in [{est.lower:.4f}, {est.upper:.4f}]")

# the cache saves to a plain text table that can be edited or extended
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "mersenne.txt"
    cache.save(path)
    print(path.read_text().splitlines()[:4])
    again = FactorTableCache.load(path)
    print("reloaded", len(again.entries), "entries")

# feeding an upper bound for C_Rom through the chain
for rounding in (False, True):
    rep = density_chain(1.9967, paper_rounding=rounding)
    print(f"paper_rounding={rounding}: bracket {rep.parenthesis}, C_upper {rep.c_upper:.4f}, delta {rep.delta:.6f}")

for phi in (0.5, 1.0, 1.6157):
    print(f"phi {phi}: conditional {conditional_chain(phi):.4f}, unconditional {unconditional_chain(phi):.4f}")
