"""Equidistribution of d(k2, h) modulo odd primes.

Two views of the same fact: the exact solution count of
2^k2 (4^j - 1) == 2j (mod p) over one period box of (k2, j), split by the
three cases of the counting argument, and the empirical proportion of the
index set with p | d(k2, h) for finite K.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith_core import mult_order
from .errors import DomainError
from .phi_mean import index_set_size
from .prime_engine import is_prime_u64, small_primes


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_prime_u64(p):
        raise DomainError(f"{p} is not an odd prime")


@dataclass
class EquidistReport:
    p: int
    ord2: int
    ord4: int
    solutions: int
    domain_size: int
    expected: int
    case_counts: tuple[int, int, int]
    rho_values: list[tuple[int, float]] = field(default_factory=list)

    @property
    def density(self) -> float:
        return self.solutions / self.domain_size

    @property
    def expected_cases(self) -> tuple[int, int, int]:
        """Closed-form tallies: (ord4 | j), (p | j only), (neither)."""
        return self.ord2, 0, (self.ord4 - 1) * self.ord2


def fundamental_domain_count(p: int) -> EquidistReport:
    """Brute-force count over k2 in [0, ord_p 2), j in [0, p ord_p 4)."""
    _check_odd_prime(p)
    o2, o4 = mult_order(2, p), mult_order(4, p)
    k2 = np.arange(o2, dtype=np.int64)
    j = np.arange(p * o4, dtype=np.int64)
    pow2 = np.array([pow(2, int(k), p) for k in k2], dtype=np.int64)
    pow4m1 = np.array([(pow(4, int(x), p) - 1) % p for x in j], dtype=np.int64)
    lhs = pow2[:, None] * pow4m1[None, :] % p
    hits = lhs == (2 * j % p)[None, :]
    per_j = hits.sum(axis=0)

    case_a = j % o4 == 0
    case_b = ~case_a & (j % p == 0)
    case_c = ~case_a & ~case_b
    cases = (int(per_j[case_a].sum()), int(per_j[case_b].sum()), int(per_j[case_c].sum()))
    return EquidistReport(
        p=p,
        ord2=o2,
        ord4=o4,
        solutions=int(per_j.sum()),
        domain_size=o2 * p * o4,
        expected=o2 * o4,
        case_counts=cases,
    )


def _pair_residues(K: int, p: int) -> np.ndarray:
    """d(k2, h) mod p for every pair of the index set, h-major order."""
    out = []
    for h in range(2, K, 2):
        a = (pow(2, h, p) - 1) % p
        k2 = np.arange(1, K - h + 1)
        pow2 = np.array([pow(2, int(k), p) for k in k2], dtype=np.int64)
        out.append((pow2 * a - h) % p)
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def divisible_count(p: int, K: int) -> int:
    _check_odd_prime(p)
    if K < 3:
        raise DomainError("K must be >= 3")
    return int(np.count_nonzero(_pair_residues(K, p) == 0))


def rho(p: int, K: int) -> float:
    """Share of index-set pairs with p | d(k2, h), by modular arithmetic only."""
    return divisible_count(p, K) / index_set_size(K)


def rho_rows(p: int, ks) -> list[tuple[int, int, int, int, float, float]]:
    """CSV rows (p, K, count, |I_K|, rho, rho - 1/p)."""
    rows = []
    for K in ks:
        c, n = divisible_count(p, K), index_set_size(K)
        rows.append((p, K, c, n, c / n, c / n - 1 / p))
    return rows


@dataclass(frozen=True)
class FpAverage:
    P: int
    K: int
    average: float
    target: float


def f_p_average(P: int, K: int) -> FpAverage:
    """Mean over the index set of f_P(d) = prod_{p | d, 2 < p <= P} (p-1)/(p-2).

    Divisibility is read off d mod p, so no d is ever factored. `target` is
    the limit prod_{2 < p <= P} (1 + 1/(p(p-2))).
    """
    if P < 3 or not is_prime_u64(P):
        raise DomainError("P must be an odd prime")
    if K < 3:
        raise DomainError("K must be >= 3")
    vals = np.ones(index_set_size(K))
    target = 1.0
    for p in small_primes(P)[1:].tolist():
        vals[_pair_residues(K, p) == 0] *= (p - 1) / (p - 2)
        target *= 1 + 1 / (p * (p - 2))
    return FpAverage(P, K, float(vals.mean()), target)
