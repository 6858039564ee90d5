"""The index set of shift pairs and the mean value Phi of the singular series over it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .arith_core import (
    EULER_GAMMA,
    ConstantEstimate,
    default_c2,
    f_value,
    mult_order,
)
from .errors import DomainError, FactorizationTimeout


def shift(k: int) -> int:
    """c_k = 2^k - k, so that 2^k + (n - k) = n + c_k."""
    return (1 << k) - k


def capital_k(n: int) -> int:
    """K(N) = floor(log2 N - 2 log2(ln N)), lowered if needed so 2^K (ln N)^2 <= N."""
    if n < 3:
        raise DomainError(f"N={n} too small")
    ln_n = math.log(n)
    k = math.floor(math.log2(n) - 2 * math.log2(ln_n))
    while k >= 2 and (1 << k) * ln_n * ln_n > n:
        k -= 1
    if k < 2:
        raise DomainError(f"N={n} too small: K(N)={k} < 2")
    return k


@dataclass(frozen=True)
class PairIndex:
    k2: int
    h: int

    def __post_init__(self):
        if self.k2 < 1 or self.h < 2 or self.h % 2:
            raise DomainError(f"invalid pair index (k2={self.k2}, h={self.h})")

    def fits(self, K: int) -> bool:
        return self.h <= K - 1 and self.k2 <= K - self.h


def pair_difference(k2: int | PairIndex, h: int | None = None) -> int:
    """d(k2, h) = c_{k2+h} - c_{k2} = 2^k2 (2^h - 1) - h."""
    if isinstance(k2, PairIndex):
        k2, h = k2.k2, k2.h
    return (1 << k2) * ((1 << h) - 1) - h


def enumerate_index_set(K: int) -> list[PairIndex]:
    """Pairs with h even in [2, K-1] and 1 <= k2 <= K - h, h-major."""
    if K < 3:
        raise DomainError("K must be >= 3")
    return [PairIndex(k2, h) for h in range(2, K, 2) for k2 in range(1, K - h + 1)]


def index_set_size(K: int) -> int:
    return sum(K - h for h in range(2, K, 2))


@dataclass
class PhiReport:
    K: int
    phi: float
    index_count: int
    min_singular: float
    max_singular: float
    failures: list[int] = field(default_factory=list)
    c2: float = 0.0

    @property
    def complete(self) -> bool:
        return not self.failures

    @property
    def lower_floor(self) -> float:
        """2 C2 |I_K| / K^2: what Phi would be if every f(d) were 1."""
        return 2.0 * self.c2 * self.index_count / self.K**2


def phi_rows(K: int, c2: ConstantEstimate | None = None) -> Iterator[tuple[int, int, int, float, float]]:
    """(k2, h, d, f(d), singular series) for every pair, in index-set order."""
    c2v = (c2 or default_c2()).value
    for idx in enumerate_index_set(K):
        d = pair_difference(idx)
        f = f_value(d)
        yield idx.k2, idx.h, d, f, 2.0 * c2v * f


def phi(K: int, c2: ConstantEstimate | None = None) -> PhiReport:
    """(1/K^2) * sum of the singular series over the index set.

    The normalisation is K^2, not |I_K|. If some d cannot be factored the
    sum stops there and the report lists it under `failures`; the phi field
    then only covers the pairs processed before it.
    """
    c2v = (c2 or default_c2()).value
    fs: list[float] = []
    failures: list[int] = []
    for idx in enumerate_index_set(K):
        d = pair_difference(idx)
        try:
            fs.append(f_value(d))
        except FactorizationTimeout:
            failures.append(d)
            break
    total = math.fsum(fs)
    return PhiReport(
        K=K,
        phi=2.0 * c2v * total / K**2,
        index_count=index_set_size(K),
        min_singular=2.0 * c2v * min(fs, default=math.nan),
        max_singular=2.0 * c2v * max(fs, default=math.nan),
        failures=failures,
        c2=c2v,
    )


def m_l_count(l: int, h: int, K: int) -> int:
    """#{1 <= k2 <= K-h : 2^k2 (2^h - 1) == h (mod l)} by direct iteration."""
    if l < 1 or l % 2 == 0:
        raise DomainError("l must be odd and positive")
    if h < 2 or h % 2 or h > K - 1:
        raise DomainError("need even h with 2 <= h <= K-1")
    a = ((1 << h) - 1) % l
    target = h % l
    x = 2 % l
    count = 0
    for _ in range(1, K - h + 1):
        if x * a % l == target:
            count += 1
        x = 2 * x % l
    return count


def m_l_bound(l: int, h: int, K: int) -> float:
    """0 when gcd(l, 2^h - 1) does not divide h, else (K-h)/ord_b(2) + 1 with b = l/gcd."""
    g = gcd(l, ((1 << h) - 1) % l) if l > 1 else 1
    if h % g:
        return 0.0
    b = l // g
    return (K - h) / mult_order(2, b) + 1


@dataclass(frozen=True)
class PhiBoundsReport:
    K: int
    phi: float
    band_lower: float
    band_upper: float
    in_band: bool


def phi_bounds_report(K: int, c_rom: ConstantEstimate, report: PhiReport | None = None) -> PhiBoundsReport:
    """Place phi(K) against the asymptotic band [1/2, (C_Rom + e^gamma ln 2)/2].

    Informational only: the band is a statement about lim inf / lim sup.
    """
    rep = report or phi(K)
    upper = (c_rom.upper + math.exp(EULER_GAMMA) * math.log(2)) / 2
    return PhiBoundsReport(K, rep.phi, 0.5, upper, 0.5 <= rep.phi <= upper)
