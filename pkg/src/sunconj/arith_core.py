"""Multiplicative arithmetic: factoring, Moebius, orders, f, g and the singular series.

Real-valued results are binary64. Where a sum has to be compared exactly
(the divisor-sum identity for f, the order-grouped Romanov weights) the
`*_exact` variants return :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd, isqrt
from typing import Iterator

import numpy as np

from .errors import DomainError, FactorizationTimeout
from .prime_engine import is_prime, iter_prime_blocks, small_primes

EULER_GAMMA = 0.5772156649015329
TRIAL_BOUND = 10**6
RHO_BUDGET = 10**7
DEFAULT_C2_CUTOFF = 10**7


@lru_cache(maxsize=None)
def _trial_primes(bound: int) -> np.ndarray:
    return small_primes(bound)


@dataclass(frozen=True)
class FactorMap:
    """Prime factorization as ((p, e), ...) with strictly increasing p."""

    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> FactorMap:
        return cls(tuple(sorted((int(p), int(e)) for p, e in d.items() if e > 0)))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def merge(self, other: FactorMap) -> FactorMap:
        d = self.as_dict()
        for p, e in other:
            d[p] = d.get(p, 0) + e
        return FactorMap.from_dict(d)

    def __str__(self) -> str:
        return " ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"


@dataclass(frozen=True)
class ConstantEstimate:
    """A computed constant together with an interval known to contain the true value."""

    value: float
    lower: float
    upper: float
    truncation: str = ""

    def __post_init__(self):
        if not self.lower <= self.value <= self.upper:
            raise ValueError(f"value {self.value} outside [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower


def pollard_brent(n: int, budget: int = RHO_BUDGET) -> int:
    """Return a nontrivial factor of the odd composite n.

    Uses x -> x^2 + c with c = 1, 2, 3, ... on successive failures, so the
    result is deterministic. `budget` caps the total number of iterations
    across all values of c.
    """
    if n % 2 == 0:
        return 2
    spent = 0
    c = 0
    batch = 128
    while spent < budget:
        c += 1
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += batch
            spent += r
            r *= 2
        if g == n:
            # batch overshot; replay one step at a time from the saved point
            while True:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
                if g > 1:
                    break
        if 1 < g < n:
            return g
    raise FactorizationTimeout(n, budget)


def _trial_divide(n: int, bound: int) -> tuple[dict[int, int], int]:
    found: dict[int, int] = {}
    limit = min(bound, isqrt(n))
    primes = _trial_primes(bound)
    if n < 1 << 62 and limit > 2000:
        # one vectorised pass finds every prime divisor up to the limit
        cands = primes[: np.searchsorted(primes, limit, side="right")]
        divs = cands[n % cands == 0].tolist()
    else:
        divs = primes.tolist()
    for p in divs:
        if p > limit:
            break
        if n % p:
            continue
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        found[p] = e
        limit = min(limit, isqrt(n))
    return found, n


def _split_cofactor(n: int, budget: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = pollard_brent(m, budget)
        stack += [d, m // d]


@lru_cache(maxsize=1 << 16)
def _factor_cached(n: int, bound: int, budget: int) -> FactorMap:
    found, rest = _trial_divide(n, bound)
    if rest > 1:
        if rest <= bound * bound:
            found[rest] = found.get(rest, 0) + 1
        else:
            _split_cofactor(rest, budget, found)
    return FactorMap.from_dict(found)


def factorize(n: int, trial_bound: int = TRIAL_BOUND, budget: int = RHO_BUDGET) -> FactorMap:
    """Complete factorization: trial division to `trial_bound`, then Brent's rho."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n == 1:
        return FactorMap()
    return _factor_cached(int(n), trial_bound, budget)


def mobius(n: int) -> int:
    fm = factorize(n)
    if any(e > 1 for _, e in fm):
        return 0
    return -1 if len(fm) % 2 else 1


def divisors(fm: FactorMap) -> list[int]:
    out = [1]
    for p, e in fm:
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def odd_squarefree_divisors(n: int | FactorMap) -> list[int]:
    fm = n if isinstance(n, FactorMap) else factorize(n)
    odd = [p for p in fm.primes if p != 2]
    out = []
    for mask in product((False, True), repeat=len(odd)):
        out.append(math.prod(p for p, keep in zip(odd, mask) if keep))
    return sorted(out)


def carmichael_lambda(fm: FactorMap) -> int:
    parts = []
    for p, e in fm:
        if p == 2:
            parts.append(1 if e == 1 else 2 if e == 2 else 1 << (e - 2))
        else:
            parts.append((p - 1) * p ** (e - 1))
    return reduce(math.lcm, parts, 1)


def mult_order(a: int, m: int) -> int:
    """Least t >= 1 with a**t == 1 (mod m)."""
    if m < 1:
        raise DomainError("modulus must be positive")
    if gcd(a, m) != 1:
        raise DomainError(f"gcd({a}, {m}) != 1: order undefined")
    if m == 1:
        return 1
    t = carmichael_lambda(factorize(m))
    for q, _ in factorize(t):
        while t % q == 0 and pow(a, t // q, m) == 1:
            t //= q
    return t


def g_exact(l: int) -> Fraction:
    """mu^2(l) g(l): 1/prod(p - 2) over the primes of odd square-free l, else 0."""
    if l % 2 == 0:
        return Fraction(0)
    out = Fraction(1)
    for p, e in factorize(l):
        if e > 1:
            return Fraction(0)
        out /= p - 2
    return out


def f_exact(d: int) -> Fraction:
    out = Fraction(1)
    for p in factorize(d).primes:
        if p > 2:
            out *= Fraction(p - 1, p - 2)
    return out


def f_value(d: int) -> float:
    """Product of (p-1)/(p-2) over the distinct odd primes dividing d."""
    if d < 1:
        raise DomainError("f is defined for d >= 1")
    out = 1.0
    for p in factorize(d).primes:
        if p > 2:
            out *= (p - 1) / (p - 2)
    return out


def _log_product(block_terms) -> float:
    return math.fsum(float(np.sum(t)) for t in block_terms)


def twin_prime_constant(cutoff: int) -> ConstantEstimate:
    """C2 = prod_{p >= 3} (1 - 1/(p-1)^2), truncated at p <= cutoff.

    The dropped tail satisfies 0 < -log(tail) < 1/(cutoff - 1), so
    [value * exp(-1/(cutoff-1)), value] encloses C2.
    """
    if cutoff < 3:
        raise DomainError("cutoff must be >= 3")
    logs = (
        np.log1p(-1.0 / (b.astype(np.float64) - 1.0) ** 2)
        for b in iter_prime_blocks(3, cutoff + 1)
    )
    value = math.exp(_log_product(logs))
    lower = value * math.exp(-1.0 / (cutoff - 1))
    return ConstantEstimate(value, lower, value, f"primes 3 <= p <= {cutoff}")


@lru_cache(maxsize=8)
def default_c2(cutoff: int = DEFAULT_C2_CUTOFF) -> ConstantEstimate:
    return twin_prime_constant(cutoff)


def singular_series(d: int, c2: ConstantEstimate | None = None) -> float:
    """Hardy-Littlewood constant 2*C2*f(d) for an even gap d."""
    if d < 2 or d % 2:
        raise DomainError(f"singular series needs an even d >= 2, got {d}")
    c2 = c2 or default_c2()
    return 2.0 * c2.value * f_value(d)


@dataclass(frozen=True)
class MertensProduct:
    x: int
    product: float
    asymptotic: float

    @property
    def ratio(self) -> float:
        return self.product / self.asymptotic


def mertens_product(x: int) -> MertensProduct:
    """prod_{2 < p <= x} (1 - 1/p)^-1, next to its asymptotic (e^gamma / 2) log x."""
    if x < 3:
        raise DomainError("x must be >= 3")
    logs = (-np.log1p(-1.0 / b.astype(np.float64)) for b in iter_prime_blocks(3, x + 1))
    prod = math.exp(_log_product(logs))
    return MertensProduct(x, prod, math.exp(EULER_GAMMA) / 2 * math.log(x))


def inverse_c2_series(bound: int) -> float:
    """Sum of mu^2(eta) g(eta) / eta over odd eta <= bound; tends to 1/C2."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    terms = np.zeros(bound + 1)
    terms[1::2] = 1.0
    for p in small_primes(bound)[1:].tolist():
        terms[p :: 2 * p] *= 1.0 / (p * (p - 2))
        if p * p <= bound:
            terms[p * p :: 2 * p * p] = 0.0
    return math.fsum(terms[1::2].tolist())
