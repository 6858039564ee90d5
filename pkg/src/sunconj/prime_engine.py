"""Prime generation and primality testing.

Everything that needs an exact prime count or a primality bit goes through
here: an odd-only segmented sieve of Eratosthenes on top of numpy, a
deterministic Miller-Rabin test for 64-bit integers and a seeded
probable-prime test for anything wider.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import DomainError, InvalidRangeError, ResourceLimitError

DEFAULT_SEGMENT = 1 << 20
MAX_SIEVE_SPAN = 1 << 31
BIG_ROUNDS = 32

# Sinclair's set: correct for every n < 2**64.
U64_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain, unsegmented sieve)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _odd_segments(lo: int, hi: int, segment: int) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (first_odd, mask) where mask[i] says whether first_odd + 2*i is prime.

    Covers the odd integers of [lo, hi); 1 is reported composite, 2 is left to
    the caller.
    """
    if hi <= lo:
        return
    base = small_primes(isqrt(max(hi - 1, 0)))[1:]  # odd base primes
    start = lo | 1
    span = 2 * segment
    while start < hi:
        stop = min(start + span, hi)
        count = (stop - start + 1) // 2
        mask = np.ones(count, dtype=bool)
        top = stop - 1
        for p in base:
            p = int(p)
            pp = p * p
            if pp > top:
                break
            first = max(pp, -(-start // p) * p)
            if not first & 1:
                first += p
            if first >= stop:
                continue
            mask[(first - start) // 2 :: p] = False
        if start == 1:
            mask[0] = False
        yield start, mask
        start += span


def iter_prime_blocks(lo: int, hi: int, segment: int = DEFAULT_SEGMENT) -> Iterator[np.ndarray]:
    """Stream the primes in [lo, hi) as consecutive int64 arrays.

    Memory stays O(segment + sqrt(hi)) regardless of the span, which is what
    the long products (twin prime constant, Mertens) need.
    """
    if lo <= 2 < hi:
        yield np.array([2], dtype=np.int64)
    for first, mask in _odd_segments(lo, hi, segment):
        idx = np.flatnonzero(mask)
        if idx.size:
            yield first + 2 * idx.astype(np.int64)


@dataclass(frozen=True)
class PrimeSieve:
    """Primality table for the half-open window [lo, hi)."""

    lo: int
    hi: int
    bits: np.ndarray

    def __contains__(self, n: int) -> bool:
        return self.lo <= n < self.hi and bool(self.bits[n - self.lo])

    def is_prime(self, n: int) -> bool:
        if not self.lo <= n < self.hi:
            raise InvalidRangeError(f"{n} outside sieve window [{self.lo}, {self.hi})")
        return bool(self.bits[n - self.lo])

    def primes(self) -> np.ndarray:
        return self.lo + np.flatnonzero(self.bits).astype(np.int64)

    def count(self, a: int | None = None, b: int | None = None) -> int:
        """Number of primes in [a, b) intersected with the window."""
        a = self.lo if a is None else max(a, self.lo)
        b = self.hi if b is None else min(b, self.hi)
        if b <= a:
            return 0
        return int(np.count_nonzero(self.bits[a - self.lo : b - self.lo]))


def build_sieve(lo: int, hi: int, segment: int = DEFAULT_SEGMENT, max_span: int = MAX_SIEVE_SPAN) -> PrimeSieve:
    if lo < 0 or lo >= hi:
        raise InvalidRangeError(f"need 0 <= lo < hi, got lo={lo}, hi={hi}")
    if hi - lo > max_span:
        raise ResourceLimitError(f"sieve span {hi - lo} exceeds guard {max_span}")
    bits = np.zeros(hi - lo, dtype=bool)
    if lo <= 2 < hi:
        bits[2 - lo] = True
    for first, mask in _odd_segments(lo, hi, segment):
        off = first - lo
        bits[off : off + 2 * mask.size : 2] = mask
    bits.setflags(write=False)
    return PrimeSieve(lo, hi, bits)


def _sprp(n: int, a: int, d: int, s: int) -> bool:
    """Strong probable-prime test of odd n > 2 to base a, with n - 1 = d * 2**s."""
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _split_power_of_two(m: int) -> tuple[int, int]:
    s = (m & -m).bit_length() - 1
    return m >> s, s


def is_prime_u64(n: int) -> bool:
    """Exact primality for 0 <= n < 2**64."""
    if n >= 1 << 64:
        raise DomainError("is_prime_u64 needs n < 2**64; use is_probable_prime_big")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    d, s = _split_power_of_two(n - 1)
    return all(_sprp(n, a, d, s) for a in U64_WITNESSES)


def is_probable_prime_big(n: int, rounds: int = BIG_ROUNDS) -> bool:
    """Miller-Rabin with `rounds` pseudo-random bases drawn from an RNG seeded by n.

    A composite survives with probability at most 4**-rounds; the same n always
    gets the same bases, so results are reproducible.
    """
    if rounds < 1:
        raise DomainError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = _split_power_of_two(n - 1)
    if not _sprp(n, 2, d, s):
        return False
    rng = random.Random(n)
    return all(_sprp(n, rng.randrange(2, n - 1), d, s) for _ in range(rounds))


def is_prime(n: int) -> bool:
    """Exact below 2**64, probabilistic (default rounds) above."""
    if n < 1 << 64:
        return is_prime_u64(n)
    return is_probable_prime_big(n)


def prime_count(x: int, segment: int = DEFAULT_SEGMENT) -> int:
    """pi(x) by streaming the segmented sieve."""
    if x < 0:
        raise DomainError("x must be >= 0")
    return sum(int(b.size) for b in iter_prime_blocks(0, x + 1, segment))


def prime_pair_count(x: int, d: int) -> int:
    """#{p <= x : p + d is prime} for even d >= 2."""
    if d < 2 or d % 2:
        raise DomainError(f"prime pairs are counted for even gaps d >= 2, got {d}")
    if x < 2:
        return 0
    sv = build_sieve(0, x + d + 1)
    return int(np.count_nonzero(sv.bits[: x + 1] & sv.bits[d : x + d + 1]))
