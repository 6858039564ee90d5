"""Exact first and second moments of r(n), pair counts F, and Sun-witness search.

r(n) counts the k <= K(N) for which n + c_k is prime, c_k = 2^k - k. All
counts below come from one sieve over [K + 2, N + c_K]; nothing here is
asymptotic.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .arith_core import ConstantEstimate, default_c2, f_value
from .errors import DomainError
from .phi_mean import capital_k, enumerate_index_set, pair_difference, shift
from .prime_engine import build_sieve, is_prime_u64, is_probable_prime_big

DEFAULT_K_CAP = 256
CHECKPOINT_VERSION = 1
# Witness search is vectorised for k <= this; larger k fall back to scalar tests.
SIEVED_K = 22


@lru_cache(maxsize=4)
def _shifted_sieve(N: int, K: int):
    return build_sieve(0, N + shift(K) + 1)


def _indicator(N: int, K: int, k: int) -> np.ndarray:
    """1_P(n + c_k) for n = K+1 .. N."""
    bits = _shifted_sieve(N, K).bits
    c = shift(k)
    return bits[K + 1 + c : N + 1 + c]


@dataclass(frozen=True)
class RValues:
    N: int
    K: int
    r: np.ndarray  # r[i] = r(K + 1 + i)

    @property
    def n_lo(self) -> int:
        return self.K + 1

    def __getitem__(self, n: int) -> int:
        if not self.K < n <= self.N:
            raise DomainError(f"n={n} outside [{self.K + 1}, {self.N}]")
        return int(self.r[n - self.K - 1])


def r_values(N: int, K: int | None = None) -> RValues:
    K = capital_k(N) if K is None else K
    if N <= K:
        raise DomainError("need N > K")
    r = np.zeros(N - K, dtype=np.int32)
    for k in range(1, K + 1):
        r += _indicator(N, K, k)
    return RValues(N, K, r)


def f_pair_count(k2: int, h: int, N: int, K: int | None = None) -> int:
    """F(k2, h): n in [K+1, N] with both n + c_k2 and n + c_{k2+h} prime."""
    K = capital_k(N) if K is None else K
    if k2 < 1 or h < 1 or k2 + h > K:
        raise DomainError(f"need 1 <= k2, 1 <= h, k2 + h <= K (K={K})")
    return int(np.count_nonzero(_indicator(N, K, k2) & _indicator(N, K, k2 + h)))


def d_sum(N: int, K: int | None = None) -> int:
    """D(N) = 2 * sum of F over the index set (even h only)."""
    K = capital_k(N) if K is None else K
    if K < 3:
        return 0
    return 2 * sum(f_pair_count(i.k2, i.h, N, K) for i in enumerate_index_set(K))


@dataclass(frozen=True)
class MomentReport:
    N: int
    K: int
    S1: int
    S2: int
    D: int
    r_star_count: int
    cs_bound: float

    @property
    def s1_density(self) -> float:
        return self.S1 / self.N

    @property
    def cs_density(self) -> float:
        return self.cs_bound / self.N

    @property
    def r_star_density(self) -> float:
        return self.r_star_count / (self.N - self.K)

    def as_dict(self) -> dict:
        out = asdict(self)
        out.update(s1_density=self.s1_density, cs_density=self.cs_density, r_star_density=self.r_star_density)
        return out


def moments(N: int) -> MomentReport:
    """S1 and S2 from r(n); D from pair counts, so S2 == S1 + D is a real check."""
    rv = r_values(N)
    r = rv.r.astype(np.int64)
    s1 = int(r.sum())
    s2 = int((r * r).sum())
    return MomentReport(
        N=N,
        K=rv.K,
        S1=s1,
        S2=s2,
        D=d_sum(N, rv.K),
        r_star_count=int(np.count_nonzero(r)),
        cs_bound=s1 * s1 / s2 if s2 else 0.0,
    )


@dataclass(frozen=True)
class SelbergRow:
    k2: int
    h: int
    d: int
    F: int
    bound: float

    @property
    def ratio(self) -> float:
        return self.F / self.bound if self.bound else 0.0


@dataclass
class SelbergReport:
    N: int
    K: int
    rows: list[SelbergRow] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((row.ratio for row in self.rows if row.h % 2 == 0), default=0.0)


def selberg_check(N: int, c2: ConstantEstimate | None = None) -> SelbergReport:
    """F(k2, h) against 4 S(d) N / (ln N)^2 for every k2 + h <= K.

    Odd h rows carry bound 0 and F 0 (the parity law); even h rows are the
    index set.
    """
    K = capital_k(N)
    c2v = (c2 or default_c2()).value
    scale = 4 * N / math.log(N) ** 2
    rows = []
    for h in range(1, K):
        for k2 in range(1, K - h + 1):
            F = f_pair_count(k2, h, N, K)
            d = pair_difference(k2, h)
            bound = scale * 2 * c2v * f_value(d) if h % 2 == 0 else 0.0
            rows.append(SelbergRow(k2, h, d, F, bound))
    return SelbergReport(N, K, rows)


# -- Sun witnesses -------------------------------------------------------------


@dataclass(frozen=True)
class WitnessRecord:
    n: int
    k_min: int | None
    prime_value: int | None
    capped: bool


def _is_prime_any(v: int) -> bool:
    return is_prime_u64(v) if v < 1 << 63 else is_probable_prime_big(v)


def _scalar_search(n: int, k_from: int, k_cap: int) -> WitnessRecord:
    for k in range(k_from, min(n - 1, k_cap) + 1):
        v = (1 << k) + n - k
        if _is_prime_any(v):
            return WitnessRecord(n, k, v, False)
    return WitnessRecord(n, None, None, True)


def sun_witness(n: int, k_cap: int = DEFAULT_K_CAP) -> WitnessRecord:
    """Least k in [1, min(n-1, k_cap)] with 2^k + (n - k) prime."""
    if n < 2 or k_cap < 1:
        raise DomainError("need n >= 2 and k_cap >= 1")
    return _scalar_search(n, 1, k_cap)


def validate_witness(rec: WitnessRecord) -> bool:
    """Recheck a record: witness prime and every smaller k composite."""
    if rec.capped:
        return False
    if not 1 <= rec.k_min <= rec.n - 1 or rec.prime_value != (1 << rec.k_min) + rec.n - rec.k_min:
        return False
    if not _is_prime_any(rec.prime_value):
        return False
    return not any(_is_prime_any((1 << k) + rec.n - k) for k in range(1, rec.k_min))


def sun_witnesses(lo: int, hi: int, k_cap: int = DEFAULT_K_CAP) -> list[WitnessRecord]:
    """Witness records for every n in [lo, hi]."""
    if lo < 2:
        raise DomainError("lo must be >= 2")
    if lo > hi:
        return []
    ks = min(SIEVED_K, k_cap)
    bits = build_sieve(0, hi + shift(ks) + 1).bits
    n = np.arange(lo, hi + 1, dtype=np.int64)
    kmin = np.zeros(n.size, dtype=np.int64)
    for k in range(1, ks + 1):
        todo = (kmin == 0) & (n - 1 >= k)
        if not todo.any():
            break
        hit = np.zeros(n.size, dtype=bool)
        hit[todo] = bits[n[todo] + shift(k)]
        kmin[hit] = k
    out = []
    for nv, kv in zip(n.tolist(), kmin.tolist()):
        if kv:
            out.append(WitnessRecord(nv, kv, (1 << kv) + nv - kv, False))
        elif nv - 1 <= ks:
            out.append(WitnessRecord(nv, None, None, True))
        else:
            out.append(_scalar_search(nv, ks + 1, k_cap))
    return out


@dataclass
class SunRangeReport:
    lo: int
    hi: int
    k_cap: int
    checked: int = 0
    capped: list[int] = field(default_factory=list)
    max_k_min: int = 0
    argmax_n: int | None = None
    histogram: dict[int, int] = field(default_factory=dict)
    last_n: int | None = None

    def absorb(self, records: list[WitnessRecord]) -> None:
        hist = Counter(self.histogram)
        for rec in records:
            self.checked += 1
            if rec.capped:
                self.capped.append(rec.n)
                continue
            hist[rec.k_min] += 1
            if rec.k_min > self.max_k_min:
                self.max_k_min, self.argmax_n = rec.k_min, rec.n
        self.histogram = dict(sorted(hist.items()))
        if records:
            self.last_n = records[-1].n

    def merge(self, other: SunRangeReport) -> SunRangeReport:
        """Combine reports over disjoint ranges."""
        hist = Counter(self.histogram)
        hist.update(other.histogram)
        best = max((self, other), key=lambda r: (r.max_k_min, -(r.argmax_n or 0)))
        return SunRangeReport(
            lo=min(self.lo, other.lo),
            hi=max(self.hi, other.hi),
            k_cap=self.k_cap,
            checked=self.checked + other.checked,
            capped=sorted(self.capped + other.capped),
            max_k_min=best.max_k_min,
            argmax_n=best.argmax_n,
            histogram=dict(sorted(hist.items())),
            last_n=max(filter(None, (self.last_n, other.last_n)), default=None),
        )

    def to_json(self) -> dict:
        out = asdict(self)
        out["schema_version"] = CHECKPOINT_VERSION
        out["histogram"] = {str(k): v for k, v in self.histogram.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> SunRangeReport:
        data = dict(data)
        data.pop("schema_version", None)
        data["histogram"] = {int(k): v for k, v in data["histogram"].items()}
        return cls(**data)


def verify_sun_range(
    lo: int,
    hi: int,
    k_cap: int = DEFAULT_K_CAP,
    checkpoint: str | os.PathLike | None = None,
    chunk: int = 1 << 18,
    validate: bool = False,
) -> SunRangeReport:
    """Witness statistics over [lo, hi], resumable from a JSON checkpoint.

    The checkpoint is rewritten after every chunk; a checkpoint for the same
    (lo, hi, k_cap) resumes after its `last_n`. With `validate` each record
    is re-checked by scalar primality tests and a failure raises AssertionError.
    """
    if lo < 2:
        raise DomainError("lo must be >= 2")
    report = SunRangeReport(lo, hi, k_cap)
    if lo > hi:
        return report
    path = Path(checkpoint) if checkpoint else None
    if path and path.is_file():
        saved = SunRangeReport.from_json(json.loads(path.read_text()))
        if (saved.lo, saved.hi, saved.k_cap) == (lo, hi, k_cap):
            report = saved
    start = lo if report.last_n is None else report.last_n + 1
    while start <= hi:
        stop = min(start + chunk - 1, hi)
        records = sun_witnesses(start, stop, k_cap)
        if validate:
            bad = [r.n for r in records if not r.capped and not validate_witness(r)]
            if bad:
                raise AssertionError(f"witness records failed revalidation for n in {bad[:10]}")
        report.absorb(records)
        if path:
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_text(json.dumps(report.to_json(), indent=1))
            tmp.replace(path)
        start = stop + 1
    return report
