"""The Romanov-type constant and the explicit density constant chains.

C_Rom = sum over odd square-free b of mu^2(b) g(b) / ord_b(2). Grouping the
terms by k = ord_b(2) turns the main part into sum_k W(k)/k, where W(k) is
recovered by Moebius inversion from T(j) = prod_{p | 2^j - 1} (1 + 1/(p-2)).
That needs the complete factorization of 2^j - 1 for every j <= M, so the
factors live in a :class:`FactorTableCache` which can be saved to or seeded
from a plain-text table.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .arith_core import (
    EULER_GAMMA,
    RHO_BUDGET,
    ConstantEstimate,
    FactorMap,
    divisors,
    factorize,
    mobius,
)
from .errors import DomainError, FactorizationTimeout, SunconjError
from .prime_engine import is_prime

FACTOR_TABLE_ENV = "SUNCONJ_FACTOR_TABLE"
DEFAULT_M = 60
TAIL_CONSTANT = 2.7961

LN2 = math.log(2.0)
E_GAMMA = math.exp(EULER_GAMMA)

class FactorTableError(SunconjError, ValueError):
    pass


class RomanovTimeout(FactorizationTimeout):
    """Raised when 2^k - 1 cannot be factored for some k <= M.

    `usable_m` is the largest M' for which the main term is still exact and
    `partial` is romanov_main(usable_m).
    """

    def __init__(self, k: int, cause: FactorizationTimeout, partial: float):
        SunconjError.__init__(self, f"2^{k}-1 not fully factored ({cause}); usable M' = {k - 1}")
        self.n = cause.n
        self.budget = cause.budget
        self.k = k
        self.usable_m = k - 1
        self.partial = partial


def parse_factor_line(line: str) -> tuple[int, FactorMap] | None:
    """Parse one `k: p1^e1 p2^e2 ...` line; comments and blank lines give None."""
    line = line.split("#", 1)[0].strip()
    if not line:
        return None
    head, sep, body = line.partition(":")
    if not sep:
        raise FactorTableError(f"missing ':' in {line!r}")
    k = int(head)
    d: dict[int, int] = {}
    for tok in body.split():
        p, _, e = tok.partition("^")
        d[int(p)] = d.get(int(p), 0) + (int(e) if e else 1)
    return k, FactorMap.from_dict(d)


def format_factor_line(k: int, fm: FactorMap) -> str:
    return f"{k}: " + " ".join(f"{p}^{e}" for p, e in fm)


def validate_mersenne_entry(k: int, fm: FactorMap) -> None:
    if k < 1:
        raise FactorTableError(f"exponent must be >= 1, got {k}")
    if fm.value() != (1 << k) - 1:
        raise FactorTableError(f"factors listed for k={k} do not multiply to 2^{k}-1")
    for p in fm.primes:
        if not is_prime(p):
            raise FactorTableError(f"factor {p} listed for k={k} is not prime")


@dataclass
class FactorTableCache:
    """Factorizations of 2^k - 1 keyed by k, each tagged 'computed' or 'loaded'."""

    entries: dict[int, FactorMap] = field(default_factory=dict)
    sources: dict[int, str] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __contains__(self, k: int) -> bool:
        return k in self.entries

    def get(self, k: int) -> FactorMap | None:
        return self.entries.get(k)

    def put(self, k: int, fm: FactorMap, source: str = "computed") -> None:
        validate_mersenne_entry(k, fm)
        with self._lock:
            self.entries[k] = fm
            self.sources[k] = source

    @classmethod
    def load(cls, path: str | os.PathLike) -> FactorTableCache:
        cache = cls()
        cache.update_from(path)
        return cache

    def update_from(self, path: str | os.PathLike) -> None:
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), 1):
            try:
                parsed = parse_factor_line(line)
            except ValueError as exc:
                raise FactorTableError(f"{path}:{lineno}: {exc}") from exc
            if parsed is not None:
                k, fm = parsed
                try:
                    self.put(k, fm, "loaded")
                except FactorTableError as exc:
                    raise FactorTableError(f"{path}:{lineno}: {exc}") from exc

    def save(self, path: str | os.PathLike) -> None:
        lines = ["# factorizations of 2^k - 1, one exponent per line"]
        lines += [format_factor_line(k, self.entries[k]) for k in sorted(self.entries)]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def default_cache() -> FactorTableCache:
    """Empty cache, seeded from $SUNCONJ_FACTOR_TABLE when that file exists."""
    path = os.environ.get(FACTOR_TABLE_ENV)
    if path and Path(path).is_file():
        return FactorTableCache.load(path)
    return FactorTableCache()


_shared_cache = FactorTableCache()


def cyclotomic_at_two(n: int) -> int:
    """Phi_n(2) = prod_{d | n} (2^d - 1)^mu(n/d)."""
    num, den = 1, 1
    for d in divisors(factorize(n)):
        mu = mobius(n // d)
        if mu == 1:
            num *= (1 << d) - 1
        elif mu == -1:
            den *= (1 << d) - 1
    return num // den


def mersenne_factorization(
    k: int, cache: FactorTableCache | None = None, budget: int = RHO_BUDGET
) -> FactorMap:
    """Factor 2^k - 1 by factoring each cyclotomic part Phi_j(2), j | k."""
    if k < 1:
        raise DomainError("k must be >= 1")
    cache = _shared_cache if cache is None else cache
    hit = cache.get(k)
    if hit is not None:
        return hit
    fm = FactorMap()
    for j in divisors(factorize(k)):
        fm = fm.merge(factorize(cyclotomic_at_two(j), budget=budget))
    cache.put(k, fm, "computed")
    return fm


def t_exact(k: int, cache: FactorTableCache | None = None) -> Fraction:
    """T(k) = sum of mu^2(b) g(b) over b | 2^k - 1 = prod (1 + 1/(p-2))."""
    out = Fraction(1)
    for p in mersenne_factorization(k, cache).primes:
        out *= Fraction(p - 1, p - 2)
    return out


def t_value(k: int, cache: FactorTableCache | None = None) -> float:
    return float(t_exact(k, cache))


def w_exact(k: int, cache: FactorTableCache | None = None) -> Fraction:
    """Total mu^2(b) g(b) over odd square-free b with ord_b(2) == k."""
    return sum(
        (mobius(k // j) * t_exact(j, cache) for j in divisors(factorize(k))),
        Fraction(0),
    )


def romanov_terms(m: int, cache: FactorTableCache | None = None) -> list[Fraction]:
    """[W(1)/1, ..., W(m)/m] as exact fractions."""
    if m < 1:
        raise DomainError("M must be >= 1")
    terms: list[Fraction] = []
    for k in range(1, m + 1):
        try:
            terms.append(w_exact(k, cache) / k)
        except FactorizationTimeout as exc:
            raise RomanovTimeout(k, exc, float(sum(terms, Fraction(0)))) from exc
    return terms


def romanov_main(m: int, cache: FactorTableCache | None = None) -> float:
    """Part of C_Rom from the b with ord_b(2) <= m."""
    return float(sum(romanov_terms(m, cache), Fraction(0)))


def romanov_tail_bound(m: int) -> float:
    """Upper bound 2.7961 log(M)/M for the terms with ord_b(2) > M."""
    if m < 2:
        raise DomainError("tail bound needs M >= 2")
    return TAIL_CONSTANT * math.log(m) / m


def romanov_constant(m: int = DEFAULT_M, cache: FactorTableCache | None = None) -> ConstantEstimate:
    """Enclosure [main(M), main(M) + tail(M)] of C_Rom; value is the upper end."""
    tail = romanov_tail_bound(m)
    main = romanov_main(m, cache)
    return ConstantEstimate(main + tail, main, main + tail, f"ord_b(2) <= {m}, tail 2.7961 log(M)/M")


@dataclass(frozen=True)
class DensityChainReport:
    c_rom_upper: float
    parenthesis: float
    inv_ln2: float
    quad_coeff: float
    second_term: float
    c_upper: float
    numerator: float
    delta: float
    paper_rounding: bool
    ln2: float
    e_gamma: float


def density_chain(c_rom_upper: float, paper_rounding: bool = False) -> DensityChainReport:
    """C_upper = 1/ln2 + 4/ln2^2 (C_Rom + e^gamma ln2) and delta = ln2^-2 / C_upper.

    With `paper_rounding` every intermediate is rounded to the number of
    digits of the reference chain (5 decimals for e^gamma ln2 and the
    bracket, 4 for the rest) before it is used in the next step.
    """
    if c_rom_upper < 0:
        raise DomainError("c_rom_upper must be >= 0")
    ln2, eg = LN2, E_GAMMA
    if paper_rounding:
        r5, r4 = (lambda x: round(x, 5)), (lambda x: round(x, 4))
    else:
        r5 = r4 = lambda x: x
    paren = r5(c_rom_upper + r5(eg * ln2))
    inv = r4(1 / ln2)
    quad = r4(4 / ln2**2)
    second = r4(quad * paren)
    c_upper = r4(inv + second)
    num = r4(inv**2) if paper_rounding else 1 / ln2**2
    return DensityChainReport(
        c_rom_upper, paren, inv, quad, second, c_upper, num, num / c_upper, paper_rounding, ln2, eg
    )


def conditional_chain(phi: float) -> float:
    """Density 1/(ln 2 + 2 phi) available under uniform prime-pair asymptotics."""
    if phi < 0:
        raise DomainError("phi must be >= 0")
    return 1.0 / (LN2 + 2.0 * phi)


def unconditional_chain(phi: float) -> float:
    """Density 1/(ln 2 + 8 phi) available from the Selberg upper bound."""
    if phi < 0:
        raise DomainError("phi must be >= 0")
    return 1.0 / (LN2 + 8.0 * phi)
