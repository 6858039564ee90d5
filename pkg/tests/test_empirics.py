import json
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sunconj import empirics
from sunconj.arith_core import twin_prime_constant
from sunconj.empirics import (
    SunRangeReport,
    WitnessRecord,
    d_sum,
    f_pair_count,
    moments,
    r_values,
    selberg_check,
    sun_witness,
    sun_witnesses,
    validate_witness,
    verify_sun_range,
)
from sunconj.errors import DomainError
from sunconj.phi_mean import capital_k, enumerate_index_set, shift

from .conftest import trial_is_prime


def test_r13_at_million():
    rv = r_values(10**6)
    assert rv.K == 12
    tested = [13 + shift(k) for k in range(1, 13)]
    assert tested == [14, 15, 18, 25, 40, 71, 134, 261, 516, 1027, 2050, 4097]
    assert [v for v in tested if trial_is_prime(v)] == [71]
    assert rv[13] == 1


def test_r_values_brute_force():
    N = 3000
    rv = r_values(N)
    K = rv.K
    for n in range(K + 1, N + 1):
        assert rv[n] == sum(trial_is_prime(n + shift(k)) for k in range(1, K + 1))
    with pytest.raises(DomainError):
        rv[K]


@pytest.mark.parametrize("N", [10**3, 10**4, 10**5])
def test_second_moment_identity(N):
    rep = moments(N)
    rv = r_values(N)
    assert rep.S1 == int(rv.r.sum())
    assert rep.S2 == int((rv.r.astype(np.int64) ** 2).sum())
    assert rep.S2 == rep.S1 + rep.D
    assert rep.D == d_sum(N)
    assert rep.cs_bound <= rep.r_star_count
    assert int(rv.r.max()) <= rep.K
    assert rep.r_star_count == int(np.count_nonzero(rv.r))
    # the window starts at K + 1, so at most K head positions are outside it
    assert rv.r.size == N - rep.K


def test_parity_law():
    N = 10**4
    K = capital_k(N)
    for h in range(1, K, 2):
        for k2 in range(1, K - h + 1):
            assert f_pair_count(k2, h, N) == 0


def test_f_pair_count_small_brute():
    # K(100) = 2 is below the k2 + h <= K precondition, so K = 3 is passed explicitly
    with pytest.raises(DomainError):
        f_pair_count(1, 2, 100)
    got = f_pair_count(1, 2, 100, K=3)
    assert got == sum(1 for n in range(4, 101) if trial_is_prime(n + 1) and trial_is_prime(n + 5))


def test_f_pair_count_bounded_by_windows():
    N = 10**4
    K = capital_k(N)
    rv_bits = [int(np.count_nonzero(empirics._indicator(N, K, k))) for k in range(1, K + 1)]
    for idx in enumerate_index_set(K):
        F = f_pair_count(idx.k2, idx.h, N)
        assert F <= min(rv_bits[idx.k2 - 1], rv_bits[idx.k2 + idx.h - 1])


def test_d_sum_tiny():
    # K(500) = 3, so the index set is {(1, 2)}
    assert capital_k(500) == 3
    assert d_sum(500) == 2 * f_pair_count(1, 2, 500)


def test_r_star_matches_witness_search():
    N = 10**5
    rep = moments(N)
    recs = sun_witnesses(rep.K + 1, N, k_cap=rep.K)
    assert rep.r_star_count == sum(1 for r in recs if not r.capped)


def test_moments_at_million_diagnostics(moments_1e6):
    rep = moments_1e6
    assert rep.K == 12
    assert rep.S2 == rep.S1 + rep.D
    assert rep.cs_bound / rep.N >= 0.0734
    # S1 by prime counts in each shifted window, independent of r(n)
    oracle = sum(
        int(sympy.primepi(rep.N + shift(k))) - int(sympy.primepi(rep.K + shift(k)))
        for k in range(1, rep.K + 1)
    )
    assert rep.S1 == oracle


def test_selberg_check():
    c2 = twin_prime_constant(10**6)
    rep = selberg_check(10**5, c2)
    assert all(r.F == 0 and r.ratio == 0 for r in rep.rows if r.h % 2)
    assert rep.max_ratio <= 1.5
    first = next(r for r in rep.rows if (r.k2, r.h) == (1, 2))
    assert first.d == 4
    assert first.bound == pytest.approx(4 * 2 * c2.value * 10**5 / math.log(10**5) ** 2)


@pytest.mark.parametrize("n,k,p", [(2, 1, 3), (3, 2, 5), (4, 1, 5)])
def test_sun_witness_examples(n, k, p):
    rec = sun_witness(n)
    assert (rec.k_min, rec.prime_value, rec.capped) == (k, p, False)
    assert validate_witness(rec)


def test_sun_witness_capped():
    rec = sun_witness(2161, k_cap=256)
    assert rec.capped and rec.k_min is None
    assert not validate_witness(rec)


def test_validate_witness_rejects_non_minimal():
    assert not validate_witness(WitnessRecord(3, 3, 2**3 + 0, False))
    # 2^3 + 3 = 11 is prime, but k = 1 already gives 7
    assert not validate_witness(WitnessRecord(6, 3, 11, False))
    assert not validate_witness(WitnessRecord(6, 1, 8, False))
    assert validate_witness(sun_witness(7))


def test_sun_witnesses_vectorised_matches_scalar():
    recs = sun_witnesses(2, 6000, k_cap=64)
    for rec in recs:
        assert rec == sun_witness(rec.n, k_cap=64)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10**6))
def test_witness_records_revalidate(n):
    rec = sun_witnesses(n, n)[0]
    assert rec == sun_witness(n)
    if not rec.capped:
        assert validate_witness(rec)


def test_small_range_report():
    rep = verify_sun_range(2, 100)
    assert rep.checked == 99 and not rep.capped
    # n = 53 needs k = 20: 2^k + 53 - k is composite for every k < 20
    assert rep.max_k_min == 20 and rep.argmax_n == 53
    assert sum(rep.histogram.values()) == 99
    assert verify_sun_range(10, 5).checked == 0
    with pytest.raises(DomainError):
        verify_sun_range(1, 5)


def test_merge_is_additive():
    whole = verify_sun_range(2, 20000, k_cap=64)
    a = verify_sun_range(2, 9000, k_cap=64)
    b = verify_sun_range(9001, 20000, k_cap=64)
    merged = a.merge(b)
    assert merged == whole
    assert b.merge(a) == whole


def test_checkpoint_resume(tmp_path, monkeypatch):
    path = tmp_path / "ck.json"
    full = verify_sun_range(2, 5000, k_cap=64, chunk=700)

    real = empirics.sun_witnesses
    calls = {"n": 0}

    def dying(lo, hi, k_cap):
        calls["n"] += 1
        if calls["n"] == 4:
            raise KeyboardInterrupt
        return real(lo, hi, k_cap)

    monkeypatch.setattr(empirics, "sun_witnesses", dying)
    with pytest.raises(KeyboardInterrupt):
        verify_sun_range(2, 5000, k_cap=64, checkpoint=path, chunk=700)
    saved = json.loads(path.read_text())
    assert saved["schema_version"] == 1 and saved["last_n"] == 2 + 3 * 700 - 1
    monkeypatch.setattr(empirics, "sun_witnesses", real)

    resumed = verify_sun_range(2, 5000, k_cap=64, checkpoint=path, chunk=700)
    assert resumed == full
    # a checkpoint for other parameters is ignored
    other = verify_sun_range(2, 3000, k_cap=64, checkpoint=path, chunk=700)
    assert other == verify_sun_range(2, 3000, k_cap=64)


def test_report_json_round_trip():
    rep = verify_sun_range(2, 3000, k_cap=16)
    assert rep.capped  # k_cap 16 is too small for some n
    again = SunRangeReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert again == rep


def test_validate_flag():
    rep = verify_sun_range(2, 2000, validate=True)
    assert rep.checked == 1999
