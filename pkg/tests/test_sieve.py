"""Sieve, interval, gap, twin-scan, and cache-format tests.

Expected values come from the trial-division oracle in _oracles.py or are
small enough to check by hand; nothing here trusts the segmented sieve to
validate itself.
"""

import os
import random
import struct

import numpy as np
import pytest

from twinmeans import sieve
from twinmeans.errors import CacheFormatError, CapacityError

import _oracles as oracle


# ---------------------------------------------------------------------------
# primes_up_to / iter_prime_segments


def test_primes_up_to_10():
    assert sieve.primes_up_to(10).primes.tolist() == [2, 3, 5, 7]


def test_primes_up_to_small_edges():
    assert sieve.primes_up_to(0).primes.tolist() == []
    assert sieve.primes_up_to(1).primes.tolist() == []
    assert sieve.primes_up_to(2).primes.tolist() == [2]
    assert sieve.primes_up_to(3).primes.tolist() == [2, 3]


def test_primes_up_to_100_against_trial_division():
    got = sieve.primes_up_to(100).primes.tolist()
    assert got == oracle.primes_upto(100)
    assert len(got) == 25
    assert got[-1] == 97


def test_primes_up_to_10000_against_trial_division():
    assert sieve.primes_up_to(10_000).primes.tolist() == oracle.primes_upto(10_000)


def test_prime_seq_dtype_and_limit():
    ps = sieve.primes_up_to(50)
    assert ps.primes.dtype == np.int64
    assert ps.limit == 50


@pytest.mark.parametrize("segment_size", [16, 17, 64, 1024, 4096])
def test_segment_size_does_not_change_output(segment_size):
    base = sieve.primes_up_to(100_000).primes
    seg = sieve.primes_up_to(100_000, segment_size=segment_size).primes
    assert np.array_equal(base, seg)


@pytest.mark.parametrize(
    "lo,hi",
    [(0, 100), (1, 100), (2, 100), (3, 97), (10, 11), (13, 13), (0, 2), (96, 97)],
)
def test_iter_prime_segments_boundaries(lo, hi):
    chunks = list(sieve.iter_prime_segments(lo, hi, segment_size=16))
    got = [int(p) for c in chunks for p in c]
    assert got == oracle.primes_between(lo, hi)


def test_prime_stream_window():
    got = [int(p) for seg in sieve.prime_stream(13, lo=2) for p in seg]
    assert got == [3, 5, 7, 11, 13]


def test_prime_count_against_trial_division():
    assert sieve.prime_count(10_000) == len(oracle.primes_upto(10_000))


def test_prime_count_millionth_milestone():
    # classic table value, re-derivable from any prime-counting reference
    assert sieve.prime_count(10**6) == 78_498


def test_capacity_cap_rejected_before_work():
    with pytest.raises(CapacityError):
        sieve.primes_up_to(sieve.MAX_SIEVE_LIMIT + 1)
    with pytest.raises(CapacityError):
        list(sieve.iter_prime_segments(0, 100, max_limit=50))


# ---------------------------------------------------------------------------
# next_prime_after / interval_primes


@pytest.mark.parametrize(
    "n,expected",
    [(1, 2), (2, 3), (3, 5), (7, 11), (89, 97), (113, 127), (10**6, 1_000_003)],
)
def test_next_prime_after_known(n, expected):
    assert sieve.next_prime_after(n) == expected


def test_next_prime_after_random_sweep():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 100_000)
        assert sieve.next_prime_after(n) == oracle.next_prime(n)


def test_interval_10_20():
    ip = sieve.interval_primes(10, 20)
    assert ip.primes.tolist() == [11, 13, 17, 19]
    assert (ip.p_s, ip.P, ip.p_e) == (11, 19, 23)


def test_interval_empty():
    ip = sieve.interval_primes(24, 28)
    assert ip.primes.size == 0
    assert ip.P is None
    assert ip.p_s == ip.p_e == 29


def test_interval_2_3():
    ip = sieve.interval_primes(2, 3)
    assert ip.primes.tolist() == [3]
    assert (ip.p_s, ip.P, ip.p_e) == (3, 3, 5)


def test_interval_rejects_bad_endpoints():
    with pytest.raises(ValueError):
        sieve.interval_primes(20, 10)
    with pytest.raises(ValueError):
        sieve.interval_primes(0, 10)
    with pytest.raises(ValueError):
        sieve.interval_primes(5, 5)


def test_interval_random_sweep():
    rng = random.Random(11)
    for _ in range(100):
        x = rng.randrange(1, 2_000)
        y = x + rng.randrange(1, 300)
        ip = sieve.interval_primes(x, y)
        ref = oracle.primes_between(x, y)
        assert ip.primes.tolist() == ref
        assert ip.p_e == oracle.next_prime(y)
        if ref:
            assert ip.p_s == ref[0] and ip.P == ref[-1]
        else:
            assert ip.P is None and ip.p_s == ip.p_e


# ---------------------------------------------------------------------------
# max gaps


def test_max_gap_smallest_case():
    assert sieve.max_gap_up_to(3) == sieve.GapRecord(limit=3, gap=1, lower_prime=2)


def test_max_gap_30():
    rec = sieve.max_gap_up_to(30)
    assert (rec.gap, rec.lower_prime) == (6, 23)


def test_max_gap_100():
    rec = sieve.max_gap_up_to(100)
    assert (rec.gap, rec.lower_prime) == (8, 89)


def test_max_gap_earliest_tie_wins():
    # gap 4 appears at 7->11, 13->17, 19->23; the first one must be reported
    rec = sieve.max_gap_up_to(23)
    assert (rec.gap, rec.lower_prime) == (4, 7)


def test_max_gap_against_oracle_sweep():
    rng = random.Random(13)
    for _ in range(60):
        limit = rng.randrange(3, 500)
        rec = sieve.max_gap_up_to(limit)
        assert (rec.gap, rec.lower_prime) == oracle.max_gap(limit)


def test_max_gap_segment_boundaries_do_not_split_gaps():
    # tiny segments force gaps to straddle segment edges
    rec = sieve.max_gap_up_to(1_000, segment_size=16)
    assert (rec.gap, rec.lower_prime) == oracle.max_gap(1_000)


# ---------------------------------------------------------------------------
# twin scan


def test_twin_pairs_10_20():
    assert sieve.twin_pairs_in(10, 20) == [(11, 13), (17, 19)]


def test_twin_pairs_cotwin_beyond_y_counts():
    # 5 <= 6 is in range even though 7 > 6
    assert sieve.twin_pairs_in(1, 6) == [(3, 5), (5, 7)]


def test_twin_pairs_none():
    assert sieve.twin_pairs_in(89, 97) == []


def test_twin_pairs_random_sweep():
    rng = random.Random(17)
    for _ in range(100):
        x = rng.randrange(1, 3_000)
        y = x + rng.randrange(1, 400)
        assert sieve.twin_pairs_in(x, y) == oracle.twin_pairs(x, y)


# ---------------------------------------------------------------------------
# cache format


def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "p.tpc")
    ps = sieve.primes_up_to(1_000)
    sieve.save_cache(ps, path)
    back = sieve.load_cache(path)
    assert back.limit == 1_000
    assert np.array_equal(back.primes, ps.primes)


def test_cache_header_layout(tmp_path):
    path = str(tmp_path / "p.tpc")
    sieve.save_cache(sieve.primes_up_to(10), path)
    raw = open(path, "rb").read()
    assert raw[:4] == b"TPC1"
    assert raw[4] == 1
    limit, count = struct.unpack_from("<QQ", raw, 5)
    assert (limit, count) == (10, 4)
    assert struct.unpack_from("<4Q", raw, 21) == (2, 3, 5, 7)
    assert len(raw) == 21 + 4 * 8


def _write_raw(path, magic=b"TPC1", version=1, limit=10, primes=(2, 3, 5, 7)):
    with open(path, "wb") as fh:
        fh.write(magic)
        fh.write(bytes([version]))
        fh.write(struct.pack("<QQ", limit, len(primes)))
        fh.write(np.asarray(primes, dtype="<u8").tobytes())


@pytest.mark.parametrize(
    "kwargs",
    [
        {"magic": b"XPC1"},
        {"version": 2},
        {"primes": (2, 5, 3, 7)},        # not increasing
        {"primes": (2, 3, 5, 7, 11)},    # 11 > limit
        {"primes": (2, 3, 3, 7)},        # not strictly increasing
    ],
)
def test_cache_rejects_bad_files(tmp_path, kwargs):
    path = str(tmp_path / "bad.tpc")
    _write_raw(path, **kwargs)
    with pytest.raises(CacheFormatError):
        sieve.load_cache(path)


def test_cache_rejects_truncation_and_trailing_bytes(tmp_path):
    path = str(tmp_path / "bad.tpc")
    _write_raw(path)
    raw = open(path, "rb").read()
    with open(path, "wb") as fh:
        fh.write(raw[:-3])
    with pytest.raises(CacheFormatError):
        sieve.load_cache(path)
    with open(path, "wb") as fh:
        fh.write(raw + b"\x00")
    with pytest.raises(CacheFormatError):
        sieve.load_cache(path)


def test_cached_primes_builds_then_reuses(tmp_path):
    path = str(tmp_path / "p.tpc")
    first = sieve.cached_primes_up_to(1_000, path)
    stamp = os.stat(path).st_mtime_ns
    again = sieve.cached_primes_up_to(1_000, path)
    assert os.stat(path).st_mtime_ns == stamp  # untouched on reuse
    assert np.array_equal(first.primes, again.primes)


def test_cached_primes_serves_prefix_without_rewrite(tmp_path):
    path = str(tmp_path / "p.tpc")
    sieve.cached_primes_up_to(1_000, path)
    stamp = os.stat(path).st_mtime_ns
    small = sieve.cached_primes_up_to(500, path)
    assert os.stat(path).st_mtime_ns == stamp
    assert small.primes.tolist() == oracle.primes_upto(500)
    assert small.limit == 500


def test_cached_primes_rebuilds_when_too_small(tmp_path):
    path = str(tmp_path / "p.tpc")
    sieve.cached_primes_up_to(100, path)
    big = sieve.cached_primes_up_to(1_000, path)
    assert big.primes.tolist() == oracle.primes_upto(1_000)
    assert sieve.load_cache(path).limit == 1_000


def test_cached_primes_rebuilds_corrupt_file(tmp_path):
    path = str(tmp_path / "p.tpc")
    with open(path, "wb") as fh:
        fh.write(b"garbage that is definitely not a prime cache")
    ps = sieve.cached_primes_up_to(200, path)
    assert ps.primes.tolist() == oracle.primes_upto(200)
    assert sieve.load_cache(path).limit == 200  # file replaced with a valid one
