"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION <n>: PASS|FAIL <summary>`` line, which
is also repeated in the pytest terminal summary.
"""
import time
from fractions import Fraction
from math import gcd

import pytest

from conftest import ACCEPTANCE_LINES
from k3walls import bounds
from k3walls.arith import cf_value, euler_phi, fibonacci
from k3walls.suites import (
    KNOWN_VALUES,
    f_properties_exhaustive,
    f_properties_random,
    suite_g_sums,
    suite_numerical_walls,
    suite_pell,
    suite_twist,
)
from k3walls.walls import chamber_count, count_H, f_count_divisor, f_count_int


@pytest.fixture
def report():
    def emit(number: int, passed: bool, summary: str, started: float) -> None:
        line = f"CRITERION {number}: {'PASS' if passed else 'FAIL'} {summary} ({time.perf_counter() - started:.1f}s)"
        print(line)
        ACCEPTANCE_LINES.append(line)
    return emit


def _fmt(bad, limit=5):
    return "; ".join(str(b) for b in bad[:limit])


def test_criterion_01_table(report):
    t0 = time.perf_counter()
    got = {key: count_H(Fraction(*key)).h_value for key in KNOWN_VALUES}
    bad = [(key, h, got[key]) for key, h in KNOWN_VALUES.items() if got[key] != h]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report(1, ok, f"{len(KNOWN_VALUES) - len(bad)}/{len(KNOWN_VALUES)} tabulated values exact, "
                  f"H(270/811) = {got[(270, 811)]}", t0)
    assert not bad, _fmt(bad)
    assert elapsed < 120


def test_criterion_02_families(report):
    t0 = time.perf_counter()
    bad = [("1", m) for m in range(2, 301) if chamber_count(Fraction(1, m)) != m]
    bad += [("n/(2n+1)", n) for n in range(2, 101) if chamber_count(Fraction(n, 2 * n + 1)) != n + 4]
    elapsed = time.perf_counter() - t0
    report(2, not bad and elapsed < 60, "H(1/m) = m for m <= 300 and H(n/(2n+1)) = n + 4 for 2 <= n <= 100", t0)
    assert not bad, _fmt(bad)
    assert elapsed < 60


def test_criterion_03_fibonacci(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 21):
        got = chamber_count(Fraction(fibonacci(n), fibonacci(n + 1)))
        if got != (n // 2) ** 2 + 2:
            bad.append((n, got))
    elapsed = time.perf_counter() - t0
    report(3, not bad and elapsed < 120, f"floor(n/2)^2 + 2 for n = 3..20 (m up to {fibonacci(21)})", t0)
    assert not bad, _fmt(bad)
    assert elapsed < 120


def test_criterion_04_continued_fractions(report):
    t0 = time.perf_counter()
    bad = []
    for a in range(2, 9):
        for b in range(2, 9):
            h = chamber_count(cf_value([a, b]))
            allowed = {b + 2 * a} if a <= b else {a + 2 * b, a + 2 * b - 1}
            if h not in allowed:
                bad.append((a, b, h))
    report(4, not bad, "H([a,b]) for 2 <= a, b <= 8 within the predicted values", t0)
    assert not bad, _fmt(bad)


def test_criterion_05_upper_bound(report):
    t0 = time.perf_counter()
    pairs = [(n, m) for m in range(6, 301) for n in range(1, m) if gcd(n, m) == 1]
    bad = [(n, m) for n, m in pairs if chamber_count(Fraction(n, m)) > m]
    report(5, not bad, f"H(n/m) <= m on all {len(pairs)} pairs with 6 <= m <= 300", t0)
    assert not bad, _fmt(bad)


def test_criterion_06_oracle_equivalence(report):
    t0 = time.perf_counter()
    total, bad = 0, []
    for m in range(2, 61):
        for r in range(1, m):
            if gcd(m, r) != 1:
                continue
            for n, s in bounds.s_set(m, r):
                total += 1
                if f_count_int(n, m, s, r) != f_count_divisor(Fraction(n, m), Fraction(s, r)):
                    bad.append((n, m, s, r))
    report(6, not bad, f"f_count = f_count_divisor on {total} cases with m <= 60", t0)
    assert not bad, _fmt(bad)


def test_criterion_07_f_properties(report):
    t0 = time.perf_counter()
    exhaustive = f_properties_exhaustive(60)
    sampled, drawn = f_properties_random(1000, 200)
    bad = {k: v for k, v in exhaustive.items() if v}
    bad.update({f"random {k}": v for k, v in sampled.items() if v})
    report(7, not bad and drawn >= 1000,
           f"five F/H properties exhaustive for m <= 60 and on {drawn} random cases with m <= 200", t0)
    assert not bad, bad
    assert drawn >= 1000


def test_criterion_08_g_sums(report):
    t0 = time.perf_counter()
    checks = suite_g_sums(40, 60, 120)
    failed = [c.line() for c in checks if not c.passed]
    report(8, not failed, "; ".join(c.name for c in checks), t0)
    assert not failed, failed


def test_criterion_09_numerical_walls(report):
    t0 = time.perf_counter()
    checks = suite_numerical_walls(60, 40)
    failed = [c.line() for c in checks if not c.passed]
    report(9, not failed, "; ".join(f"{c.name} ({c.detail})" for c in checks), t0)
    assert not failed, failed


def test_criterion_10_twist(report):
    t0 = time.perf_counter()
    checks = suite_twist(samples=1000)
    failed = [c.line() for c in checks if not c.passed]
    report(10, not failed, "chain gives (113, 82e-82σ, -119); isometric involution on 1000 random vectors", t0)
    assert not failed, failed


def test_criterion_11_pell(report):
    t0 = time.perf_counter()
    checks = suite_pell(10)
    elapsed = time.perf_counter() - t0
    failed = [c.line() for c in checks if not c.passed]
    report(11, not failed and elapsed < 10, f"{sum(c.name.startswith('certificate') for c in checks)} certificates", t0)
    assert not failed, failed
    assert elapsed < 10


def test_criterion_12_stats(report):
    t0 = time.perf_counter()
    rows = bounds.h_stats_range(2, 300)
    over_bound = [r.m for r in rows if r.h_sum > bounds.sum_bound_rhs(r.m)]
    under_floor = [r.m for r in rows if r.h_sum < euler_phi(r.m)]
    text = bounds.stats_rows_csv(rows)
    emitted = len(text.splitlines()) == len(rows) + 1 and all(r.ratio > 0 for r in rows)
    ok = len(rows) == 299 and not over_bound and not under_floor and emitted
    report(12, ok, f"{len(rows)} rows, bound holds row by row, ratio at m=300 is {rows[-1].ratio:.4f}", t0)
    assert not over_bound, over_bound
    assert not under_floor, under_floor
    assert emitted
