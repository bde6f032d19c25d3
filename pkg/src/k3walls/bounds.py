"""Identities and bounds relating F, G and H, plus per-rank statistics."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

from .arith import euler_phi
from .walls import chamber_count, f_count_int, g_sum, g_total

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """``map`` in input order, optionally over worker processes."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def coprime_residues(m: int) -> list[int]:
    return [n for n in range(1, m) if gcd(n, m) == 1] if m > 1 else [0]


def s_set(m: int, r: int) -> Iterator[tuple[int, int]]:
    """``S_{m,r}``: ``1 <= n < m``, ``0 <= s <= r``, both coprime to their denominators."""
    for n in range(1, m):
        if gcd(n, m) != 1:
            continue
        for s in range(r + 1):
            if gcd(s, r) == 1:
                yield n, s


# -- counting solutions of rn - ms = d -------------------------------------

def solution_count(m: int, r: int, d: int) -> int:
    """``#{(n, s) in S_{m,r} : rn - ms = d}`` by enumeration."""
    if not (1 <= r <= m - 1 and 1 <= d <= m - 1):
        raise ValueError(f"need 1 <= r, d <= m - 1, got m={m}, r={r}, d={d}")
    return sum(1 for n, s in s_set(m, r) if r * n - m * s == d)


def solution_count_prediction(m: int, r: int, d: int) -> tuple[str, int]:
    """Case split for :func:`solution_count`: ``("eq", v)`` or ``("le", v)``."""
    a = gcd(m, r)
    if a == 1 and gcd(m * r, d) == 1:
        return "eq", 1
    if a > 1 and d % a == 0 and gcd(m * r // (a * a), d // a) == 1:
        return "le", euler_phi(m) // euler_phi(m // a)
    return "eq", 0


def check_solution_count(m: int, r: int, d: int) -> bool:
    kind, value = solution_count_prediction(m, r, d)
    got = solution_count(m, r, d)
    return got == value if kind == "eq" else got <= value


# -- sums of F against G ---------------------------------------------------

def f_sum_over_s(m: int, r: int) -> int:
    return sum(f_count_int(n, m, s, r) for n, s in s_set(m, r))


def check_counting_identity(m: int, r: int) -> bool:
    """Sum of F over ``S_{m,r}`` equals ``G(m, r)``."""
    if gcd(m, r) != 1 or not 1 <= r < m:
        raise ValueError(f"need gcd(m, r) = 1 and r < m, got m={m}, r={r}")
    return f_sum_over_s(m, r) == g_sum(m, r)


@lru_cache(maxsize=None)
def _g_total_cached(m: int) -> int:
    return g_total(m)


@dataclass(frozen=True)
class SumBound:
    m: int
    h_sum: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.h_sum <= self.bound

    def __bool__(self) -> bool:
        return self.holds


def h_sum(m: int) -> int:
    return sum(chamber_count(Fraction(n, m)) for n in coprime_residues(m))


def sum_bound_rhs(m: int) -> int:
    """``phi(m) + sum over divisors d > 1 of m of (phi(m)/phi(d)) G(d)``."""
    phi = euler_phi(m)
    total = phi
    for d in range(2, m + 1):
        if m % d == 0:
            total += phi // euler_phi(d) * _g_total_cached(d)
    return total


def check_sum_bound(m: int) -> SumBound:
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    return SumBound(m, h_sum(m), sum_bound_rhs(m))


# -- F / H properties --------------------------------------------------------

def check_f_symmetry(n: int, m: int, s: int, r: int) -> bool:
    return f_count_int(n, m, s, r) == f_count_int(m - n, m, r - s, r)


def check_f_vanishing_and_floor(n: int, m: int, s: int, r: int) -> bool:
    f = f_count_int(n, m, s, r)
    d = abs(r * n - m * s)
    if d >= m:
        return f == 0
    if d == 0:
        return True
    return f >= (m * m - d * d) // (m * r * d)


def check_h_above_f(n: int, m: int, s: int, r: int) -> bool:
    return chamber_count(Fraction(n, m)) >= f_count_int(n, m, s, r) + 1


def h_upper_from_f(n: int, m: int) -> int:
    """``1 + sum of F(n/m, s/r)`` over ``r <= m/2``, ``0 <= s <= r`` coprime."""
    total = 1
    for r in range(1, m // 2 + 1):
        for s in range(r + 1):
            if gcd(s, r) == 1:
                total += f_count_int(n, m, s, r)
    return total


def check_h_below_f_sum(n: int, m: int) -> bool:
    return chamber_count(Fraction(n, m)) <= h_upper_from_f(n, m)


def check_gcd_monotone(n: int, m: int, s: int, r: int) -> bool:
    a = gcd(m, r)
    return f_count_int(n, m, s, r) <= f_count_int(n, m // a, s, r // a)


# -- statistics --------------------------------------------------------------

@dataclass(frozen=True)
class StatsRow:
    m: int
    phi_m: int
    h_min: int
    h_ave: Fraction
    h_sum: int
    ratio: float

    CSV_HEADER = ("m", "phi", "h_min", "h_ave_num", "h_ave_den", "h_sum", "ratio")

    def csv_fields(self) -> tuple:
        return (
            self.m, self.phi_m, self.h_min,
            self.h_ave.numerator, self.h_ave.denominator,
            self.h_sum, f"{self.ratio:.6f}",
        )


def h_stats(m: int) -> StatsRow:
    """Exact min / average / sum of ``H(n/m)`` over ``n`` coprime to ``m``.

    ``ratio`` is ``h_sum / ((phi(m)^2 / m) * (ln m)^2)``, the only floating
    point quantity, reported for inspection and never compared exactly.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    values = [chamber_count(Fraction(n, m)) for n in coprime_residues(m)]
    phi = len(values)
    total = sum(values)
    scale = phi * phi / m * math.log(m) ** 2
    return StatsRow(m, phi, min(values), Fraction(total, phi), total, total / scale)


def h_stats_range(m_lo: int, m_hi: int, jobs: int = 1) -> list[StatsRow]:
    if m_lo < 2 or m_hi < m_lo:
        raise ValueError(f"need 2 <= m_lo <= m_hi, got {m_lo}, {m_hi}")
    return parallel_map(h_stats, list(range(m_lo, m_hi + 1)), jobs)


def stats_rows_csv(rows: Iterable[StatsRow]) -> str:
    lines = [",".join(StatsRow.CSV_HEADER)]
    lines += [",".join(str(x) for x in row.csv_fields()) for row in rows]
    return "\n".join(lines) + "\n"
