"""Elementary number theory used by the wall counts.

Reduced fractions are :class:`fractions.Fraction` values (always reduced,
denominator positive, sign carried by the numerator).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt
from typing import Iterator, Sequence


def euler_phi(m: int) -> int:
    """Euler's totient by trial-division factorisation."""
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = m
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def mod_inverse_canonical(n: int, m: int) -> int:
    """The inverse of ``n`` modulo ``m`` as a residue in ``[0, m)``.

    This is the canonical representative of ``n**(phi(m) - 1) mod m``.  For
    ``m == 1`` every residue is 0.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    if gcd(n, m) != 1:
        raise ValueError(f"{n} is not invertible modulo {m}")
    return pow(n, -1, m)


def tau(a: int) -> int:
    """Number of positive divisors of ``a`` by trial division."""
    if a < 1:
        raise ValueError(f"tau needs a >= 1, got {a}")
    count = 0
    r = isqrt(a)
    for d in range(1, r + 1):
        if a % d == 0:
            count += 2
    if r * r == a:
        count -= 1
    return count


def tau_sieve(limit: int) -> list[int]:
    """Table ``t`` with ``t[a] == tau(a)`` for ``1 <= a <= limit`` (``t[0] == 0``)."""
    if limit < 0:
        raise ValueError("limit must be non-negative")
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for multiple in range(d, limit + 1, d):
            table[multiple] += 1
    return table


_SHARED_TAUS: list[int] = [0, 1]


def shared_tau_table(limit: int) -> list[int]:
    """A process-wide divisor-count table covering at least ``[0, limit]``.

    The table is replaced (never mutated) when a larger one is needed, so
    callers may hold on to the returned list.
    """
    global _SHARED_TAUS
    table = _SHARED_TAUS
    if len(table) <= limit:
        table = tau_sieve(max(limit, 2 * (len(table) - 1)))
        _SHARED_TAUS = table
    return table


def cf_value(terms: Sequence[int]) -> Fraction:
    """Value of ``[a1, ..., as] = 1/(a1 + 1/(a2 + ... + 1/as))``."""
    if not terms:
        raise ValueError("continued fraction needs at least one term")
    if any(a < 1 for a in terms):
        raise ValueError(f"continued fraction terms must be positive, got {list(terms)}")
    value = Fraction(0)
    for a in reversed(terms):
        value = 1 / (a + value)
    return value


def parse_cf(text: str) -> list[int]:
    """Parse ``"[2,3]"`` / ``"2,3"`` / ``"2 3"`` into a list of integers."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    pieces = [p for p in re.split(r"[,\s]+", body.strip()) if p]
    if not pieces:
        raise ValueError(f"empty continued fraction {text!r}")
    try:
        return [int(p) for p in pieces]
    except ValueError:
        raise ValueError(f"malformed continued fraction {text!r}") from None


def fibonacci(n: int) -> int:
    """``b_n`` with ``b_1 = b_2 = 1``."""
    if n < 1:
        raise ValueError(f"fibonacci index must be >= 1, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1 or 2 * self.x * self.x - self.y * self.y != 1:
            raise ValueError(f"({self.x}, {self.y}) is not a positive solution of 2x^2 - y^2 = 1")


def iter_pell() -> Iterator[PellSolution]:
    x, y = 1, 1
    while True:
        yield PellSolution(x, y)
        x, y = 3 * x + 2 * y, 4 * x + 3 * y


def pell_solutions(count: int) -> list[PellSolution]:
    """First ``count`` positive solutions of ``2x^2 - y^2 = 1``, increasing."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return list(islice(iter_pell(), count))


def parse_fraction(text: str) -> Fraction:
    """Parse ``"n/m"`` or an integer literal; anything else is a ValueError."""
    src = text.strip()
    match = re.fullmatch(r"([+-]?\d+)(?:\s*/\s*([+-]?\d+))?", src)
    if not match:
        raise ValueError(f"malformed fraction {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
