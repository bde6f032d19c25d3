"""Actual walls and chamber counts for spherical classes on the elliptic K3.

A spherical vector ``w = v(s/r, k)`` of rank ``r < m`` destabilises the target
``v = v(n/m, 0)`` when ``<w, v> < 0`` and the wall ``W(v, w)`` meets the
ample cone.  With ``d = rn - ms`` and ``A = r(n - n^-1) - m(s - s^-1)``
(inverses taken modulo ``m`` and ``r``), the wall class is

    delta = d * sigma + (A - k m r) * e,

and the two conditions together say that ``u = A - kmr`` is non-zero with
sign opposite to ``d`` and ``|u| * |d| < m^2 - d^2``.  Everything below is
solved on integers; :func:`satisfies_513` keeps the rational form of the
inequality as an independent check.

Walls are lines in the two-dimensional ample cone, so the number of chambers
is the number of distinct walls plus one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional, Union

from .arith import mod_inverse_canonical, shared_tau_table
from .lattice import ELLIPTIC, DivisorClass, content, intersect, perp_meets_ample, primitive_normalize
from .mukai import ChernVector, MukaiVector, ParamCoords, from_param

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class Wall:
    """A wall ``delta^perp`` crossing the ample ray family ``sigma + c e``, ``c > 2``."""

    delta: DivisorClass
    position_c: Fraction

    @classmethod
    def from_delta(cls, delta: DivisorClass) -> "Wall":
        delta = primitive_normalize(delta)
        p, q = delta.coeffs
        if not perp_meets_ample(delta):
            raise AssertionError(f"wall class {delta} does not meet the ample cone")
        return cls(delta, 2 - Fraction(q, p))

    @property
    def pq(self) -> tuple[int, int]:
        return self.delta.coeffs

    def sort_key(self) -> tuple:
        return (self.position_c, self.pq)

    def __str__(self) -> str:
        return f"{self.delta}^⊥ at σ+({self.position_c})e"


def _wall_from_pair(d: int, u: int) -> Wall:
    g = gcd(d, u)
    p, q = d // g, u // g
    if p < 0:
        p, q = -p, -q
    return Wall(ELLIPTIC.cls(p, q), 2 - Fraction(q, p))


@dataclass(frozen=True)
class Destabilizer:
    slope: Fraction
    k: int
    vector: MukaiVector
    wall: Wall

    def as_param(self) -> ParamCoords:
        return ParamCoords(self.slope.numerator, self.slope.denominator, self.k)


@dataclass
class CountReport:
    target: ParamCoords
    destabilizers: list[Destabilizer]
    walls: list[Wall]
    h_value: int = field(init=False)

    def __post_init__(self):
        self.h_value = len(self.walls) + 1

    def destabilizers_by_wall(self) -> dict[Wall, list[Destabilizer]]:
        grouped: dict[Wall, list[Destabilizer]] = {w: [] for w in self.walls}
        for dst in self.destabilizers:
            grouped[dst.wall].append(dst)
        return grouped


# -- the inequality ---------------------------------------------------------

def _inv(a: int, mod: int) -> int:
    return mod_inverse_canonical(a, mod)


def satisfies_513(target: Rational, cand: Rational, k: int) -> bool:
    """Exact rational test of the destabilising inequality for ``v(cand, k)``.

    ``(x)^2 - 1/r^2 < x * ((n - n')/m - (s - s')/r - k) < 0`` with
    ``x = n/m - s/r`` and ``n'``, ``s'`` the canonical modular inverses.
    Always false when ``r >= m``.
    """
    target, cand = Fraction(target), Fraction(cand)
    n, m = target.numerator, target.denominator
    s, r = cand.numerator, cand.denominator
    if r >= m:
        return False
    x = target - cand
    y = Fraction(n - _inv(n, m), m) - Fraction(s - _inv(s, r), r) - k
    return x * x - Fraction(1, r * r) < x * y < 0


def _k_window(n: int, m: int, s: int, r: int, target_k: int = 0) -> tuple[int, int, int, int]:
    """Solve the inequality for ``k``.

    Returns ``(d, A, k_lo, k_hi)``; the admissible ``k`` are exactly
    ``k_lo <= k <= k_hi`` (empty when ``k_lo > k_hi``).
    """
    d = r * n - m * s
    a = r * (n - _inv(n, m) + m * target_k) - m * (s - _inv(s, r))
    if d == 0 or abs(d) >= m or r >= m:
        return d, a, 1, 0
    mr = m * r
    # largest |u| with |u| * |d| < m^2 - d^2
    umax = (m * m - d * d - 1) // abs(d)
    if d > 0:
        lo, hi = a + 1, a + umax      # u = a - k m r in [-umax, -1]
    else:
        lo, hi = a - umax, a - 1      # u in [1, umax]
    return d, a, -(-lo // mr), hi // mr


def f_count(target: Rational, cand: Rational) -> int:
    """Number of integers ``k`` for which ``v(cand, k)`` destabilises ``v(target, 0)``."""
    target, cand = Fraction(target), Fraction(cand)
    return f_count_int(target.numerator, target.denominator, cand.numerator, cand.denominator)


def f_count_int(n: int, m: int, s: int, r: int) -> int:
    """:func:`f_count` on already-reduced integer pairs ``n/m`` and ``s/r``."""
    _, _, lo, hi = _k_window(n, m, s, r)
    return max(0, hi - lo + 1)


def f_count_divisor(target: Rational, cand: Rational) -> int:
    """The same count read off as divisibility conditions (coprime denominators only).

    ``#{t >= 1 : d | m^2 + r^2 - tmr and m^2 + r^2 - tmr > d^2}``, ``d = rn - ms``.
    """
    target, cand = Fraction(target), Fraction(cand)
    n, m = target.numerator, target.denominator
    s, r = cand.numerator, cand.denominator
    if gcd(m, r) != 1:
        raise ValueError(f"denominators {m} and {r} are not coprime")
    if r >= m:
        raise ValueError(f"need r < m, got r={r}, m={m}")
    d = r * n - m * s
    total = 0
    t = 1
    while True:
        value = m * m + r * r - t * m * r
        if value <= d * d:
            return total
        if value % d == 0:
            total += 1
        t += 1


# -- destabilisers and walls ------------------------------------------------

def _as_target(target: Union[ParamCoords, Rational]) -> ParamCoords:
    if isinstance(target, ParamCoords):
        return target
    q = Fraction(target)
    return ParamCoords(q.numerator, q.denominator, 0)


def _iter_destabilizing(n: int, m: int, target_k: int, max_rank: int) -> Iterator[tuple[int, int, int, int, int]]:
    """Yield ``(s, r, k, d, u)`` for every destabilising ``v(s/r, k)`` with ``r <= max_rank``."""
    for r in range(1, max_rank + 1):
        rn = r * n
        # |rn - ms| < m
        s_lo = (rn - m) // m + 1
        s_hi = -(-(rn + m) // m) - 1
        for s in range(s_lo, s_hi + 1):
            if gcd(s, r) != 1:
                continue
            d, a, k_lo, k_hi = _k_window(n, m, s, r, target_k)
            for k in range(k_lo, k_hi + 1):
                yield s, r, k, d, a - k * m * r


def _default_max_rank(m: int, max_rank: Optional[int]) -> int:
    if max_rank is None:
        return m // 2
    if not 0 <= max_rank < m:
        raise ValueError(f"max_rank must lie in [0, {m - 1}], got {max_rank}")
    return max_rank


def enumerate_destabilizers(target: Union[ParamCoords, Rational], max_rank: Optional[int] = None) -> list[Destabilizer]:
    """All destabilising factors of ``v(target)`` of rank at most ``max_rank``.

    ``max_rank`` defaults to ``m // 2``, which already sees every actual wall;
    pass ``m - 1`` for the full list of destabilisers.
    """
    p = _as_target(target)
    if p.m < 2:
        raise ValueError("destabilisers need a target of rank >= 2")
    rmax = _default_max_rank(p.m, max_rank)
    out = []
    for s, r, k, d, u in _iter_destabilizing(p.n, p.m, p.k, rmax):
        vec = from_param(ParamCoords(s, r, k))
        out.append(Destabilizer(Fraction(s, r), k, vec, _wall_from_pair(d, u)))
    return out


def wall_of(target: Union[ParamCoords, Rational], dest: Union[Destabilizer, ParamCoords]) -> Wall:
    """Wall ``W(v(target), w)`` from the closed-form class, checked against the cone."""
    p = _as_target(target)
    w = dest.as_param() if isinstance(dest, Destabilizer) else dest
    n, m, s, r, k = p.n, p.m, w.n, w.m, w.k
    e_coeff = r * (p.k * m + n - _inv(n, m)) - m * (k * r + s - _inv(s, r))
    return Wall.from_delta(ELLIPTIC.cls(r * n - m * s, e_coeff))


def wall_set(target: Union[ParamCoords, Rational], max_rank: Optional[int] = None) -> set[tuple[int, int]]:
    """Normalised ``(p, q)`` of every actual wall found with ranks ``<= max_rank``."""
    p = _as_target(target)
    if p.m == 1:
        return set()
    rmax = _default_max_rank(p.m, max_rank)
    out = set()
    for _, _, _, d, u in _iter_destabilizing(p.n, p.m, p.k, rmax):
        g = gcd(d, u)
        out.add((d // g, u // g) if d > 0 else (-d // g, -u // g))
    return out


def _reduce_mod_one(a: Rational) -> tuple[int, int]:
    q = Fraction(a)
    return q.numerator % q.denominator, q.denominator


@lru_cache(maxsize=None)
def _chamber_count(n: int, m: int) -> int:
    return len(wall_set(ParamCoords(n, m, 0))) + 1


def chamber_count(a: Rational) -> int:
    """``H(a)`` as a bare integer (cached; the fast path for tables)."""
    n, m = _reduce_mod_one(a)
    return _chamber_count(n, m)


def count_H(a: Rational) -> CountReport:
    """Full chamber report for ``v(a, 0)`` with ``a`` reduced mod 1."""
    n, m = _reduce_mod_one(a)
    target = ParamCoords(n, m, 0)
    if m == 1:
        return CountReport(target, [], [])
    dests = enumerate_destabilizers(target)
    walls = sorted({dst.wall for dst in dests}, key=Wall.sort_key)
    return CountReport(target, dests, walls)


# -- divisor-function sums --------------------------------------------------

def a_set(m: int, r: int) -> set[int]:
    """``{m^2 + r^2 - t r m : t in Z} ∩ [1, m^2]``."""
    if m < 2 or not 1 <= r < m:
        raise ValueError(f"need m >= 2 and 1 <= r < m, got m={m}, r={r}")
    out = set()
    value = m * m + r * r - r * m       # t = 1; t <= 0 overshoots m^2
    while value >= 1:
        out.add(value)
        value -= r * m
    return out


def a_union(m: int) -> set[int]:
    """``A_m``: union of ``a_set(m, r)`` over ``r`` coprime to ``m``.

    Ranks ``r > m`` add nothing: a value ``m^2 - r j`` with ``r + j ≡ 0 (mod m)``
    is symmetric in ``r, j`` and ``r j < m^2`` forces ``min(r, j) < m``.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    out: set[int] = set()
    for r in range(1, m):
        if gcd(r, m) == 1:
            out |= a_set(m, r)
    return out


def _taus(taus: Optional[list[int]], limit: int) -> list[int]:
    if taus is not None and len(taus) > limit:
        return taus
    return shared_tau_table(limit)


def g_sum(m: int, r: int, taus: Optional[list[int]] = None) -> int:
    """``G(m, r) = 2 * sum over A_{m,r} of floor(tau(a) / 2)``."""
    t = _taus(taus, m * m)
    return 2 * sum(t[a] // 2 for a in a_set(m, r))


def g_total(m: int, taus: Optional[list[int]] = None) -> int:
    """``G(m)``: ``g_sum(m, r)`` summed over ``1 <= r < m`` coprime to ``m``."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    taus = _taus(taus, m * m)
    return sum(g_sum(m, r, taus) for r in range(1, m) if gcd(r, m) == 1)


def g_prime(m: int, taus: Optional[list[int]] = None) -> int:
    """``G'(m) = sum of tau(a)`` over the set ``A_m``."""
    t = _taus(taus, m * m)
    return sum(t[a] for a in a_union(m))


# -- numerical walls from the finiteness bound ------------------------------

def candidate_bound(c: ChernVector) -> int:
    """Lower bound on ``delta^2`` for a numerical wall of ``c``.

    ``-rk^2 l^2 + 2 rk^3 ch2``, replaced by -1 when non-negative.
    """
    _check_primitive(c)
    ell2 = intersect(c.ch1, c.ch1)
    b = -c.rk * c.rk * ell2 + 2 * c.rk ** 3 * c.ch2
    return -1 if b >= 0 else b


def _check_primitive(c: ChernVector) -> None:
    if c.ch1.lattice != ELLIPTIC:
        raise ValueError("numerical wall candidates are implemented on the elliptic lattice only")
    if c.rk <= 0:
        raise ValueError(f"rank must be positive, got {c.rk}")
    if content((c.rk, *c.ch1.coeffs)) != 1:
        raise ValueError(f"(rk, ch1) = ({c.rk}, {c.ch1}) is not primitive")


def is_numerical_wall_candidate(c: ChernVector, wall: Union[Wall, DivisorClass]) -> bool:
    delta = wall.delta if isinstance(wall, Wall) else wall
    if content(delta.coeffs) != 1 or delta != primitive_normalize(delta):
        return False
    return perp_meets_ample(delta) and intersect(delta, delta) >= candidate_bound(c)


def numerical_wall_candidates(c: ChernVector) -> set[Wall]:
    """Every primitive ``delta = p sigma + q e`` crossing the ample cone with
    ``delta^2`` at least :func:`candidate_bound`.

    Such a ``delta`` has ``p > 0 > q`` and ``delta^2 = -2 p (p - q)``, so the
    search is the finite set ``p (p + j) <= -bound / 2`` with ``q = -j``.
    """
    limit = -candidate_bound(c) // 2
    out = set()
    p = 1
    while p * (p + 1) <= limit:
        j = 1
        while p * (p + j) <= limit:
            if gcd(p, j) == 1:
                out.add(_wall_from_pair(p, -j))
            j += 1
        p += 1
    return out
