"""Mukai vectors, Chern vectors and the slope parametrisation.

On the elliptic lattice every spherical Mukai vector is ``v(n/m, k)`` for a
unique reduced fraction ``n/m`` and integer ``k``; :func:`from_param` and
:func:`to_param` implement that bijection.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import mod_inverse_canonical
from .lattice import (
    ELLIPTIC,
    DivisorClass,
    LatticeError,
    NSLattice,
    format_divisor,
    intersect,
    parse_divisor,
)


@dataclass(frozen=True)
class MukaiVector:
    rk: int
    c1: DivisorClass
    s: int

    @property
    def lattice(self) -> NSLattice:
        return self.c1.lattice

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.rk + other.rk, self.c1 + other.c1, self.s + other.s)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.rk - other.rk, self.c1 - other.c1, self.s - other.s)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.rk, -self.c1, -self.s)

    def __mul__(self, k: int) -> "MukaiVector":
        if not isinstance(k, int):
            return NotImplemented
        return MukaiVector(k * self.rk, k * self.c1, k * self.s)

    __rmul__ = __mul__

    def as_tuple(self) -> tuple:
        return (self.rk, self.c1.coeffs, self.s)

    def __str__(self) -> str:
        return f"({self.rk}, {format_divisor(self.c1)}, {self.s})"


@dataclass(frozen=True)
class ChernVector:
    rk: int
    ch1: DivisorClass
    ch2: int

    def __str__(self) -> str:
        return f"ch=({self.rk}, {format_divisor(self.ch1)}, {self.ch2})"


@dataclass(frozen=True)
class ParamCoords:
    """Slope ``n/m`` (reduced, ``m >= 1``) and twist index ``k``."""

    n: int
    m: int
    k: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"denominator must be positive, got {self.m}")
        if gcd(self.n, self.m) != 1:
            raise ValueError(f"{self.n}/{self.m} is not reduced")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.n, self.m)

    def __str__(self) -> str:
        return f"({self.n}/{self.m}, {self.k})"


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> int:
    """``<v, w> = l1.l2 - r1*s2 - r2*s1``."""
    return intersect(v.c1, w.c1) - v.rk * w.s - w.rk * v.s


def is_spherical(v: MukaiVector) -> bool:
    return v.rk > 0 and mukai_pairing(v, v) == -2


def line_bundle_vector(d: DivisorClass) -> MukaiVector:
    """Mukai vector ``(1, D, D^2/2 + 1)`` of the line bundle ``O(D)``."""
    sq = intersect(d, d)
    if sq % 2:
        raise LatticeError(f"D^2 = {sq} is odd; the lattice is not even")
    return MukaiVector(1, d, sq // 2 + 1)


def twist_reflect(w: MukaiVector, v: MukaiVector) -> MukaiVector:
    """Action of the spherical twist along ``w`` on Mukai vectors.

    ``v -> v + <w, v> w``; a reflection in the (-2)-vector ``w``.
    """
    if not is_spherical(w):
        raise ValueError(f"twist_reflect needs a spherical vector, got {w}")
    return v + mukai_pairing(w, v) * w


def twist_chain(start: MukaiVector, twists: list[MukaiVector]) -> MukaiVector:
    """Apply the reflections in ``twists`` to ``start``, left to right."""
    v = start
    for w in twists:
        v = twist_reflect(w, v)
    return v


def from_param(p: ParamCoords) -> MukaiVector:
    n, m, k = p.n, p.m, p.k
    b = k * m + n - mod_inverse_canonical(n, m)
    num = -n * n + n * b + 1
    s, rem = divmod(num, m)
    assert rem == 0, f"non-integral s for {p}: {num}/{m}"
    return MukaiVector(m, ELLIPTIC.cls(n, b), s)


def to_param(v: MukaiVector) -> ParamCoords:
    if v.lattice != ELLIPTIC:
        raise LatticeError("to_param is only defined on the elliptic lattice")
    if not is_spherical(v):
        raise ValueError(f"{v} is not spherical")
    m = v.rk
    n, b = v.c1.coeffs
    k, rem = divmod(b - n + mod_inverse_canonical(n, m), m)
    assert rem == 0, f"sigma/e coefficients of {v} are inconsistent with sphericality"
    return ParamCoords(n, m, k)


def chern_of(v: MukaiVector) -> ChernVector:
    return ChernVector(v.rk, v.c1, v.s - v.rk)


def mukai_of(c: ChernVector) -> MukaiVector:
    return MukaiVector(c.rk, c.ch1, c.ch2 + c.rk)


def discriminant(c: ChernVector) -> int:
    """``ch1^2 - 2 rk ch2``."""
    return intersect(c.ch1, c.ch1) - 2 * c.rk * c.ch2


def slope(c: ChernVector, h: DivisorClass) -> Fraction:
    if c.rk == 0:
        raise ZeroDivisionError("slope of a rank-zero class is undefined")
    return Fraction(intersect(h, c.ch1), c.rk)


_VECTOR = re.compile(r"^\(?\s*([+-]?\d+)\s*,(.*),\s*([+-]?\d+)\s*\)?$")
_LINE_BUNDLE = re.compile(r"^O\s*\((.*)\)$")


def parse_mukai(text: str, lattice: NSLattice = ELLIPTIC) -> MukaiVector:
    """Parse ``"(r, D, s)"`` or ``"O(D)"`` (a line bundle)."""
    src = text.strip()
    lb = _LINE_BUNDLE.match(src)
    if lb:
        return line_bundle_vector(parse_divisor(lb.group(1), lattice))
    match = _VECTOR.match(src)
    if not match:
        raise ValueError(f"malformed Mukai vector {text!r}")
    return MukaiVector(int(match.group(1)), parse_divisor(match.group(2), lattice), int(match.group(3)))
