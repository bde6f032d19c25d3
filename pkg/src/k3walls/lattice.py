"""Néron-Severi lattices and divisor classes.

Two lattices are instantiated: the rank-2 lattice of a generic elliptic K3
surface with a section (basis sigma, e) and the rank-3 diagonal lattice
diag(12, -6, -30) used for the Pell family.  Everything is plain Python
integers, so nothing overflows.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Mapping


class LatticeError(ValueError):
    """Raised for lattice mismatches and malformed classes."""


@dataclass(frozen=True)
class NSLattice:
    name: str
    gram: tuple[tuple[int, ...], ...]
    basis_labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.gram)
        if n == 0 or any(len(row) != n for row in self.gram):
            raise LatticeError("gram matrix must be square and non-empty")
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        if len(self.basis_labels) != n:
            raise LatticeError("one basis label per generator is required")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def cls(self, *coeffs: int) -> "DivisorClass":
        return DivisorClass(self, tuple(coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis(self) -> list["DivisorClass"]:
        return [
            DivisorClass(self, tuple(int(i == j) for j in range(self.rank)))
            for i in range(self.rank)
        ]


#: Generic elliptic K3 with a section: sigma^2 = -2, sigma.e = 1, e^2 = 0.
ELLIPTIC = NSLattice("elliptic", ((-2, 1), (1, 0)), ("σ", "e"))

#: Orthogonal basis h, e, f with h^2 = 12, e^2 = -6, f^2 = -30.
PELL = NSLattice("pell", ((12, 0, 0), (0, -6, 0), (0, 0, -30)), ("h", "e", "f"))


@dataclass(frozen=True)
class DivisorClass:
    lattice: NSLattice
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise LatticeError(
                f"expected {self.lattice.rank} coefficients, got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected a DivisorClass, got {type(other).__name__}")
        if other.lattice != self.lattice:
            raise LatticeError(
                f"classes live on different lattices ({self.lattice.name} vs {other.lattice.name})"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.lattice, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def square(self) -> int:
        return intersect(self, self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return format_divisor(self)


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """Intersection number ``d1^T . gram . d2``."""
    d1._check(d2)
    g = d1.lattice.gram
    return sum(
        a * g[i][j] * b
        for i, a in enumerate(d1.coeffs) if a
        for j, b in enumerate(d2.coeffs) if b
    )


def content(coeffs: Iterable[int]) -> int:
    return reduce(gcd, coeffs, 0)


def primitive_normalize(d: DivisorClass) -> DivisorClass:
    """Primitive representative of the line through ``d``.

    The gcd of the coefficients is divided out and the sign is chosen so that
    the first non-zero coefficient is positive.
    """
    g = content(d.coeffs)
    if g == 0:
        raise LatticeError("the zero class has no primitive representative")
    lead = next(c for c in d.coeffs if c)
    if lead < 0:
        g = -g
    return DivisorClass(d.lattice, tuple(c // g for c in d.coeffs))


# Nef cone generators of the elliptic lattice: e and 2e + sigma.
_NEF_RAYS = (ELLIPTIC.cls(0, 1), ELLIPTIC.cls(1, 2))
# Generators of the effective cone (the curves sigma and e), dual to the nef cone.
_CURVES = (ELLIPTIC.cls(1, 0), ELLIPTIC.cls(0, 1))


def perp_meets_ample(d: DivisorClass) -> bool:
    """Whether ``d``'s orthogonal line passes through the open ample cone.

    Only defined on the elliptic lattice, whose nef cone is spanned by ``e``
    and ``2e + sigma``; the perpendicular crosses the interior exactly when
    ``d`` pairs with the two rays with strictly opposite signs.
    """
    if d.lattice != ELLIPTIC:
        raise LatticeError("perp_meets_ample is only implemented on the elliptic lattice")
    if d.is_zero():
        raise LatticeError("the zero class has no perpendicular hyperplane")
    a = intersect(d, _NEF_RAYS[0])
    b = intersect(d, _NEF_RAYS[1])
    return (a > 0 and b < 0) or (a < 0 and b > 0)


def is_ample(h: DivisorClass) -> bool:
    """Strict interior of the nef cone: positive on both curves ``sigma`` and ``e``."""
    if h.lattice != ELLIPTIC:
        raise LatticeError("is_ample is only implemented on the elliptic lattice")
    return all(intersect(h, c) > 0 for c in _CURVES)


# -- parsing / printing -----------------------------------------------------

ELLIPTIC_ALIASES: Mapping[str, int] = {"s": 0, "sigma": 0, "σ": 0, "e": 1}
PELL_ALIASES: Mapping[str, int] = {"h": 0, "e": 1, "f": 2, "u": 1, "w": 2}

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([A-Za-zσ]+)?\s*")


def _aliases_for(lattice: NSLattice) -> Mapping[str, int]:
    if lattice == ELLIPTIC:
        return ELLIPTIC_ALIASES
    if lattice == PELL:
        return PELL_ALIASES
    return {label: i for i, label in enumerate(lattice.basis_labels)}


def parse_divisor(text: str, lattice: NSLattice = ELLIPTIC) -> DivisorClass:
    """Parse a linear expression such as ``"2e-2s"`` or ``"-sigma + 3*e"``."""
    aliases = _aliases_for(lattice)
    src = text.strip()
    if not src:
        raise LatticeError("empty divisor expression")
    coeffs = [0] * lattice.rank
    pos = 0
    first = True
    while pos < len(src):
        match = _TERM.match(src, pos)
        sign, digits, label = match.groups()
        if match.end() == pos or (not digits and not label) or (not first and not sign):
            raise LatticeError(f"cannot parse divisor expression {text!r}")
        value = int(digits) if digits else 1
        if sign == "-":
            value = -value
        if label is None:
            if value != 0:
                raise LatticeError(f"bare integer {value} in divisor expression {text!r}")
        else:
            key = label if label in aliases else label.lower()
            if key not in aliases:
                raise LatticeError(f"unknown basis label {label!r} in {text!r}")
            coeffs[aliases[key]] += value
        pos = match.end()
        first = False
    return DivisorClass(lattice, tuple(coeffs))


def format_divisor(d: DivisorClass) -> str:
    parts = []
    for c, label in zip(d.coeffs, d.lattice.basis_labels):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}{label}"))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    return out + "".join(f"{s}{t}" for s, t in parts[1:])

