"""Numeric certificates for the rank-3 family indexed by ``2a^2 - b^2 = 1``.

For each solution ``(a, b)`` we form, on the lattice ``diag(12, -6, -30)``
with basis ``h, u, w`` (printed ``h, e, f``)::

    D = a h + b u + w,     E = -a h - b u,     H = 7a h + 7b u + 3w

and record every intersection number that the stability argument for the
extension bundle ``V`` with ``v(V) = v(O(D)) + v(O(E))`` relies on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from .arith import PellSolution, pell_solutions
from .lattice import PELL, DivisorClass, LatticeError, format_divisor, intersect
from .mukai import MukaiVector, chern_of, line_bundle_vector, slope

H_GEN, U_GEN, W_GEN = PELL.basis()


def is_pseudoeffective(d: DivisorClass) -> bool:
    """``D^2 >= 0`` and non-negative ``h`` coefficient.

    The lattice has no (-2)-classes, so the effective cone is the closed
    positive cone and this is the whole criterion.
    """
    if d.lattice != PELL:
        raise LatticeError("is_pseudoeffective is only defined on the Pell lattice")
    return intersect(d, d) >= 0 and d.coeffs[0] >= 0


def minus_two_classes(radius: int = 20) -> list[DivisorClass]:
    """Classes with square -2 inside the box ``[-radius, radius]^3``."""
    return [
        PELL.cls(x, y, z)
        for x, y, z in product(range(-radius, radius + 1), repeat=3)
        if 12 * x * x - 6 * y * y - 30 * z * z == -2
    ]


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    lhs: Any
    rhs: Any

    def to_json(self) -> dict:
        return {"passed": self.passed, "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs)}


def _jsonable(x: Any) -> Any:
    if isinstance(x, MukaiVector):
        return [x.rk, list(x.c1.coeffs), x.s]
    if isinstance(x, DivisorClass):
        return list(x.coeffs)
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class PellCertificate:
    solution: PellSolution
    D: DivisorClass
    E: DivisorClass
    mukai_V: MukaiVector
    H: DivisorClass
    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list[str]:
        return [
            f"{name}: {c.lhs!s} != {c.rhs!s}"
            for name, c in self.checks.items() if not c.passed
        ]

    def record(self, name: str, lhs: Any, rhs: Any) -> None:
        self.checks[name] = CheckResult(lhs == rhs, lhs, rhs)

    def to_json(self) -> dict:
        return {
            "a": self.solution.x,
            "b": self.solution.y,
            "D": format_divisor(self.D),
            "E": format_divisor(self.E),
            "H": format_divisor(self.H),
            "v_V": _jsonable(self.mukai_V),
            "ok": self.ok,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
        }


def family_divisors(sol: PellSolution) -> tuple[DivisorClass, DivisorClass, DivisorClass]:
    a, b = sol.x, sol.y
    d = a * H_GEN + b * U_GEN + W_GEN
    e = -a * H_GEN - b * U_GEN
    h = 7 * a * H_GEN + 7 * b * U_GEN + 3 * W_GEN
    return d, e, h


def certify(sol: PellSolution, earlier: Sequence[PellCertificate] = ()) -> PellCertificate:
    d, e, h = family_divisors(sol)
    v = line_bundle_vector(d) + line_bundle_vector(e)
    cert = PellCertificate(sol, d, e, v, h)
    diff = d - e
    cert.record("pell", 2 * sol.x ** 2 - sol.y ** 2, 1)
    cert.record("(D-E)^2", intersect(diff, diff), -6)
    cert.record("chi", Fraction(intersect(diff, diff), 2) + 2, -1)
    cert.record("v(V)", v, MukaiVector(2, W_GEN, -7))
    cert.record("H^2", intersect(h, h), 24)
    cert.record("H h-coefficient > 0", h.coeffs[0] > 0, True)
    cert.record("H.D", intersect(h, d), -48)
    cert.record("H.E", intersect(h, e), -42)
    cert.record("mu_H(V)", slope(chern_of(v), h), Fraction(-45))
    cert.record("D-E not pseudoeffective", is_pseudoeffective(diff), False)
    cert.record("E-D not pseudoeffective", is_pseudoeffective(-diff), False)
    for j, prev in enumerate(earlier):
        cert.record(f"D_{j}-D not pseudoeffective", is_pseudoeffective(prev.D - d), False)
        cert.record(f"E_{j}-D not pseudoeffective", is_pseudoeffective(prev.E - d), False)
    return cert


def certify_family(count: int) -> list[PellCertificate]:
    """Certificates for the first ``count`` Pell solutions, in order."""
    certs: list[PellCertificate] = []
    for sol in pell_solutions(count):
        certs.append(certify(sol, certs))
    return certs
