"""Named verification suites run by ``k3walls verify``.

Each suite returns a list of :class:`Check` lines; a suite passes when every
line passes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from . import bounds
from .arith import fibonacci
from .lattice import ELLIPTIC
from .mukai import (
    MukaiVector,
    ParamCoords,
    chern_of,
    from_param,
    is_spherical,
    line_bundle_vector,
    mukai_pairing,
    twist_chain,
    twist_reflect,
)
from .pell import certify_family, minus_two_classes
from .walls import (
    chamber_count,
    f_count_int,
    is_numerical_wall_candidate,
    wall_set,
    g_sum,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}" + (f": {self.detail}" if self.detail else "")


# Chamber counts H(n/m) for the elliptic K3 with a section, as tabulated in
# the literature for selected denominators.
KNOWN_VALUES: dict[tuple[int, int], int] = {
    (1, 1): 1, (1, 2): 2, (1, 3): 3, (1, 4): 4, (1, 5): 5, (2, 5): 6, (1, 6): 6,
    (1, 7): 7, (2, 7): 7, (3, 7): 7, (1, 8): 8, (3, 8): 6, (1, 9): 9, (2, 9): 7,
    (4, 9): 8, (1, 10): 10, (3, 10): 9,
    (1, 21): 21, (2, 21): 13, (4, 21): 12, (5, 21): 13, (8, 21): 11, (10, 21): 14,
    (1, 32): 32, (3, 32): 16, (5, 32): 16, (7, 32): 14, (9, 32): 15, (11, 32): 16,
    (13, 32): 14, (15, 32): 13,
    (1, 93): 93, (2, 93): 49, (4, 93): 30, (5, 93): 28, (7, 93): 25, (8, 93): 25,
    (10, 93): 26, (11, 93): 24, (13, 93): 23, (14, 93): 24, (16, 93): 21,
    (17, 93): 23, (19, 93): 22, (20, 93): 22, (22, 93): 22, (23, 93): 31,
    (25, 93): 23, (26, 93): 24, (28, 93): 20, (29, 93): 25, (32, 93): 20,
    (34, 93): 24, (35, 93): 21, (37, 93): 26, (38, 93): 22, (40, 93): 23,
    (41, 93): 23, (43, 93): 26, (44, 93): 25, (46, 93): 50,
    (92, 811): 48, (93, 811): 47, (94, 811): 46, (95, 811): 43, (96, 811): 45,
    (97, 811): 50, (98, 811): 48, (99, 811): 46, (100, 811): 53,
    (266, 811): 50, (267, 811): 51, (268, 811): 58, (269, 811): 83,
    (270, 811): 276, (271, 811): 146, (272, 811): 72, (273, 811): 60,
    (274, 811): 60, (275, 811): 47, (276, 811): 46, (277, 811): 45,
}

LONELY_TARGET = MukaiVector(113, ELLIPTIC.cls(-82, 82), -119)


def _h(n: int, m: int) -> int:
    return chamber_count(Fraction(n, m))


def _mismatches(pairs, expected: Callable[[tuple], int], got: Callable[[tuple], int]) -> list[str]:
    out = []
    for key in pairs:
        e, g = expected(key), got(key)
        if e != g:
            out.append(f"{key}: expected {e}, got {g}")
    return out


def _summary(name: str, failures: list[str], total: int) -> Check:
    if failures:
        shown = "; ".join(failures[:5]) + (" ..." if len(failures) > 5 else "")
        return Check(name, False, f"{len(failures)}/{total} failed: {shown}")
    return Check(name, True, f"{total} cases")


# -- suites ------------------------------------------------------------------

def suite_known_values() -> list[Check]:
    checks = []
    for (n, m), value in KNOWN_VALUES.items():
        got = _h(n, m)
        checks.append(Check(f"H({n}/{m}) = {value}", got == value, "" if got == value else f"got {got}"))
    return checks


def suite_fibonacci(n_lo: int = 3, n_hi: int = 20) -> list[Check]:
    checks = []
    for n in range(n_lo, n_hi + 1):
        num, den = fibonacci(n), fibonacci(n + 1)
        want = (n // 2) ** 2 + 2
        got = _h(num, den)
        checks.append(Check(f"H({num}/{den}) = {want}", got == want, "" if got == want else f"got {got}"))
    return checks


def suite_families(max_m: int = 300, max_n: int = 100) -> list[Check]:
    ones = range(2, max_m + 1)
    halves = range(2, max_n + 1)
    return [
        _summary(f"H(1/m) = m for 2 <= m <= {max_m}",
                 _mismatches(ones, lambda m: m, lambda m: _h(1, m)), len(ones)),
        _summary(f"H(n/(2n+1)) = n + 4 for 2 <= n <= {max_n}",
                 _mismatches(halves, lambda n: n + 4, lambda n: _h(n, 2 * n + 1)), len(halves)),
    ]


F_PROPERTIES = ("symmetry", "vanishing/floor", "H >= F + 1", "H <= 1 + sum F", "gcd monotone")


def _empty_property_log() -> dict[str, list[str]]:
    return {name: [] for name in F_PROPERTIES}


def f_properties_exhaustive(max_m: int) -> dict[str, list[str]]:
    fails = _empty_property_log()
    for m in range(2, max_m + 1):
        for n in bounds.coprime_residues(m):
            for r in range(1, m):
                for s in range(r + 1):
                    if gcd(s, r) != 1:
                        continue
                    _f_properties_point(n, m, s, r, fails)
            if not bounds.check_h_below_f_sum(n, m):
                fails["H <= 1 + sum F"].append(f"{n}/{m}")
    return fails


def _f_properties_point(n: int, m: int, s: int, r: int, fails: dict[str, list[str]]) -> None:
    tag = f"({n}/{m}, {s}/{r})"
    if not bounds.check_f_symmetry(n, m, s, r):
        fails["symmetry"].append(tag)
    if not bounds.check_f_vanishing_and_floor(n, m, s, r):
        fails["vanishing/floor"].append(tag)
    if not bounds.check_h_above_f(n, m, s, r):
        fails["H >= F + 1"].append(tag)
    if not bounds.check_gcd_monotone(n, m, s, r):
        fails["gcd monotone"].append(tag)


def f_properties_random(samples: int, max_m: int, seed: int = 1729) -> tuple[dict[str, list[str]], int]:
    rng = random.Random(seed)
    fails = _empty_property_log()
    drawn = 0
    while drawn < samples:
        m = rng.randint(2, max_m)
        n = rng.randint(1, m - 1)
        r = rng.randint(1, m - 1)
        # half of the draws sit in the window |rn - ms| < m where F can be non-zero
        s = rng.randint(0, r) if rng.random() < 0.5 else (r * n) // m + rng.randint(0, 1)
        if gcd(n, m) != 1 or gcd(s, r) != 1:
            continue
        drawn += 1
        _f_properties_point(n, m, s, r, fails)
        if not bounds.check_h_below_f_sum(n, m):
            fails["H <= 1 + sum F"].append(f"{n}/{m}")
    return fails, drawn


def suite_f_properties(max_m: int = 60, samples: int = 1000, sample_max_m: int = 200) -> list[Check]:
    checks = []
    for part, failed in f_properties_exhaustive(max_m).items():
        name = f"{part} (exhaustive, m <= {max_m})"
        checks.append(Check(name, not failed, f"{len(failed)} failures, first {failed[0]}" if failed else ""))
    fails, drawn = f_properties_random(samples, sample_max_m)
    for part, failed in fails.items():
        name = f"{part} ({drawn} random draws, m <= {sample_max_m})"
        checks.append(_summary(name, failed, drawn) if failed else Check(name, True))
    return checks


def suite_g_sums(max_m_split: int = 40, max_m_identity: int = 60, max_m_bound: int = 120) -> list[Check]:
    split_fail, split_total = [], 0
    for m in range(2, max_m_split + 1):
        for r in range(1, m):
            for d in range(1, m):
                split_total += 1
                if not bounds.check_solution_count(m, r, d):
                    split_fail.append(f"(m={m}, r={r}, d={d})")
    ident_fail, ident_total = [], 0
    for m in range(2, max_m_identity + 1):
        for r in range(1, m):
            if gcd(m, r) == 1:
                ident_total += 1
                if not bounds.check_counting_identity(m, r):
                    ident_fail.append(f"(m={m}, r={r})")
    bound_fail = []
    for m in range(2, max_m_bound + 1):
        res = bounds.check_sum_bound(m)
        if not res:
            bound_fail.append(f"m={m}: {res.h_sum} > {res.bound}")
    g31 = g_sum(3, 1)
    f31 = sum(f_count_int(n, 3, s, 1) for n, s in bounds.s_set(3, 1))
    return [
        _summary(f"solution-count case split, m <= {max_m_split}", split_fail, split_total),
        _summary(f"sum of F over S(m,r) = G(m,r), m <= {max_m_identity}", ident_fail, ident_total),
        Check("G(3,1) = 4 = sum of F over S(3,1)", g31 == 4 and f31 == 4, f"G={g31}, sum F={f31}"),
        _summary(f"sum of H <= phi(m) + sum (phi(m)/phi(d)) G(d), m <= {max_m_bound}",
                 bound_fail, max_m_bound - 1),
    ]


def suite_pell(count: int = 10) -> list[Check]:
    certs = certify_family(count)
    checks = [
        Check(f"certificate (a, b) = ({c.solution.x}, {c.solution.y})", c.ok,
              f"{len(c.checks)} checks" if c.ok else "; ".join(c.failures()))
        for c in certs
    ]
    constants = ("(D-E)^2", "chi", "H^2", "H.D", "H.E", "mu_H(V)")
    stable = all(len({c.checks[k].lhs for c in certs}) == 1 for k in constants)
    checks.append(Check("intersection numbers independent of the solution", stable))
    found = minus_two_classes(20)
    checks.append(Check("no (-2)-classes in the box [-20, 20]^3", not found,
                        "" if not found else f"found {found[0]}"))
    return checks


def random_spherical(rng: random.Random, max_rank: int = 12) -> MukaiVector:
    m = rng.randint(1, max_rank)
    while True:
        n = rng.randint(-3 * m, 3 * m)
        if gcd(n, m) == 1:
            return from_param(ParamCoords(n, m, rng.randint(-5, 5)))


def random_vector(rng: random.Random, bound: int = 20) -> MukaiVector:
    return MukaiVector(
        rng.randint(-bound, bound),
        ELLIPTIC.cls(rng.randint(-bound, bound), rng.randint(-bound, bound)),
        rng.randint(-bound, bound),
    )


def suite_twist(samples: int = 1000, seed: int = 7) -> list[Check]:
    start = line_bundle_vector(ELLIPTIC.cls(-2, 2))
    chain = [line_bundle_vector(ELLIPTIC.cls(1, -1)), line_bundle_vector(ELLIPTIC.cls(-1, 1))]
    got = twist_chain(start, chain)
    rng = random.Random(seed)
    iso_fail, inv_fail = [], []
    for _ in range(samples):
        w = random_spherical(rng)
        v1, v2 = random_vector(rng), random_vector(rng)
        if mukai_pairing(twist_reflect(w, v1), twist_reflect(w, v2)) != mukai_pairing(v1, v2):
            iso_fail.append(f"w={w}, v1={v1}, v2={v2}")
        if twist_reflect(w, twist_reflect(w, v1)) != v1:
            inv_fail.append(f"w={w}, v={v1}")
    neg = all(twist_reflect(w, w) == -w for w in (random_spherical(rng) for _ in range(50)))
    return [
        Check(f"T_O(e-σ) T_O(σ-e) v(O(2e-2σ)) = {LONELY_TARGET}", got == LONELY_TARGET, f"got {got}"),
        Check("chain result is spherical", is_spherical(got)),
        _summary("reflection is a Mukai isometry", iso_fail, samples),
        _summary("reflection is an involution", inv_fail, samples),
        Check("reflection sends w to -w", neg),
    ]


def suite_numerical_walls(max_m_range: int = 60, max_m_contain: int = 40) -> list[Check]:
    range_fail, range_total = [], 0
    for m in range(2, max_m_range + 1):
        for n in bounds.coprime_residues(m):
            range_total += 1
            if wall_set(Fraction(n, m)) != wall_set(Fraction(n, m), max_rank=m - 1):
                range_fail.append(f"{n}/{m}")
    contain_fail, contain_total = [], 0
    for m in range(2, max_m_contain + 1):
        for n in bounds.coprime_residues(m):
            c = chern_of(from_param(ParamCoords(n, m, 0)))
            for p, q in wall_set(Fraction(n, m)):
                contain_total += 1
                if not is_numerical_wall_candidate(c, ELLIPTIC.cls(p, q)):
                    contain_fail.append(f"{n}/{m}: ({p},{q})")
    return [
        _summary(f"walls from r <= m/2 equal walls from r < m, m <= {max_m_range}", range_fail, range_total),
        _summary(f"actual walls lie among bounded numerical candidates, m <= {max_m_contain}",
                 contain_fail, contain_total),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "paper-table": suite_known_values,
    "lemma58": suite_f_properties,
    "lemma510": suite_g_sums,
    "fibonacci": suite_fibonacci,
    "families": suite_families,
    "pell": suite_pell,
    "twist": suite_twist,
    "numerical-walls": suite_numerical_walls,
}
