from fractions import Fraction

import pytest

from k3walls.arith import PellSolution
from k3walls.lattice import ELLIPTIC, PELL, LatticeError
from k3walls.mukai import MukaiVector, is_spherical
from k3walls.pell import certify, certify_family, family_divisors, is_pseudoeffective, minus_two_classes

H, U, W = PELL.basis()


def test_pseudoeffective_examples():
    assert is_pseudoeffective(H)
    assert not is_pseudoeffective(2 * H + 2 * U + W)
    assert not is_pseudoeffective(-H)
    with pytest.raises(LatticeError):
        is_pseudoeffective(ELLIPTIC.cls(0, 1))


def test_no_minus_two_classes():
    assert minus_two_classes(20) == []
    # squares are 12x^2 - 6y^2 - 30z^2, always divisible by 6
    assert all((12 * x * x - 6 * y * y) % 6 == 0 for x in range(5) for y in range(5))


def test_first_certificate():
    cert = certify(PellSolution(1, 1))
    assert cert.ok, cert.failures()
    assert cert.D == H + U + W and cert.E == -H - U
    assert cert.H == 7 * H + 7 * U + 3 * W
    assert cert.mukai_V == MukaiVector(2, W, -7)
    assert is_spherical(cert.mukai_V)
    assert cert.checks["mu_H(V)"].lhs == Fraction(-45)


def test_family_of_ten():
    certs = certify_family(10)
    assert [(c.solution.x, c.solution.y) for c in certs[:3]] == [(1, 1), (5, 7), (29, 41)]
    assert all(c.ok for c in certs)
    last = certs[-1]
    # pairwise checks against all earlier members
    assert sum(name.startswith("D_") for name in last.checks) == 9
    for name, value in [("H.D", -48), ("H.E", -42), ("H^2", 24), ("(D-E)^2", -6), ("chi", -1)]:
        assert all(c.checks[name].lhs == value for c in certs)


def test_failed_check_is_reported():
    cert = certify(PellSolution(1, 1))
    cert.record("forced", 1, 2)
    assert not cert.ok
    assert cert.failures() == ["forced: 1 != 2"]


def test_json_shape():
    doc = certify_family(2)[1].to_json()
    assert doc["a"] == 5 and doc["b"] == 7
    assert doc["v_V"] == [2, [0, 0, 1], -7]
    assert doc["checks"]["mu_H(V)"]["lhs"] == "-45"


def test_divisors_for_second_solution():
    d, e, h = family_divisors(PellSolution(5, 7))
    assert d.coeffs == (5, 7, 1) and e.coeffs == (-5, -7, 0) and h.coeffs == (35, 49, 3)
