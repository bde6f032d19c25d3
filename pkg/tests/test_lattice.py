import pytest
from hypothesis import given, strategies as st

from k3walls.lattice import (
    ELLIPTIC,
    PELL,
    LatticeError,
    NSLattice,
    format_divisor,
    intersect,
    is_ample,
    parse_divisor,
    perp_meets_ample,
    primitive_normalize,
)

SIGMA, E = ELLIPTIC.basis()
coeff = st.integers(-50, 50)
elliptic = st.builds(ELLIPTIC.cls, coeff, coeff)
pell = st.builds(PELL.cls, coeff, coeff, coeff)
nonzero = elliptic.filter(lambda d: not d.is_zero())


def test_basis_products():
    assert intersect(SIGMA, SIGMA) == -2
    assert intersect(E, E) == 0
    assert intersect(SIGMA, E) == 1
    assert intersect(SIGMA + 4 * E, SIGMA - 2 * E) == 0


def test_lattice_mismatch_raises():
    with pytest.raises(LatticeError):
        intersect(SIGMA, PELL.cls(1, 0, 0))


def test_bad_gram_rejected():
    with pytest.raises(LatticeError):
        NSLattice("bad", ((1, 2), (3, 4)), ("a", "b"))


@pytest.mark.parametrize("given_,expected", [
    (2 * SIGMA - 4 * E, SIGMA - 2 * E),
    (-SIGMA + 2 * E, SIGMA - 2 * E),
    (SIGMA - 3 * E, SIGMA - 3 * E),
    (-4 * E, E),
])
def test_primitive_normalize(given_, expected):
    assert primitive_normalize(given_) == expected


def test_normalize_zero_raises():
    with pytest.raises(LatticeError):
        primitive_normalize(ELLIPTIC.zero())


@pytest.mark.parametrize("d,expected", [
    (SIGMA - 2 * E, True),
    (SIGMA, False),
    (E, False),
    (2 * E + SIGMA, False),
    (-SIGMA + 5 * E, True),
])
def test_perp_meets_ample(d, expected):
    assert perp_meets_ample(d) is expected


def test_ample_rays():
    assert is_ample(SIGMA + 3 * E)
    assert not is_ample(SIGMA + 2 * E)
    assert not is_ample(E)


@given(elliptic, elliptic, elliptic, st.integers(-9, 9))
def test_bilinear_symmetric(a, b, c, k):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
    assert intersect(k * a, b) == k * intersect(a, b)


@given(pell, pell)
def test_pell_symmetric(a, b):
    assert intersect(a, b) == intersect(b, a)


@given(nonzero, st.integers(1, 12))
def test_normalize_idempotent_and_scale_free(d, k):
    n = primitive_normalize(d)
    assert primitive_normalize(n) == n
    assert primitive_normalize(k * d) == n
    assert primitive_normalize(-d) == n


@given(nonzero)
def test_perp_meets_ample_matches_ample_witness(d):
    p, q = d.coeffs
    # an ample sigma + c e with c > 2 orthogonal to d exists iff c = 2 - q/p > 2
    witness = p != 0 and 2 * p * p - q * p > 2 * p * p
    assert perp_meets_ample(d) is witness


@given(nonzero, st.integers(3, 40))
def test_hodge_index(d, c):
    h = SIGMA + c * E
    # project d onto h^perp; a nonzero class orthogonal to an ample class is negative
    h2 = intersect(h, h)
    proj = h2 * d - intersect(h, d) * h
    if not proj.is_zero():
        assert intersect(proj, h) == 0
        assert intersect(proj, proj) < 0


@given(elliptic)
def test_parse_format_roundtrip(d):
    assert parse_divisor(format_divisor(d)) == d


@pytest.mark.parametrize("text,coeffs", [
    ("2e-2s", (-2, 2)),
    ("-sigma + 3*e", (-1, 3)),
    ("σ-e", (1, -1)),
    ("0", (0, 0)),
])
def test_parse_examples(text, coeffs):
    assert parse_divisor(text).coeffs == coeffs


def test_parse_pell_labels():
    assert parse_divisor("2h+2u+w", PELL).coeffs == (2, 2, 1)
    assert parse_divisor("h-e+3f", PELL).coeffs == (1, -1, 3)


@pytest.mark.parametrize("text", ["", "2x", "3", "e e", "s+"])
def test_parse_rejects(text):
    with pytest.raises(LatticeError):
        parse_divisor(text)


@given(st.integers(-30, 30), st.integers(-30, 30))
def test_ample_means_positive_on_curves_and_nef_interior(p, q):
    h = ELLIPTIC.cls(p, q)
    expected = p > 0 and q > 2 * p
    assert is_ample(h) is expected
