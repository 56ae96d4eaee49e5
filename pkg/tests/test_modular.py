"""Oracle tests for the quaternionic matrix identities."""

from fractions import Fraction

import pytest

from heegner_verify.errors import BadPrimeClass
from heegner_verify.matrices import Mat2Rat
from heegner_verify import modular as md

PRIMES = (5, 11, 23, 29, 41, 47)


def test_bad_prime_class_rejected():
    for p in (3, 7, 13, 19, 9, 4):
        with pytest.raises(BadPrimeClass):
            md.require_prime_class(p)
    assert md.require_prime_class(5) == 5
    assert md.require_prime_class(11) == 2


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("i", (1, 2, 3))
def test_embedding_is_cube_root(p, i):
    e = md.build_embedding(i, p)
    r = e.rho_omega
    assert r * r + r + Mat2Rat.identity() == Mat2Rat(0, 0, 0, 0)
    assert r.det() == Fraction(1)
    assert r.a + r.d == Fraction(-1)


@pytest.mark.parametrize("p", PRIMES)
def test_embedding_is_ring_homomorphism(p):
    e = md.build_embedding(2, p)
    # rho(a + bw) multiplies like a + bw in Z[w]
    x, y = e.rho(2, 5), e.rho(-1, 3)
    # (2+5w)(-1+3w) = -2 + w + 15 w^2 = -17 - 14 w
    assert x * y == e.rho(-17, -14)


@pytest.mark.parametrize("p", PRIMES)
def test_order_conductors(p):
    conds = tuple(md.order_conductor(md.build_embedding(i, p)) for i in (1, 2, 3))
    assert conds == (9 * p, 9 * p, 36 * p)


@pytest.mark.parametrize("p", PRIMES)
def test_rho_displays(p):
    for i in (1, 2, 3):
        assert md.rho_display_matches(md.build_embedding(i, p))


def test_symbolic_laurent_identity():
    assert md.symbolic_thm24_identity()


@pytest.mark.parametrize("p", PRIMES)
def test_unit_action_identities(p):
    results = md.verify_unit_action_identities(p)
    assert len(results) >= 3
    for name, ok in results:
        assert ok, name


def test_V_membership_is_3adic():
    assert md.check_in_V(Mat2Rat.identity()).verdict
    # v_3 of the lower-left entry must be at least 5
    assert not md.check_in_V(Mat2Rat(1, 0, 81, 1)).verdict
    assert md.check_in_V(Mat2Rat(1, 0, 3**5, 1)).verdict
    # diagonal entries must agree mod 3
    assert not md.check_in_V(Mat2Rat(1, 0, 0, 2)).verdict
    # determinant must be a 3-adic unit
    assert not md.check_in_V(Mat2Rat(3, 0, 0, 1)).verdict
    # only the place 3 matters: entries may have denominators prime to 3
    assert md.check_in_V(Mat2Rat(Fraction(1, 2), 0, 0, Fraction(1, 2))).verdict


def test_matrix_algebra():
    m = Mat2Rat(1, 2, 3, 4)
    assert m * m.inv() == Mat2Rat.identity()
    assert m.det() == Fraction(-2)
    n = Mat2Rat(0, 1, 1, 0)
    assert (m * n).det() == m.det() * n.det()
