"""Standalone property suites: algebraic laws checked wholesale.

Four independent invariants: elliptic group-law associativity, canonical
height quadraticity and the parallelogram law, Hilbert-symbol bilinearity,
and multiplicativity of every character table over its fully enumerated
domain group.
"""

import itertools

import mpmath
import pytest

from heegner_verify import localfields as lf
from heegner_verify import points as pt
from heegner_verify.curves import add, curve_En, negate, on_curve, scalar_mul
from heegner_verify.eisenstein import OMEGA, EisensteinInt


def _points_on(n, count):
    """Distinct nontorsion multiples of a generator of E_n(Q)."""
    E = curve_En(n)
    cert = pt.search_cubesum(n)
    E0, P = pt.cubesum_to_point(cert)
    if E0 != E:
        from heegner_verify.curves import three_isogeny
        P = three_isogeny(E)[2](P)
    return E, [scalar_mul(k, P, E) for k in range(1, count + 1)]


def test_group_law_associativity():
    for n in (6, 15):
        E, pts = _points_on(n, 4)
        sample = pts + [None, negate(pts[1])]
        for A, B, C in itertools.product(sample, repeat=3):
            lhs = add(add(A, B, E), C, E)
            rhs = add(A, add(B, C, E), E)
            assert lhs == rhs, (n, A, B, C)
            assert on_curve(lhs, E)


def test_group_law_inverse_and_identity():
    E, pts = _points_on(6, 5)
    for P in pts:
        assert add(P, None, E) == P
        assert add(None, P, E) == P
        assert add(P, negate(P), E) is None


def test_height_quadraticity():
    E, pts = _points_on(6, 1)
    P = pts[0]
    with mpmath.workprec(160):
        h = pt.canonical_height(E, P, 160)
        for m in (2, 3, 5):
            hm = pt.canonical_height(E, scalar_mul(m, P, E), 160)
            assert abs(hm - m * m * h) < mpmath.mpf(2) ** -120, m


def test_height_parallelogram_law():
    E, pts = _points_on(15, 3)
    P, Q = pts[0], pts[2]  # P and 3P
    with mpmath.workprec(160):
        hP = pt.canonical_height(E, P, 160)
        hQ = pt.canonical_height(E, Q, 160)
        hsum = pt.canonical_height(E, add(P, Q, E), 160)
        hdiff = pt.canonical_height(E, add(P, negate(Q), E), 160)
        assert abs(hsum + hdiff - 2 * hP - 2 * hQ) < mpmath.mpf(2) ** -110


UNITS = [EisensteinInt(1, 0), OMEGA, OMEGA * OMEGA,
         EisensteinInt(1, 3), EisensteinInt(4, 3), EisensteinInt(1, 2) * EisensteinInt(1, 2)]


def test_wild_symbol_bilinear_in_unit():
    w = lf.wild_symbol_via_product_formula
    for n in (3, 5, 11, -1):
        for u1, u2 in itertools.product(UNITS[:5], repeat=2):
            assert w(u1 * u2, n, 3) == w(u1, n, 3) * w(u2, n, 3), (n, u1, u2)


def test_wild_symbol_bilinear_in_n():
    w = lf.wild_symbol_via_product_formula
    for u in UNITS[:5]:
        for n1, n2 in itertools.product((2, 5, 11, -1), repeat=2):
            assert w(u, n1 * n2, 3) == w(u, n1, 3) * w(u, n2, 3), (u, n1, n2)


def test_tame_symbol_bilinear():
    t = lf.tame_hilbert
    args = [EisensteinInt(1, 0), OMEGA, OMEGA * OMEGA, EisensteinInt(1, 3)]
    for a1, a2 in itertools.product(args, repeat=2):
        assert t(a1 * a2, 2, 2, 3) == t(a1, 2, 2, 3) * t(a2, 2, 2, 3)
    for b1, b2 in itertools.product((2, 5, 10), repeat=2):
        assert t(OMEGA, b1 * b2, 2, 3) == t(OMEGA, b1, 2, 3) * t(OMEGA, b2, 2, 3)


def _all_tables():
    yield lf.theta3_table()
    for kind in ("3p", "3p2"):
        for cls in (2, 5):
            yield lf.chi3_table(kind, cls)


@pytest.mark.parametrize("table", list(_all_tables()), ids=lambda t: t.label)
def test_character_is_homomorphism_on_full_group(table):
    els = list(table.group.elements())
    assert len(els) == table.group.order()
    vals = {i: table.evaluate(x) for i, x in enumerate(els)}
    for i, x in enumerate(els):
        for j, y in enumerate(els):
            assert table.evaluate(x * y) == vals[i] * vals[j]
