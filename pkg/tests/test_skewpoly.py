import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrscodec.gf import ConfigurationError, FieldTower
from lrscodec.skewpoly import (
    PBasis,
    SkewPoly,
    conjugate,
    evaluate,
    left_divide,
    minimal_skew_poly,
    newton_interpolate,
    operator_eval,
    p_rank,
    product_rule_eval,
    right_divide,
)
from oracles import OracleField

F9 = FieldTower(3, m=2)
F16 = FieldTower(2, m=4, r=3)
O9 = OracleField.of(F9)
O16 = OracleField.of(F16)


def polys(tower, max_len=6):
    return st.lists(st.integers(0, tower.order - 1), max_size=max_len).map(lambda c: SkewPoly(tower, c))


def nonzero_polys(tower, max_len=5):
    return st.lists(st.integers(0, tower.order - 1), max_size=max_len - 1).flatmap(
        lambda c: st.integers(1, tower.order - 1).map(lambda lead: SkewPoly(tower, c + [lead]))
    )


def test_x_times_scalar_is_sigma_scalar_times_x():
    t = FieldTower(2, m=2)
    x = SkewPoly.monomial(t, 1)
    z = SkewPoly(t, [2])
    assert (x * z).coeffs == (0, 3)
    xz = x + z
    assert (xz * xz).coeffs == (3, 1, 1)


@pytest.mark.parametrize("tower,oracle", [(F9, O9), (F16, O16)])
def test_product_matches_symbolic_expansion(tower, oracle):
    rnd = random.Random(3)
    for _ in range(100):
        f = [rnd.randrange(tower.order) for _ in range(rnd.randrange(0, 6))]
        g = [rnd.randrange(tower.order) for _ in range(rnd.randrange(0, 6))]
        assert list((SkewPoly(tower, f) * SkewPoly(tower, g)).coeffs) == oracle.skew_mul(f, g)


@settings(max_examples=100, deadline=None)
@given(polys(F9), polys(F9), polys(F9))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=150, deadline=None)
@given(polys(F16, 8), nonzero_polys(F16))
def test_division_identities(a, b):
    q, r = right_divide(a, b)
    assert q * b + r == a and r.degree < b.degree
    q, r = left_divide(a, b)
    assert b * q + r == a and r.degree < b.degree
    assert divmod(a, b) == right_divide(a, b)


@settings(max_examples=150, deadline=None)
@given(polys(F9), st.integers(0, F9.order - 1))
def test_remainder_evaluation(f, a):
    x_minus_a = SkewPoly(F9, [F9.neg(a), 1])
    _, rem = right_divide(f, x_minus_a)
    assert evaluate(f, a) == (rem.coeffs[0] if rem.coeffs else 0)
    assert f(a) == O9.remainder_eval(list(f.coeffs), a)


@settings(max_examples=150, deadline=None)
@given(polys(F16), polys(F16), st.integers(0, F16.order - 1))
def test_product_rule(u, v, a):
    assert product_rule_eval(u, v, a) == evaluate(u * v, a)


@settings(max_examples=100, deadline=None)
@given(polys(F9), st.integers(1, F9.order - 1), st.integers(0, F9.order - 1))
def test_operator_evaluation(f, a, beta):
    assert operator_eval(f, a, beta) == O9.op_eval(list(f.coeffs), a, beta)
    if beta:
        # operator evaluation equals remainder evaluation at the conjugate, times beta
        assert operator_eval(f, a, beta) == F9.mul(evaluate(f, conjugate(F9, a, beta)), beta)


def test_conjugate_rejects_zero():
    with pytest.raises(ValueError):
        conjugate(F9, 3, 0)


def _vandermonde_rank(oracle, points):
    n = len(points)
    return oracle.matrix_rank([[oracle.norm(b, j) for j in range(n)] for b in points])


@pytest.mark.parametrize("tower,oracle", [(F9, O9), (F16, O16)])
def test_minimal_polynomial(tower, oracle):
    rnd = random.Random(5)
    for _ in range(60):
        pts = [rnd.randrange(tower.order) for _ in range(rnd.randrange(1, 7))]
        f = minimal_skew_poly(tower, pts)
        assert f.coeffs[-1] == 1
        assert all(f(b) == 0 for b in pts)
        assert f.degree == p_rank(tower, pts) == _vandermonde_rank(oracle, pts)


def test_conjugacy_class_points_have_bounded_rank():
    # all points in one class have P-rank at most m
    a = F16.primitive_element()
    pts = [conjugate(F16, a, c) for c in range(1, F16.order)]
    assert p_rank(F16, pts) == F16.m


@pytest.mark.parametrize("tower,oracle", [(F9, O9), (F16, O16)])
def test_newton_interpolation(tower, oracle):
    rnd = random.Random(8)
    for _ in range(40):
        pts = []
        while len(pts) < 4:
            cand = rnd.randrange(tower.order)
            if cand not in pts and p_rank(tower, pts + [cand]) == len(pts) + 1:
                pts.append(cand)
        vals = [rnd.randrange(tower.order) for _ in pts]
        g = newton_interpolate(PBasis(tower, pts), vals)
        assert g.degree < len(pts)
        assert [oracle.remainder_eval(list(g.coeffs), b) for b in pts] == vals


def test_pbasis_rejects_dependent_points():
    a = F9.primitive_element()
    pts = [conjugate(F9, a, c) for c in (1, 2, 3)]
    with pytest.raises(ValueError):
        PBasis(F9, pts)
    with pytest.raises(ValueError):
        PBasis(F9, [1, 1])


def test_text_roundtrip_and_ring_mismatch():
    f = SkewPoly(F9, [1, 0, 5])
    assert SkewPoly.from_text(F9, f.to_text()) == f
    with pytest.raises(ConfigurationError):
        f + SkewPoly(FieldTower(3, m=2, r=1, modulus_qm=(2, 2, 1)), [1])
    assert SkewPoly(F9, [0, 0]).degree == -1
