import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrscodec import linalg
from lrscodec.gf import FieldTower
from lrscodec.skewpoly import conjugate, minimal_skew_poly, newton_interpolate, PBasis
from lrscodec.sumrank import (
    BlockShape,
    BlockVector,
    EnumerationCapExceeded,
    Subspace,
    check_cap,
    column_space,
    enumeration_cap,
    from_matrix_rep,
    matrix_rep,
    min_distance_bruteforce,
    rank_weight,
    skew_weight,
    sum_injection_distance,
    sum_rank_distance,
    sum_rank_weight,
    sum_subspace_distance,
)
from oracles import OracleField

F9 = FieldTower(3, m=2)
F16 = FieldTower(2, m=4)
O16 = OracleField.of(F16)


def test_block_shape_and_vector():
    s = BlockShape((2, 0, 3))
    assert s.n == 5 and s.blocks == 3 and s.offsets() == [0, 2, 2, 5]
    v = BlockVector.from_blocks([[1, 2], [], [3, 4, 5]])
    assert v.shape == s and v.blocks() == [[1, 2], [], [3, 4, 5]]
    with pytest.raises(ValueError):
        BlockVector(s, (1, 2))
    with pytest.raises(ValueError):
        BlockShape(())


def test_matrix_rep_roundtrip():
    vec = [0, 5, 13, 15]
    mat = matrix_rep(F16, vec)
    assert len(mat) == 4 and from_matrix_rep(F16, mat) == vec


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=6, max_size=6))
def test_sum_rank_weight_matches_oracle(data):
    shape = BlockShape((3, 1, 2))
    v = BlockVector(shape, data)
    assert sum_rank_weight(F16, v) == O16.sum_rank_weight(data, [3, 1, 2])
    # sum-rank weight sits between rank weight and Hamming weight
    assert rank_weight(F16, data) <= sum_rank_weight(F16, v) <= sum(1 for x in data if x)


def test_sum_rank_distance_is_a_metric():
    rnd = random.Random(2)
    shape = BlockShape((2, 2))
    vecs = [BlockVector(shape, [rnd.randrange(9) for _ in range(4)]) for _ in range(12)]
    for a in vecs:
        assert sum_rank_distance(F9, a, a) == 0
        for b in vecs:
            assert sum_rank_distance(F9, a, b) == sum_rank_distance(F9, b, a)
            for c in vecs:
                assert sum_rank_distance(F9, a, c) <= sum_rank_distance(F9, a, b) + sum_rank_distance(F9, b, c)


def _zero_scan_weight(tower, values, points):
    """n minus the P-rank of the interpolant's zeros inside the P-closure of the points."""
    g = newton_interpolate(PBasis(tower, points), values)
    closure = minimal_skew_poly(tower, points)
    zeros = [z for z in range(tower.order) if closure(z) == 0 and g(z) == 0]
    return len(points) - minimal_skew_poly(tower, zeros).degree


def test_skew_weight_matches_zero_scan():
    tower = FieldTower(4, m=2)
    rnd = random.Random(11)
    gamma = tower.primitive_element()
    for _ in range(60):
        pts = []
        for rep in (1, gamma, tower.mul(gamma, gamma)):
            for beta in (1, 4)[: rnd.randrange(1, 3)]:
                pts.append(conjugate(tower, rep, beta))
        vals = [rnd.randrange(16) if rnd.random() < 0.6 else 0 for _ in pts]
        assert skew_weight(tower, vals, pts) == _zero_scan_weight(tower, vals, pts)


def test_subspace_distances():
    a = [Subspace(F9, [[1, 0, 0]], 3), Subspace(F9, [[1, 0], [0, 1]], 2)]
    b = [Subspace(F9, [[0, 1, 0], [1, 0, 0]], 3), Subspace(F9, [], 2)]
    assert sum_subspace_distance(a, b) == (2 * 2 - 1 - 2) + (2 * 2 - 2 - 0)
    assert sum_injection_distance(a, b) == (2 - 1) + (2 - 0)
    assert sum_subspace_distance(a, a) == 0
    with pytest.raises(ValueError):
        Subspace(F9, [[5, 0]], 2)


def test_column_space():
    sp = column_space(F9, [[1, 2], [0, 0], [2, 1]])
    assert sp.dim == 1 and sp.ambient == 3


def test_enumeration_cap(monkeypatch):
    assert enumeration_cap() == 3**8 or "CODEC_ENUM_CAP" in __import__("os").environ
    monkeypatch.setenv("CODEC_ENUM_CAP", "10")
    assert enumeration_cap() == 10
    with pytest.raises(EnumerationCapExceeded):
        check_cap(11, "test")
    monkeypatch.setenv("CODEC_ENUM_CAP", "zero")
    with pytest.raises(ValueError):
        enumeration_cap()


def test_min_distance_bruteforce_small():
    shape = BlockShape((1, 1, 1))
    words = [BlockVector(shape, [a, a, a]) for a in range(9)]
    assert min_distance_bruteforce(F9, words, linear=True) == 3
    assert min_distance_bruteforce(F9, words) == 3
    with pytest.raises(EnumerationCapExceeded):
        min_distance_bruteforce(F9, words, cap=4)


def test_linalg_helpers():
    rows = [[1, 2, 3], [F9.mul(5, 1), F9.mul(5, 2), F9.mul(5, 3)], [0, 1, 1]]
    assert linalg.rank(F9, rows) == 2
    ker = linalg.nullspace(F9, rows, 3)
    assert len(ker) == 1
    for r in rows:
        acc = 0
        for a, b in zip(r, ker[0]):
            acc = F9.add(acc, F9.mul(a, b))
        assert acc == 0
    u, red, rk = linalg.row_reduce_with_transform(F9, rows)
    assert rk == 2 and linalg.matmul(F9, u, rows) == red
    inv = linalg.inverse(F9, [[1, 2], [3, 4]])
    assert linalg.matmul(F9, inv, [[1, 2], [3, 4]]) == linalg.identity(2)
    target = [F9.add(a, b) for a, b in zip(rows[0], rows[2])]
    x = linalg.solve_left(F9, target, rows)
    assert x is not None and linalg.matmul(F9, [x], rows) == [target]
    assert linalg.solve_left(F9, [0, 0, 1], [[1, 0, 0]]) is None
