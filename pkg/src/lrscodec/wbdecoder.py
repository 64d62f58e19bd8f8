"""Welch-Berlekamp decoding of linearized Reed-Solomon codes in sum-rank metric.

The received word is translated into values of a skew polynomial on a
P-basis. A pair (L, Q) with L(b_i^{r_i}) r_i = Q(b_i) at every point is built
point by point in O(n^2) multiplications, and the message polynomial is the
exact left factor F in Q = L F.

The same core serves erasures, wiretap coset decoding and non-coherent
reception: each received block is reduced to the observations that carry
code information plus a set of known error directions, and the known
directions are annihilated before decoding.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .gf import FieldTower
from .lrs import CodeSpec, NestedPair, encode
from .skewpoly import SkewPoly, minimal_poly_coeffs, newton_coeffs
from .sumrank import BlockShape, BlockVector


class DecodingFailure(Exception):
    """The received word could not be decoded; ``reason`` says why."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class SkewProblem:
    tower: FieldTower
    points: tuple
    received: tuple
    k: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "received", tuple(self.received))
        if len(self.points) != len(self.received):
            raise ValueError("points and received values differ in length")
        if not 1 <= self.k <= len(self.points):
            raise ValueError(f"k={self.k} must lie in 1..n={len(self.points)}")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2


@dataclass(frozen=True)
class KeyPair:
    L: SkewPoly
    Q: SkewPoly


def to_skew_problem(spec: CodeSpec, y: BlockVector) -> SkewProblem:
    """Points sigma(beta) beta^-1 gamma^(i-1) and values y beta^-1."""
    if y.shape != spec.shape:
        raise ValueError(f"received shape {y.shape.lengths} differs from code shape {spec.shape.lengths}")
    ar = spec.tower.arith
    points, values = [], []
    for beta, a, v in zip(spec.flat_bases, spec.flat_reps, y.data):
        points.append(ar.conj(a, beta))
        values.append(ar.mul(v, ar.inv(beta)))
    return SkewProblem(spec.tower, points, values, spec.k)


def _wdeg(pair, k):
    """Weighted leading position: odd when L leads, even when Q leads."""
    lpart, qpart = pair
    wl = 2 * (len(lpart) - 1 + k - 1) + 1 if lpart else -1
    wq = 2 * (len(qpart) - 1) if qpart else -1
    return max(wl, wq)


def _discrepancy(ar, pair, b, r):
    lpart, qpart = pair
    return ar.sub(ar.p_op_eval(lpart, b, r), ar.p_eval(qpart, b))


def _solve_lists(ar, points, values, k, debug=False):
    """Return (L, Q) as coefficient lists."""
    n = len(points)
    fk = minimal_poly_coeffs(ar, points[:k])
    gk = newton_coeffs(ar, points[:k], values[:k])
    # Initial pair (1, G) fits the first k points; (0, F_k) does trivially.
    pairs = [([1], gk), ([], fk)]
    for j in range(k, n):
        b, r = points[j], values[j]
        disc = [_discrepancy(ar, p, b, r) for p in pairs]
        live = [i for i in (0, 1) if disc[i] != 0]
        if live:
            piv = min(live, key=lambda i: _wdeg(pairs[i], k))
            oth = 1 - piv
            pl, pq = pairs[piv]
            ol, oq = pairs[oth]
            sp, so = disc[piv], disc[oth]
            new_other = (
                ar.p_sub(ar.p_scale(sp, ol), ar.p_scale(so, pl)),
                ar.p_sub(ar.p_scale(sp, oq), ar.p_scale(so, pq)),
            )
            c = ar.conj(b, sp)
            new_piv = (ar.p_mul_linear(c, pl), ar.p_mul_linear(c, pq))
            pairs[piv], pairs[oth] = new_piv, new_other
        if debug:
            for p in pairs:
                for i in range(j + 1):
                    if _discrepancy(ar, p, points[i], values[i]) != 0:
                        raise AssertionError(f"key equation broken at point {i} after step {j}")
    return min(pairs, key=lambda p: _wdeg(p, k))


def solve_key_equations(problem: SkewProblem, debug: bool = False) -> KeyPair:
    ar = problem.tower.arith
    lpart, qpart = _solve_lists(ar, list(problem.points), list(problem.received), problem.k, debug)
    return KeyPair(SkewPoly(problem.tower, lpart), SkewPoly(problem.tower, qpart))


def _left_factor(ar, lpart, qpart, k):
    if not lpart:
        raise DecodingFailure("degenerate solver state")
    quo, rem = ar.p_ldivmod(qpart, lpart)
    if rem or len(quo) > k:
        raise DecodingFailure("too many errors")
    return tuple(quo) + (0,) * (k - len(quo))


def recover_message(problem: SkewProblem, kp: KeyPair) -> tuple:
    """F with Q = L F, as its k coefficients."""
    return _left_factor(problem.tower.arith, list(kp.L.coeffs), list(kp.Q.coeffs), problem.k)


def decode(spec: CodeSpec, y: BlockVector, check: bool = False) -> tuple:
    """Message of the codeword within sum-rank distance (n-k)/2 of y.

    Raises DecodingFailure when no such message is found. With ``check``, the
    result is re-encoded and rejected if it lies outside the decoding radius.
    """
    if spec.k == 0:
        return ()
    problem = to_skew_problem(spec, y)
    ar = spec.tower.arith
    lpart, qpart = _solve_lists(ar, list(problem.points), list(problem.received), spec.k)
    msg = _left_factor(ar, lpart, qpart, spec.k)
    if check:
        _check_radius(spec, y, msg)
    return msg


def _check_radius(spec, y, msg):
    ar = spec.tower.arith
    c = encode(spec, msg)
    err = [ar.sub(a, b) for a, b in zip(y.data, c.data)]
    if ar.sum_rank_weight(err, list(spec.shape.lengths)) > spec.radius:
        raise DecodingFailure("miscorrection detected")


# Erasures, known error directions and non-coherent reception


@dataclass
class ReducedBlock:
    """One block after column reduction: values y' seen through transfer rows
    ``rows`` (a x n_i over GF(q)) plus known error directions."""

    values: list
    rows: list
    deviations: list


def reduce_block(tower: FieldTower, values, transfer) -> ReducedBlock:
    """Split y = c A^T + e (A is N x n over GF(q)) into independent
    observations and pure-error directions."""
    values = list(values)
    transfer = [list(r) for r in transfer]
    if len(values) != len(transfer):
        raise ValueError(f"{len(values)} received symbols for a transfer matrix with {len(transfer)} rows")
    if not values:
        return ReducedBlock([], [], [])
    ar = tower.arith
    u, red, rk = linalg.row_reduce_with_transform(tower, transfer)
    mixed = [ar.vecmat(row, [[v] for v in values])[0] for row in u]
    deviations = []
    basis_rows = []
    for w in mixed[rk:]:
        if w == 0:
            continue
        cand = basis_rows + [tower.coords(w)]
        if linalg.rank(tower, cand) == len(cand):
            basis_rows = cand
            deviations.append(w)
    return ReducedBlock(mixed[:rk], red[:rk], deviations)


def decode_reduced(spec: CodeSpec, blocks: list[ReducedBlock]) -> tuple:
    """Decode from reduced blocks (one per code block, in order)."""
    tower = spec.tower
    ar = tower.arith
    if len(blocks) != spec.shape.blocks:
        raise ValueError("one reduced block per code block is required")
    anchors = []
    for a, blk in zip(spec.class_reps, blocks):
        anchors.extend(ar.conj(a, w) for w in blk.deviations)
    annihilator = minimal_poly_coeffs(ar, anchors)
    extra = len(annihilator) - 1
    points, values = [], []
    for a, beta_blk, blk in zip(spec.class_reps, spec.bases, blocks):
        for val, row in zip(blk.values, blk.rows):
            alpha = 0
            for beta, coef in zip(beta_blk, row):
                alpha = ar.add(alpha, ar.mul(beta, coef))
            points.append(ar.conj(a, alpha))
            cleaned = ar.p_op_eval(annihilator, a, val) if extra else val
            values.append(ar.mul(cleaned, ar.inv(alpha)))
    k_eff = spec.k + extra
    if spec.k == 0:
        return ()
    if k_eff > len(points):
        raise DecodingFailure("insufficient observations")
    lpart, qpart = _solve_lists(ar, points, values, k_eff)
    big = _left_factor(ar, lpart, qpart, k_eff)
    quo, rem = ar.p_ldivmod(list(big), annihilator)
    if rem or len(quo) > spec.k:
        raise DecodingFailure("too many errors")
    return tuple(quo) + (0,) * (spec.k - len(quo))


def decode_with_erasures(spec: CodeSpec, y: BlockVector, transfers) -> tuple:
    """Coherent decoding of y = c A^T + e with known per-block A_i (N_i x n_i).

    Rank-deficient A_i are handled by keeping only independent observations;
    succeeds whenever 2t + rho <= n - k.
    """
    transfers = list(transfers)
    if len(transfers) != spec.shape.blocks:
        raise ValueError("one transfer matrix per block is required")
    for i, (a_i, n_i) in enumerate(zip(transfers, spec.shape.lengths)):
        if any(len(row) != n_i for row in a_i):
            raise ValueError(f"transfer matrix {i} must have {n_i} columns")
        if any(not spec.tower.in_subfield(v) for row in a_i for v in row):
            raise ValueError(f"transfer matrix {i} has entries outside GF(q)")
    expected = BlockShape(tuple(len(a_i) for a_i in transfers))
    if y.shape != expected:
        raise ValueError(f"received shape {y.shape.lengths} does not match transfer rows {expected.lengths}")
    blocks = [reduce_block(spec.tower, vals, a_i) for vals, a_i in zip(y.blocks(), transfers)]
    return decode_reduced(spec, blocks)


def coset_decode(pair: NestedPair, y: BlockVector, transfers=None) -> tuple:
    """Secret part (last k1-k2 coordinates) of the decoded outer message."""
    if transfers is None:
        x = decode(pair.outer, y)
    else:
        x = decode_with_erasures(pair.outer, y, transfers)
    return tuple(x[pair.k2:])


def noncoherent_decode(spec: CodeSpec, received, lifted: bool = True) -> tuple:
    """Decode lifted transmissions without knowing the transfer matrices.

    ``received[i]`` is an (m + n_i) x N_i matrix over GF(q): the top m rows are
    the coordinates of the received symbols and the bottom n_i rows carry the
    transfer seen through the identity block. Without ``lifted`` the blocks
    are m x n_i payloads sent through identity transfers.
    """
    tower = spec.tower
    m = tower.m
    received = [[list(r) for r in mat] for mat in received]
    if len(received) != spec.shape.blocks:
        raise ValueError("one received matrix per block is required")
    blocks = []
    for i, (mat, n_i) in enumerate(zip(received, spec.shape.lengths)):
        rows_expected = m + n_i if lifted else m
        if len(mat) != rows_expected:
            raise ValueError(f"received matrix {i} has {len(mat)} rows, expected {rows_expected}")
        cols = len(mat[0]) if mat else 0
        values = [tower.from_coords([mat[row][j] for row in range(m)]) for j in range(cols)]
        if lifted:
            transfer = [[mat[m + t][j] for t in range(n_i)] for j in range(cols)]
        else:
            if cols != n_i:
                raise ValueError(f"unlifted block {i} must have {n_i} columns")
            transfer = linalg.identity(n_i)
        blocks.append(reduce_block(tower, values, transfer))
    return decode_reduced(spec, blocks)
