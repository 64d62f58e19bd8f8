"""Adversarial multishot matrix channel: transfers, erasures, errors, wiretaps.

Randomness comes from numpy's PCG64 generator, seeded per trial with
``base_seed + trial_index`` so every outcome can be replayed from its seed.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .gf import FieldTower
from .lrs import CodeSpec, NestedPair, all_messages, codeword_array
from .sumrank import BlockShape, BlockVector, EnumerationCapExceeded, check_cap, matrix_rep, sum_rank_weight


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 stream for one trial."""
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True)
class ChannelParams:
    shape: BlockShape
    t: int = 0
    rho: int = 0
    mu: int = 0
    out_lengths: tuple | None = None
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.shape, BlockShape):
            object.__setattr__(self, "shape", BlockShape(tuple(self.shape)))
        if min(self.t, self.rho, self.mu) < 0:
            raise ValueError("budgets t, rho, mu must be non-negative")
        if self.out_lengths is None:
            object.__setattr__(self, "out_lengths", self.shape.lengths)
        object.__setattr__(self, "out_lengths", tuple(self.out_lengths))
        if len(self.out_lengths) != self.shape.blocks:
            raise ValueError("one output width per block is required")


@dataclass
class ChannelOutcome:
    seed: int
    transfers: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    wiretaps: list = field(default_factory=list)
    received: object = None
    observations: list = field(default_factory=list)
    t_split: tuple = ()
    rho_split: tuple = ()
    mu_split: tuple = ()

    def record(self, tower: FieldTower, success: bool | None = None) -> dict:
        """Line-delimited transcript entry."""
        return {
            "seed": self.seed,
            "t_split": list(self.t_split),
            "rho_split": list(self.rho_split),
            "mu_split": list(self.mu_split),
            "transfer_ranks": [linalg.rank(tower, a) if a and a[0] else 0 for a in self.transfers],
            "error_ranks": [_error_rank(tower, e) for e in self.errors],
            "success": success,
        }


def _error_rank(tower, err):
    if not err:
        return 0
    if isinstance(err[0], list):
        return linalg.rank(tower, err) if err[0] else 0
    return sum_rank_weight(tower, BlockVector(BlockShape((len(err),)), err))


def write_transcript(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


# Sampling helpers


def random_split(rng, total: int, caps) -> list[int]:
    """Random split of ``total`` into parts bounded by ``caps``."""
    caps = list(caps)
    if total > sum(caps):
        raise ValueError(f"budget {total} exceeds the per-shot capacity {sum(caps)}")
    parts = [0] * len(caps)
    for _ in range(total):
        open_ = [i for i in range(len(caps)) if parts[i] < caps[i]]
        parts[open_[int(rng.integers(len(open_)))]] += 1
    return parts


def random_subfield_matrix(rng, q: int, rows: int, cols: int) -> list[list[int]]:
    return rng.integers(0, q, size=(rows, cols)).tolist() if rows and cols else [[0] * cols for _ in range(rows)]


def random_full_rank(rng, tower: FieldTower, rows: int, cols: int) -> list[list[int]]:
    """Uniform matrix over GF(q) of full rank min(rows, cols), by rejection."""
    while True:
        mat = random_subfield_matrix(rng, tower.q, rows, cols)
        if min(rows, cols) == 0 or linalg.rank(tower, mat) == min(rows, cols):
            return mat


def random_rank_matrix(rng, tower: FieldTower, rows: int, cols: int, rank: int) -> list[list[int]]:
    """Matrix over GF(q) of exact rank, as a product of full-rank factors."""
    if rank > min(rows, cols):
        raise ValueError(f"rank {rank} impossible for a {rows}x{cols} matrix")
    if rank == 0:
        return [[0] * cols for _ in range(rows)]
    while True:
        left = random_full_rank(rng, tower, rows, rank)
        right = random_full_rank(rng, tower, rank, cols)
        prod = linalg.matmul(tower, left, right)
        if linalg.rank(tower, prod) == rank:
            return prod


def random_error_vector(rng, tower: FieldTower, length: int, rank: int) -> list[int]:
    """Vector of GF(q^m)^length whose matrix representation has the given rank."""
    mat = random_rank_matrix(rng, tower, tower.m, length, rank)
    return [tower.from_coords([mat[i][j] for i in range(tower.m)]) for j in range(length)]


def apply_transfer(tower: FieldTower, block, transfer) -> list[int]:
    """x A^T for a GF(q^m) block x and A over GF(q)."""
    return tower.arith.vecmat(list(block), linalg.transpose(transfer)) if transfer else []


# Coherent and wiretap channels


def _split_erasures(rng, params, n_rows):
    caps = list(params.shape.lengths)
    # Rank n_i - rho_i must fit into N_i rows.
    floor_ = [max(0, n_i - nr) for n_i, nr in zip(params.shape.lengths, n_rows)]
    forced = sum(floor_)
    if forced > params.rho:
        raise ValueError("output widths force more erasures than the budget allows")
    extra = random_split(rng, params.rho - forced, [c - f for c, f in zip(caps, floor_)])
    return [f + e for f, e in zip(floor_, extra)]


def coherent_transmit(params: ChannelParams, tower: FieldTower, x: BlockVector, rng) -> ChannelOutcome:
    """Y_i = X_i A_i^T + E_i with Rk(A_i) = n_i - rho_i and Rk(E_i) = t_i."""
    if x.shape != params.shape:
        raise ValueError("codeword shape does not match the channel")
    rho_split = _split_erasures(rng, params, params.out_lengths)
    t_split = random_split(rng, params.t, [min(tower.m, nr) for nr in params.out_lengths])
    transfers, errors, received = [], [], []
    for blk, n_i, nr, rho_i, t_i in zip(x.blocks(), params.shape.lengths, params.out_lengths, rho_split, t_split):
        a_i = random_rank_matrix(rng, tower, nr, n_i, n_i - rho_i)
        e_i = random_error_vector(rng, tower, nr, t_i)
        y_i = [tower.add(u, v) for u, v in zip(apply_transfer(tower, blk, a_i), e_i)]
        transfers.append(a_i)
        errors.append(e_i)
        received.append(y_i)
    return ChannelOutcome(
        seed=params.seed,
        transfers=transfers,
        errors=errors,
        received=BlockVector.from_blocks(received),
        t_split=tuple(t_split),
        rho_split=tuple(rho_split),
    )


def wiretap_observe(params: ChannelParams, tower: FieldTower, x: BlockVector, rng):
    """Random wiretap matrices B_i (mu_i x n_i, any rank) and W_i = X_i B_i^T."""
    mu_split = random_split(rng, params.mu, params.shape.lengths)
    wiretaps = [random_subfield_matrix(rng, tower.q, mu_i, n_i) for mu_i, n_i in zip(mu_split, params.shape.lengths)]
    obs = [apply_transfer(tower, blk, b) for blk, b in zip(x.blocks(), wiretaps)]
    return wiretaps, obs


def count_wiretaps(q: int, shape: BlockShape, mu: int) -> int:
    total = 0
    for split in _splits(mu, shape.lengths):
        total += q ** sum(m_i * n_i for m_i, n_i in zip(split, shape.lengths))
    return total


def _splits(total, caps):
    for split in itertools.product(*(range(c + 1) for c in caps)):
        if sum(split) == total:
            yield split


def enumerate_wiretaps(q: int, shape: BlockShape, mu: int):
    """Every wiretap choice with sum mu_i = mu: lists of mu_i x n_i matrices."""
    for split in _splits(mu, shape.lengths):
        per_block = []
        for mu_i, n_i in zip(split, shape.lengths):
            mats = []
            for entries in itertools.product(range(q), repeat=mu_i * n_i):
                mats.append([list(entries[r * n_i:(r + 1) * n_i]) for r in range(mu_i)])
            per_block.append(mats)
        for combo in itertools.product(*per_block):
            yield list(combo)


# Lifting and the non-coherent channel


def lift(tower: FieldTower, c: BlockVector) -> list[list[list[int]]]:
    """Per block, the (m + n_i) x n_i matrix [M(c_i); I]."""
    out = []
    for blk in c.blocks():
        n_i = len(blk)
        top = matrix_rep(tower, blk)
        out.append(top + linalg.identity(n_i))
    return out


def noncoherent_transmit(params: ChannelParams, tower: FieldTower, lifted, rng) -> ChannelOutcome:
    """Y_i = X_i A_i^T + E_i on lifted matrices; the receiver sees only Y_i."""
    rho_split = _split_erasures(rng, params, params.out_lengths)
    t_split = random_split(rng, params.t, [min(tower.m + n_i, nr) for n_i, nr in zip(params.shape.lengths, params.out_lengths)])
    transfers, errors, received = [], [], []
    for x_i, n_i, nr, rho_i, t_i in zip(lifted, params.shape.lengths, params.out_lengths, rho_split, t_split):
        rows = tower.m + n_i
        a_i = random_rank_matrix(rng, tower, nr, n_i, n_i - rho_i)
        e_i = random_rank_matrix(rng, tower, rows, nr, t_i)
        y_i = linalg.matmul(tower, x_i, linalg.transpose(a_i)) if nr else [[] for _ in range(rows)]
        y_i = [[tower.add(u, v) for u, v in zip(ry, re)] for ry, re in zip(y_i, e_i)]
        transfers.append(a_i)
        errors.append(e_i)
        received.append(y_i)
    return ChannelOutcome(
        seed=params.seed,
        transfers=transfers,
        errors=errors,
        received=received,
        t_split=tuple(t_split),
        rho_split=tuple(rho_split),
    )


# Worst-case adversary


@dataclass
class ConfusablePair:
    """Two codewords from different cosets that produce the same output:
    c1 A^T + e1 = c2 A^T + e2."""

    c1: BlockVector
    c2: BlockVector
    transfers: list
    e1: list
    e2: list

    def verify(self, tower: FieldTower, t: int, rho: int) -> bool:
        shape = self.c1.shape
        out1, out2 = [], []
        for b1, b2, a_i in zip(self.c1.blocks(), self.c2.blocks(), self.transfers):
            out1.extend(apply_transfer(tower, b1, a_i))
            out2.extend(apply_transfer(tower, b2, a_i))
        out1 = [tower.add(u, v) for u, v in zip(out1, self.e1)]
        out2 = [tower.add(u, v) for u, v in zip(out2, self.e2)]
        out_shape = BlockShape(tuple(len(a_i) for a_i in self.transfers))
        rank_total = sum(linalg.rank(tower, a) if a else 0 for a in self.transfers)
        return (
            out1 == out2
            and self.c1.data != self.c2.data
            and sum_rank_weight(tower, BlockVector(out_shape, self.e1)) <= t
            and sum_rank_weight(tower, BlockVector(out_shape, self.e2)) <= t
            and rank_total >= shape.n - rho
        )


def _factor_block(tower, blk):
    """blk = x B with B in RREF over GF(q); returns (x, B)."""
    if not blk:
        return [], []
    rows, pivots = linalg.rref(tower, matrix_rep(tower, blk))
    return [blk[p] for p in pivots], rows


def worst_case_confusable_pair(code, t: int, rho: int, cap: int | None = None):
    """Build an undetectable confusion from a low-weight codeword difference,
    or return None when every difference outweighs 2t + rho."""
    pair = code if isinstance(code, NestedPair) else None
    spec = pair.outer if pair else code
    inner_k = pair.k2 if pair else 0
    tower, shape = spec.tower, spec.shape
    if spec.k == 0:
        return None
    msgs = all_messages(tower, spec.k, cap)
    words = codeword_array(tower, spec.generator, cap)
    mask = np.any(msgs[:, inner_k:] != 0, axis=1)
    ar = tower.arith
    lengths = list(shape.lengths)
    best, best_w = None, None
    for row in words[mask].tolist():
        w = ar.sum_rank_weight(row, lengths)
        if best_w is None or w < best_w:
            best, best_w = row, w
    if best_w is None or best_w > 2 * t + rho:
        return None
    c = BlockVector(shape, best)
    transfers, reduced = [], []
    remaining = rho
    for blk in c.blocks():
        coeffs, basis = _factor_block(tower, blk)
        n_i = len(blk)
        rho_i = min(len(basis), remaining)
        remaining -= rho_i
        if rho_i:
            erased = basis[len(basis) - rho_i:]
            a_i = linalg.nullspace(tower, erased, n_i)
        else:
            a_i = linalg.identity(n_i)
        transfers.append(a_i)
        reduced.append(apply_transfer(tower, blk, a_i))
    # Split c A^T into two parts of sum-rank weight at most t each.
    first, second = [], []
    budget = t
    for d_i in reduced:
        coeffs, basis = _factor_block(tower, d_i)
        take = min(budget, len(basis))
        budget -= take
        part = [0] * len(d_i)
        for x_l, row in zip(coeffs[:take], basis[:take]):
            part = [tower.add(p, tower.mul(x_l, b)) for p, b in zip(part, row)]
        first.extend(part)
        second.extend(tower.sub(u, v) for u, v in zip(d_i, part))
    e1 = [tower.neg(v) for v in first]
    zero = BlockVector(shape, (0,) * shape.n)
    return ConfusablePair(c, zero, transfers, e1, second)


# Empirical leakage


def _log_exact(ratio: Fraction, base: int) -> int:
    num, den = ratio.numerator, ratio.denominator
    sign = 1
    if num < den:
        num, den, sign = den, num, -1
    if den != 1:
        raise ArithmeticError(f"probability ratio {ratio} is not a power of {base}")
    e = 0
    while num % base == 0 and num > 1:
        num //= base
        e += 1
    if num != 1:
        raise ArithmeticError(f"probability ratio {ratio} is not a power of {base}")
    return sign * e


def empirical_mutual_information(pair: NestedPair, wiretaps, cap: int | None = None) -> Fraction:
    """I(S; X B^T) in units of log q^m, by enumerating uniform randomness and
    secret. Exact: every probability ratio must be a power of q^m."""
    spec = pair.outer
    tower, shape = spec.tower, spec.shape
    if len(wiretaps) != shape.blocks:
        raise ValueError("one wiretap matrix per block is required")
    cols = []
    off = shape.offsets()
    gen = [list(r) for r in spec.generator]
    for i, b_i in enumerate(wiretaps):
        for row in b_i:
            if len(row) != shape.lengths[i]:
                raise ValueError(f"wiretap matrix {i} must have {shape.lengths[i]} columns")
            col = [0] * spec.k
            for tpos, coef in enumerate(row):
                if coef:
                    for j in range(spec.k):
                        col[j] = tower.add(col[j], tower.mul(gen[j][off[i] + tpos], coef))
            cols.append(col)
    if not cols:
        return Fraction(0)
    msgs = all_messages(tower, spec.k, cap)
    mixing = np.array(cols, dtype=np.int64).T
    obs = np.zeros((msgs.shape[0], mixing.shape[1]), dtype=np.int64)
    for j in range(spec.k):
        obs = tower.vadd(obs, tower.vmul(msgs[:, j][:, None], mixing[j][None, :]))
    total = msgs.shape[0]
    if total > 2**31:
        raise EnumerationCapExceeded(f"{total} messages overflow the exact counting")
    # Messages are listed with the last coordinate fastest, so the secret
    # (the trailing k1-k2 coordinates) of row j is j mod Q^(k1-k2).
    n_secrets = tower.order**pair.secret_length
    s_inv = np.arange(total, dtype=np.int64) % n_secrets
    w_ids, w_inv, w_cnt = _count(_row_codes(obs, tower.order))
    width = len(w_ids)
    joint_ids, _, n_sw = _count(s_inv * width + w_inv)
    s_each = total // n_secrets
    w_of_cell = w_cnt[joint_ids % width]
    # P(s,w) / (P(s) P(w)) = n_sw * total / (s_each * n_w) depends only on
    # (n_sw, n_w); take an exact log once per distinct pair.
    keys, key_inv, _ = _count(n_sw * (total + 1) + w_of_cell)
    mass = np.bincount(key_inv, weights=n_sw, minlength=len(keys)).astype(np.int64)
    weight_by_ratio: dict[Fraction, int] = {}
    for key, count in zip(keys.tolist(), mass.tolist()):
        n_cell, n_w = divmod(key, total + 1)
        ratio = Fraction(n_cell * total, s_each * n_w)
        weight_by_ratio[ratio] = weight_by_ratio.get(ratio, 0) + count
    info = Fraction(0)
    for ratio, count in weight_by_ratio.items():
        info += Fraction(count, total) * _log_exact(ratio, tower.order)
    return info


def _count(codes: np.ndarray):
    """(distinct codes, index of each entry's code, counts), in code order."""
    if codes.dtype != object and len(codes) and codes.max() < 1 << 22:
        counts = np.bincount(codes)
        present = np.flatnonzero(counts)
        index = np.zeros(len(counts), dtype=np.int64)
        index[present] = np.arange(len(present))
        return present, index[codes], counts[present]
    ids, inv, counts = np.unique(codes, return_inverse=True, return_counts=True)
    return ids, inv.ravel(), counts


def _row_codes(rows: np.ndarray, base: int) -> np.ndarray:
    """One integer per row (mixed radix); object dtype when int64 would overflow."""
    width = rows.shape[1]
    if width == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    dtype = np.int64 if base**width < 2**62 else object
    out = np.zeros(rows.shape[0], dtype=dtype)
    for j in range(width):
        out = out * base + rows[:, j].astype(dtype)
    return out
