"""Linearized Reed-Solomon codes, their duals, nested coset schemes and bounds."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .gf import ConfigurationError, FieldTower, prime_factors
from .sumrank import BlockShape, BlockVector, Subspace, check_cap


def default_bases(tower: FieldTower, shape: BlockShape) -> tuple:
    """First n_i polynomial-basis elements 1, z, z^2, ... for every block."""
    return tuple(tuple(tower.q**j for j in range(n_i)) for n_i in shape.lengths)


@dataclass(frozen=True)
class CodeSpec:
    """One linearized Reed-Solomon code.

    Block i evaluates the message polynomial with the operator attached to
    gamma^(i-1) on the GF(q)-independent elements ``bases[i]``. Zero-width
    blocks are only accepted with ``allow_erased`` (punctured codes).
    """

    tower: FieldTower
    shape: BlockShape
    k: int
    gamma: int | None = None
    bases: tuple | None = None
    allow_erased: bool = field(default=False, compare=False)

    def __post_init__(self):
        tower, shape = self.tower, self.shape
        if not isinstance(shape, BlockShape):
            object.__setattr__(self, "shape", BlockShape(tuple(shape)))
            shape = self.shape
        if self.gamma is None:
            object.__setattr__(self, "gamma", tower.primitive_element())
        if self.bases is None:
            object.__setattr__(self, "bases", default_bases(tower, shape))
        object.__setattr__(self, "bases", tuple(tuple(int(b) for b in blk) for blk in self.bases))
        self.validate()

    def validate(self) -> None:
        tower, shape = self.tower, self.shape
        q, m = tower.q, tower.m
        if not 1 <= shape.blocks <= q - 1:
            raise ConfigurationError(f"number of blocks l={shape.blocks} must satisfy 1 <= l <= q-1 = {q - 1}")
        low = 0 if self.allow_erased else 1
        for i, n_i in enumerate(shape.lengths):
            if not low <= n_i <= m:
                raise ConfigurationError(f"block {i} has width n_i={n_i}; need {low} <= n_i <= m = {m}")
        if not 0 <= self.k <= shape.n:
            raise ConfigurationError(f"dimension k={self.k} must lie in 0..n={shape.n}")
        units = tower.order - 1
        g = self.gamma
        if not 0 < g < tower.order or (units > 1 and any(tower.power(g, units // p) == 1 for p in prime_factors(units))):
            raise ConfigurationError(f"gamma={g} is not a primitive element of GF({tower.order})")
        if len(self.bases) != shape.blocks:
            raise ConfigurationError("one basis per block is required")
        for i, (blk, n_i) in enumerate(zip(self.bases, shape.lengths)):
            if len(blk) != n_i:
                raise ConfigurationError(f"basis {i} has {len(blk)} elements for width {n_i}")
            if blk and linalg.rank(tower, [tower.coords(tower.check(b)) for b in blk]) != n_i:
                raise ConfigurationError(f"basis {i} is not linearly independent over GF({q})")

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def redundancy(self) -> int:
        return self.n - self.k

    @property
    def radius(self) -> int:
        return (self.n - self.k) // 2

    @cached_property
    def class_reps(self) -> tuple:
        """gamma^(i-1) for each block i."""
        return tuple(self.tower.power(self.gamma, i) for i in range(self.shape.blocks))

    @cached_property
    def flat_bases(self) -> tuple:
        return tuple(b for blk in self.bases for b in blk)

    @cached_property
    def flat_reps(self) -> tuple:
        return tuple(a for a, n_i in zip(self.class_reps, self.shape.lengths) for _ in range(n_i))

    @cached_property
    def generator(self) -> tuple:
        return tuple(tuple(row) for row in operator_rows(self.tower, self.flat_bases, self.flat_reps, self.k))

    def with_dimension(self, k: int) -> "CodeSpec":
        return CodeSpec(self.tower, self.shape, k, self.gamma, self.bases, self.allow_erased)


def operator_rows(tower: FieldTower, betas, reps, k: int) -> list[list[int]]:
    """Rows j = 0..k-1 with entries sigma^j(beta) N_j(a), built by iterating
    beta -> sigma(beta) a."""
    rows = []
    row = list(betas)
    for _ in range(k):
        rows.append(row)
        row = [tower.mul(tower.frobenius(b, 1), a) for b, a in zip(row, reps)]
    return rows


def generator_matrix(spec: CodeSpec) -> list[list[int]]:
    return [list(r) for r in spec.generator]


def encode(spec: CodeSpec, msg) -> BlockVector:
    msg = [spec.tower.check(int(v)) for v in msg]
    if len(msg) != spec.k:
        raise ValueError(f"message length {len(msg)} differs from k={spec.k}")
    if spec.k == 0:
        return BlockVector(spec.shape, (0,) * spec.n)
    return BlockVector(spec.shape, tuple(spec.tower.arith.vecmat(msg, [list(r) for r in spec.generator])))


def encode_shots(spec: CodeSpec, msg):
    """Yield the codeword block by block, computing each shot on demand."""
    msg = [int(v) for v in msg]
    if len(msg) != spec.k:
        raise ValueError(f"message length {len(msg)} differs from k={spec.k}")
    ar = spec.tower.arith
    for a, blk in zip(spec.class_reps, spec.bases):
        yield [ar.p_op_eval(msg, a, b) for b in blk]


def all_messages(tower: FieldTower, k: int, cap: int | None = None) -> np.ndarray:
    """Every vector of GF(q^m)^k, lexicographic with the last coordinate fastest."""
    total = tower.order**k
    check_cap(total, f"enumerating GF({tower.order})^{k}", cap)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((tower.order,) * k).reshape(k, -1).T
    return grids.astype(np.int64)


def codeword_array(tower: FieldTower, generator, cap: int | None = None) -> np.ndarray:
    """All codewords of the row space of ``generator`` as an array (Q^k x n)."""
    gen = np.array(generator, dtype=np.int64).reshape(len(generator), -1)
    k, n = gen.shape
    msgs = all_messages(tower, k, cap)
    out = np.zeros((msgs.shape[0], n), dtype=np.int64)
    for j in range(k):
        out = tower.vadd(out, tower.vmul(msgs[:, j][:, None], gen[j][None, :]))
    return out


def all_codewords(spec: CodeSpec, cap: int | None = None) -> list[BlockVector]:
    arr = codeword_array(spec.tower, spec.generator if spec.k else [[0] * spec.n], cap)
    if spec.k == 0:
        arr = arr[:1]
    return [BlockVector(spec.shape, tuple(row)) for row in arr.tolist()]


def dual(spec: CodeSpec) -> CodeSpec:
    """Dual code: automorphism sigma^-1, primitive element sigma^-1(gamma),
    bases read off the generator of the dual of the (n-1)-dimensional code."""
    tower = spec.tower
    n = spec.n
    big = operator_rows(tower, spec.flat_bases, spec.flat_reps, n - 1)
    kernel = linalg.nullspace(tower, big, n)
    if len(kernel) != 1:
        raise ArithmeticError(f"dual of the (n-1)-dimensional code has dimension {len(kernel)}, expected 1")
    alpha = kernel[0]
    bases = tuple(tuple(blk) for blk in spec.shape.split(alpha))
    return CodeSpec(
        tower.inverse_automorphism(),
        spec.shape,
        n - spec.k,
        tower.frobenius(spec.gamma, -1),
        bases,
        spec.allow_erased,
    )


def same_row_space(tower: FieldTower, a, b) -> bool:
    ra = linalg.rank(tower, a) if a else 0
    rb = linalg.rank(tower, b) if b else 0
    return ra == rb == (linalg.rank(tower, list(a) + list(b)) if (a or b) else 0)


@dataclass(frozen=True)
class NestedPair:
    """Inner code C2 (dimension k2) inside outer code C1 (dimension k1)."""

    outer: CodeSpec
    inner: CodeSpec

    def __post_init__(self):
        o, i = self.outer, self.inner
        if (o.tower, o.shape, o.gamma, o.bases) != (i.tower, i.shape, i.gamma, i.bases):
            raise ConfigurationError("nested codes must share tower, shape, gamma and bases")
        if not i.k < o.k:
            raise ConfigurationError(f"inner dimension {i.k} must be below outer dimension {o.k}")

    @classmethod
    def from_spec(cls, spec: CodeSpec, k1: int, k2: int) -> "NestedPair":
        return cls(spec.with_dimension(k1), spec.with_dimension(k2))

    @property
    def k1(self) -> int:
        return self.outer.k

    @property
    def k2(self) -> int:
        return self.inner.k

    @property
    def secret_length(self) -> int:
        return self.k1 - self.k2


def optimal_pair(tower: FieldTower, shape: BlockShape, t: int, rho: int, mu: int) -> NestedPair:
    """Pair with k1 = n - 2t - rho and k2 = mu."""
    n = BlockShape(tuple(shape.lengths) if isinstance(shape, BlockShape) else tuple(shape)).n
    coherent_secret_capacity(n, t, rho, mu)
    spec = CodeSpec(tower, shape, n - 2 * t - rho)
    return NestedPair.from_spec(spec, n - 2 * t - rho, mu)


def coset_encode(pair: NestedPair, secret, randomness) -> BlockVector:
    secret, randomness = list(secret), list(randomness)
    if len(secret) != pair.secret_length:
        raise ValueError(f"secret length {len(secret)} differs from k1-k2={pair.secret_length}")
    if len(randomness) != pair.k2:
        raise ValueError(f"randomness length {len(randomness)} differs from k2={pair.k2}")
    return encode(pair.outer, randomness + secret)


def _embedded_basis(spec: CodeSpec, spaces) -> list[list[int]]:
    if len(spaces) != spec.shape.blocks:
        raise ValueError("one subspace per block is required")
    off = spec.shape.offsets()
    rows = []
    for i, sp in enumerate(spaces):
        if sp.ambient != spec.shape.lengths[i]:
            raise ValueError(f"subspace {i} lives in dimension {sp.ambient}, block width is {spec.shape.lengths[i]}")
        for vec in sp.basis:
            row = [0] * spec.n
            row[off[i]:off[i + 1]] = vec
            rows.append(row)
    return rows


def leakage_dims(pair: NestedPair, spaces) -> int:
    """dim(C2^perp cap V_L) - dim(C1^perp cap V_L), with V_L the vectors whose
    blocks have row spaces inside the given subspaces."""
    tower = pair.outer.tower
    kmat = _embedded_basis(pair.outer, spaces)
    if not kmat:
        return 0
    kt = linalg.transpose(kmat)

    def rank_with(gen):
        if not gen:
            return 0
        return linalg.rank(tower, linalg.matmul(tower, [list(r) for r in gen], kt))

    return rank_with(pair.outer.generator) - rank_with(pair.inner.generator)


def row_spaces(tower: FieldTower, shape: BlockShape, wiretaps) -> list[Subspace]:
    return [Subspace(tower, b, ambient=n_i) for b, n_i in zip(wiretaps, shape.lengths)]


# Bounds


def coherent_secret_capacity(n: int, t: int, rho: int, mu: int) -> int:
    if min(t, rho, mu) < 0 or not 2 * t + rho + mu < n:
        raise ValueError(f"need t, rho, mu >= 0 and 2t+rho+mu < n; got n={n}, t={t}, rho={rho}, mu={mu}")
    return n - 2 * t - rho - mu


def gaussian_binomial(big: int, small: int, q: int) -> int:
    """Number of small-dimensional subspaces of GF(q)^big."""
    if small < 0 or small > big:
        return 0
    num = den = 1
    for j in range(small):
        num *= q**big - q**j
        den *= q**small - q**j
    return num // den


def subspace_singleton_bound(ambient, widths, d: int, q: int) -> int:
    """Largest size allowed for a code of sum-subspace distance 2d with the
    given ambient dimensions M_i and transmitted dimensions n_i; minimised
    over splits d-1 = sum delta_i with 0 <= delta_i <= n_i."""
    ambient = list(ambient)
    widths = list(widths.lengths if isinstance(widths, BlockShape) else widths)
    if len(ambient) != len(widths):
        raise ValueError("ambient dimensions and widths differ in length")
    if not 0 <= d - 1 <= sum(widths):
        raise ValueError(f"distance d={d} is infeasible for widths {widths}")
    best = None
    for delta in itertools.product(*(range(n_i + 1) for n_i in widths)):
        if sum(delta) != d - 1:
            continue
        size = math.prod(gaussian_binomial(mm - dl, mm - n_i, q) for mm, n_i, dl in zip(ambient, widths, delta))
        best = size if best is None else min(best, size)
    return best


def lifted_rate(blocks: int, k: int, m: int, width: int) -> Fraction:
    """Rate of a lifted code with equal widths n' = width."""
    return Fraction(m * k, blocks * (m + width) * width)


def near_optimality_gap_bound(blocks: int, k: int, m: int, q: int):
    """(l/k) * 2/(m log2 q): a Fraction when q is a power of two, otherwise
    the nearest float (use ``gap_certificate`` for exact comparisons)."""
    if k < 1:
        raise ValueError("k must be positive")
    coeff = Fraction(2 * blocks, k * m)
    if q & (q - 1) == 0:
        return coeff / (q.bit_length() - 1)
    return float(coeff) / math.log2(q)


def gap_certificate(blocks: int, k: int, m: int, q: int, width: int) -> bool:
    """Exact check that the relative gap between the lifted rate and the
    sum-subspace Singleton rate is below the bound.

    With P the Singleton size bound at distance n-k+1, the gap is
    1 - mk/log_q P, and P < q^(mk) 4^l implies it is below
    (l/k) * 2/(m log2 q). Only integers are compared here.
    """
    n = blocks * width
    big = subspace_singleton_bound([m + width] * blocks, [width] * blocks, n - k + 1, q)
    return big < q ** (m * k) * 4**blocks
