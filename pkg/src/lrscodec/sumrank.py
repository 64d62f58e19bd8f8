"""Sum-rank, skew, sum-subspace and sum-injection metrics."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from . import linalg
from .gf import FieldTower

DEFAULT_ENUM_CAP = 3**8


class EnumerationCapExceeded(RuntimeError):
    """An exhaustive enumeration would exceed CODEC_ENUM_CAP."""


def enumeration_cap() -> int:
    raw = os.environ.get("CODEC_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"CODEC_ENUM_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("CODEC_ENUM_CAP must be positive")
    return cap


def check_cap(size: int, what: str, cap: int | None = None) -> None:
    cap = enumeration_cap() if cap is None else cap
    if size > cap:
        raise EnumerationCapExceeded(f"{what} needs {size} items, above the cap {cap} (set CODEC_ENUM_CAP)")


@dataclass(frozen=True)
class BlockShape:
    """Block widths n_1..n_l. Zero widths stand for fully erased blocks."""

    lengths: tuple

    def __post_init__(self):
        lengths = tuple(int(n) for n in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        if not lengths:
            raise ValueError("a block shape needs at least one block")
        if any(n < 0 for n in lengths):
            raise ValueError(f"block widths must be non-negative, got {lengths}")

    @property
    def n(self) -> int:
        return sum(self.lengths)

    @property
    def blocks(self) -> int:
        return len(self.lengths)

    def offsets(self) -> list[int]:
        out = [0]
        for n_i in self.lengths:
            out.append(out[-1] + n_i)
        return out

    def split(self, data) -> list[list]:
        off = self.offsets()
        return [list(data[off[i]:off[i + 1]]) for i in range(len(self.lengths))]


@dataclass(frozen=True)
class BlockVector:
    shape: BlockShape
    data: tuple

    def __post_init__(self):
        object.__setattr__(self, "data", tuple(int(v) for v in self.data))
        if len(self.data) != self.shape.n:
            raise ValueError(f"vector of length {len(self.data)} does not fit shape {self.shape.lengths}")

    @classmethod
    def from_blocks(cls, blocks) -> "BlockVector":
        blocks = [list(b) for b in blocks]
        return cls(BlockShape(tuple(len(b) for b in blocks)), tuple(v for b in blocks for v in b))

    def blocks(self) -> list[list]:
        return self.shape.split(self.data)

    def __len__(self):
        return len(self.data)


def matrix_rep(tower: FieldTower, vec) -> list[list[int]]:
    """m x len(vec) matrix over GF(q); column j holds the coordinates of vec[j]."""
    cols = [tower.coords(v) for v in vec]
    return [[col[i] for col in cols] for i in range(tower.m)]


def from_matrix_rep(tower: FieldTower, mat) -> list[int]:
    if len(mat) != tower.m:
        raise ValueError(f"need {tower.m} rows, got {len(mat)}")
    return [tower.from_coords(col) for col in zip(*mat)] if mat and mat[0] else []


def rank_weight(tower: FieldTower, vec) -> int:
    return tower.arith.sum_rank_weight(list(vec), [len(vec)])


def sum_rank_weight(tower: FieldTower, c: BlockVector) -> int:
    return tower.arith.sum_rank_weight(list(c.data), list(c.shape.lengths))


def sum_rank_distance(tower: FieldTower, c: BlockVector, d: BlockVector) -> int:
    if c.shape != d.shape:
        raise ValueError("vectors have different block shapes")
    ar = tower.arith
    return ar.sum_rank_weight([ar.sub(a, b) for a, b in zip(c.data, d.data)], list(c.shape.lengths))


def _subfield_kernel_element(tower: FieldTower, ratio: int) -> int:
    """A nonzero beta with sigma(beta) = ratio * beta (exists for ratios in the class of 1)."""
    m = tower.m
    # GF(q)-linear map beta -> sigma(beta) - ratio*beta on the polynomial basis.
    cols = []
    for j in range(m):
        z = tower.q**j
        cols.append(tower.coords(tower.sub(tower.frobenius(z, 1), tower.mul(ratio, z))))
    mat = [[cols[j][i] for j in range(m)] for i in range(m)]
    kernel = linalg.nullspace(tower, mat, m)
    if not kernel:
        raise ValueError("point is not conjugate to its class representative")
    return tower.from_coords(kernel[0])


def skew_weight(tower: FieldTower, f_values, points) -> int:
    """Skew weight of the interpolant of ``f_values`` on the P-independent
    ``points``, computed through the sum-rank translation.

    Points are grouped into conjugacy classes (by their full norm); with the
    first point of a class as representative a, each point b = sigma(beta)
    beta^-1 a gets the value f * beta, and the class contributes the GF(q)-rank
    of those products.
    """
    f_values = list(f_values)
    points = list(points)
    if len(f_values) != len(points):
        raise ValueError(f"{len(f_values)} values for {len(points)} points")
    classes: dict[int, list[int]] = {}
    weight = 0
    for idx, b in enumerate(points):
        if b == 0:
            weight += 1 if f_values[idx] != 0 else 0
            continue
        classes.setdefault(tower.norm(b, tower.m), []).append(idx)
    for members in classes.values():
        rep = points[members[0]]
        rep_inv = tower.inv(rep)
        translated = []
        for idx in members:
            beta = _subfield_kernel_element(tower, tower.mul(points[idx], rep_inv))
            translated.append(tower.mul(f_values[idx], beta))
        weight += rank_weight(tower, translated)
    return weight


class Subspace:
    """Subspace of GF(q)^ambient stored as its RREF basis."""

    __slots__ = ("tower", "ambient", "basis")

    def __init__(self, tower: FieldTower, rows, ambient: int | None = None):
        rows = [list(r) for r in rows]
        if ambient is None:
            if not rows:
                raise ValueError("ambient dimension needed for an empty spanning set")
            ambient = len(rows[0])
        if any(len(r) != ambient for r in rows):
            raise ValueError("spanning rows do not match the ambient dimension")
        if any(not tower.in_subfield(v) for r in rows for v in r):
            raise ValueError("subspace entries must lie in GF(q)")
        red, _ = linalg.rref(tower, rows) if rows else ([], [])
        self.tower = tower
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def sum_dim(self, other: "Subspace") -> int:
        return linalg.rank(self.tower, list(self.basis) + list(other.basis)) if self.basis or other.basis else 0

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - self.sum_dim(other)


def column_space(tower: FieldTower, mat) -> Subspace:
    """Column space of a matrix over GF(q) as a Subspace of GF(q)^rows."""
    return Subspace(tower, linalg.transpose(mat) if mat and mat[0] else [], ambient=len(mat))


def _check_lists(u, v):
    if len(u) != len(v) or any(a.ambient != b.ambient for a, b in zip(u, v)):
        raise ValueError("subspace lists differ in length or ambient dimensions")


def sum_subspace_distance(u, v) -> int:
    _check_lists(u, v)
    return sum(2 * a.sum_dim(b) - a.dim - b.dim for a, b in zip(u, v))


def sum_injection_distance(u, v) -> int:
    _check_lists(u, v)
    return sum(max(a.dim, b.dim) - a.intersection_dim(b) for a, b in zip(u, v))


def min_distance_bruteforce(tower: FieldTower, codewords, linear: bool = False, cap: int | None = None) -> int:
    """Minimum sum-rank distance of an explicitly listed code.

    With ``linear=True`` the minimum nonzero weight is returned; otherwise all
    pairs are compared.
    """
    words = []
    limit = enumeration_cap() if cap is None else cap
    for w in codewords:
        words.append(w)
        if len(words) > limit:
            raise EnumerationCapExceeded(f"more than {limit} codewords (set CODEC_ENUM_CAP)")
    if len(words) < 2:
        raise ValueError("need at least two codewords")
    ar = tower.arith
    lengths = list(words[0].shape.lengths)
    if linear:
        weights = [ar.sum_rank_weight(list(w.data), lengths) for w in words if any(w.data)]
        return min(weights)
    best = None
    for a, b in itertools.combinations(words, 2):
        if a.data == b.data:
            continue
        d = sum_rank_distance(tower, a, b)
        best = d if best is None else min(best, d)
    if best is None:
        raise ValueError("all codewords coincide")
    return best
