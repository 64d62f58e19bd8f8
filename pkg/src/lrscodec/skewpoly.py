"""Skew polynomials over GF(q^m) with x*a = sigma(a)*x.

``SkewPoly`` is an immutable wrapper over a coefficient list (lowest degree
first). Heavy lifting happens in the tower's kernel (``tower.arith``), and
the decoder calls the list-level helpers here directly to skip wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import ConfigurationError, FieldTower


class SkewPoly:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.tower = tower
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, tower, degree, coeff=1):
        return cls(tower, [0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if self.tower != other.tower:
            raise ConfigurationError("skew polynomials over different rings")
        return other

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return SkewPoly(self.tower, self.tower.arith.p_add(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return other
        return SkewPoly(self.tower, self.tower.arith.p_sub(list(self.coeffs), list(other.coeffs)))

    def __neg__(self):
        return SkewPoly(self.tower, [self.tower.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            other = SkewPoly(self.tower, [other])
        other = self._same(other)
        if other is NotImplemented:
            return other
        return skew_mul(self, other)

    def __rmul__(self, scalar):
        if isinstance(scalar, int):
            return SkewPoly(self.tower, self.tower.arith.p_scale(scalar, list(self.coeffs)))
        return NotImplemented

    def __divmod__(self, other):
        return right_divide(self, other)

    def __call__(self, a: int) -> int:
        return evaluate(self, a)

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.tower == other.tower and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.tower, self.coeffs))

    def __repr__(self):
        return f"SkewPoly({list(self.coeffs)})"

    def to_text(self) -> str:
        return " ".join(map(str, self.coeffs))

    @classmethod
    def from_text(cls, tower, text: str) -> "SkewPoly":
        return cls(tower, [tower.check(int(tok)) for tok in text.split()])


@dataclass(frozen=True)
class PBasis:
    """Ordered P-independent points b_1..b_n."""

    tower: FieldTower
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise ValueError("P-basis points must be distinct")
        if p_rank(self.tower, self.points) != len(self.points):
            raise ValueError("points are not P-independent")

    def __len__(self):
        return len(self.points)


def skew_mul(u: SkewPoly, v: SkewPoly) -> SkewPoly:
    return SkewPoly(u.tower, u.tower.arith.p_mul(list(u.coeffs), list(v.coeffs)))


def right_divide(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """a = quotient * b + remainder."""
    quo, rem = a.tower.arith.p_rdivmod(list(a.coeffs), list(b.coeffs))
    return SkewPoly(a.tower, quo), SkewPoly(a.tower, rem)


def left_divide(a: SkewPoly, b: SkewPoly) -> tuple[SkewPoly, SkewPoly]:
    """a = b * quotient + remainder."""
    quo, rem = a.tower.arith.p_ldivmod(list(a.coeffs), list(b.coeffs))
    return SkewPoly(a.tower, quo), SkewPoly(a.tower, rem)


def evaluate(f: SkewPoly, a: int) -> int:
    """Remainder of the right division of f by (x - a)."""
    return f.tower.arith.p_eval(list(f.coeffs), a)


def conjugate(tower: FieldTower, a: int, c: int) -> int:
    """sigma(c) c^-1 a."""
    if c == 0:
        raise ValueError("conjugation by zero is undefined")
    return tower.arith.conj(a, c)


def product_rule_eval(u: SkewPoly, v: SkewPoly, a: int) -> int:
    """(u*v)(a) from u and v separately."""
    va = evaluate(v, a)
    if va == 0:
        return 0
    return u.tower.mul(evaluate(u, conjugate(u.tower, a, va)), va)


def operator_eval(f: SkewPoly, a: int, beta: int) -> int:
    """sum_i f_i sigma^i(beta) N_i(a); zero at beta = 0."""
    return f.tower.arith.p_op_eval(list(f.coeffs), a, beta)


def minimal_poly_coeffs(arith, points) -> list:
    """Monic least-degree polynomial vanishing on the points (list form)."""
    f = [1]
    for b in points:
        fb = arith.p_eval(f, b)
        if fb == 0:
            continue
        f = arith.p_mul_linear(arith.conj(b, fb), f)
    return f


def newton_coeffs(arith, points, values) -> list:
    """Interpolant of degree < len(points) (list form); points must be P-independent."""
    g = []
    f = [1]
    for b, a in zip(points, values):
        fb = arith.p_eval(f, b)
        if fb == 0:
            raise ValueError("interpolation points are P-dependent")
        gap = arith.sub(a, arith.p_eval(g, b))
        if gap != 0:
            g = arith.p_add(g, arith.p_scale(arith.mul(gap, arith.inv(fb)), f))
        f = arith.p_mul_linear(arith.conj(b, fb), f)
    return g


def minimal_skew_poly(tower: FieldTower, points) -> SkewPoly:
    return SkewPoly(tower, minimal_poly_coeffs(tower.arith, list(points)))


def p_rank(tower: FieldTower, points) -> int:
    return len(minimal_poly_coeffs(tower.arith, list(points))) - 1


def newton_interpolate(basis: PBasis, values) -> SkewPoly:
    values = list(values)
    if len(values) != len(basis.points):
        raise ValueError(f"{len(values)} values for {len(basis.points)} interpolation points")
    return SkewPoly(basis.tower, newton_coeffs(basis.tower.arith, basis.points, values))
