"""Finite-field towers GF(q0) <= GF(q) <= GF(q^m) with a Frobenius automorphism.

Elements of GF(q^m) are plain ints. The base-q digits of an element
(least significant first) are its coordinates in the polynomial basis
1, z, ..., z^(m-1) of the top modulus, and each digit is a GF(q) element
whose base-p digits are its coordinates over the prime field.

Arithmetic goes through exp/log/Zech tables built once per field and shared
by every tower over that field. The automorphism sigma(a) = a^(q^r) acts on
the discrete log, so sigma^j costs one table lookup.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ._backend import arith_class


class ConfigurationError(ValueError):
    """Invalid field, code or experiment parameters."""


def prime_power(n: int) -> tuple[int, int]:
    """Return (p, e) with n = p**e, or raise ConfigurationError."""
    if n < 2:
        raise ConfigurationError(f"{n} is not a prime power")
    p = next(d for d in range(2, n + 1) if n % d == 0)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ConfigurationError(f"field size must be a prime power, got {p**e * n}")
    return p, e


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class SmallField:
    """GF(p^d) by full addition/multiplication tables; used to build towers."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.degree = len(modulus) - 1
        self.size = p**self.degree
        self.modulus = tuple(modulus)
        size = self.size
        digits = [[(x // p**i) % p for i in range(self.degree)] for x in range(size)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        self.add_table = [[encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(size)] for x in range(size)]
        self.neg_table = [encode([(-a) % p for a in digits[x]]) for x in range(size)]
        self.mul_table = [[0] * size for _ in range(size)]
        for x in range(size):
            for y in range(x, size):
                prod = [0] * (2 * self.degree - 1 if self.degree else 1)
                for i, a in enumerate(digits[x]):
                    if a:
                        for j, b in enumerate(digits[y]):
                            prod[i + j] = (prod[i + j] + a * b) % p
                for top in range(len(prod) - 1, self.degree - 1, -1):
                    c = prod[top]
                    if c:
                        for i in range(self.degree + 1):
                            prod[top - self.degree + i] = (prod[top - self.degree + i] - c * modulus[i]) % p
                val = encode(prod[: self.degree])
                self.mul_table[x][y] = self.mul_table[y][x] = val
        self.inv_table = [0] * size
        for x in range(1, size):
            self.inv_table[x] = self.mul_table[x].index(1)

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]


def _strip(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(field: SmallField, f, g):
    """Remainder of f modulo g over a small field."""
    f = _strip(f)
    g = _strip(g)
    lead_inv = field.inv_table[g[-1]]
    while len(f) >= len(g):
        c = field.mul(f[-1], lead_inv)
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = field.sub(f[shift + i], field.mul(c, gi))
        f = _strip(f)
    return f


def poly_mul(field: SmallField, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return _strip(out)


def poly_gcd(field: SmallField, f, g):
    f, g = _strip(f), _strip(g)
    while g:
        f, g = g, poly_mod(field, f, g)
    return f


def poly_powmod(field: SmallField, base, e: int, mod):
    result = [1]
    base = poly_mod(field, base, mod)
    while e:
        if e & 1:
            result = poly_mod(field, poly_mul(field, result, base), mod)
        base = poly_mod(field, poly_mul(field, base, base), mod)
        e >>= 1
    return result


def is_irreducible(field: SmallField, f) -> bool:
    """Ben-Or test: f has no factor of degree i for i <= deg f / 2."""
    f = _strip(f)
    d = len(f) - 1
    if d < 1:
        return False
    h = [0, 1]
    for _ in range(d // 2):
        h = poly_powmod(field, h, field.size, f)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = field.sub(diff[1], 1)
        if len(poly_gcd(field, f, diff)) > 1:
            return False
    return True


def smallest_irreducible(field: SmallField, degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree whose lower coefficients, read
    as base-|field| digits, form the smallest integer."""
    for code in range(field.size**degree):
        low = [(code // field.size**i) % field.size for i in range(degree)]
        cand = low + [1]
        if is_irreducible(field, cand):
            return tuple(cand)
    raise ConfigurationError(f"no irreducible polynomial of degree {degree}")  # unreachable for finite fields


def _prime_field(p: int) -> SmallField:
    return SmallField(p, (0, 1))


class _Tables:
    """Shared exp/log/Zech tables of one field GF(q^m)."""

    def __init__(self, p, base_degree, modq, m, modqm):
        self.p = p
        self.subfield = SmallField(p, modq)
        q = self.subfield.size
        self.q = q
        self.m = m
        self.order = q**m
        self.units = self.order - 1
        sub = self.subfield
        add_np = np.array(sub.add_table, dtype=np.int64)
        mul_np = np.array(sub.mul_table, dtype=np.int64)
        neg_np = np.array(sub.neg_table, dtype=np.int64)
        elems = np.arange(self.order, dtype=np.int64)
        digits = np.stack([(elems // q**i) % q for i in range(m)], axis=1)
        weights = q ** np.arange(m, dtype=np.int64)
        self.digits = digits

        def mul_poly(a, b):
            return poly_mod(sub, poly_mul(sub, a, b), modqm)

        def to_poly(x):
            return [(x // q**i) % q for i in range(m)]

        def from_poly(f):
            return sum(c * q**i for i, c in enumerate(f))

        def order_ok(g):
            if self.units == 1:
                return g == 1
            if from_poly(poly_powmod(sub, to_poly(g), self.units, modqm)) != 1:
                return False
            return all(from_poly(poly_powmod(sub, to_poly(g), self.units // f, modqm)) != 1 for f in prime_factors(self.units))

        self.gamma = next(g for g in range(1, self.order) if order_ok(g))
        # The map x -> x * gamma as an m x m matrix over GF(q), applied to all elements at once.
        gpoly = to_poly(self.gamma)
        images = [mul_poly([0] * j + [1], gpoly) for j in range(m)]
        mat = np.zeros((m, m), dtype=np.int64)
        for j, img in enumerate(images):
            for k, c in enumerate(img):
                mat[j, k] = c
        acc = np.zeros((self.order, m), dtype=np.int64)
        for j in range(m):
            acc = add_np[acc, mul_np[digits[:, j][:, None], mat[j][None, :]]]
        times_gamma = (acc * weights).sum(axis=1).tolist()
        exp = [0] * (2 * self.units)
        x = 1
        for i in range(self.units):
            exp[i] = x
            x = times_gamma[x]
        exp[self.units:] = exp[: self.units]
        log = [-1] * self.order
        for i in range(self.units):
            log[exp[i]] = i
        plus_one = digits.copy()
        plus_one[:, 0] = add_np[plus_one[:, 0], 1]
        plus_one = (plus_one * weights).sum(axis=1)
        zech = [-1] * self.units
        for d in range(self.units):
            s = int(plus_one[exp[d]])
            zech[d] = log[s] if s else -1
        neg = (neg_np[digits] * weights).sum(axis=1).tolist()
        self.exp, self.log, self.zech, self.neg = exp, log, zech, neg
        self.exp_np = np.array(exp, dtype=np.int64)
        self.log_np = np.array(log, dtype=np.int64)
        self.zech_np = np.array(zech, dtype=np.int64)
        self.neg_np = np.array(neg, dtype=np.int64)


@lru_cache(maxsize=None)
def _tables(p, base_degree, modq, m, modqm) -> _Tables:
    return _Tables(p, base_degree, modq, m, modqm)


@lru_cache(maxsize=None)
def _default_moduli(p, base_degree, m):
    modq = smallest_irreducible(_prime_field(p), base_degree) if base_degree > 1 else (0, 1)
    sub = SmallField(p, modq)
    modqm = smallest_irreducible(sub, m) if m > 1 else (0, 1)
    return modq, modqm


class FieldTower:
    """GF(q0) <= GF(q = q0^s) <= GF(q^m) with sigma(a) = a^(q^r).

    ``modulus_q`` is given over the prime field GF(p) (it has degree e*s when
    q0 = p^e) and ``modulus_qm`` over GF(q). Both default to the smallest
    irreducible polynomial of the right degree.
    """

    def __init__(self, q0: int, s: int = 1, m: int = 1, r: int = 1, modulus_q=None, modulus_qm=None, backend=None):
        p, e = prime_power(q0)
        if s < 1 or m < 1:
            raise ConfigurationError(f"extension degrees must be positive, got s={s}, m={m}")
        if not 1 <= r <= m or math.gcd(r, m) != 1:
            raise ConfigurationError(f"Frobenius exponent r={r} needs 1 <= r <= m={m} and gcd(r, m) = 1")
        base_degree = e * s
        dq, dqm = _default_moduli(p, base_degree, m)
        modulus_q = tuple(modulus_q) if modulus_q is not None else dq
        modulus_qm = tuple(modulus_qm) if modulus_qm is not None else dqm
        if len(modulus_q) != base_degree + 1 or modulus_q[-1] != 1:
            raise ConfigurationError(f"modq must be monic of degree {base_degree}")
        if len(modulus_qm) != m + 1 or modulus_qm[-1] != 1:
            raise ConfigurationError(f"modqm must be monic of degree {m}")
        if base_degree > 1 and not is_irreducible(_prime_field(p), modulus_q):
            raise ConfigurationError(f"modq={modulus_q} is reducible over GF({p})")
        if any(not 0 <= c < p for c in modulus_q):
            raise ConfigurationError("modq coefficients must lie in GF(p)")
        q = p**base_degree
        if any(not 0 <= c < q for c in modulus_qm):
            raise ConfigurationError("modqm coefficients must lie in GF(q)")
        if m > 1 and not is_irreducible(SmallField(p, modulus_q), modulus_qm):
            raise ConfigurationError(f"modqm={modulus_qm} is reducible over GF({q})")
        self.q0, self.s, self.m, self.r = q0, s, m, r
        self.p = p
        self.q = q
        self.order = q**m
        self.modulus_q = modulus_q
        self.modulus_qm = modulus_qm
        self.tables = _tables(p, base_degree, modulus_q, m, modulus_qm)
        self.backend = backend
        t = self.tables
        self.arith = arith_class(backend)(t.exp, t.log, t.zech, t.neg, p, q, m, r)

    # identity

    @property
    def field_key(self):
        return (self.p, self.modulus_q, self.m, self.modulus_qm)

    def same_field(self, other: "FieldTower") -> bool:
        return self.field_key == other.field_key

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.field_key == other.field_key and self.r == other.r

    def __hash__(self):
        return hash((self.field_key, self.r))

    def __repr__(self):
        return f"FieldTower({self.describe()})"

    def describe(self) -> str:
        modq = ",".join(map(str, self.modulus_q))
        modqm = ",".join(map(str, self.modulus_qm))
        return f"q0={self.q0} s={self.s} m={self.m} r={self.r} modq={modq} modqm={modqm}"

    @classmethod
    def parse(cls, text: str, backend=None) -> "FieldTower":
        fields = {}
        for token in text.split():
            key, sep, value = token.partition("=")
            if not sep:
                raise ConfigurationError(f"malformed tower token {token!r}")
            fields[key] = value
        unknown = set(fields) - {"q0", "s", "m", "r", "modq", "modqm"}
        if unknown:
            raise ConfigurationError(f"unknown tower keys {sorted(unknown)}")
        try:
            return cls(
                int(fields["q0"]),
                int(fields.get("s", 1)),
                int(fields.get("m", 1)),
                int(fields.get("r", 1)),
                modulus_q=[int(c) for c in fields["modq"].split(",")] if "modq" in fields else None,
                modulus_qm=[int(c) for c in fields["modqm"].split(",")] if "modqm" in fields else None,
                backend=backend,
            )
        except KeyError as exc:
            raise ConfigurationError(f"tower description lacks {exc.args[0]}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(f"bad integer in tower description: {exc}") from None

    def with_automorphism(self, r: int) -> "FieldTower":
        """Same field, automorphism a -> a^(q^r); r is taken mod m."""
        r = r % self.m or self.m
        return FieldTower(self.q0, self.s, self.m, r, self.modulus_q, self.modulus_qm, backend=self.backend)

    def inverse_automorphism(self) -> "FieldTower":
        return self.with_automorphism(-self.r)

    # scalar operations

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ConfigurationError(f"{a} is not an element of GF({self.order})")
        return a

    def add(self, a, b):
        return self.arith.add(a, b)

    def sub(self, a, b):
        return self.arith.sub(a, b)

    def neg(self, a):
        return self.arith.neg(a)

    def mul(self, a, b):
        return self.arith.mul(a, b)

    def inv(self, a):
        return self.arith.inv(a)

    def div(self, a, b):
        return self.arith.div(a, b)

    def power(self, a, e):
        return self.arith.power(a, e)

    def frobenius(self, a, j=1):
        return self.arith.frob(a, j)

    def norm(self, a, i):
        if i < 0:
            raise ValueError("norm index must be non-negative")
        return self.arith.norm(a, i)

    def primitive_element(self) -> int:
        return self.tables.gamma

    def in_subfield(self, a) -> bool:
        return 0 <= a < self.q

    def coords(self, a) -> list[int]:
        """Coordinates over GF(q) in the polynomial basis."""
        return self.tables.digits[a].tolist()

    def from_coords(self, coords) -> int:
        if len(coords) != self.m:
            raise ValueError(f"need {self.m} coordinates, got {len(coords)}")
        return sum(int(c) * self.q**i for i, c in enumerate(coords))

    def subfield_add(self, a, b):
        return self.tables.subfield.add(a, b)

    def subfield_mul(self, a, b):
        return self.tables.subfield.mul(a, b)

    def element(self, value) -> "FqmElement":
        if isinstance(value, (list, tuple)):
            value = self.from_coords(value)
        return FqmElement(self, self.check(int(value)))

    # multiplication counter

    @property
    def multiplications(self) -> int:
        return self.arith.count

    def reset_count(self) -> None:
        self.arith.count = 0

    # vectorized helpers over numpy int arrays (uncounted)

    def vmul(self, a, b):
        t = self.tables
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = t.exp_np[(t.log_np[a] + t.log_np[b]) % self.tables.units]
        return np.where((a == 0) | (b == 0), 0, out)

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        t = self.tables
        la = t.log_np[a]
        d = (t.log_np[b] - la) % t.units
        z = t.zech_np[d]
        s = np.where(z < 0, 0, t.exp_np[(la + np.maximum(z, 0)) % t.units])
        s = np.where(a == 0, b, s)
        return np.where(b == 0, a, s)


class FqmElement:
    """An element bound to its tower; mixing towers is a configuration error."""

    __slots__ = ("tower", "value")

    def __init__(self, tower: FieldTower, value: int):
        self.tower = tower
        self.value = value

    def _other(self, other):
        if isinstance(other, FqmElement):
            if not self.tower.same_field(other.tower):
                raise ConfigurationError("elements belong to different field towers")
            return other.value
        if isinstance(other, int):
            return self.tower.check(other)
        return NotImplemented

    def _wrap(self, value):
        return FqmElement(self.tower, value)

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.tower.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.tower.sub(self.value, b))

    def __neg__(self):
        return self._wrap(self.tower.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.tower.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.tower.div(self.value, b))

    def inverse(self):
        return self._wrap(self.tower.inv(self.value))

    def frobenius(self, j=1):
        return self._wrap(self.tower.frobenius(self.value, j))

    def norm(self, i):
        return self._wrap(self.tower.norm(self.value, i))

    def __eq__(self, other):
        if isinstance(other, FqmElement):
            return self.tower.same_field(other.tower) and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.field_key, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"FqmElement({self.value})"
