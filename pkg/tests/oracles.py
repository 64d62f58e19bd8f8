"""Independent reference implementations used as test oracles.

Nothing here touches the library's exp/log tables or solvers. Field elements
share only the integer encoding: base-q digits in the polynomial basis of the
tower modulus, each digit a base-p integer in the polynomial basis of the
subfield modulus.
"""

from __future__ import annotations

import itertools


class OracleField:
    """GF(q^m) by schoolbook polynomial arithmetic, sigma(a) = a^(q^r)."""

    def __init__(self, p, modq, m, modqm, r=1):
        self.p = p
        self.e = len(modq) - 1
        self.q = p**self.e
        self.m = m
        self.r = r
        self.order = self.q**m
        self.modq = list(modq)
        self.modqm = list(modqm)
        self._submul = {}
        self._frob = {}
        self._norm = {}

    @classmethod
    def of(cls, tower):
        return cls(tower.p, tower.modulus_q, tower.m, tower.modulus_qm, tower.r)

    # GF(q) as polynomials over GF(p)

    def _sdigits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def _sint(self, d):
        return sum(c * self.p**i for i, c in enumerate(d))

    def sadd(self, a, b):
        return self._sint([(x + y) % self.p for x, y in zip(self._sdigits(a), self._sdigits(b))])

    def sneg(self, a):
        return self._sint([(-x) % self.p for x in self._sdigits(a)])

    def smul(self, a, b):
        key = (a, b)
        if key in self._submul:
            return self._submul[key]
        x, y = self._sdigits(a), self._sdigits(b)
        prod = [0] * (2 * self.e)
        for i, u in enumerate(x):
            for j, v in enumerate(y):
                prod[i + j] = (prod[i + j] + u * v) % self.p
        mod = self.modq
        for deg in range(len(prod) - 1, self.e - 1, -1):
            c = prod[deg]
            if c:
                for j in range(self.e + 1):
                    prod[deg - self.e + j] = (prod[deg - self.e + j] - c * mod[j]) % self.p
        out = self._sint(prod[: self.e])
        self._submul[key] = out
        return out

    def sinv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return next(b for b in range(1, self.q) if self.smul(a, b) == 1)

    # GF(q^m) as polynomials over GF(q)

    def digits(self, a):
        return [(a // self.q**i) % self.q for i in range(self.m)]

    def from_digits(self, d):
        return sum(c * self.q**i for i, c in enumerate(d))

    def add(self, a, b):
        return self.from_digits([self.sadd(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        return self.from_digits([self.sneg(x) for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m)
        for i, u in enumerate(x):
            if u == 0:
                continue
            for j, v in enumerate(y):
                prod[i + j] = self.sadd(prod[i + j], self.smul(u, v))
        mod = self.modqm
        for deg in range(len(prod) - 1, self.m - 1, -1):
            c = prod[deg]
            if c:
                for j in range(self.m + 1):
                    prod[deg - self.m + j] = self.sadd(prod[deg - self.m + j], self.sneg(self.smul(c, mod[j])))
        return self.from_digits(prod[: self.m])

    def power(self, a, e):
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return self.power(a, self.order - 2)

    def frob(self, a, j=1):
        key = (a, (self.r * j) % self.m)
        if key not in self._frob:
            self._frob[key] = self.power(a, self.q ** key[1])
        return self._frob[key]

    def norm(self, a, i):
        key = (a, i)
        if key not in self._norm:
            out = 1
            for j in range(i):
                out = self.mul(out, self.frob(a, j))
            self._norm[key] = out
        return self._norm[key]

    def conj(self, a, c):
        return self.mul(self.mul(self.frob(c), self.inv(c)), a)

    # GF(q)-linear algebra on coordinates

    def subfield_rank(self, rows):
        rows = [list(r) for r in rows]
        rank, col = 0, 0
        ncols = len(rows[0]) if rows else 0
        while rank < len(rows) and col < ncols:
            piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if piv is None:
                col += 1
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = self.sinv(rows[rank][col])
            rows[rank] = [self.smul(inv, v) for v in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [self.sadd(v, self.sneg(self.smul(f, w))) for v, w in zip(rows[i], rows[rank])]
            rank += 1
            col += 1
        return rank

    def rank_weight(self, vec):
        if not vec:
            return 0
        return self.subfield_rank([self.digits(v) for v in vec])

    def sum_rank_weight(self, vec, lengths):
        out, pos = 0, 0
        for n_i in lengths:
            out += self.rank_weight(vec[pos:pos + n_i])
            pos += n_i
        return out

    # GF(q^m)-linear algebra

    def nullspace(self, rows, ncols):
        """Basis of {x : rows . x = 0}."""
        rows = [list(r) for r in rows]
        pivots, rank = [], 0
        for col in range(ncols):
            piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = self.inv(rows[rank][col])
            rows[rank] = [self.mul(inv, v) for v in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [self.sub(v, self.mul(f, w)) for v, w in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
        basis = []
        for free in (c for c in range(ncols) if c not in pivots):
            x = [0] * ncols
            x[free] = 1
            for i, pc in enumerate(pivots):
                x[pc] = self.neg(rows[i][free])
            basis.append(x)
        return basis

    def matrix_rank(self, rows):
        ncols = len(rows[0]) if rows else 0
        return ncols - len(self.nullspace(rows, ncols)) if rows else 0

    # skew polynomials as coefficient lists, lowest degree first

    def skew_mul(self, f, g):
        """Term-by-term expansion with x^i g_j = sigma^i(g_j) x^i."""
        if not f or not g:
            return []
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            for j, gj in enumerate(g):
                out[i + j] = self.add(out[i + j], self.mul(fi, self.frob(gj, i)))
        while out and out[-1] == 0:
            out.pop()
        return out

    def remainder_eval(self, f, a):
        out = 0
        for i, c in enumerate(f):
            out = self.add(out, self.mul(c, self.norm(a, i)))
        return out

    def op_eval(self, f, a, beta):
        out = 0
        for i, c in enumerate(f):
            out = self.add(out, self.mul(c, self.mul(self.frob(beta, i), self.norm(a, i))))
        return out

    def left_divide(self, q_poly, l_poly):
        """(F, R) with Q = L F + R and deg R < deg L."""
        q_poly = list(q_poly)
        while q_poly and q_poly[-1] == 0:
            q_poly.pop()
        t = len(l_poly) - 1
        lead_inv = self.inv(l_poly[-1])
        quo = [0] * max(0, len(q_poly) - t)
        while len(q_poly) - 1 >= t:
            d = len(q_poly) - 1 - t
            c = self.frob(self.mul(lead_inv, q_poly[-1]), -t)
            quo[d] = c
            term = self.skew_mul(l_poly, [0] * d + [c])
            q_poly = [self.sub(a, b) for a, b in itertools.zip_longest(q_poly, term, fillvalue=0)]
            while q_poly and q_poly[-1] == 0:
                q_poly.pop()
        return quo, q_poly

    # linearized Reed-Solomon encoding from scratch

    def lrs_codeword(self, msg, bases, reps):
        out = []
        for blk, a in zip(bases, reps):
            out.extend(self.op_eval(list(msg), a, beta) for beta in blk)
        return out


def naive_key_equation(fld: OracleField, points, values, k, t):
    """Solve L(b^r) r = Q(b) with deg L <= t, deg Q <= t+k-1 by Gaussian
    elimination and return F with Q = L F, or None."""
    rows = []
    for b, r in zip(points, values):
        row = [fld.mul(fld.frob(r, j), fld.norm(b, j)) for j in range(t + 1)]
        row += [fld.neg(fld.norm(b, j)) for j in range(t + k)]
        rows.append(row)
    basis = fld.nullspace(rows, 2 * t + k + 1)
    for vec in basis:
        l_poly = vec[: t + 1]
        q_poly = vec[t + 1:]
        while l_poly and l_poly[-1] == 0:
            l_poly.pop()
        if not l_poly:
            continue
        quo, rem = fld.left_divide(q_poly, l_poly)
        if rem or len(quo) > k:
            return None
        return tuple(quo) + (0,) * (k - len(quo))
    return None


def nearest_codeword_messages(fld: OracleField, codebook, y, lengths):
    """All messages whose codeword is at minimum sum-rank distance from y."""
    best, winners = None, []
    for msg, c in codebook:
        d = fld.sum_rank_weight([fld.sub(a, b) for a, b in zip(y, c)], lengths)
        if best is None or d < best:
            best, winners = d, [msg]
        elif d == best:
            winners.append(msg)
    return best, winners


def oracle_codebook(fld: OracleField, k, bases, reps):
    return [
        (msg, fld.lrs_codeword(msg, bases, reps))
        for msg in itertools.product(range(fld.order), repeat=k)
    ]


# Classical Reed-Solomon over a prime field GF(p), plain modular arithmetic.


def _solve_mod_p(rows, p):
    """One nonzero null vector of ``rows`` over Z_p, or None."""
    rows = [[v % p for v in r] for r in rows]
    ncols = len(rows[0])
    pivots, rank = [], 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    x = [0] * ncols
    x[free[0]] = 1
    for i, pc in enumerate(pivots):
        x[pc] = (-rows[i][free[0]]) % p
    return x


def rs_welch_berlekamp(p, alphas, y, k):
    """Classical Welch-Berlekamp: Q(a) = y E(a) with deg E <= t, deg Q < t+k,
    then F = Q / E by polynomial long division. Returns F or None."""
    n = len(alphas)
    t = (n - k) // 2
    rows = []
    for a, v in zip(alphas, y):
        rows.append([v * pow(a, j, p) for j in range(t + 1)] + [-pow(a, j, p) for j in range(t + k)])
    vec = _solve_mod_p(rows, p)
    if vec is None:
        return None
    e_poly = vec[: t + 1]
    q_poly = vec[t + 1:]
    while e_poly and e_poly[-1] == 0:
        e_poly.pop()
    if not e_poly:
        return None
    # long division q_poly / e_poly
    rem = q_poly[:]
    quo = [0] * max(1, len(rem) - len(e_poly) + 1)
    inv = pow(e_poly[-1], p - 2, p)
    for d in range(len(rem) - len(e_poly), -1, -1):
        c = rem[d + len(e_poly) - 1] * inv % p
        quo[d] = c
        for j, ej in enumerate(e_poly):
            rem[d + j] = (rem[d + j] - c * ej) % p
    if any(rem):
        return None
    quo = quo[:k] if all(v == 0 for v in quo[k:]) else None
    if quo is None:
        return None
    return tuple(quo) + (0,) * (k - len(quo))


def rs_primitive_root(p):
    """Smallest generator of GF(p)^*."""
    order = p - 1
    factors = [f for f in range(2, order + 1) if order % f == 0 and all(f % g for g in range(2, f))]
    return next(g for g in range(2, p) if all(pow(g, order // f, p) != 1 for f in factors)) if p > 2 else 1
