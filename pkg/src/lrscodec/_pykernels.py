"""Pure-Python arithmetic kernels for GF(q^m) and its skew polynomial ring.

This module mirrors ``_ckernels.pyx`` call for call, including the
multiplication counter, so both backends report identical counts.
Elements are ints; skew polynomials are lists of ints, lowest degree first,
with no trailing zeros.
"""


class Arith:
    """Log/Zech-table arithmetic with the automorphism a -> a^(q^r)."""

    def __init__(self, exp, log, zech, neg, p, q, m, r):
        self.exp = list(exp)
        self.log = list(log)
        self.zech = list(zech)
        self.negt = list(neg)
        self.p = p
        self.q = q
        self.m = m
        self.r = r
        self.order = q**m
        self.units = self.order - 1
        units = self.units
        self.frobpow = [pow(q, r * j, units) if units > 1 else 1 for j in range(m)]
        prefix = [0]
        for j in range(m):
            prefix.append((prefix[-1] + self.frobpow[j]) % units if units > 1 else 0)
        self.normprefix = prefix
        self.count = 0

    # scalar arithmetic

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += self.units
        z = self.zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a):
        return self.negt[a]

    def sub(self, a, b):
        return self.add(a, self.negt[b])

    def mul(self, a, b):
        self.count += 1
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        self.count += 1
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.order)
        return self.exp[(self.units - self.log[a]) % self.units]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frob(self, a, j):
        if a == 0:
            return 0
        return self.exp[(self.log[a] * self.frobpow[j % self.m]) % self.units]

    def norm(self, a, i):
        if i == 0:
            return 1
        self.count += i - 1
        if a == 0:
            return 0
        e = ((i // self.m) * self.normprefix[self.m] + self.normprefix[i % self.m]) % self.units
        return self.exp[(self.log[a] * e) % self.units]

    def power(self, a, e):
        if a == 0:
            return 0 if e > 0 else 1
        return self.exp[(self.log[a] * e) % self.units]

    def conj(self, a, c):
        if c == 0:
            raise ZeroDivisionError("conjugation by zero")
        return self.mul(self.mul(self.frob(c, 1), self.inv(c)), a)

    # skew polynomials

    def p_add(self, u, v):
        if len(u) < len(v):
            u, v = v, u
        out = list(u)
        for i in range(len(v)):
            out[i] = self.add(out[i], v[i])
        while out and out[-1] == 0:
            out.pop()
        return out

    def p_sub(self, u, v):
        negt = self.negt
        return self.p_add(u, [negt[c] for c in v])

    def p_scale(self, c, f):
        if c == 0:
            return []
        return [self.mul(c, fi) for fi in f]

    def p_mul(self, u, v):
        if not u or not v:
            return []
        out = [0] * (len(u) + len(v) - 1)
        for i in range(len(u)):
            ui = u[i]
            for j in range(len(v)):
                out[i + j] = self.add(out[i + j], self.mul(ui, self.frob(v[j], i)))
        while out and out[-1] == 0:
            out.pop()
        return out

    def p_mul_linear(self, a0, f):
        """(x - a0) * f."""
        if not f:
            return []
        out = [0] * (len(f) + 1)
        for i in range(len(f)):
            out[i + 1] = self.add(out[i + 1], self.frob(f[i], 1))
            out[i] = self.sub(out[i], self.mul(a0, f[i]))
        while out and out[-1] == 0:
            out.pop()
        return out

    def p_eval(self, f, a):
        """Remainder of right division of f by (x - a)."""
        if not f:
            return 0
        acc = f[-1]
        for i in range(len(f) - 2, -1, -1):
            acc = self.add(f[i], self.mul(acc, self.frob(a, i)))
        return acc

    def p_op_eval(self, f, a, beta):
        """sum_i f_i sigma^i(beta) N_i(a)."""
        acc = 0
        v = beta
        last = len(f) - 1
        for i in range(len(f)):
            acc = self.add(acc, self.mul(f[i], v))
            if i < last:
                v = self.mul(self.frob(v, 1), a)
        return acc

    def p_rdivmod(self, a, b):
        """a = quo * b + rem with deg rem < deg b."""
        if not b:
            raise ZeroDivisionError("skew division by the zero polynomial")
        rem = list(a)
        db = len(b) - 1
        if len(rem) <= db:
            return [], rem
        quo = [0] * (len(rem) - db)
        lead_inv = self.inv(b[-1])
        for e in range(len(rem) - 1 - db, -1, -1):
            top = rem[e + db]
            if top == 0:
                continue
            c = self.mul(top, self.frob(lead_inv, e))
            quo[e] = c
            for j in range(db + 1):
                rem[e + j] = self.sub(rem[e + j], self.mul(c, self.frob(b[j], e)))
        del rem[db:]
        while rem and rem[-1] == 0:
            rem.pop()
        while quo and quo[-1] == 0:
            quo.pop()
        return quo, rem

    def p_ldivmod(self, a, b):
        """a = b * quo + rem with deg rem < deg b."""
        if not b:
            raise ZeroDivisionError("skew division by the zero polynomial")
        rem = list(a)
        db = len(b) - 1
        if len(rem) <= db:
            return [], rem
        quo = [0] * (len(rem) - db)
        lead_inv = self.inv(b[-1])
        for e in range(len(rem) - 1 - db, -1, -1):
            top = rem[e + db]
            if top == 0:
                continue
            c = self.frob(self.mul(lead_inv, top), -db)
            quo[e] = c
            for j in range(db + 1):
                rem[e + j] = self.sub(rem[e + j], self.mul(b[j], self.frob(c, j)))
        del rem[db:]
        while rem and rem[-1] == 0:
            rem.pop()
        while quo and quo[-1] == 0:
            quo.pop()
        return quo, rem

    # linear algebra (uncounted: not part of the decoder accounting)

    def _umul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def rank(self, rows):
        mat = [list(r) for r in rows]
        if not mat:
            return 0
        ncols = len(mat[0])
        rank = 0
        for col in range(ncols):
            piv = -1
            for i in range(rank, len(mat)):
                if mat[i][col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            mat[rank], mat[piv] = mat[piv], mat[rank]
            prow = mat[rank]
            pinv = self.exp[(self.units - self.log[prow[col]]) % self.units]
            for i in range(rank + 1, len(mat)):
                row = mat[i]
                if row[col] == 0:
                    continue
                f = self.negt[self._umul(row[col], pinv)]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = self.add(row[j], self._umul(f, prow[j]))
            rank += 1
            if rank == len(mat):
                break
        return rank

    def digits(self, a):
        q = self.q
        out = []
        for _ in range(self.m):
            a, d = divmod(a, q)
            out.append(d)
        return out

    def sum_rank_weight(self, vec, lengths):
        total = 0
        pos = 0
        for n_i in lengths:
            block = vec[pos:pos + n_i]
            pos += n_i
            rows = [self.digits(v) for v in block if v != 0]
            if rows:
                total += self.rank(rows)
        return total

    def vecmat(self, vec, mat):
        if not mat:
            return []
        ncols = len(mat[0])
        out = [0] * ncols
        for i in range(len(vec)):
            vi = vec[i]
            if vi == 0:
                continue
            row = mat[i]
            for j in range(ncols):
                out[j] = self.add(out[j], self.mul(vi, row[j]))
        return out
