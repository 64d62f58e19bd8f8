# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled arithmetic kernels; same API and counting as ``_pykernels``."""

from libc.stdlib cimport malloc, free

# Building with LRSCODEC_NO_COUNT defined drops the multiplication counter;
# the C compiler folds the constant test away.
cdef extern from *:
    """
    #ifdef LRSCODEC_NO_COUNT
    #define LRS_COUNTING 0
    #else
    #define LRS_COUNTING 1
    #endif
    """
    const int LRS_COUNTING

COUNTING = bool(LRS_COUNTING)


cdef int* _alloc_copy(object values) except NULL:
    cdef Py_ssize_t n = len(values)
    cdef int* buf = <int*>malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = values[i]
    return buf


cdef list _to_list(int* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef class Arith:
    cdef int* _exp
    cdef int* _log
    cdef int* _zech
    cdef int* _neg
    cdef long long* _frobpow
    cdef long long* _normprefix
    cdef public int p, q, m, r, order, units
    cdef public long long count

    def __cinit__(self):
        self._exp = NULL
        self._log = NULL
        self._zech = NULL
        self._neg = NULL
        self._frobpow = NULL
        self._normprefix = NULL

    def __init__(self, exp, log, zech, neg, p, q, m, r):
        self.p = p
        self.q = q
        self.m = m
        self.r = r
        self.order = q ** m
        self.units = self.order - 1
        self._exp = _alloc_copy(exp)
        self._log = _alloc_copy(log)
        self._zech = _alloc_copy(zech)
        self._neg = _alloc_copy(neg)
        self._frobpow = <long long*>malloc(m * sizeof(long long))
        self._normprefix = <long long*>malloc((m + 1) * sizeof(long long))
        cdef int j
        self._normprefix[0] = 0
        for j in range(m):
            self._frobpow[j] = pow(q, r * j, self.units) if self.units > 1 else 1
            if self.units > 1:
                self._normprefix[j + 1] = (self._normprefix[j] + self._frobpow[j]) % self.units
            else:
                self._normprefix[j + 1] = 0
        self.count = 0

    def __dealloc__(self):
        free(self._exp)
        free(self._log)
        free(self._zech)
        free(self._neg)
        free(self._frobpow)
        free(self._normprefix)

    @property
    def frobpow(self):
        return [self._frobpow[j] for j in range(self.m)]

    # inline primitives

    cdef inline int _add(self, int a, int b):
        cdef int la, d, z
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        d = self._log[b] - la
        if d < 0:
            d += self.units
        z = self._zech[d]
        if z < 0:
            return 0
        return self._exp[la + z]

    cdef inline int _sub(self, int a, int b):
        return self._add(a, self._neg[b])

    cdef inline int _umul(self, int a, int b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    cdef inline int _mul(self, int a, int b):
        if LRS_COUNTING:
            self.count += 1
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    cdef inline int _inv(self, int a) except -1:
        if LRS_COUNTING:
            self.count += 1
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.order)
        return self._exp[(self.units - self._log[a]) % self.units]

    cdef inline int _frob(self, int a, long long j):
        cdef long long jj
        if a == 0:
            return 0
        jj = j % self.m
        if jj < 0:
            jj += self.m
        return self._exp[(<long long>self._log[a] * self._frobpow[jj]) % self.units]

    # scalar API

    def add(self, int a, int b):
        return self._add(a, b)

    def neg(self, int a):
        return self._neg[a]

    def sub(self, int a, int b):
        return self._sub(a, b)

    def mul(self, int a, int b):
        return self._mul(a, b)

    def inv(self, int a):
        return self._inv(a)

    def div(self, int a, int b):
        cdef int bi = self._inv(b)
        return self._mul(a, bi)

    def frob(self, int a, long long j):
        return self._frob(a, j)

    def norm(self, int a, long long i):
        cdef long long e
        if i == 0:
            return 1
        if LRS_COUNTING:
            self.count += i - 1
        if a == 0:
            return 0
        e = ((i // self.m) * self._normprefix[self.m] + self._normprefix[i % self.m]) % self.units
        return self._exp[(<long long>self._log[a] * e) % self.units]

    def power(self, int a, long long e):
        if a == 0:
            return 0 if e > 0 else 1
        e = (<long long>self._log[a] * (e % self.units)) % self.units
        if e < 0:
            e += self.units
        return self._exp[e]

    def conj(self, int a, int c):
        if c == 0:
            raise ZeroDivisionError("conjugation by zero")
        cdef int s = self._frob(c, 1)
        cdef int ci = self._inv(c)
        return self._mul(self._mul(s, ci), a)

    # skew polynomials

    def p_add(self, u, v):
        if len(u) < len(v):
            u, v = v, u
        cdef Py_ssize_t n = len(u), nv = len(v), i
        cdef int* buf = _alloc_copy(u)
        try:
            for i in range(nv):
                buf[i] = self._add(buf[i], v[i])
            return _to_list(buf, n)
        finally:
            free(buf)

    def p_sub(self, u, v):
        return self.p_add(u, [self._neg[<int>c] for c in v])

    def p_scale(self, int c, f):
        if c == 0:
            return []
        return [self._mul(c, fi) for fi in f]

    def p_mul(self, u, v):
        cdef Py_ssize_t nu = len(u), nv = len(v), i, j
        if nu == 0 or nv == 0:
            return []
        cdef int* bu = _alloc_copy(u)
        cdef int* bv = _alloc_copy(v)
        cdef int* out = <int*>malloc((nu + nv - 1) * sizeof(int))
        cdef int ui
        try:
            for i in range(nu + nv - 1):
                out[i] = 0
            for i in range(nu):
                ui = bu[i]
                for j in range(nv):
                    out[i + j] = self._add(out[i + j], self._mul(ui, self._frob(bv[j], i)))
            return _to_list(out, nu + nv - 1)
        finally:
            free(bu)
            free(bv)
            free(out)

    def p_mul_linear(self, int a0, f):
        cdef Py_ssize_t n = len(f), i
        if n == 0:
            return []
        cdef int* bf = _alloc_copy(f)
        cdef int* out = <int*>malloc((n + 1) * sizeof(int))
        try:
            for i in range(n + 1):
                out[i] = 0
            for i in range(n):
                out[i + 1] = self._add(out[i + 1], self._frob(bf[i], 1))
                out[i] = self._sub(out[i], self._mul(a0, bf[i]))
            return _to_list(out, n + 1)
        finally:
            free(bf)
            free(out)

    def p_eval(self, f, int a):
        cdef Py_ssize_t n = len(f), i
        if n == 0:
            return 0
        cdef int acc = f[n - 1]
        for i in range(n - 2, -1, -1):
            acc = self._add(<int>f[i], self._mul(acc, self._frob(a, i)))
        return acc

    def p_op_eval(self, f, int a, int beta):
        cdef Py_ssize_t n = len(f), i
        cdef int acc = 0, v = beta
        for i in range(n):
            acc = self._add(acc, self._mul(<int>f[i], v))
            if i < n - 1:
                v = self._mul(self._frob(v, 1), a)
        return acc

    def p_rdivmod(self, a, b):
        cdef Py_ssize_t nb = len(b), na = len(a), db, e, j
        if nb == 0:
            raise ZeroDivisionError("skew division by the zero polynomial")
        db = nb - 1
        if na <= db:
            return [], list(a)
        cdef int* rem = _alloc_copy(a)
        cdef int* bb = _alloc_copy(b)
        cdef int* quo = <int*>malloc((na - db) * sizeof(int))
        cdef int lead_inv, top, c
        try:
            for e in range(na - db):
                quo[e] = 0
            lead_inv = self._inv(bb[db])
            for e in range(na - 1 - db, -1, -1):
                top = rem[e + db]
                if top == 0:
                    continue
                c = self._mul(top, self._frob(lead_inv, e))
                quo[e] = c
                for j in range(db + 1):
                    rem[e + j] = self._sub(rem[e + j], self._mul(c, self._frob(bb[j], e)))
            return _to_list(quo, na - db), _to_list(rem, db)
        finally:
            free(rem)
            free(bb)
            free(quo)

    def p_ldivmod(self, a, b):
        cdef Py_ssize_t nb = len(b), na = len(a), db, e, j
        if nb == 0:
            raise ZeroDivisionError("skew division by the zero polynomial")
        db = nb - 1
        if na <= db:
            return [], list(a)
        cdef int* rem = _alloc_copy(a)
        cdef int* bb = _alloc_copy(b)
        cdef int* quo = <int*>malloc((na - db) * sizeof(int))
        cdef int lead_inv, top, c
        try:
            for e in range(na - db):
                quo[e] = 0
            lead_inv = self._inv(bb[db])
            for e in range(na - 1 - db, -1, -1):
                top = rem[e + db]
                if top == 0:
                    continue
                c = self._frob(self._mul(lead_inv, top), -db)
                quo[e] = c
                for j in range(db + 1):
                    rem[e + j] = self._sub(rem[e + j], self._mul(bb[j], self._frob(c, j)))
            return _to_list(quo, na - db), _to_list(rem, db)
        finally:
            free(rem)
            free(bb)
            free(quo)

    # linear algebra (uncounted)

    def rank(self, rows):
        cdef Py_ssize_t nrows = len(rows), ncols, i, j, col, piv, rk = 0
        if nrows == 0:
            return 0
        ncols = len(rows[0])
        if ncols == 0:
            return 0
        cdef int* mat = <int*>malloc(nrows * ncols * sizeof(int))
        cdef int pinv, f, tmp
        try:
            for i in range(nrows):
                row = rows[i]
                for j in range(ncols):
                    mat[i * ncols + j] = row[j]
            for col in range(ncols):
                piv = -1
                for i in range(rk, nrows):
                    if mat[i * ncols + col] != 0:
                        piv = i
                        break
                if piv < 0:
                    continue
                if piv != rk:
                    for j in range(ncols):
                        tmp = mat[rk * ncols + j]
                        mat[rk * ncols + j] = mat[piv * ncols + j]
                        mat[piv * ncols + j] = tmp
                pinv = self._exp[(self.units - self._log[mat[rk * ncols + col]]) % self.units]
                for i in range(rk + 1, nrows):
                    if mat[i * ncols + col] == 0:
                        continue
                    f = self._neg[self._umul(mat[i * ncols + col], pinv)]
                    for j in range(col, ncols):
                        if mat[rk * ncols + j] != 0:
                            mat[i * ncols + j] = self._add(mat[i * ncols + j], self._umul(f, mat[rk * ncols + j]))
                rk += 1
                if rk == nrows:
                    break
            return rk
        finally:
            free(mat)

    def digits(self, long long a):
        out = []
        cdef int j
        for j in range(self.m):
            out.append(a % self.q)
            a //= self.q
        return out

    def sum_rank_weight(self, vec, lengths):
        cdef long long total = 0
        cdef Py_ssize_t pos = 0
        for n_i in lengths:
            rows = [self.digits(v) for v in vec[pos:pos + n_i] if v != 0]
            pos += n_i
            if rows:
                total += self.rank(rows)
        return total

    def vecmat(self, vec, mat):
        if not mat:
            return []
        cdef Py_ssize_t ncols = len(mat[0]), i, j
        cdef int vi
        out = [0] * ncols
        for i in range(len(vec)):
            vi = vec[i]
            if vi == 0:
                continue
            row = mat[i]
            for j in range(ncols):
                out[j] = self._add(<int>out[j], self._mul(vi, <int>row[j]))
        return out
