"""Dense linear algebra over GF(q^m) or its subfield GF(q).

Matrices are lists of rows of ints. GF(q) elements are the ints below q,
which the tower's arithmetic already handles, so one set of routines serves
both fields. Pivoting takes the first nonzero entry, so results are
deterministic.
"""

from __future__ import annotations


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(tower, a, b):
    ar = tower.arith
    return [ar.vecmat(row, b) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def rank(tower, rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return tower.arith.rank(rows)


def rref(tower, rows):
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    ar = tower.arith
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ar.inv(mat[r][col])
        mat[r] = [ar.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [ar.sub(v, ar.mul(f, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(tower, rows, ncols=None):
    """Basis of {x : rows * x = 0} (right kernel)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(tower, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = tower.neg(row[f])
        basis.append(x)
    return basis


def row_reduce_with_transform(tower, rows):
    """Return (U, R, rank) with U invertible and U * rows = R, whose first
    ``rank`` rows are independent and the rest zero."""
    ar = tower.arith
    nrows = len(rows)
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    u = identity(nrows)
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        u[r], u[piv] = u[piv], u[r]
        inv = ar.inv(mat[r][col])
        for i in range(r + 1, nrows):
            if mat[i][col] != 0:
                f = ar.mul(mat[i][col], inv)
                mat[i] = [ar.sub(v, ar.mul(f, w)) for v, w in zip(mat[i], mat[r])]
                u[i] = [ar.sub(v, ar.mul(f, w)) for v, w in zip(u[i], u[r])]
        r += 1
        if r == nrows:
            break
    return u, mat, r


def inverse(tower, rows):
    n = len(rows)
    aug = [list(row) + e for row, e in zip(rows, identity(n))]
    red, pivots = rref(tower, aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve_left(tower, vec, rows):
    """Return x with x * rows = vec, or None when vec is not in the row space."""
    k = len(rows)
    # Columns of the system: (rows^T | vec^T) x^T
    system = [[rows[i][j] for i in range(k)] + [tower.neg(vec[j])] for j in range(len(vec))]
    for sol in nullspace(tower, system, k + 1):
        if sol[k] != 0:
            scale = tower.inv(sol[k])
            return [tower.mul(scale, v) for v in sol[:k]]
    return None
