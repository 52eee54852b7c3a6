"""Dense exact linear algebra over the rationals.

Matrices are lists of rows holding Fractions.  Every dimension in this
package stays in the low hundreds, so plain Gaussian elimination is enough.
Pivoting is deterministic everywhere: leftmost nonzero column, rows scanned
top down.  That determinism is load-bearing; cohomology representatives and
golden reports depend on it.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(rows):
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns) with zero rows dropped.  The input
    is not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        hit = None
        for i in range(r, len(m)):
            if m[i][c]:
                hit = i
                break
        if hit is None:
            continue
        m[r], m[hit] = m[hit], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        piv = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def reduce_against(vec, red_rows, pivots):
    """Eliminate the pivot coordinates of ``vec`` against reduced rows."""
    v = [Fraction(x) for x in vec]
    for row, p in zip(red_rows, pivots):
        if v[p]:
            f = v[p]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def rank(rows):
    return len(rref(rows)[0])


def kernel_of_columns(cols, nrows):
    """Kernel basis of the map whose matrix columns are ``cols``.

    Vectors have length len(cols), one per free column, ordered by free
    column index ascending.
    """
    ncols = len(cols)
    rows = [[cols[j][i] for j in range(ncols)] for i in range(nrows)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


def solve_columns(cols, nrows, target):
    """Solve sum_j x_j * cols[j] = target with free variables set to zero.

    Returns the coefficient list, or None when the system is inconsistent.
    """
    ncols = len(cols)
    rows = [[cols[j][i] for j in range(ncols)] + [Fraction(target[i])]
            for i in range(nrows)]
    red, pivots = rref(rows)
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[ncols]
    return x


def symmetric_inertia(mat):
    """Sylvester inertia (positive, negative, zero) of a symmetric matrix.

    Exact congruence diagonalization; when the active block has a zero
    diagonal, a row+column addition manufactures a nonzero pivot.
    """
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if m[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                        if m[i][j]), None)
            if off is None:
                break
            i, j = off
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for r in range(n):
                m[r][k], m[r][piv] = m[r][piv], m[r][k]
        d = m[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / d
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
        k += 1
    return pos, neg, n - pos - neg
