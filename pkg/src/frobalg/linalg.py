"""Exact determinants and linear solves.

``bareiss_det`` needs exact division (a field such as Q(zeta)).
``laplace_det`` is division free and works over any commutative ring; it memoizes
minors by column subset, so it is only meant for small matrices (k <= ~16).
"""

from __future__ import annotations


def bareiss_det(matrix, zero, one):
    """Fraction-free Gaussian elimination with row pivoting."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                v = row_i[j] * pivot
                if mik and row_k[j]:
                    v = v - mik * row_k[j]
                row_i[j] = v / prev if v else zero
            row_i[k] = zero
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def laplace_det(matrix, zero, one):
    """Division-free determinant by expansion along rows, memoized on used columns."""
    n = len(matrix)
    memo: dict[int, object] = {}

    def minor(row: int, used: int):
        if row == n:
            return one
        got = memo.get(used)
        if got is not None:
            return got
        total = zero
        sign = 1
        for col in range(n):
            if used >> col & 1:
                continue
            entry = matrix[row][col]
            if entry:
                sub = minor(row + 1, used | (1 << col))
                if sub:
                    term = entry * sub
                    total = total + term if sign == 1 else total - term
            sign = -sign
        memo[used] = total
        return total

    return minor(0, 0)


def solve_field(matrix, rhs, zero, one):
    """Solve matrix * v = rhs over a field by Gauss-Jordan elimination.

    Raises ZeroDivisionError if the matrix is singular.
    """
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = one / aug[col][col]
        aug[col] = [x * inv if x else zero for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y if y else x for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def solve_cramer(matrix, rhs, zero, one, frac):
    """Solve over the fraction field of a commutative ring via Cramer's rule.

    ``frac(num, den)`` builds a fraction; determinants use :func:`laplace_det`.
    Raises ZeroDivisionError if the determinant vanishes.
    """
    n = len(matrix)
    det = laplace_det(matrix, zero, one)
    if not det:
        raise ZeroDivisionError("singular system")
    out = []
    for j in range(n):
        mj = [list(row) for row in matrix]
        for i in range(n):
            mj[i][j] = rhs[i]
        out.append(frac(laplace_det(mj, zero, one), det))
    return out
