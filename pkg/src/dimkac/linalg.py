"""Small dense exact linear algebra over an abstract field.

Matrices are lists of rows.  Entries only need ``+ - * /`` and comparison with
0, so the same routines serve :class:`~dimkac.scalar.Scalar` and ``nmod``.
"""

from __future__ import annotations

from .scalar import Scalar, divide, _CTX


def _copy(matrix):
    return [list(row) for row in matrix]


def det(matrix, one):
    """Determinant by Gaussian elimination with row swaps."""
    m = _copy(matrix)
    n = len(m)
    result = one
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return one - one
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        piv = m[col][col]
        result = result * piv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = divide(m[r][col], piv)
                row, prow = m[r], m[col]
                for c in range(col + 1, n):
                    row[c] = row[c] - f * prow[c]
    return result


def det_bareiss(matrix) -> Scalar:
    """Fraction-free determinant of a matrix of Scalars.

    Rows are first scaled to integer polynomials by their common denominator;
    elimination then uses only exact polynomial division.
    """
    n = len(matrix)
    if n == 0:
        return Scalar(1)
    scale = _CTX.constant(1)
    rows = []
    for row in matrix:
        lcm = _CTX.constant(1)
        for x in row:
            x = Scalar(x)
            g = lcm.gcd(x.den)
            lcm = lcm * (x.den / g)
        scale = scale * lcm
        rows.append([(Scalar(x).num * (lcm / Scalar(x).den)) for x in row])
    sign = 1
    prev = _CTX.constant(1)
    for k in range(n - 1):
        if rows[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not rows[r][k].is_zero()), None)
            if swap is None:
                return Scalar(0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - ri[k] * rk[j]) / prev
            ri[k] = _CTX.constant(0)
        prev = pk
    return Scalar(sign * rows[n - 1][n - 1], scale)


def row_echelon(matrix):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = _copy(matrix)
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = divide(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix) -> int:
    return len(row_echelon(matrix)[1]) if matrix else 0


def kernel(matrix, one):
    """Basis of the right null space, one vector per free column."""
    ncols = len(matrix[0])
    red, pivots = row_echelon(matrix)
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -red[row_idx][f]
        basis.append(v)
    return basis


def mat_vec(matrix, vec, zero):
    out = []
    for row in matrix:
        acc = zero
        for a, b in zip(row, vec):
            if a != 0 and b != 0:
                acc = acc + a * b
        out.append(acc)
    return out


def inverse(matrix, one):
    n = len(matrix)
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
