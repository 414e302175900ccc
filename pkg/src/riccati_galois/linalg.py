"""Exact linear algebra over Scalar coefficients.

Plain Gaussian elimination: every coefficient field we work in supports
exact division, so no pivot scaling tricks are needed.  Matrices are
lists of lists of Scalars.
"""

from .scalars import Scalar


def _coerce_matrix(m):
    return [[Scalar.coerce(x) for x in row] for row in m]


def row_echelon(m, rhs=None):
    """Reduce m (in place after copying) to row echelon form.

    Returns (rows, rhs_rows, pivot_cols).  rhs may be a vector; it gets
    the same row operations applied.
    """
    m = _coerce_matrix(m)
    t = [Scalar.coerce(x) for x in rhs] if rhs is not None else None
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivot_cols = []
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if not m[i_row][piv_c].is_zero():
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr.is_zero():
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] = m[r][c] - m[piv_r][c] * frp
            if t is not None:
                t[r] = t[r] - t[piv_r] * frp
        pivot_cols.append(piv_c)
        piv_r += 1
    return m, t, pivot_cols


def solve(m, rhs):
    """One solution of m x = rhs, or None if inconsistent.

    Free variables are set to zero, which makes the answer deterministic.
    """
    m, t, pivot_cols = row_echelon(m, rhs)
    n_cols = len(m[0]) if m else 0
    rank = len(pivot_cols)
    for r in range(rank, len(m)):
        if not t[r].is_zero():
            return None
    sol = [Scalar.coerce(0)] * n_cols
    for r in range(rank - 1, -1, -1):
        piv_c = pivot_cols[r]
        s = -t[r]
        for c in range(piv_c + 1, n_cols):
            s = s + m[r][c] * sol[c]
        sol[piv_c] = -s / m[r][piv_c]
    return sol


def nullspace(m):
    """Basis of the kernel of m, one vector per free column.

    Each basis vector has a single free variable set to 1, in ascending
    column order, so the basis is canonical.
    """
    m, _, pivot_cols = row_echelon(m)
    n_cols = len(m[0]) if m else 0
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        vec = [Scalar.coerce(0)] * n_cols
        vec[fc] = Scalar.coerce(1)
        for r in range(len(pivot_cols) - 1, -1, -1):
            piv_c = pivot_cols[r]
            s = Scalar.coerce(0)
            for c in range(piv_c + 1, n_cols):
                s = s + m[r][c] * vec[c]
            vec[piv_c] = -s / m[r][piv_c]
        basis.append(vec)
    return basis


def rank(m):
    _, _, pivot_cols = row_echelon(m)
    return len(pivot_cols)


def det(m):
    """Determinant by elimination with row-swap sign tracking."""
    m = _coerce_matrix(m)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    acc = Scalar.coerce(1)
    for col in range(n):
        for i_row in range(col, n):
            if not m[i_row][col].is_zero():
                break
        else:
            return Scalar.coerce(0)
        if i_row != col:
            m[col], m[i_row] = m[i_row], m[col]
            sign = -sign
        fp = m[col][col]
        acc = acc * fp
        for r in range(col + 1, n):
            fr = m[r][col]
            if fr.is_zero():
                continue
            frp = fr / fp
            for c in range(col, n):
                m[r][c] = m[r][c] - m[col][c] * frp
    return acc if sign == 1 else -acc
