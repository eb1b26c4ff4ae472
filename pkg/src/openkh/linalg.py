"""Exact linear algebra over GF(2) and over the integers.

GF(2) vectors and matrix rows are bit-packed python ints (bit j = column j).
Integer routines (Bareiss determinants, Smith normal form) use plain python
ints, so nothing here can overflow.
"""

from __future__ import annotations

from typing import Iterable


# ---------------------------------------------------------------------------
# GF(2), rows as ints


def _reduce(vec: int, pivots: dict[int, int]) -> int:
    while vec:
        piv = pivots.get(vec.bit_length() - 1)
        if piv is None:
            return vec
        vec ^= piv
    return 0


class Gf2Eliminator:
    """Streaming Gaussian elimination over GF(2).

    Rows are inserted one at a time; the eliminator keeps one pivot row per
    leading bit.  Supports rank queries and span-membership tests, which is
    all the homology computations need.
    """

    __slots__ = ("pivots",)

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self.pivots: dict[int, int] = {}
        for row in rows:
            self.insert(row)

    def insert(self, row: int) -> bool:
        """Insert a row; return True if it enlarged the span."""
        row = _reduce(row, self.pivots)
        if row:
            self.pivots[row.bit_length() - 1] = row
            return True
        return False

    def contains(self, vec: int) -> bool:
        return _reduce(vec, self.pivots) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def f2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of bit-packed rows."""
    return Gf2Eliminator(rows).rank


def f2_in_span(vec: int, rows: Iterable[int]) -> bool:
    return Gf2Eliminator(rows).contains(vec)


def f2_cokernel(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Cokernel of a GF(2) relation matrix, with a tracked basis.

    The quotient GF(2)^ncols / rowspan is presented by the non-pivot columns
    of the reduced row echelon form (leftmost-pivot convention, so the basis
    is deterministic).  Returns ``(basis_cols, classes)`` where ``basis_cols``
    lists the columns whose unit vectors form the basis and ``classes[j]`` is
    the class of unit vector e_j, bit-packed over positions in basis_cols.
    """
    echelon: list[int] = []
    for row in rows:
        for r in echelon:
            low = r & -r
            if row & low:
                row ^= r
        if row:
            echelon.append(row)
    # full back-substitution to RREF
    echelon.sort(key=lambda r: r & -r)
    for idx, r in enumerate(echelon):
        low = r & -r
        for jdx in range(len(echelon)):
            if jdx != idx and echelon[jdx] & low:
                echelon[jdx] ^= r
    pivot_cols = [(r & -r).bit_length() - 1 for r in echelon]
    pivot_set = set(pivot_cols)
    basis_cols = [j for j in range(ncols) if j not in pivot_set]
    basis_pos = {col: p for p, col in enumerate(basis_cols)}
    classes = [0] * ncols
    for col in basis_cols:
        classes[col] = 1 << basis_pos[col]
    for r, col in zip(echelon, pivot_cols):
        cls = 0
        rest = r ^ (1 << col)
        while rest:
            low = rest & -rest
            cls ^= 1 << basis_pos[low.bit_length() - 1]
            rest ^= low
        classes[col] = cls
    return basis_cols, classes


# ---------------------------------------------------------------------------
# integer matrices (lists of lists of python ints)


def bareiss_det(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def int_rank(mat: list[list[int]]) -> int:
    """Rank over Q of an integer matrix (fraction-free elimination)."""
    if not mat:
        return 0
    a = [row[:] for row in mat]
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for i in range(row + 1, nrows):
            if a[i][col] != 0:
                p, q = a[row][col], a[i][col]
                a[i] = [p * a[i][j] - q * a[row][j] for j in range(ncols)]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form ``U @ mat @ V = diag(d1, d2, ...)``.

    U and V are unimodular; the diagonal is non-negative and each entry
    divides the next.  Pivot selection takes the smallest nonzero entry of
    the remaining block, which keeps intermediate entries small and makes
    the output deterministic.
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    a = [row[:] for row in mat]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if a[t][t] < 0:
            negate_row(t)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        if a[t][t] < 0:
                            negate_row(t)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        t += 1

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di and dj % di:
                add_col(i, i + 1, 1)
                # re-clear the 2x2 block with gcd steps
                while a[i + 1][i]:
                    q = a[i][i] // a[i + 1][i] if a[i + 1][i] else 0
                    if abs(a[i + 1][i]) <= abs(a[i][i]):
                        q = a[i][i] // a[i + 1][i]
                        add_row(i, i + 1, -q)
                        swap_rows(i, i + 1)
                    else:
                        q = a[i + 1][i] // a[i][i]
                        add_row(i + 1, i, -q)
                if a[i][i] < 0:
                    negate_row(i)
                for j in (i, i + 1):
                    if a[i][j] and j != i:
                        q = a[i][j] // a[i][i]
                        add_col(j, i, -q)
                if a[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    diag = [a[i][i] for i in range(min(nrows, ncols))]
    return diag, u, v
