"""Exact integer nullspaces via unimodular column reduction.

Used for the kernel bases of the bracket and projection maps.  Column
operations with determinant one track a transformation matrix U so that the
zero columns of the reduced matrix correspond to columns of U spanning the
full integral kernel lattice (kernels of integer matrices are saturated, so
no separate saturation pass is needed).
"""

from __future__ import annotations

from math import gcd


def integer_kernel_basis(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of {v in Z^ncols : A v = 0} for A given by rows.

    Deterministic: pivots are chosen left to right, rows in the given order.
    """
    A = [list(r) for r in rows]
    for r in A:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    U = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    col = 0
    for r in range(len(A)):
        if col == ncols:
            break
        pivot = next((j for j in range(col, ncols) if A[r][j]), None)
        if pivot is None:
            continue
        if pivot != col:
            _swap_cols(A, U, pivot, col)
        for j in range(col + 1, ncols):
            if not A[r][j]:
                continue
            a, b = A[r][col], A[r][j]
            g = gcd(a, b)
            x, y = _bezout(a, b)
            # unimodular 2x2: [[x, -b//g], [y, a//g]] has determinant 1
            _combine_cols(A, U, col, j, x, y, -(b // g), a // g)
        col += 1
    return [tuple(U[i][j] for i in range(ncols)) for j in range(col, ncols)]


def _bezout(a: int, b: int) -> tuple[int, int]:
    # x*a + y*b == gcd(a, b)
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_x, old_y = -old_x, -old_y
    return old_x, old_y


def _swap_cols(A, U, j1, j2):
    for M in (A, U):
        for row in M:
            row[j1], row[j2] = row[j2], row[j1]


def _combine_cols(A, U, jc, jo, x, y, p, q):
    # column jc <- x*col_jc + y*col_jo ; column jo <- p*col_jc + q*col_jo
    for M in (A, U):
        for row in M:
            c, o = row[jc], row[jo]
            row[jc] = x * c + y * o
            row[jo] = p * c + q * o
