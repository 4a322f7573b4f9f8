"""Exact linear algebra over the coefficient fields.

Matrices are sparse: a list of rows, each row a dict ``column -> value``.
Pivots are chosen deterministically: rows are processed in order and the
pivot of a row is its first nonzero column.
"""
from __future__ import annotations

__all__ = ["row_reduce", "nullspace", "rank", "determinant", "dense_to_rows"]


def dense_to_rows(matrix) -> list:
    return [{j: x for j, x in enumerate(row) if x} for row in matrix]


def row_reduce(rows, columns):
    """Reduced echelon form of the sparse ``rows`` with column order ``columns``.

    Returns ``{pivot column: normalized row}`` with every pivot column absent
    from all other stored rows.
    """
    order = {c: k for k, c in enumerate(columns)}
    pivots: dict = {}
    for row in rows:
        r = {c: x for c, x in row.items() if x}
        # eliminate existing pivots
        for p in [c for c in r if c in pivots]:
            if p not in r:
                continue
            f = r[p]
            for c, x in pivots[p].items():
                val = r.get(c)
                val = -f * x if val is None else val - f * x
                if val:
                    r[c] = val
                else:
                    r.pop(c, None)
        # entries of other pivots may have been reintroduced? no: stored rows are reduced
        if not r:
            continue
        p = min(r, key=order.__getitem__)
        inv = 1 / r[p]
        r = {c: x * inv for c, x in r.items()}
        # back-substitute into existing pivot rows
        for q, qrow in pivots.items():
            f = qrow.get(p)
            if f:
                for c, x in r.items():
                    val = qrow.get(c)
                    val = -f * x if val is None else val - f * x
                    if val:
                        qrow[c] = val
                    else:
                        qrow.pop(c, None)
        pivots[p] = r
    return pivots


def nullspace(rows, columns) -> list:
    """Basis of ``{x : A x = 0}`` as dicts ``column -> value``, one per free column."""
    pivots = row_reduce(rows, columns)
    basis = []
    for free in columns:
        if free in pivots:
            continue
        vec = {free: 1}
        for p, prow in pivots.items():
            x = prow.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def rank(rows, columns) -> int:
    return len(row_reduce(rows, columns))


def determinant(matrix, one=1):
    """Determinant by fraction-free (Bareiss) elimination with row swaps."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return one
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return one * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det
