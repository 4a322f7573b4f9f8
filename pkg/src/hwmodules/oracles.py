"""Independent reference computations used to cross-check the main code paths.

Nothing here calls the Verma action or the PBW enumerator; each function
recomputes its answer by a different (slower, simpler) route.
"""
from __future__ import annotations

from itertools import permutations

from .enveloping import straighten
from .liealg import Part, triangular_part

__all__ = [
    "partitions",
    "partition_count",
    "bipartition_count",
    "leibniz_determinant",
    "gram_by_straightening",
    "vacuum_coefficient",
]


def partitions(n: int, largest: int | None = None):
    """Yield partitions of ``n`` as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def partition_count(n: int) -> int:
    return sum(1 for _ in partitions(n))


def bipartition_count(n: int) -> int:
    return sum(partition_count(a) * partition_count(n - a) for a in range(n + 1))


def _perm_sign(p) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_determinant(matrix, one=1):
    n = len(matrix)
    total = one * 0
    for p in permutations(range(n)):
        term = one
        for i in range(n):
            term = term * matrix[i][p[i]]
            if not term:
                break
        if term:
            total = total + (term if _perm_sign(p) > 0 else -term)
    return total


def vacuum_coefficient(normal_form: dict, hw, spec):
    """Coefficient of v after letting a normal-ordered element act on v.

    Sorted words are lowering-block, Cartan-block, raising-block; a raising
    factor kills v, Cartan factors act by ``hw`` and any lowering factor moves
    the result off the v line.
    """
    total = spec.zero
    for word, c in normal_form.items():
        value = c
        for s in word:
            part = triangular_part(s)
            if part is not Part.CARTAN:
                value = spec.zero
                break
            value = value * hw[s]
        total = total + value
    return total


def gram_by_straightening(spec, hw, basis) -> list:
    """Gram matrix from full straightening of ``omega(u_a) u_b`` in the enveloping algebra."""
    rows = []
    for ua in basis:
        left = tuple(spec.omega(s) for s in reversed(ua))
        rows.append([vacuum_coefficient(straighten(left + ub, spec), hw, spec) for ub in basis])
    return rows
