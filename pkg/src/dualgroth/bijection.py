"""Descent-level-set bijection between plane partitions and N-matrices.

Rows and levels are 1-based in the public functions, matching the usual
matrix notation; matrices themselves are tuples of row tuples.
"""

from __future__ import annotations

from typing import Sequence

from .partitions import Partition, PlanePartition, is_plane_partition

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    mat = tuple(tuple(int(x) for x in r) for r in rows)
    if mat and len({len(r) for r in mat}) != 1:
        raise ValueError("ragged matrix")
    if any(x < 0 for r in mat for x in r):
        raise ValueError("matrix entries must be nonnegative")
    return mat


def _entry(pp: PlanePartition, i: int, j: int) -> int:
    # 0-based, zero outside the shape
    if i < len(pp) and j < len(pp[i]):
        return pp[i][j]
    return 0


def descent_level_set(pp: PlanePartition, row: int, level: int) -> frozenset[int]:
    """Columns j (1-based) with pp[row][j] == level > pp[row+1][j]."""
    i = row - 1
    if i < 0 or i >= len(pp):
        return frozenset()
    return frozenset(
        j + 1 for j, x in enumerate(pp[i]) if x == level and x > _entry(pp, i + 1, j)
    )


def phi(pp: PlanePartition, m: int, n: int) -> Matrix:
    """The m x n matrix of descent counts d[i][l] = |D_{il}|."""
    if not is_plane_partition(pp):
        raise ValueError("not a plane partition")
    if len(pp) > m:
        raise ValueError(f"plane partition has {len(pp)} rows, more than m={m}")
    if pp and pp[0][0] > n:
        raise ValueError(f"entry {pp[0][0]} exceeds n={n}")
    d = [[0] * n for _ in range(m)]
    for i, row in enumerate(pp):
        for j, x in enumerate(row):
            if x > _entry(pp, i + 1, j):
                d[i][x - 1] += 1
    return tuple(tuple(r) for r in d)


def phi_inverse(d: Sequence[Sequence[int]]) -> PlanePartition:
    """Reconstruct the plane partition whose descent matrix is ``d``.

    Rows are rebuilt bottom-up.  Given the row below (mu), row i is filled
    left to right from the top level down: the block of value l covers every
    remaining column where mu equals l, plus d[i][l] further columns, which
    become the descents at level l.
    """
    d = as_matrix(d)
    rows: list[list[int]] = []
    below: list[int] = []
    for drow in reversed(d):
        n = len(drow)
        row: list[int] = []
        for level in range(n, 0, -1):
            p = len(row)
            z = sum(1 for j in range(p, len(below)) if below[j] == level)
            row.extend([level] * (z + drow[level - 1]))
        rows.append(row)
        below = row
    rows.reverse()
    return tuple(tuple(r) for r in rows if r)


def shape_via_max_paths(d: Sequence[Sequence[int]]) -> Partition:
    """lambda_k = max weight of a down/right path from (k, 1) to (m, n)."""
    d = as_matrix(d)
    m = len(d)
    if m == 0:
        return ()
    n = len(d[0])
    if n == 0:
        return (0,) * m
    neg = float("-inf")
    # best[i][l]: max path weight from (i, l) to (m, n); -inf off the rectangle
    best = [[neg] * (n + 1) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        for l in range(n - 1, -1, -1):
            if i == m - 1 and l == n - 1:
                nxt = 0
            else:
                nxt = max(best[i + 1][l], best[i][l + 1])
            best[i][l] = d[i][l] + nxt
    return tuple(int(best[k][0]) for k in range(m))
