"""Integer partitions and plane partitions.

A partition is a plain tuple of ints, weakly decreasing, possibly with
trailing zeros (the tuple length is the declared number of parts).  A plane
partition is a tuple of rows, each row a tuple of positive ints; zeros
outside the shape are implicit.
"""

from __future__ import annotations

from typing import Iterator, Sequence

Partition = tuple[int, ...]
PlanePartition = tuple[tuple[int, ...], ...]


def is_partition(parts: Sequence[int]) -> bool:
    if any(p < 0 for p in parts):
        return False
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def check_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {parts}")
    return parts


def strip(p: Sequence[int]) -> Partition:
    """Drop trailing zeros."""
    p = tuple(p)
    k = len(p)
    while k and p[k - 1] == 0:
        k -= 1
    return p[:k]


def pad(p: Sequence[int], m: int) -> Partition:
    """Pad (or trim zeros from) ``p`` to exactly ``m`` parts."""
    s = strip(p)
    if len(s) > m:
        raise ValueError(f"partition {tuple(p)} has more than {m} nonzero parts")
    return s + (0,) * (m - len(s))


def size(p: Sequence[int]) -> int:
    return sum(p)


def conjugate(p: Sequence[int]) -> Partition:
    s = strip(p)
    if not s:
        return ()
    return tuple(sum(1 for x in s if x >= i) for i in range(1, s[0] + 1))


def contained(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True if mu_i <= lam_i for all i (missing parts count as zero)."""
    mu, lam = strip(mu), strip(lam)
    if len(mu) > len(lam):
        return False
    return all(a <= b for a, b in zip(mu, lam))


def enumerate_partitions(m: int, max_part: int) -> Iterator[Partition]:
    """All length-``m`` partitions with parts <= ``max_part``, lex decreasing.

    There are ``binomial(max_part + m, m)`` of them.
    """
    if m < 1 or max_part < 0:
        raise ValueError("need m >= 1 and max_part >= 0")

    def rec(prefix: tuple[int, ...], bound: int) -> Iterator[Partition]:
        if len(prefix) == m:
            yield prefix
            return
        for v in range(bound, -1, -1):
            yield from rec(prefix + (v,), v)

    yield from rec((), max_part)


def subpartitions(lam: Sequence[int]) -> Iterator[Partition]:
    """All mu with mu_i <= lam_i, as tuples of len(lam), lex decreasing."""
    lam = tuple(lam)

    def rec(prefix: tuple[int, ...]) -> Iterator[Partition]:
        i = len(prefix)
        if i == len(lam):
            yield prefix
            return
        bound = lam[i] if i == 0 else min(lam[i], prefix[-1])
        for v in range(bound, -1, -1):
            yield from rec(prefix + (v,))

    yield from rec(())


def plane_shape(pp: PlanePartition) -> Partition:
    return tuple(len(row) for row in pp)


def is_plane_partition(pp: PlanePartition) -> bool:
    for i, row in enumerate(pp):
        if not row or any(x <= 0 for x in row):
            return False
        if any(row[j] < row[j + 1] for j in range(len(row) - 1)):
            return False
        if i > 0:
            above = pp[i - 1]
            if len(row) > len(above):
                return False
            if any(above[j] < row[j] for j in range(len(row))):
                return False
    return True


def enumerate_plane_partitions(shape: Sequence[int], max_entry: int) -> Iterator[PlanePartition]:
    """Fillings of ``shape`` with entries in [1, max_entry], weakly decreasing
    along rows and columns.

    Cells are visited row by row; each cell tries values from largest to
    smallest, so the stream is lexicographically decreasing.
    """
    shape = strip(check_partition(shape))
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    if not cells:
        yield ()
        return
    if max_entry < 1:
        return
    grid = [[0] * r for r in shape]

    def rec(k: int) -> Iterator[PlanePartition]:
        if k == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        i, j = cells[k]
        hi = max_entry
        if j > 0:
            hi = min(hi, grid[i][j - 1])
        if i > 0:
            hi = min(hi, grid[i - 1][j])
        for v in range(hi, 0, -1):
            grid[i][j] = v
            yield from rec(k + 1)
        grid[i][j] = 0

    yield from rec(0)


def enumerate_pp_bounded(m: int, n: int, max_width: int) -> Iterator[PlanePartition]:
    """Plane partitions with at most ``m`` rows, entries <= ``n`` and first row
    of length <= ``max_width``."""
    for lam in enumerate_partitions(m, max_width):
        yield from enumerate_plane_partitions(lam, n)


def column_content(pp: PlanePartition, level: int) -> int:
    """Number of columns of ``pp`` containing the value ``level``."""
    cols = {j for row in pp for j, x in enumerate(row) if x == level}
    return len(cols)
