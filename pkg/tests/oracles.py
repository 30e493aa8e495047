"""Brute-force reference computations, independent of the package code."""

import itertools
from fractions import Fraction


def monomial_h(k, xs):
    """h_k by summing all multisets of size k."""
    if k < 0:
        return Fraction(0)
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(range(len(xs)), k):
        term = Fraction(1)
        for i in combo:
            term *= xs[i]
        total += term
    return total


def monomial_e(k, xs):
    if k < 0 or k > len(xs):
        return Fraction(0)
    total = Fraction(0)
    for combo in itertools.combinations(range(len(xs)), k):
        term = Fraction(1)
        for i in combo:
            term *= xs[i]
        total += term
    return total


def directed_paths(start, end):
    """All down/right lattice paths between two cells (0-based, inclusive)."""
    (i0, j0), (i1, j1) = start, end
    if i1 < i0 or j1 < j0:
        return []
    downs, rights = i1 - i0, j1 - j0
    paths = []
    for order in set(itertools.permutations("D" * downs + "R" * rights)):
        i, j = i0, j0
        cells = [(i, j)]
        for step in order:
            if step == "D":
                i += 1
            else:
                j += 1
            cells.append((i, j))
        paths.append(cells)
    return paths


def max_path_weight(w, start, end):
    return max(sum(w[i][j] for i, j in p) for p in directed_paths(start, end))


def longest_wis_bruteforce(word, letters):
    letters = set(letters)
    best = 0
    for r in range(len(word) + 1):
        for idx in itertools.combinations(range(len(word)), r):
            sub = [word[i] for i in idx]
            if all(x in letters for x in sub) and all(a <= b for a, b in zip(sub, sub[1:])):
                best = max(best, r)
    return best


def fillings(shape, max_entry):
    """All weakly decreasing fillings via itertools.product and a filter."""
    cells = [(i, j) for i, r in enumerate(shape) for j in range(r)]
    out = []
    for vals in itertools.product(range(1, max_entry + 1), repeat=len(cells)):
        grid = {}
        for c, v in zip(cells, vals):
            grid[c] = v
        ok = all(
            (j == 0 or grid[(i, j - 1)] >= v) and (i == 0 or grid[(i - 1, j)] >= v)
            for (i, j), v in grid.items()
        )
        if ok:
            out.append(tuple(tuple(grid[(i, j)] for j in range(r)) for i, r in enumerate(shape)))
    return out
