"""Strict tableaux, the measure f_lam(n) / m^n, and random-word statistics."""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .lpp import BudgetExceeded, GeometricParams, JointDistribution, _run, _split
from .partitions import Partition, PlanePartition, enumerate_partitions, pad, strip
from .symfunc import g_eval_det_h

DEFAULT_WORD_BUDGET = 10**7


def word_budget() -> int:
    return int(os.environ.get("DUALGROTH_WORD_BUDGET", DEFAULT_WORD_BUDGET))


def is_strict_tableau(pp: PlanePartition, n: int) -> bool:
    cols: dict[int, set[int]] = {}
    for row in pp:
        for j, x in enumerate(row):
            if not 1 <= x <= n:
                return False
            cols.setdefault(x, set()).add(j)
    return len(cols) == n and all(len(c) == 1 for c in cols.values())


def enumerate_strict_tableaux(shape: Sequence[int], n: int) -> Iterator[PlanePartition]:
    """Plane partitions of ``shape`` in which every value 1..n occurs and all
    cells holding a given value share one column."""
    lam = strip(shape)
    cells = [(i, j) for i, r in enumerate(lam) for j in range(r)]
    if not cells:
        if n == 0:
            yield ()
        return
    if n < 1 or n > len(cells):
        return
    grid = [[0] * r for r in lam]
    column_of: dict[int, int] = {}

    def rec(k: int) -> Iterator[PlanePartition]:
        if len(cells) - k < n - len(column_of):
            return
        if k == len(cells):
            yield tuple(tuple(r) for r in grid)
            return
        i, j = cells[k]
        hi = n
        if j > 0:
            hi = min(hi, grid[i][j - 1])
        if i > 0:
            hi = min(hi, grid[i - 1][j])
        for v in range(hi, 0, -1):
            placed = column_of.get(v)
            if placed is not None and placed != j:
                continue
            grid[i][j] = v
            if placed is None:
                column_of[v] = j
            yield from rec(k + 1)
            if placed is None:
                del column_of[v]
        grid[i][j] = 0

    yield from rec(0)


def f_lambda(shape: Sequence[int], n: int) -> int:
    return sum(1 for _ in enumerate_strict_tableaux(shape, n))


def gpl_measure(m: int, n: int, shape: Sequence[int]) -> Fraction:
    """f_lam(n) / m^n for lam inside the m x n box (m rows, parts <= n)."""
    lam = strip(shape)
    if len(lam) > m or (lam and lam[0] > n):
        raise ValueError(f"shape {tuple(shape)} is not inside ({n}^{m})")
    return Fraction(f_lambda(lam, n), m**n)


def gpl_distribution(m: int, n: int) -> dict[Partition, Fraction]:
    out = {}
    for lam in enumerate_partitions(m, n):
        p = gpl_measure(m, n, lam)
        if p:
            out[lam] = p
    return out


def longest_weakly_increasing(word: Sequence[int], letters: Sequence[int]) -> int:
    """Length of the longest weakly increasing subsequence of ``word`` that
    only uses the given letters."""
    allowed = sorted(set(letters))
    best = dict.fromkeys(allowed, 0)  # best[v]: longest run ending in letter v
    for x in word:
        if x not in best:
            continue
        best[x] = max(best[v] for v in allowed if v <= x) + 1
    return max(best.values(), default=0)


def word_L_stats(word: Sequence[int], m: int) -> Partition:
    """(L_m(w), ..., L_1(w)), where L_i uses the letters m-i+1..m."""
    if any(not 1 <= x <= m for x in word):
        raise ValueError(f"word {tuple(word)} not over the alphabet [1, {m}]")
    return tuple(
        longest_weakly_increasing(word, range(m - i + 1, m + 1)) for i in range(m, 0, -1)
    )


def _words_task(args) -> Counter:
    m, n, prefixes = args
    out = Counter()
    for prefix in prefixes:
        for rest in itertools.product(range(1, m + 1), repeat=n - len(prefix)):
            out[word_L_stats(prefix + rest, m)] += 1
    return out


def word_distribution_exhaustive(m: int, n: int, workers: int = 1,
                                 budget: int | None = None) -> JointDistribution:
    """Exact law of word_L_stats under the uniform measure on [m]^n."""
    budget = word_budget() if budget is None else budget
    if m**n > budget:
        raise BudgetExceeded(f"m^n = {m**n} exceeds budget {budget}")
    split = min(n, 2)
    prefixes = list(itertools.product(range(1, m + 1), repeat=split))
    tasks = [(m, n, chunk) for chunk in _split(prefixes, workers)]
    counts = Counter()
    for part in _run(_words_task, tasks, workers):
        counts.update(part)
    total = m**n
    entries = {lam: Fraction(c, total) for lam, c in sorted(counts.items())}
    return JointDistribution(m, n, (), entries=entries, provenance="words(exhaustive)")


def lambda_m_binomial_check(m: int, n: int) -> dict:
    """Compare the law of the last part with Binomial(n, 1/m), exactly."""
    dist = word_distribution_exhaustive(m, n)
    marginal = Counter()
    for lam, p in dist.entries.items():
        marginal[lam[-1]] += p
    p = Fraction(1, m)
    binomial = {k: comb(n, k) * p**k * (1 - p) ** (n - k) for k in range(n + 1)}
    observed = {k: marginal.get(k, Fraction(0)) for k in range(n + 1)}
    return {"m": m, "n": n, "observed": observed, "binomial": binomial,
            "equal": observed == binomial}


def plancherel_lhs(m: int, shape: Sequence[int], gamma: Fraction, n: int) -> Fraction:
    """P_{m,n}(lam) at q_1 = ... = q_n = gamma / n, exactly."""
    q = Fraction(gamma) / n
    params = GeometricParams(m, n, (q,) * n)
    return params.normalizer() * g_eval_det_h(pad(shape, m), m, params.qs)


def plancherel_rhs(m: int, shape: Sequence[int], gamma: Fraction) -> tuple[float, int]:
    """e^{-m gamma} sum_k f_lam(k) (m gamma)^k / (k! m^k) and the truncation index.

    f_lam(k) vanishes once k exceeds |lam| (each value needs its own cell),
    so truncating at |lam| loses nothing.
    """
    lam = pad(shape, m)
    top = sum(lam)
    g = float(gamma)
    total = 0.0
    for k in range(top + 1):
        f = f_lambda(lam, k)
        if f:
            total += f * (m * g) ** k / (factorial(k) * m**k)
    return math.exp(-m * g) * total, top


def plancherel_limit_check(m: int, shape: Sequence[int], gamma, n_values: Sequence[int]) -> list[dict]:
    """Rows (n, lhs, rhs, abs_diff) for inspecting convergence in n."""
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if n_values and gamma / max(n_values) >= 1:
        raise ValueError("need gamma / n < 1")
    rhs, _ = plancherel_rhs(m, shape, gamma)
    rows = []
    for n in n_values:
        lhs = float(plancherel_lhs(m, shape, gamma, n))
        rows.append({"n": n, "lhs": lhs, "rhs": rhs, "abs_diff": abs(lhs - rhs)})
    return rows


def convergence_csv(rows: list[dict]) -> str:
    lines = ["n,lhs,rhs,abs_diff"]
    for r in rows:
        lines.append(f"{r['n']},{r['lhs']!r},{r['rhs']!r},{r['abs_diff']!r}")
    return "\n".join(lines) + "\n"
