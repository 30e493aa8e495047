"""Geometric last-passage percolation: sampling, exact oracle, closed forms.

Weights w[i][j] are geometric with the parameter q_j of their column,
P(w = k) = (1 - q_j) q_j^k.  The column statistic of interest is
(G(m, n), G(m-1, n), ..., G(1, n)), which is always a partition.
"""

from __future__ import annotations

import json
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .partitions import Partition, enumerate_partitions, pad, strip
from .symfunc import g_eval, schur_eval, EvalPoint, to_fraction

BLOCK = 4096  # samples per RNG stream block
ORACLE_CHUNK = 1 << 18
DEFAULT_ORACLE_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


def oracle_budget() -> int:
    return int(os.environ.get("DUALGROTH_ORACLE_BUDGET", DEFAULT_ORACLE_BUDGET))


@dataclass(frozen=True)
class GeometricParams:
    m: int
    n: int
    qs: tuple[Fraction, ...]

    def __post_init__(self):
        qs = tuple(to_fraction(q) for q in self.qs)
        object.__setattr__(self, "qs", qs)
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be >= 1")
        if len(qs) != self.n:
            raise ValueError(f"expected {self.n} parameters, got {len(qs)}")
        for q in qs:
            if not 0 < q < 1:
                raise ValueError(f"parameter {q} outside (0, 1)")

    @classmethod
    def of(cls, m: int, qs: Sequence) -> "GeometricParams":
        return cls(m, len(qs), tuple(qs))

    def with_m(self, m: int) -> "GeometricParams":
        return GeometricParams(m, self.n, self.qs)

    def normalizer(self) -> Fraction:
        """prod_j (1 - q_j)^m."""
        out = Fraction(1)
        for q in self.qs:
            out *= (1 - q) ** self.m
        return out


def _fmt_q(q: Fraction) -> str:
    return str(q)


@dataclass
class JointDistribution:
    """Law of the column vector, keyed by length-m partitions."""

    m: int
    n: int
    qs: tuple[Fraction, ...]
    entries: dict[Partition, Fraction | float]
    provenance: str
    tail_bound: Fraction | None = None
    counts: dict[Partition, int] | None = field(default=None, repr=False)
    samples: int | None = None
    seed: int | None = None

    @property
    def exact(self) -> bool:
        return self.counts is None

    def mass(self, lam: Sequence[int]):
        zero = Fraction(0) if self.exact else 0.0
        return self.entries.get(pad(lam, self.m), zero)

    def total(self):
        zero = Fraction(0) if self.exact else 0.0
        return sum(self.entries.values(), zero)

    def sorted_items(self):
        return sorted(self.entries.items(), reverse=True)

    def _p(self, p) -> str:
        return str(p) if self.exact else repr(float(p))

    def to_dict(self) -> dict:
        out = {
            "m": self.m,
            "n": self.n,
            "q": [_fmt_q(q) for q in self.qs],
            "provenance": self.provenance,
            "tail_bound": None if self.tail_bound is None else str(self.tail_bound),
        }
        if self.samples is not None:
            out["samples"] = self.samples
            out["seed"] = self.seed
        out["entries"] = [{"lambda": list(lam), "p": self._p(p)} for lam, p in self.sorted_items()]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["lambda,p"]
        for lam, p in self.sorted_items():
            lines.append('"%s",%s' % (",".join(map(str, lam)), self._p(p)))
        return "\n".join(lines) + "\n"


# -- sampling ---------------------------------------------------------------

def _block_weights(qs: Sequence[Fraction], m: int, seed: int, block: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))
    u = 1.0 - rng.random((BLOCK, m, len(qs)))  # in (0, 1]
    logq = np.log(np.array([float(q) for q in qs]))
    return np.floor(np.log(u) / logq).astype(np.int64)


def sample_weights(params: GeometricParams, seed: int, stream: int) -> np.ndarray:
    """The weight matrix of sample number ``stream`` under ``seed``.

    Samples are generated in fixed blocks of ``BLOCK`` streams, so the matrix
    depends only on (seed, stream) and not on how work is split.
    """
    block, offset = divmod(stream, BLOCK)
    return _block_weights(params.qs, params.m, seed, block)[offset]


def sample_weights_batch(params: GeometricParams, seed: int, start: int, count: int) -> np.ndarray:
    """Weight matrices for streams start .. start+count-1, shape (count, m, n)."""
    if count <= 0:
        return np.zeros((0, params.m, params.n), dtype=np.int64)
    first, last = start // BLOCK, (start + count - 1) // BLOCK
    blocks = [_block_weights(params.qs, params.m, seed, b) for b in range(first, last + 1)]
    flat = np.concatenate(blocks)
    off = start - first * BLOCK
    return flat[off:off + count]


def last_passage(w) -> np.ndarray:
    """Percolation matrix G(i, j) = w[i][j] + max(G(i-1, j), G(i, j-1))."""
    w = np.asarray(w, dtype=np.int64)
    return _last_passage_batch(w[None, ...])[0]


def _last_passage_batch(w: np.ndarray) -> np.ndarray:
    _, m, n = w.shape
    g = np.zeros_like(w)
    for i in range(m):
        for j in range(n):
            if i and j:
                prev = np.maximum(g[:, i - 1, j], g[:, i, j - 1])
            elif i:
                prev = g[:, i - 1, j]
            elif j:
                prev = g[:, i, j - 1]
            else:
                prev = 0
            g[:, i, j] = w[:, i, j] + prev
    return g


def column_vector(g, n: int | None = None) -> Partition:
    """(G(m, n), G(m-1, n), ..., G(1, n)) for 1-based column ``n``."""
    g = np.asarray(g)
    if n is None:
        n = g.shape[1]
    if not 1 <= n <= g.shape[1]:
        raise ValueError(f"column {n} out of range")
    return tuple(int(x) for x in g[::-1, n - 1])


def _max_paths_batch(d: np.ndarray) -> np.ndarray:
    """Vectorised max path weight from (k, 1) to (m, n), for each k."""
    _, m, n = d.shape
    best = np.zeros_like(d)
    for i in range(m - 1, -1, -1):
        for l in range(n - 1, -1, -1):
            if i < m - 1 and l < n - 1:
                nxt = np.maximum(best[:, i + 1, l], best[:, i, l + 1])
            elif i < m - 1:
                nxt = best[:, i + 1, l]
            elif l < n - 1:
                nxt = best[:, i, l + 1]
            else:
                nxt = 0
            best[:, i, l] = d[:, i, l] + nxt
    return best[:, :, 0]


def _tally(rows: np.ndarray) -> Counter:
    width = rows.shape[1]
    base = int(rows.max(initial=0)) + 1
    if base ** width < 2**62:
        # mixed-radix encoding is much faster than unique(axis=0)
        weights = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
        keys, counts = np.unique(rows @ weights, return_counts=True)
        out = Counter()
        for k, c in zip(keys.tolist(), counts.tolist()):
            digits = []
            for _ in range(width):
                k, r = divmod(k, base)
                digits.append(r)
            out[tuple(reversed(digits))] = c
        return out
    keys, counts = np.unique(rows, axis=0, return_counts=True)
    return Counter({tuple(int(x) for x in k): int(c) for k, c in zip(keys, counts)})


def _mc_task(args) -> Counter:
    qs, m, seed, blocks, samples = args
    out = Counter()
    for b in blocks:
        w = _block_weights(qs, m, seed, b)
        used = min(BLOCK, samples - b * BLOCK)
        g = _last_passage_batch(w[:used])
        out.update(_tally(g[:, ::-1, -1]))
    return out


def _split(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    size = math.ceil(len(items) / parts) if items else 0
    return [items[i:i + size] for i in range(0, len(items), size)] if items else []


def _run(fn, tasks: list, workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def monte_carlo_distribution(params: GeometricParams, samples: int, seed: int = 0,
                             workers: int = 1) -> JointDistribution:
    """Empirical column-vector law over ``samples`` sampled matrices."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    nblocks = math.ceil(samples / BLOCK)
    chunks = _split(list(range(nblocks)), workers * 4)
    tasks = [(params.qs, params.m, seed, c, samples) for c in chunks]
    counts = Counter()
    for part in _run(_mc_task, tasks, workers):
        counts.update(part)
    counts = dict(sorted(counts.items()))
    return JointDistribution(
        params.m, params.n, params.qs,
        entries={lam: c / samples for lam, c in counts.items()},
        provenance=f"monte-carlo(samples={samples}, seed={seed})",
        counts=counts, samples=samples, seed=seed,
    )


# -- exhaustive oracle ------------------------------------------------------

def _oracle_base(m: int, n: int, cap: int) -> int:
    return (m + n - 1) * cap + 1


def _oracle_task(args) -> tuple[np.ndarray, np.ndarray]:
    m, n, cap, start, stop, statistic = args
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((len(idx), m * n), dtype=np.int64)
    rest = idx
    for p in range(m * n - 1, -1, -1):
        rest, digits[:, p] = np.divmod(rest, cap + 1)
    w = digits.reshape(-1, m, n)
    if statistic == "columns":
        lam = _last_passage_batch(w)[:, ::-1, -1]
    elif statistic == "max-paths":
        lam = _max_paths_batch(w)
    else:
        raise ValueError(f"unknown statistic {statistic!r}")
    rows = np.concatenate([lam, w.sum(axis=1)], axis=1)
    base = _oracle_base(m, n, cap)
    codes = rows @ (base ** np.arange(m + n - 1, -1, -1, dtype=np.int64))
    return np.unique(codes, return_counts=True)


def tail_bound(params: GeometricParams, cap: int) -> Fraction:
    """Union bound m * sum_j q_j^(cap+1) on some entry exceeding ``cap``."""
    return params.m * sum((q ** (cap + 1) for q in params.qs), Fraction(0))


def oracle_distribution(params: GeometricParams, cap: int, workers: int = 1,
                        budget: int | None = None,
                        statistic: str = "columns") -> JointDistribution:
    """Exact law of the column vector restricted to matrices with entries
    in [0, cap], by enumerating all (cap+1)^(mn) of them.

    ``statistic="max-paths"`` records instead the vector of max path sums
    from (k, 1) to (m, n), k = 1..m.
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    m, n = params.m, params.n
    total = (cap + 1) ** (m * n)
    budget = oracle_budget() if budget is None else budget
    if total > budget:
        raise BudgetExceeded(f"(cap+1)^(mn) = {total} exceeds budget {budget}")
    base = _oracle_base(m, n, cap)
    if base ** (m + n) >= 2**62:
        raise BudgetExceeded("oracle state space too large to encode")
    ranges = [(s, min(s + ORACLE_CHUNK, total)) for s in range(0, total, ORACLE_CHUNK)]
    tasks = [(m, n, cap, s, e, statistic) for s, e in ranges]
    parts = _run(_oracle_task, tasks, workers)
    codes, inverse = np.unique(np.concatenate([c for c, _ in parts]), return_inverse=True)
    counts = np.zeros(len(codes), dtype=np.int64)
    np.add.at(counts, inverse, np.concatenate([c for _, c in parts]))

    digits = np.empty((len(codes), m + n), dtype=np.int64)
    rest = codes
    for p in range(m + n - 1, -1, -1):
        rest, digits[:, p] = np.divmod(rest, base)

    # exact weights as integers over the common denominator
    # prod_j den_j^(m + m*cap); column sums never exceed m*cap
    top = m * cap
    numer = counts.astype(object)
    denom = 1
    for j, q in enumerate(params.qs):
        a, b = q.numerator, q.denominator
        table = np.array([(b - a) ** m * a ** s * b ** (top - s) for s in range(top + 1)],
                         dtype=object)
        numer = numer * table[digits[:, m + j]]
        denom *= b ** (m + top)

    lam_codes = codes // base ** n  # digits are ordered so this keeps sort order
    starts = np.flatnonzero(np.r_[True, lam_codes[1:] != lam_codes[:-1]])
    sums = np.add.reduceat(numer, starts)
    entries: dict[Partition, Fraction] = {}
    for s, total_num in zip(starts.tolist(), sums.tolist()):
        lam = tuple(int(x) for x in digits[s, :m])
        entries[lam] = Fraction(total_num, denom)
    return JointDistribution(
        m, n, params.qs, entries=entries,
        provenance=f"oracle(cap={cap})" + ("" if statistic == "columns" else f", {statistic}"),
        tail_bound=tail_bound(params, cap),
    )


def weight_probability(params: GeometricParams, w) -> Fraction:
    """Exact probability of the weight matrix ``w``."""
    p = Fraction(1)
    for row in w:
        for j, x in enumerate(row):
            q = params.qs[j]
            p *= (1 - q) * q ** int(x)
    return p


# -- closed forms -----------------------------------------------------------

def _shape_for(params: GeometricParams, shape: Sequence[int]) -> Partition:
    lam = tuple(int(x) for x in shape)
    if len(strip(lam)) > params.m:
        raise ValueError(f"shape {lam} has more than m={params.m} nonzero parts")
    return pad(lam, params.m)


def theorem_distribution(params: GeometricParams, shape: Sequence[int],
                         method: str = "det-h") -> Fraction:
    """P(G(m,n) = lam_1, ..., G(1,n) = lam_m) = prod (1-q_i)^m g_lam(q)."""
    lam = _shape_for(params, shape)
    return params.normalizer() * g_eval(lam, params.qs, method=method)


def cdf_distribution(params: GeometricParams, shape: Sequence[int],
                     method: str = "det-h") -> Fraction:
    """P(G(m,n) <= lam_1, ..., G(1,n) <= lam_m) = prod (1-q_i)^m g_lam(1, q)."""
    lam = _shape_for(params, shape)
    return params.normalizer() * g_eval(lam, params.qs, ones=1, method=method)


def single_point_cdf(m: int, n: int, qs: Sequence, a: int) -> Fraction:
    """P(G(m,n) <= a) = prod (1-q_i)^m s_{(a^m)}(1^m, q)."""
    if a < 0:
        return Fraction(0)
    params = GeometricParams(m, n, tuple(qs))
    return params.normalizer() * schur_eval((a,) * m, EvalPoint(m, params.qs))


def marginal_cdf(params: GeometricParams, k: int, a: int) -> Fraction:
    """P_{m,n}(lam_k <= a), the law of G(m - k + 1, n)."""
    if not 1 <= k <= params.m:
        raise ValueError(f"part index {k} outside [1, {params.m}]")
    return single_point_cdf(params.m - k + 1, params.n, params.qs, a)


def closed_form_distribution(params: GeometricParams, max_part: int,
                             method: str = "det-h") -> JointDistribution:
    """Closed-form masses of every lam with lam_1 <= max_part.

    ``tail_bound`` is the exact mass left out, 1 - P(G(m, n) <= max_part).
    """
    entries = {
        lam: theorem_distribution(params, lam, method=method)
        for lam in enumerate_partitions(params.m, max_part)
    }
    tail = 1 - single_point_cdf(params.m, params.n, params.qs, max_part)
    return JointDistribution(params.m, params.n, params.qs, entries=entries,
                             provenance="closed-form", tail_bound=tail)


def z_scores(empirical: JointDistribution, exact: dict[Partition, Fraction],
             min_p: float = 1e-3) -> dict[Partition, float]:
    """|freq - p| / sqrt(p (1 - p) / N) for cells with p >= ``min_p``."""
    n = empirical.samples
    out = {}
    for lam, p in exact.items():
        pf = float(p)
        if pf < min_p:
            continue
        freq = empirical.counts.get(lam, 0) / n
        out[lam] = abs(freq - pf) / math.sqrt(pf * (1 - pf) / n)
    return out


def reverse_params(params: GeometricParams) -> GeometricParams:
    return GeometricParams(params.m, params.n, params.qs[::-1])


def rotate(w) -> np.ndarray:
    """180-degree rotation: w'[i][j] = w[m-1-i][n-1-j]."""
    return np.asarray(w)[::-1, ::-1]


def exact_entries(params: GeometricParams, shapes: Iterable[Sequence[int]]) -> dict[Partition, Fraction]:
    return {pad(lam, params.m): theorem_distribution(params, lam) for lam in shapes}
