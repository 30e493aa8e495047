"""Exact evaluation of h, e, Schur and dual Grothendieck polynomials.

Everything works over :class:`fractions.Fraction`.  Evaluation points may
carry a number of leading variables equal to 1 (``ones``); these are folded
in through binomial coefficients instead of being materialised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Sequence

from .partitions import (
    Partition,
    conjugate,
    enumerate_plane_partitions,
    strip,
    subpartitions,
    column_content,
)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact values are required")
    return Fraction(x)


@dataclass(frozen=True)
class EvalPoint:
    """The point (1, ..., 1, q_1, ..., q_n) with ``ones`` leading 1s."""

    ones: int
    qs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.ones < 0:
            raise ValueError("ones must be >= 0")
        object.__setattr__(self, "qs", tuple(to_fraction(q) for q in self.qs))

    @property
    def nvars(self) -> int:
        return self.ones + len(self.qs)

    def materialize(self) -> tuple[Fraction, ...]:
        return (Fraction(1),) * self.ones + self.qs


def _point(pt) -> EvalPoint:
    if isinstance(pt, EvalPoint):
        return pt
    return EvalPoint(0, tuple(pt))


@lru_cache(maxsize=4096)
def _h_series(kmax: int, ones: int, qs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    # coefficients of prod 1/(1 - x t), t^0 .. t^kmax
    if ones:
        coef = [Fraction(comb(k + ones - 1, k)) for k in range(kmax + 1)]
    else:
        coef = [Fraction(1)] + [Fraction(0)] * kmax
    for q in qs:
        for k in range(1, kmax + 1):
            coef[k] += q * coef[k - 1]
    return tuple(coef)


@lru_cache(maxsize=4096)
def _e_series(ones: int, qs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    # coefficients of prod (1 + x t)
    coef = [Fraction(comb(ones, k)) for k in range(ones + 1)]
    for q in qs:
        coef.append(Fraction(0))
        for k in range(len(coef) - 1, 0, -1):
            coef[k] += q * coef[k - 1]
    return tuple(coef)


def h_eval(k: int, pt) -> Fraction:
    """Complete homogeneous symmetric polynomial h_k at ``pt``."""
    if k < 0:
        return Fraction(0)
    pt = _point(pt)
    return _h_series(k, pt.ones, pt.qs)[k]


def e_eval(k: int, pt) -> Fraction:
    """Elementary symmetric polynomial e_k at ``pt``."""
    pt = _point(pt)
    if k < 0 or k > pt.nvars:
        return Fraction(0)
    return _e_series(pt.ones, pt.qs)[k]


def rational_det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant: clear row denominators, then Bareiss elimination."""
    rows = [[to_fraction(x) for x in r] for r in matrix]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("matrix must be square")
    if size == 0:
        return Fraction(1)
    scale = 1
    a: list[list[int]] = []
    for r in rows:
        mult = lcm(*(x.denominator for x in r))
        scale *= mult
        a.append([int(x * mult) for x in r])
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for s in range(k + 1, size):
                if a[s][k] != 0:
                    a[k], a[s] = a[s], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[-1][-1], scale)


def schur_eval(shape: Sequence[int], pt) -> Fraction:
    """Schur polynomial via the Jacobi-Trudi determinant det[h_{lam_i - i + j}]."""
    lam = strip(shape)
    pt = _point(pt)
    r = len(lam)
    mat = [[h_eval(lam[i] - i + j, pt) for j in range(r)] for i in range(r)]
    return rational_det(mat)


def g_eval_combinatorial(shape: Sequence[int], qs: Sequence) -> Fraction:
    """Sum over plane partitions pi of the shape with entries <= len(qs) of
    prod_l q_l^{c_l(pi)}.  Exponential in |shape|; used as the reference."""
    lam = strip(shape)
    qs = [to_fraction(q) for q in qs]
    if not lam:
        return Fraction(1)
    total = Fraction(0)
    n = len(qs)
    for pp in enumerate_plane_partitions(lam, n):
        term = Fraction(1)
        for level in range(1, n + 1):
            c = column_content(pp, level)
            if c:
                term *= qs[level - 1] ** c
        total += term
    return total


def g_eval_det_h(shape: Sequence[int], m: int | None, qs: Sequence, ones: int = 0) -> Fraction:
    """det[h_{lam_i - i + j}(1^{i-1}, qs)] over i, j = 1..m.

    ``ones`` extra leading 1s are added to every entry's point, so
    ``ones=1`` evaluates g at (1, qs).
    """
    lam = strip(shape)
    if m is None:
        m = len(lam)
    if len(lam) > m:
        raise ValueError(f"shape {tuple(shape)} has more than m={m} parts")
    lam = lam + (0,) * (m - len(lam))
    qs = tuple(to_fraction(q) for q in qs)
    mat = [
        [h_eval(lam[i] - i + j, EvalPoint(ones + i, qs)) for j in range(m)]
        for i in range(m)
    ]
    return rational_det(mat)


def g_eval_det_e(shape: Sequence[int], qs: Sequence, ones: int = 0) -> Fraction:
    """det[e_{lam'_i - i + j}(1^{lam'_i - 1}, qs)] over i, j = 1..lam_1."""
    conj = conjugate(shape)
    qs = tuple(to_fraction(q) for q in qs)
    r = len(conj)
    mat = [
        [e_eval(conj[i] - i + j, EvalPoint(ones + conj[i] - 1, qs)) for j in range(r)]
        for i in range(r)
    ]
    return rational_det(mat)


def g_eval(shape: Sequence[int], qs: Sequence, ones: int = 0, method: str = "det-h") -> Fraction:
    """Dispatch to one of the three evaluators."""
    if method == "pp":
        return g_eval_combinatorial(shape, (1,) * ones + tuple(qs))
    if method == "det-h":
        return g_eval_det_h(shape, None, qs, ones=ones)
    if method == "det-e":
        return g_eval_det_e(shape, qs, ones=ones)
    raise ValueError(f"unknown method {method!r}")


def g_branching_sum(shape: Sequence[int], qs: Sequence) -> Fraction:
    """Sum of g_mu(qs) over all partitions mu inside ``shape``."""
    return sum(
        (g_eval_combinatorial(mu, qs) for mu in subpartitions(strip(shape))),
        Fraction(0),
    )


def interpolate(points: Sequence[tuple]) -> list[Fraction]:
    """Coefficients (constant term first) of the unique polynomial of degree
    < len(points) through the given (x, y) pairs, by Newton divided
    differences."""
    xs = [to_fraction(x) for x, _ in points]
    table = [to_fraction(y) for _, y in points]
    k = len(xs)
    newton = [table[0]]
    for level in range(1, k):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(k - level)
        ]
        newton.append(table[0])
    coeffs = [Fraction(0)] * k
    # Horner-style expansion of the Newton form
    for level in range(k - 1, -1, -1):
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [shifted[i] - xs[level] * coeffs[i] for i in range(k)]
        coeffs[0] += newton[level]
    return coeffs


def g_scaled_coefficients(shape: Sequence[int], qs: Sequence) -> list[Fraction]:
    """Coefficients of t -> g_shape(t q_1, ..., t q_n), a polynomial of
    degree at most |shape|, recovered by exact interpolation."""
    qs = [to_fraction(q) for q in qs]
    deg = sum(shape)
    pts = []
    for t in range(1, deg + 2):
        pts.append((t, g_eval_combinatorial(shape, [t * q for q in qs])))
    return interpolate(pts)


def permuted(qs: Sequence) -> list[tuple]:
    """All distinct orderings of ``qs``."""
    return sorted(set(itertools.permutations(qs)))
