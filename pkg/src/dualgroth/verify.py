"""Named verification suites.

Each suite runs a list of checks and collects them into a
:class:`SuiteReport`.  Checks are exact (rational equality), bounded
(an exact inequality against a recorded error budget) or statistical
(z-scores, with one retry on a fresh seed).
"""

from __future__ import annotations

import itertools
import json
import logging
from math import comb
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Callable

from . import bijection, lpp, partitions, plancherel, symfunc
from .lpp import BudgetExceeded, GeometricParams
from .partitions import enumerate_partitions, pad

log = logging.getLogger(__name__)

SUITES = ("bijection", "theorem-main", "corollaries", "identities", "plancherel")

PAPER_PP = ((4, 4, 2), (4, 2, 1), (2, 2))
PAPER_D = ((0, 1, 0, 1), (1, 0, 0, 1), (0, 2, 0, 0))
DEFAULT_QS = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))


@dataclass
class Check:
    id: str
    ref: str
    mode: str  # exact | bounded | statistical
    passed: bool
    witness: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    name: str
    checks: list[Check]
    config: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "config": self.config,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'PASS' if c.passed else 'FAIL'}] {c.id} ({c.mode}; {c.ref})")
        return "\n".join(lines) + "\n"


@dataclass
class SuiteConfig:
    qs: tuple[Fraction, ...] = DEFAULT_QS
    sizes: tuple[tuple[int, int], ...] = ((1, 1), (1, 2), (2, 2), (2, 3), (3, 2))
    max_part: int = 4
    cap: int = 12
    mc_size: tuple[int, int] = (3, 3)
    samples: int = 10**6
    seed: int = 2024
    workers: int = 1
    determinism_workers: int = 8
    z_threshold: float = 4.0
    min_p: float = 1e-3
    truncation: int = 20
    # identities: optional single context overriding the default grid
    m: int | None = None
    n: int | None = None
    a: int | None = None
    k: int | str | None = None
    word_sizes: tuple[tuple[int, int], ...] = ((2, 2), (2, 4), (3, 3))
    gamma: Fraction = Fraction(1)
    n_values: tuple[int, ...] = (10, 20, 40, 80)

    @classmethod
    def for_size(cls, size: str = "medium", **overrides) -> "SuiteConfig":
        if size == "small":
            base = cls(cap=8, samples=2 * 10**5, max_part=3, determinism_workers=2)
        elif size == "medium":
            base = cls()
        else:
            raise ValueError(f"unknown size {size!r}")
        if "q" in overrides:
            overrides["qs"] = tuple(Fraction(x) for x in overrides.pop("q"))
        return replace(base, **overrides)

    def echo(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            # worker count never changes results, so it stays out of the report
            if v is None or k == "workers":
                continue
            out[k] = json.loads(json.dumps(v, default=str))
        return out


def _s(x) -> str:
    return str(x)


class _Recorder:
    def __init__(self):
        self.checks: list[Check] = []

    def add(self, id: str, ref: str, mode: str, passed: bool, **witness):
        self.checks.append(Check(id, ref, mode, bool(passed), {k: _s(v) for k, v in witness.items()}))
        log.debug("%s: %s", id, "pass" if passed else "FAIL")

    def guarded(self, id: str, ref: str, mode: str, fn: Callable[[], None]):
        try:
            fn()
        except BudgetExceeded as exc:
            self.add(id, ref, mode, False, error=f"budget exceeded: {exc}")


# -- bijection --------------------------------------------------------------

def _suite_bijection(cfg: SuiteConfig) -> list[Check]:
    r = _Recorder()
    d = bijection.phi(PAPER_PP, 3, 4)
    r.add("phi-worked-example", "descent matrix example", "exact", d == PAPER_D, got=d)
    back = bijection.phi_inverse(PAPER_D)
    r.add("phi-inverse-worked-example", "descent matrix example", "exact", back == PAPER_PP, got=back)
    r.add("lemma-one-worked-example", "Lemma one", "exact",
          bijection.shape_via_max_paths(PAPER_D) == (3, 3, 2))

    m = n = w = 3
    pps = list(partitions.enumerate_pp_bounded(m, n, w))
    bad_round = bad_shape = bad_cols = bad_prob = 0
    params = GeometricParams(m, n, cfg.qs[:n] if len(cfg.qs) >= n else DEFAULT_QS)
    for pp in pps:
        dm = bijection.phi(pp, m, n)
        if bijection.phi_inverse(dm) != pp:
            bad_round += 1
        if bijection.shape_via_max_paths(dm) != pad(partitions.plane_shape(pp), m):
            bad_shape += 1
        cols = tuple(sum(row[l] for row in dm) for l in range(n))
        if cols != tuple(partitions.column_content(pp, l) for l in range(1, n + 1)):
            bad_cols += 1
        expected = params.normalizer()
        for l, c in enumerate(cols):
            expected *= params.qs[l] ** c
        if lpp.weight_probability(params, dm) != expected:
            bad_prob += 1
    r.add("roundtrip-plane-partitions", "phi is a bijection", "exact", bad_round == 0,
          checked=len(pps), failures=bad_round)
    r.add("lemma-one-plane-partitions", "Lemma one", "exact", bad_shape == 0,
          checked=len(pps), failures=bad_shape)
    r.add("column-sums", "Lemma gen: sum_i d_il = c_l", "exact", bad_cols == 0,
          checked=len(pps), failures=bad_cols)
    r.add("lemma-gen-probability", "Lemma gen", "exact", bad_prob == 0,
          checked=len(pps), failures=bad_prob)

    bad_round = bad_shape = total = 0
    for flat in itertools.product(range(3), repeat=9):
        dm = (flat[0:3], flat[3:6], flat[6:9])
        total += 1
        pp = bijection.phi_inverse(dm)
        if bijection.phi(pp, 3, 3) != dm:
            bad_round += 1
        if bijection.shape_via_max_paths(dm) != pad(partitions.plane_shape(pp), 3):
            bad_shape += 1
    r.add("roundtrip-matrices", "phi is a bijection", "exact", bad_round == 0,
          checked=total, failures=bad_round)
    r.add("lemma-one-matrices", "Lemma one", "exact", bad_shape == 0,
          checked=total, failures=bad_shape)

    padded = tuple(row + (0, 0) for row in PAPER_D)
    r.add("trailing-zero-columns", "phi inverse on padded matrices", "exact",
          bijection.phi_inverse(padded) == PAPER_PP)
    return r.checks


# -- theorem main -----------------------------------------------------------

def _params(m: int, n: int, qs) -> GeometricParams:
    return GeometricParams(m, n, tuple(qs[:n]))


def _suite_theorem_main(cfg: SuiteConfig) -> list[Check]:
    r = _Recorder()
    for m, n in cfg.sizes:
        params = _params(m, n, cfg.qs)

        def run(m=m, n=n, params=params):
            oracle = lpp.oracle_distribution(params, cfg.cap, workers=cfg.workers)
            worst = Fraction(0)
            for lam in enumerate_partitions(m, cfg.max_part):
                diff = abs(oracle.mass(lam) - lpp.theorem_distribution(params, lam))
                worst = max(worst, diff)
            mass = oracle.total()
            ok = worst <= oracle.tail_bound and 1 - oracle.tail_bound <= mass <= 1
            r.add(f"oracle-vs-closed-form-{m}x{n}", "Theorem main", "bounded", ok,
                  cap=cfg.cap, max_abs_diff=worst, tail_bound=oracle.tail_bound,
                  tail_bound_float=float(oracle.tail_bound), mass=float(mass))

        r.guarded(f"oracle-vs-closed-form-{m}x{n}", "Theorem main", "bounded", run)

    def reversal():
        for m, n in [(2, 2), (2, 3)]:
            params = _params(m, n, cfg.qs)
            rev = lpp.oracle_distribution(lpp.reverse_params(params), cfg.cap, workers=cfg.workers)
            rot = lpp.oracle_distribution(params, cfg.cap, workers=cfg.workers, statistic="max-paths")
            r.add(f"rotation-symmetry-{m}x{n}", "proof of Theorem main (matrix reversal)",
                  "exact", rev.entries == rot.entries, cells=len(rev.entries))

    r.guarded("rotation-symmetry", "proof of Theorem main", "exact", reversal)

    def permutations():
        for m, n in [(2, 2), (1, 3)]:
            base = _params(m, n, cfg.qs)
            ref = lpp.oracle_distribution(base, cfg.cap, workers=cfg.workers)
            worst = Fraction(0)
            for perm in symfunc.permuted(base.qs):
                other = lpp.oracle_distribution(GeometricParams(m, n, perm), cfg.cap,
                                                workers=cfg.workers)
                for lam in set(ref.entries) | set(other.entries):
                    worst = max(worst, abs(ref.mass(lam) - other.mass(lam)))
            r.add(f"oracle-permutation-invariance-{m}x{n}", "parameter symmetry corollary",
                  "bounded", worst <= 2 * ref.tail_bound, max_abs_diff=float(worst),
                  bound=float(2 * ref.tail_bound))

    r.guarded("oracle-permutation-invariance", "parameter symmetry corollary", "bounded", permutations)

    m, n = cfg.mc_size
    params = _params(m, n, cfg.qs)
    exact = lpp.exact_entries(params, enumerate_partitions(m, 30))
    leftover = 1 - lpp.single_point_cdf(m, n, params.qs, 30)
    seeds = [cfg.seed, cfg.seed + 1_000_003]
    for attempt, seed in enumerate(seeds):
        dist = lpp.monte_carlo_distribution(params, cfg.samples, seed=seed, workers=cfg.workers)
        z = lpp.z_scores(dist, exact, min_p=cfg.min_p)
        worst = max(z.values())
        ok = worst < cfg.z_threshold and float(leftover) < cfg.min_p
        if ok or attempt == len(seeds) - 1:
            r.add(f"monte-carlo-{m}x{n}", "Theorem main", "statistical", ok,
                  samples=cfg.samples, seed=seed, attempt=attempt + 1, cells=len(z),
                  max_z=round(worst, 6), threshold=cfg.z_threshold)
            break

    small = min(cfg.samples, 10**5)
    one = lpp.monte_carlo_distribution(params, small, seed=cfg.seed, workers=1)
    many = lpp.monte_carlo_distribution(params, small, seed=cfg.seed, workers=cfg.determinism_workers)
    r.add("monte-carlo-determinism", "seeded reproducibility", "exact",
          one.to_json() == many.to_json(), samples=small,
          workers=f"1 vs {cfg.determinism_workers}")
    r.add("column-vector-is-partition", "G(i, n) monotone in i", "exact",
          all(partitions.is_partition(lam) for lam in one.entries))
    return r.checks


# -- corollaries ------------------------------------------------------------

def _suite_corollaries(cfg: SuiteConfig) -> list[Check]:
    r = _Recorder()
    half_third = (Fraction(1, 2), Fraction(1, 3))
    worked = symfunc.g_eval_combinatorial((2, 1), half_third)
    r.add("worked-g21", "g_(2,1)(1/2, 1/3) = 2/3", "exact",
          worked == Fraction(2, 3) == symfunc.g_eval_det_h((2, 1), 2, half_third)
          == symfunc.g_eval_det_e((2, 1), half_third), value=worked)

    pool = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 7))
    bad = total = 0
    for length in (1, 2, 3):
        for qs in itertools.combinations_with_replacement(pool, length):
            for lam in partitions.subpartitions((4, 4, 4)):
                total += 1
                a = symfunc.g_eval_combinatorial(lam, qs)
                if not a == symfunc.g_eval_det_h(lam, 3, qs) == symfunc.g_eval_det_e(lam, qs):
                    bad += 1
    r.add("determinantal-formulas", "Corollary det (h and e forms)", "exact", bad == 0,
          checked=total, failures=bad)

    bad = total = 0
    for qs in [(Fraction(1, 2),), half_third, DEFAULT_QS]:
        for lam in partitions.subpartitions((3, 3, 3)):
            total += 1
            if symfunc.g_branching_sum(lam, qs) != symfunc.g_eval_det_h(lam, 3, qs, ones=1):
                bad += 1
    r.add("branching-relation", "branching relation", "exact", bad == 0, checked=total, failures=bad)

    params = GeometricParams(2, 2, half_third)
    bad = 0
    for top in partitions.subpartitions((2, 2)):
        finite = sum((lpp.theorem_distribution(params, lam)
                      for lam in partitions.subpartitions(top)), Fraction(0))
        if finite != lpp.cdf_distribution(params, top):
            bad += 1
    r.add("cdf-equals-point-mass-sum", "Corollary le", "exact", bad == 0, failures=bad)

    bad = total = 0
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            p = _params(m, n, cfg.qs)
            for a in range(4):
                total += 1
                if lpp.single_point_cdf(m, n, p.qs, a) != lpp.cdf_distribution(p, (a,) * m):
                    bad += 1
    r.add("schur-single-point", "Corollary schur", "exact", bad == 0, checked=total, failures=bad)

    bad = total = 0
    for m in (1, 2):
        for lam in enumerate_partitions(m, 3):
            ref = lpp.theorem_distribution(GeometricParams(m, 3, DEFAULT_QS), lam, method="pp")
            for perm in symfunc.permuted(DEFAULT_QS):
                total += 1
                if lpp.theorem_distribution(GeometricParams(m, 3, perm), lam, method="pp") != ref:
                    bad += 1
    r.add("closed-form-permutation-invariance", "parameter symmetry corollary", "exact",
          bad == 0, checked=total, failures=bad)

    bad = total = 0
    for lam in partitions.subpartitions((3, 2, 1)):
        coeffs = symfunc.g_scaled_coefficients(lam, half_third)
        d = sum(lam)
        total += 1
        if coeffs[d] != symfunc.schur_eval(lam, half_third):
            bad += 1
    r.add("top-degree-is-schur", "g = s + lower degree terms", "exact", bad == 0,
          checked=total, failures=bad)

    bad = 0
    for n in (1, 2, 3):
        qs = DEFAULT_QS[:n]
        for a in range(9):
            lhs = symfunc.h_eval(a, symfunc.EvalPoint(1, qs)) - symfunc.h_eval(a - 1, symfunc.EvalPoint(1, qs))
            if lhs != symfunc.h_eval(a, qs):
                bad += 1
    r.add("h-recurrence", "h_a(1,q) - h_{a-1}(1,q) = h_a(q)", "exact", bad == 0, failures=bad)
    return r.checks


# -- identities -------------------------------------------------------------

def negative_binomial_tail(count: int, q: Fraction, level: int) -> Fraction:
    """P(X > level) for X a sum of ``count`` iid geometric(q) variables."""
    head = sum((comb(k + count - 1, k) * q**k for k in range(level + 1)), Fraction(0))
    return 1 - (1 - q) ** count * head


def _identity_contexts(cfg: SuiteConfig):
    if cfg.m is not None:
        qs = cfg.qs[: cfg.n] if cfg.n is not None else cfg.qs
        return [(cfg.m, tuple(qs))]
    return [(1, DEFAULT_QS[:1]), (2, DEFAULT_QS[:2]), (2, DEFAULT_QS), (3, DEFAULT_QS[:2])]


def _suite_identities(cfg: SuiteConfig) -> list[Check]:
    r = _Recorder()
    L = cfg.truncation
    a_values = [cfg.a] if cfg.a is not None else list(range(4))
    for m, qs in _identity_contexts(cfg):
        n = len(qs)
        params = GeometricParams(m, n, qs)
        tag = f"m{m}-n{n}"
        g = {lam: symfunc.g_eval_det_h(lam, m, qs) for lam in enumerate_partitions(m, L)}
        full = 1 / params.normalizer()

        partial = [sum((v for lam, v in g.items() if lam[0] <= width), Fraction(0))
                   for width in range(L + 1)]
        increasing = all(partial[i] < partial[i + 1] for i in range(L))
        gap = full - partial[L]
        bound = full * negative_binomial_tail(m * n, max(qs), L)
        r.add(f"normalization-{tag}", "sum over P_m of g = prod (1-q)^-m", "bounded",
              increasing and 0 <= gap <= bound, truncation=L, gap=float(gap), bound=float(bound))
        tail = gap  # exact mass of g outside lam_1 <= L

        k_values = [m] if cfg.k == "m" else ([int(cfg.k)] if cfg.k is not None else range(1, m + 1))
        for k in k_values:
            if not 1 <= k <= m:
                continue
            h = m - k + 1
            for a in a_values:
                target = Fraction(1)
                for q in qs:
                    target *= (1 - q) ** (1 - k)
                target *= symfunc.schur_eval((a,) * h, symfunc.EvalPoint(h, qs))
                got = sum((v for lam, v in g.items() if lam[k - 1] <= a), Fraction(0))
                if k == 1:
                    ok, mode = got == target, "exact"
                else:
                    ok, mode = 0 <= target - got <= tail, "bounded"
                r.add(f"partial-sum-k{k}-a{a}-{tag}", "partial-sum theorem", mode, ok,
                      value=got if k == 1 else float(got), target=target if k == 1 else float(target),
                      gap=target - got if k == 1 else float(target - got))

        for a in a_values:
            target = symfunc.h_eval(a, qs)
            for q in qs:
                target *= (1 - q) ** (1 - m)
            got = sum((v for lam, v in g.items() if lam[m - 1] == a), Fraction(0))
            gap = target - got
            r.add(f"last-part-corollary-a{a}-{tag}", "k = m corollary", "bounded",
                  0 <= gap <= tail, truncation=L, gap=gap, gap_float=float(gap), bound=float(tail))

        # shift invariance and the law of the last part
        for k in range(1, m + 1):
            h = m - k + 1
            for a in range(4):
                lhs = lpp.marginal_cdf(params, k, a)
                shifted = lpp.marginal_cdf(params.with_m(h), 1, a)
                via_g = lpp.cdf_distribution(params.with_m(h), (a,) * h)
                r.add(f"shift-invariance-k{k}-a{a}-{tag}", "shift invariance of marginals",
                      "exact", lhs == shifted == via_g, value=lhs)
                truncated = params.normalizer() * sum(
                    (v for lam, v in g.items() if lam[k - 1] <= a), Fraction(0))
                r.add(f"marginal-vs-point-masses-k{k}-a{a}-{tag}", "marginal distributions",
                      "bounded", 0 <= lhs - truncated <= params.normalizer() * tail,
                      gap=float(lhs - truncated))
        conv = [Fraction(1)]
        for q in qs:
            geo = [(1 - q) * q**j for j in range(4)]
            conv = [sum((conv[i] * geo[s - i] for i in range(len(conv)) if 0 <= s - i < 4), Fraction(0))
                    for s in range(4)]
        ok = all(lpp.marginal_cdf(params, m, a) == sum(conv[: a + 1], Fraction(0)) for a in range(4))
        r.add(f"last-part-is-geometric-sum-{tag}", "lambda_m distributed as sum of W_i", "exact", ok)
    return r.checks


# -- plancherel -------------------------------------------------------------

def _suite_plancherel(cfg: SuiteConfig) -> list[Check]:
    r = _Recorder()
    for m, n in cfg.word_sizes:
        def run(m=m, n=n):
            dist = plancherel.word_distribution_exhaustive(m, n, workers=cfg.workers)
            gpl = plancherel.gpl_distribution(m, n)
            r.add(f"words-vs-gpl-{m}x{n}", "random-word theorem", "exact",
                  dist.entries == gpl, cells=len(gpl))
            check = plancherel.lambda_m_binomial_check(m, n)
            r.add(f"last-part-binomial-{m}x{n}", "lambda_m ~ Binomial(n, 1/m)", "exact", check["equal"])
        r.guarded(f"words-{m}x{n}", "random-word theorem", "exact", run)

    bad = 0
    for m in (1, 2, 3):
        for n in range(0, 6):
            if sum(plancherel.gpl_distribution(m, n).values(), Fraction(0)) != 1:
                bad += 1
    r.add("gpl-is-probability", "P_gpl lemma", "exact", bad == 0, failures=bad)

    bad = 0
    for m, n in cfg.word_sizes:
        for word in itertools.product(range(1, m + 1), repeat=n):
            stats = plancherel.word_L_stats(word, m)
            if stats[-1] != word.count(m) or not partitions.is_partition(stats) or stats[0] > n:
                bad += 1
    r.add("L1-counts-top-letter", "L_1(w) is the number of m's", "exact", bad == 0, failures=bad)

    for lam in [(), (1,), (1, 1)]:
        rows = plancherel.plancherel_limit_check(2, lam, cfg.gamma, cfg.n_values)
        diffs = [row["abs_diff"] for row in rows]
        r.add(f"plancherel-limit-{'-'.join(map(str, lam)) or 'empty'}", "Plancherel limit",
              "bounded", all(a > b for a, b in zip(diffs, diffs[1:])),
              rhs=rows[0]["rhs"], diffs=[round(x, 12) for x in diffs])
    return r.checks


_RUNNERS = {
    "bijection": _suite_bijection,
    "theorem-main": _suite_theorem_main,
    "corollaries": _suite_corollaries,
    "identities": _suite_identities,
    "plancherel": _suite_plancherel,
}


def run_suite(name: str, config: SuiteConfig | dict | None = None) -> SuiteReport:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if config is None:
        config = SuiteConfig()
    elif isinstance(config, dict):
        config = SuiteConfig.for_size(**config)
    checks = _RUNNERS[name](config)
    return SuiteReport(name, checks, config.echo())
