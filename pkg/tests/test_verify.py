from fractions import Fraction as F

import pytest

from dualgroth.verify import SUITES, SuiteConfig, negative_binomial_tail, run_suite


@pytest.mark.parametrize("name", SUITES)
def test_small_suites_pass(name):
    report = run_suite(name, {"size": "small"})
    failed = [c.id for c in report.checks if not c.passed]
    assert report.passed, failed


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_identities_worked_partial_sum():
    report = run_suite("identities", {"m": 2, "a": 1, "q": ["1/2"]})
    check = next(c for c in report.checks if c.id == "partial-sum-k1-a1-m2-n1")
    assert check.passed and check.mode == "exact"
    assert check.witness["value"] == "2" and check.witness["target"] == "2"


def test_identities_last_part_corollary_gap():
    report = run_suite("identities", {"k": "m", "m": 2, "a": 1, "n": 1, "q": ["1/2"], "truncation": 20})
    check = next(c for c in report.checks if c.id.startswith("last-part-corollary"))
    assert check.passed
    assert F(check.witness["gap"]) == F(1, 2**20)


def test_reports_are_reproducible():
    cfg = SuiteConfig.for_size("small")
    a = run_suite("theorem-main", cfg).to_json()
    b = run_suite("theorem-main", cfg).to_json()
    assert a == b


def test_every_check_cites_a_statement():
    report = run_suite("corollaries", {"size": "small"})
    assert all(c.ref and c.mode in {"exact", "bounded", "statistical"} for c in report.checks)


def test_negative_binomial_tail():
    q = F(1, 2)
    assert negative_binomial_tail(1, q, 3) == q**4
    # sum of two geometric(1/2): P(X > 1) = 1 - 1/4 - 2/8
    assert negative_binomial_tail(2, q, 1) == F(1, 2)
