import itertools
import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from dualgroth.lpp import (
    BudgetExceeded,
    GeometricParams,
    closed_form_distribution,
    cdf_distribution,
    column_vector,
    last_passage,
    marginal_cdf,
    monte_carlo_distribution,
    oracle_distribution,
    reverse_params,
    rotate,
    sample_weights,
    sample_weights_batch,
    single_point_cdf,
    tail_bound,
    theorem_distribution,
    weight_probability,
    z_scores,
)
from dualgroth.partitions import enumerate_partitions, is_partition, subpartitions
from dualgroth.symfunc import h_eval

from oracles import max_path_weight

HALF, THIRD, FIFTH = F(1, 2), F(1, 3), F(1, 5)


def geometric(q, k):
    return (1 - q) * q**k


def test_params_validation():
    with pytest.raises(ValueError):
        GeometricParams(1, 1, (F(1),))
    with pytest.raises(ValueError):
        GeometricParams(1, 2, (HALF,))
    with pytest.raises(ValueError):
        GeometricParams(0, 1, (HALF,))
    with pytest.raises(ValueError):
        theorem_distribution(GeometricParams(1, 1, (HALF,)), (1, 1))


def test_last_passage_examples():
    w = [[1, 2], [0, 3]]
    g = last_passage(w)
    assert g[1, 1] == max_path_weight(w, (0, 0), (1, 1)) == 6
    assert g[0, 1] == 3
    assert column_vector(g, 2) == (6, 3)
    assert not last_passage(np.zeros((2, 3), dtype=int)).any()
    assert last_passage([[1, 2, 3]]).tolist() == [[1, 3, 6]]
    assert column_vector(last_passage([[1, 2, 3]]), 2) == (3,)


def test_last_passage_matches_path_enumeration():
    rng = np.random.default_rng(5)
    for _ in range(30):
        w = rng.integers(0, 4, size=(3, 3))
        g = last_passage(w)
        for i, j in itertools.product(range(3), range(3)):
            assert g[i, j] == max_path_weight(w.tolist(), (0, 0), (i, j))
        assert is_partition(column_vector(g))


def test_sampling_is_deterministic():
    p = GeometricParams(2, 3, (HALF, THIRD, FIFTH))
    a = sample_weights(p, 11, 12345)
    b = sample_weights(p, 11, 12345)
    assert np.array_equal(a, b)
    batch = sample_weights_batch(p, 11, 12340, 10)
    assert np.array_equal(batch[5], a)
    assert a.shape == (2, 3) and (a >= 0).all()


def test_sample_mean_geometric_half():
    p = GeometricParams(1, 1, (HALF,))
    draws = sample_weights_batch(p, 3, 0, 10**6)[:, 0, 0]
    assert abs(draws.mean() - 1.0) < 0.01


def test_sample_column_means_z():
    qs = (HALF, THIRD, FIFTH)
    p = GeometricParams(1, 3, qs)
    n = 200_000
    draws = sample_weights_batch(p, 8, 0, n)[:, 0, :]
    for j, q in enumerate(qs):
        q = float(q)
        mean, var = q / (1 - q), q / (1 - q) ** 2
        z = abs(draws[:, j].mean() - mean) / math.sqrt(var / n)
        assert z < 4


def test_theorem_distribution_examples():
    p = GeometricParams(1, 1, (HALF,))
    for a in range(6):
        assert theorem_distribution(p, (a,)) == HALF ** (a + 1)
    p = GeometricParams(1, 2, (HALF, THIRD))
    conv = geometric(HALF, 1) * geometric(THIRD, 0) + geometric(HALF, 0) * geometric(THIRD, 1)
    assert theorem_distribution(p, (1,)) == conv == F(5, 18)
    p = GeometricParams(2, 2, (HALF, THIRD))
    assert theorem_distribution(p, (2, 1)) == F(2, 27)
    assert theorem_distribution(p, (2, 1), method="pp") == F(2, 27)


def test_cdf_examples():
    for q in (HALF, THIRD):
        p = GeometricParams(1, 1, (q,))
        for a in range(5):
            assert cdf_distribution(p, (a,)) == 1 - q ** (a + 1)
    p = GeometricParams(1, 2, (HALF, THIRD))
    assert cdf_distribution(p, (1,)) == F(11, 18)
    assert cdf_distribution(p, (1,)) == sum(theorem_distribution(p, (a,)) for a in (0, 1))


def test_cdf_is_sum_of_point_masses():
    p = GeometricParams(2, 2, (HALF, THIRD))
    for top in subpartitions((2, 2)):
        finite = sum(theorem_distribution(p, lam) for lam in subpartitions(top))
        assert cdf_distribution(p, top) == finite


def test_single_point_cdf_examples():
    q = THIRD
    for a in range(5):
        assert single_point_cdf(1, 1, (q,), a) == 1 - q ** (a + 1)
    # G(2,1) = w11 + w21 <= 1 on a 2x1 matrix
    brute = sum(geometric(HALF, x) * geometric(HALF, y) for x in range(2) for y in range(2) if x + y <= 1)
    assert single_point_cdf(2, 1, (HALF,), 1) == brute == HALF
    for m in (1, 2):
        for qs in [(HALF,), (HALF, THIRD)]:
            for a in range(4):
                assert single_point_cdf(m, len(qs), qs, a) == cdf_distribution(
                    GeometricParams(m, len(qs), qs), (a,) * m)


def test_marginal_cdf():
    qs = (HALF, THIRD, FIFTH)
    p = GeometricParams(3, 3, qs)
    for a in range(4):
        assert marginal_cdf(p, 1, a) == single_point_cdf(3, 3, qs, a)
        for k in (1, 2, 3):
            assert marginal_cdf(p, k, a) == marginal_cdf(p.with_m(3 - k + 1), 1, a)
    # m = 1: law of a sum of independent geometrics
    p1 = GeometricParams(1, 2, (HALF, THIRD))
    for a in range(4):
        brute = sum(geometric(HALF, x) * geometric(THIRD, y)
                    for x in range(a + 1) for y in range(a + 1) if x + y <= a)
        assert marginal_cdf(p1, 1, a) == brute
    with pytest.raises(ValueError):
        marginal_cdf(p, 4, 1)


def test_oracle_small_cases():
    p = GeometricParams(1, 1, (HALF,))
    o = oracle_distribution(p, 10)
    assert o.tail_bound == F(1, 2**11)
    for a in range(11):
        assert o.mass((a,)) == HALF ** (a + 1)
    assert 1 - o.tail_bound <= o.total() <= 1
    p = GeometricParams(2, 2, (HALF, THIRD))
    o = oracle_distribution(p, 6)
    assert abs(o.mass((2, 1)) - F(2, 27)) <= o.tail_bound


def test_oracle_matches_direct_enumeration():
    p = GeometricParams(2, 2, (HALF, THIRD))
    cap = 3
    brute = {}
    for flat in itertools.product(range(cap + 1), repeat=4):
        w = [flat[:2], flat[2:]]
        lam = column_vector(last_passage(w))
        brute[lam] = brute.get(lam, F(0)) + weight_probability(p, w)
    assert oracle_distribution(p, cap).entries == brute


def test_oracle_tail_bound_formula():
    p = GeometricParams(3, 2, (HALF, THIRD))
    assert tail_bound(p, 12) == 3 * (HALF**13 + THIRD**13)


def test_oracle_budget():
    with pytest.raises(BudgetExceeded):
        oracle_distribution(GeometricParams(3, 3, (HALF, THIRD, FIFTH)), 12, budget=10**6)


@pytest.mark.parametrize("m, n", [(1, 2), (2, 2), (3, 1), (1, 3)])
def test_theorem_against_oracle(m, n):
    p = GeometricParams(m, n, (HALF, THIRD, FIFTH)[:n])
    o = oracle_distribution(p, 9)
    for lam in enumerate_partitions(m, 4):
        assert abs(o.mass(lam) - theorem_distribution(p, lam)) <= o.tail_bound


def test_rotation_symmetry_exact():
    p = GeometricParams(2, 3, (HALF, THIRD, FIFTH))
    rev = oracle_distribution(reverse_params(p), 4)
    rot = oracle_distribution(p, 4, statistic="max-paths")
    assert rev.entries == rot.entries


def test_rotate_helper_maps_columns_to_paths():
    w = np.array([[1, 0, 2], [3, 1, 0]])
    g = last_passage(rotate(w))
    from dualgroth.bijection import shape_via_max_paths
    assert column_vector(g) == shape_via_max_paths(w.tolist())


def test_closed_form_distribution_mass():
    p = GeometricParams(2, 2, (HALF, THIRD))
    d = closed_form_distribution(p, 6)
    assert d.total() + d.tail_bound == 1
    d1 = closed_form_distribution(GeometricParams(1, 1, (HALF,)), 3)
    assert [d1.mass((a,)) for a in range(4)] == [F(1, 2), F(1, 4), F(1, 8), F(1, 16)]


def test_json_schema():
    p = GeometricParams(2, 2, (HALF, THIRD))
    data = json.loads(oracle_distribution(p, 2).to_json())
    assert set(data) == {"m", "n", "q", "provenance", "tail_bound", "entries"}
    assert data["q"] == ["1/2", "1/3"]
    assert data["provenance"] == "oracle(cap=2)"
    assert all(set(e) == {"lambda", "p"} and len(e["lambda"]) == 2 for e in data["entries"])
    F(data["tail_bound"])
    mc = json.loads(monte_carlo_distribution(p, 500, seed=1).to_json())
    assert mc["samples"] == 500 and mc["seed"] == 1
    assert all(isinstance(float(e["p"]), float) and "/" not in e["p"] for e in mc["entries"])


def test_monte_carlo_worker_independence():
    p = GeometricParams(2, 3, (HALF, THIRD, FIFTH))
    a = monte_carlo_distribution(p, 20_000, seed=4, workers=1)
    b = monte_carlo_distribution(p, 20_000, seed=4, workers=3)
    assert a.to_json() == b.to_json()
    assert sum(a.counts.values()) == 20_000


def test_monte_carlo_matches_per_stream_samples():
    p = GeometricParams(2, 2, (HALF, THIRD))
    d = monte_carlo_distribution(p, 50, seed=9)
    manual = {}
    for s in range(50):
        lam = column_vector(last_passage(sample_weights(p, 9, s)))
        manual[lam] = manual.get(lam, 0) + 1
    assert d.counts == manual


def test_monte_carlo_z_scores_2x2():
    p = GeometricParams(2, 2, (HALF, THIRD))
    d = monte_carlo_distribution(p, 10**6, seed=123)
    exact = {lam: theorem_distribution(p, lam) for lam in enumerate_partitions(2, 30)}
    z = z_scores(d, exact)
    assert z[(2, 1)] < 4
    assert max(z.values()) < 4
    # last part is the sum of two geometrics
    for a in range(5):
        pa = sum(geometric(HALF, x) * geometric(THIRD, a - x) for x in range(a + 1))
        freq = sum(c for lam, c in d.counts.items() if lam[-1] == a) / d.samples
        assert abs(freq - float(pa)) / math.sqrt(float(pa * (1 - pa)) / d.samples) < 4
