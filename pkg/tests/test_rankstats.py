from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from tsadkit.core import ValidationError
from tsadkit.rankstats import (
    RankTable,
    average_ranks,
    compare_to_best,
    friedman,
    hochberg_stepup,
)
from reference import friedman_naive, hochberg_naive, midranks

FIXTURE = Path(__file__).parent / "data" / "benchmark_fc1.csv"


def table_of(values, higher=True):
    values = np.asarray(values, dtype=np.float64)
    k, n = values.shape
    return RankTable(values, tuple(f"m{i}" for i in range(k)),
                     tuple(f"g{j}" for j in range(n)))


class TestRankTable:
    def test_shape_validation(self):
        with pytest.raises(ValidationError):
            table_of(np.zeros((1, 3)))  # single method
        with pytest.raises(ValidationError):
            table_of(np.zeros((3, 1)))  # single group
        with pytest.raises(ValidationError):
            RankTable(np.zeros((2, 2)), ("a", "a"), ("g0", "g1"))

    def test_rejects_nan(self):
        bad = np.array([[0.1, np.nan], [0.2, 0.3]])
        with pytest.raises(ValidationError):
            table_of(bad)

    def test_from_csv(self):
        table = RankTable.from_csv(FIXTURE)
        assert table.k == 13 and table.n_groups == 7
        assert table.method_names[2] == "UAE"
        assert table.group_names == ("DMDS", "MSL", "SKAB", "SMAP", "SMD", "SWaT", "WADI")
        assert table.values[2, 0] == pytest.approx(0.6378)


class TestAverageRanks:
    def test_two_methods(self):
        ranks = average_ranks(table_of([[0.9, 0.8], [0.1, 0.2]]))
        assert list(ranks) == [1.0, 2.0]

    def test_midrank_ties(self):
        ranks = average_ranks(table_of([[0.5, 0.9], [0.5, 0.1]]))
        assert list(ranks) == [1.25, 1.75]

    def test_lower_is_better_flag(self):
        ranks = average_ranks(table_of([[0.9, 0.9], [0.1, 0.1]]), higher_is_better=False)
        assert list(ranks) == [2.0, 1.0]

    def test_group_rank_sum_invariant(self):
        rng = np.random.default_rng(33)
        for _ in range(50):
            k, n = int(rng.integers(2, 10)), int(rng.integers(2, 8))
            values = np.round(rng.random((k, n)), 1)
            ranks = average_ranks(table_of(values))
            assert ranks.sum() * n == pytest.approx(n * k * (k + 1) / 2)
            for j in range(n):
                col = values[:, j]
                expected = midranks([-v for v in col])
                got = stats.rankdata(-col)
                assert np.allclose(expected, got)

    def test_benchmark_fixture_ranks(self):
        table = RankTable.from_csv(FIXTURE)
        ranks = average_ranks(table)
        by_name = dict(zip(table.method_names, ranks))
        assert by_name["UAE"] == pytest.approx(1.5714, abs=1e-3)
        assert by_name["DAGMM"] == pytest.approx(12.8571, abs=1e-3)
        assert by_name["Raw Signal"] == pytest.approx(9.2857, abs=1e-3)


class TestFriedman:
    def test_identical_methods(self):
        stat, p = friedman(table_of([[0.5, 0.5], [0.5, 0.5], [0.5, 0.5]]))
        assert stat == pytest.approx(0.0, abs=1e-12)
        assert p == pytest.approx(1.0)

    def test_needs_three_methods(self):
        with pytest.raises(ValidationError):
            friedman(table_of([[0.9, 0.8], [0.1, 0.2]]))

    def test_hand_sized_oracle(self):
        values = [[0.9, 0.7, 0.8], [0.5, 0.6, 0.4], [0.1, 0.2, 0.3]]
        stat, p = friedman(table_of(values))
        # clean 1-2-3 ranking in every group
        assert stat == pytest.approx(friedman_naive([1.0, 2.0, 3.0], 3, 3))
        assert 0.0 < p < 1.0

    def test_matches_definition_random(self):
        rng = np.random.default_rng(44)
        for _ in range(30):
            k, n = int(rng.integers(3, 8)), int(rng.integers(2, 9))
            values = rng.random((k, n))
            table = table_of(values)
            stat, p = friedman(table)
            ranks = average_ranks(table)
            assert stat == pytest.approx(friedman_naive(list(ranks), k, n), rel=1e-12)
            assert p == pytest.approx(stats.chi2.sf(stat, k - 1), rel=1e-8)

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(45)
        values = rng.random((5, 4))
        base = friedman(table_of(values))[0]
        warped = friedman(table_of(np.exp(3 * values)))[0]
        assert warped == pytest.approx(base, rel=1e-12)

    def test_benchmark_fixture_statistic(self):
        # 13 methods x 7 datasets: huge separation, tiny p
        stat, p = friedman(RankTable.from_csv(FIXTURE))
        assert stat == pytest.approx(56.7786, abs=1e-3)
        assert p < 1e-6


class TestHochberg:
    def test_single_small_p(self):
        assert list(hochberg_stepup([0.01], alpha=0.05)) == [True]

    def test_pair_at_top_step(self):
        # both 0.04 <= 0.05/1 at the largest step, so both reject
        assert list(hochberg_stepup([0.04, 0.04], alpha=0.05)) == [True, True]

    def test_all_large(self):
        assert list(hochberg_stepup([0.9, 0.9, 0.9], alpha=0.05)) == [False] * 3

    def test_matches_naive_walk(self):
        rng = np.random.default_rng(46)
        for _ in range(200):
            h = int(rng.integers(1, 12))
            p = np.round(rng.random(h), 2)
            got = hochberg_stepup(p, alpha=0.05)
            assert list(got) == hochberg_naive(list(p), 0.05)

    def test_superset_of_bonferroni(self):
        rng = np.random.default_rng(47)
        for _ in range(200):
            h = int(rng.integers(1, 10))
            p = rng.random(h)
            hoch = hochberg_stepup(p, alpha=0.05)
            bonf = p <= 0.05 / h
            assert np.all(hoch | ~bonf)  # bonf implies hoch

    def test_p_value_bounds(self):
        with pytest.raises(ValidationError):
            hochberg_stepup([1.2])
        with pytest.raises(ValidationError):
            hochberg_stepup([])


class TestCompareToBest:
    def test_summary_fields(self):
        rng = np.random.default_rng(48)
        values = rng.random((5, 6))
        summary = compare_to_best(table_of(values))
        assert summary["best_method"] in summary["methods"]
        assert len(summary["average_ranks"]) == 5
        assert len(summary["reject"]) == 5
        best_i = summary["methods"].index(summary["best_method"])
        assert summary["pairwise_p"][best_i] == 1.0
        assert summary["reject"][best_i] is False

    def test_benchmark_best_is_uae(self):
        summary = compare_to_best(RankTable.from_csv(FIXTURE))
        assert summary["best_method"] == "UAE"
        # the clearly separated tail methods lose to the best
        by_name = dict(zip(summary["methods"], summary["reject"]))
        assert by_name["DAGMM"] is True
        assert by_name["OCAN"] is True

    def test_z_formula(self):
        values = np.array([[0.9, 0.8, 0.7], [0.5, 0.6, 0.4], [0.1, 0.2, 0.3]])
        summary = compare_to_best(table_of(values))
        k, n = 3, 3
        scale = np.sqrt(k * (k + 1) / (6 * n))
        assert summary["pairwise_z"][2] == pytest.approx((3.0 - 1.0) / scale)
