import math

import numpy as np
import pytest
from scipy import special

from tsadkit.core import InsufficientDataError, ValidationError
from tsadkit.scoring import (
    SIGMA_FLOOR,
    DynamicWindow,
    GaussParams,
    KernelSpec,
    fit_gauss,
    score_error,
    score_gauss_d,
    score_gauss_d_k,
    score_gauss_s,
)
from reference import convolve_edge, gauss_nls, rolling_mean_std


def col(*values):
    return np.asarray(values, dtype=np.float64).reshape(-1, 1)


class TestScoreError:
    def test_zero_when_errors_match_train_mean(self):
        err = np.full((4, 3), 0.2)
        out = score_error(err, np.full(3, 0.2))
        assert np.abs(out).max() == 0.0

    def test_single_channel_identity(self):
        out = score_error(col(3.5), np.array([0.5]))
        assert out[0] == pytest.approx(3.0)

    def test_two_channel_rms(self):
        err = np.array([[3.0, 4.0]])
        out = score_error(err, np.zeros(2))
        assert out[0] == pytest.approx(math.sqrt(12.5))

    def test_scored_subset(self):
        err = np.array([[3.0, 100.0]])
        out = score_error(err, np.zeros(2), scored=np.array([0]))
        assert out[0] == pytest.approx(3.0)

    def test_empty_scored_rejected(self):
        with pytest.raises(ValidationError):
            score_error(col(1.0), np.zeros(1), scored=np.array([], dtype=int))


class TestFitGauss:
    def test_degenerate_variance_floored(self):
        params = fit_gauss(col(0.0, 0.0, 0.0))
        assert params.mu[0] == 0.0
        assert params.sigma[0] == SIGMA_FLOOR

    def test_sample_std_denominator(self):
        params = fit_gauss(col(1.0, 3.0))
        assert params.mu[0] == pytest.approx(2.0)
        assert params.sigma[0] == pytest.approx(math.sqrt(2.0))

    def test_channels_independent(self):
        err = np.array([[0.0, 10.0], [2.0, 30.0]])
        params = fit_gauss(err)
        assert params.mu[1] == pytest.approx(20.0)
        assert params.sigma[0] != params.sigma[1]

    def test_needs_two_rows(self):
        with pytest.raises(InsufficientDataError):
            fit_gauss(col(1.0))


class TestGaussS:
    def test_z_zero_gives_log_half(self):
        params = GaussParams(np.zeros(1), np.ones(1))
        channels, series = score_gauss_s(col(0.0), params)
        assert channels[0, 0] == pytest.approx(-math.log10(0.5))
        assert series[0] == pytest.approx(0.30103, abs=1e-5)

    def test_deep_left_tail_is_zero(self):
        params = GaussParams(np.zeros(1), np.ones(1))
        channels, _ = score_gauss_s(col(-8.0), params)
        assert channels[0, 0] == pytest.approx(0.0, abs=1e-9)

    def test_z_three_reference_value(self):
        params = GaussParams(np.zeros(1), np.ones(1))
        channels, _ = score_gauss_s(col(3.0), params)
        assert channels[0, 0] == pytest.approx(2.8697, abs=2e-4)
        assert channels[0, 0] == pytest.approx(gauss_nls(3.0), rel=1e-10)

    def test_clamp_bounds_scores(self):
        params = GaussParams(np.zeros(1), np.ones(1))
        channels, _ = score_gauss_s(col(500.0), params)
        cap = -special.log_ndtr(-8.0) / math.log(10)
        assert channels[0, 0] == pytest.approx(cap)
        assert channels[0, 0] < 15.5

    def test_monotone_in_error(self):
        params = GaussParams(np.zeros(1), np.ones(1))
        errs = np.sort(np.random.default_rng(0).normal(size=50) * 5)
        channels, _ = score_gauss_s(errs.reshape(-1, 1), params)
        assert np.all(np.diff(channels[:, 0]) >= 0)

    def test_matches_oracle_within_clamp(self):
        rng = np.random.default_rng(1)
        params = GaussParams(np.array([0.3]), np.array([1.7]))
        for _ in range(100):
            e = float(rng.normal() * 5)
            z = (e - 0.3) / 1.7
            channels, _ = score_gauss_s(col(e), params)
            assert channels[0, 0] == pytest.approx(gauss_nls(np.clip(z, -8, 8)), rel=1e-9)

    def test_aggregation_is_channel_sum(self):
        rng = np.random.default_rng(2)
        err = rng.normal(size=(20, 4))
        params = fit_gauss(rng.normal(size=(50, 4)))
        channels, series = score_gauss_s(err, params)
        assert np.allclose(series, channels.sum(axis=1))
        s01 = score_gauss_s(err, params, scored=np.array([0, 1]))[1]
        s23 = score_gauss_s(err, params, scored=np.array([2, 3]))[1]
        assert np.allclose(series, s01 + s23)


class TestGaussD:
    def test_constant_stream(self):
        tail = np.full((9, 1), 0.7)
        test = np.full((30, 1), 0.7)
        _, series = score_gauss_d(test, tail, DynamicWindow(10))
        assert np.allclose(series, -math.log10(0.5), atol=1e-12)

    def test_rolling_example_w3(self):
        # window [1, 1, 4] at the last point: mean 2, sample std sqrt(3)
        tail = col(1.0, 1.0)
        test = col(4.0)
        channels, _ = score_gauss_d(test, tail, DynamicWindow(3))
        z = (4.0 - 2.0) / math.sqrt(3.0)
        assert channels[0, 0] == pytest.approx(gauss_nls(z), rel=1e-9)

    def test_matches_slicing_oracle(self):
        rng = np.random.default_rng(4)
        for w in (2, 3, 7, 16):
            tail = rng.normal(size=(w - 1, 2))
            test = rng.normal(size=(40, 2))
            channels, _ = score_gauss_d(test, tail, DynamicWindow(w))
            stream = np.vstack([tail, test])
            for t in range(40):
                for i in range(2):
                    mu, sd = rolling_mean_std(stream[:, i], w, t + w - 1)
                    sd = max(sd, SIGMA_FLOOR)
                    z = np.clip((test[t, i] - mu) / sd, -8, 8)
                    assert channels[t, i] == pytest.approx(gauss_nls(z), rel=1e-8)

    def test_short_tail_shrinks_window(self):
        # no tail at all: the first point has a single-sample window, z=0
        test = col(5.0, 5.0, 9.0)
        channels, _ = score_gauss_d(test, np.zeros((0, 1)), DynamicWindow(10))
        assert channels[0, 0] == pytest.approx(-math.log10(0.5))
        stream = test[:, 0]
        for t in (1, 2):
            mu, sd = rolling_mean_std(stream, 10, t)
            z = np.clip((stream[t] - mu) / max(sd, SIGMA_FLOOR), -8, 8)
            assert channels[t, 0] == pytest.approx(gauss_nls(z), rel=1e-9)

    def test_drift_bounded_under_dynamic_scoring(self):
        # linear drift: static scores run away, dynamic ones stay bounded
        n = 4000
        drift = np.linspace(0, 50, n).reshape(-1, 1)
        rng = np.random.default_rng(5)
        noise = rng.normal(scale=0.1, size=(n, 1))
        err = drift + noise
        train = err[:1000]
        test = err[1000:]
        params = fit_gauss(train)
        _, static = score_gauss_s(test, params)
        _, dynamic = score_gauss_d(test, train[-199:], DynamicWindow(200))
        assert static[-100:].mean() > 10.0  # pinned at the clamp cap
        assert dynamic[-100:].mean() < 2.0

    def test_window_validation(self):
        with pytest.raises(ValidationError):
            DynamicWindow(1)


class TestGaussDK:
    def test_unit_sum_kernel_preserves_constants(self):
        channels = np.full((50, 2), 3.3)
        out, series = score_gauss_d_k(channels, KernelSpec(2.0))
        assert np.allclose(out, 3.3)
        assert np.allclose(series, 6.6)

    def test_impulse_peak_equals_center_weight(self):
        channels = np.zeros((41, 1))
        channels[20, 0] = 1.0
        out, _ = score_gauss_d_k(channels, KernelSpec(1.0))
        weights = KernelSpec(1.0).weights()
        assert len(weights) == 7
        # normalized center tap of the 7-point kernel
        expected = 1.0 / (1 + 2 * (np.exp(-0.5) + np.exp(-2.0) + np.exp(-4.5)))
        assert weights[3] == pytest.approx(expected, rel=1e-12)
        assert out[20, 0] == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(0.39905, abs=1e-5)

    def test_matches_direct_convolution(self):
        rng = np.random.default_rng(6)
        channels = rng.random((60, 3)) * 4
        kernel = KernelSpec(1.7)
        out, _ = score_gauss_d_k(channels, kernel)
        for i in range(3):
            ref = convolve_edge(channels[:, i], kernel.weights())
            assert np.allclose(out[:, i], ref, atol=1e-12)

    def test_tiny_sigma_is_identity(self):
        rng = np.random.default_rng(7)
        channels = rng.random((30, 2))
        out, _ = score_gauss_d_k(channels, KernelSpec(1e-9))
        assert np.array_equal(out, channels)

    def test_two_spikes_amplify_between(self):
        # spikes 2*sigma_k apart: smoothing pools mass at the midpoint
        sigma = 2.0
        channels = np.zeros((60, 2))
        channels[28, 0] = 1.0
        channels[32, 1] = 1.0
        out, series = score_gauss_d_k(channels, KernelSpec(sigma))
        assert series[30] > channels[30, 0] + channels[30, 1]

    def test_kernel_validation(self):
        with pytest.raises(ValidationError):
            KernelSpec(0.0)


class TestGaussDConvergesToGaussS:
    def test_saturated_window_equals_static(self):
        # periodic residuals: every full window holds the same multiset of
        # values as the training residuals, so rolling stats equal the
        # static fit exactly
        period = 5
        base = np.array([0.3, -0.8, 1.1, 0.05, -0.4])
        train = np.tile(base, 40).reshape(-1, 1)  # n1 = 200
        w = train.shape[0]
        test = np.tile(base, 12).reshape(-1, 1)
        params = fit_gauss(train)
        _, static = score_gauss_s(test, params)
        _, dynamic = score_gauss_d(test, train[-(w - 1) :], DynamicWindow(w))
        assert np.allclose(dynamic, static, atol=1e-6)
