import math

import numpy as np
import pytest

from mfspec import (
    CascadeParams,
    analytic_cascade_hurst,
    analyze,
    binomial_cascade,
    fgn,
    fgn_autocovariance,
    shuffle,
    white_noise,
)
from mfspec.errors import EmbeddingFailure

from reference_dfa import naive_dfa_h2


class TestWhiteNoise:
    def test_deterministic(self):
        a = white_noise(256, seed=7)
        b = white_noise(256, seed=7)
        assert np.array_equal(a.samples, b.samples)
        assert not np.array_equal(a.samples, white_noise(256, seed=8).samples)

    def test_moments(self):
        x = white_noise(65536, seed=1).samples
        assert abs(x.mean()) <= 0.02
        assert abs(x.var() - 1.0) <= 0.05

    def test_hurst_near_half(self):
        ts = white_noise(16384, seed=2)
        _, hs, _ = analyze(ts)
        assert abs(hs.h_at(2.0) - 0.5) <= 0.05

    def test_pipeline_matches_naive_dfa(self):
        # the fast vectorized estimator must equal a plain nested-loop DFA
        ts = white_noise(4096, seed=11)
        _, hs, _ = analyze(ts)
        assert abs(hs.h_at(2.0) - naive_dfa_h2(ts.samples)) < 1e-9

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            white_noise(1, seed=0)


class TestFgn:
    def test_deterministic(self):
        a = fgn(1024, H=0.7, seed=4)
        b = fgn(1024, H=0.7, seed=4)
        assert np.array_equal(a.samples, b.samples)

    def test_h_half_is_uncorrelated(self):
        x = fgn(65536, H=0.5, seed=9).samples
        x = x - x.mean()
        r1 = (x[:-1] * x[1:]).mean() / x.var()
        assert abs(r1) <= 0.02

    def test_autocovariance_matches_target(self):
        H = 0.8
        lags = np.arange(6)
        target = fgn_autocovariance(H, lags)
        acc = np.zeros(6)
        for seed in range(10):
            x = fgn(16384, H=H, seed=seed).samples
            x = x - x.mean()
            for k in lags:
                acc[k] += (x[: x.size - k] * x[k:]).mean() / 10.0
        assert np.all(np.abs(acc - target) <= 0.05)

    @pytest.mark.parametrize("H", [0.8, 0.3])
    def test_hurst_recovery(self, H):
        ts = fgn(16384, H=H, seed=3)
        _, hs, _ = analyze(ts)
        assert abs(hs.h_at(2.0) - H) <= 0.05

    def test_autocovariance_values(self):
        # gamma(0)=1 always; gamma(1)=2^(2H-1)-1
        assert fgn_autocovariance(0.7, 0) == pytest.approx(1.0)
        assert fgn_autocovariance(0.7, 1) == pytest.approx(2**0.4 - 1)
        assert fgn_autocovariance(0.5, 1) == pytest.approx(0.0)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            fgn(1000, H=0.5, seed=0)

    @pytest.mark.parametrize("H", [0.0, 1.0, -0.2, 1.5])
    def test_rejects_bad_hurst(self, H):
        with pytest.raises(ValueError):
            fgn(1024, H=H, seed=0)


class TestBinomialCascade:
    def test_one_level(self):
        ts = binomial_cascade(CascadeParams(levels=1, a=0.75))
        assert np.allclose(ts.samples, [0.75, 0.25])

    def test_two_levels(self):
        ts = binomial_cascade(CascadeParams(levels=2, a=0.75))
        assert np.allclose(ts.samples, [0.5625, 0.1875, 0.1875, 0.0625])

    def test_conservation_and_positivity(self):
        ts = binomial_cascade(CascadeParams(levels=14, a=0.75))
        assert ts.samples.size == 2**14
        assert np.all(ts.samples > 0)
        assert ts.samples.sum() == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("levels,a", [(0, 0.75), (25, 0.75), (5, 0.5), (5, 1.0)])
    def test_param_validation(self, levels, a):
        with pytest.raises(ValueError):
            CascadeParams(levels=levels, a=a)


class TestAnalyticCascadeHurst:
    def test_frozen_value(self):
        assert analytic_cascade_hurst(2.0, 0.75) == pytest.approx(
            0.8390359525563189, abs=1e-15
        )

    def test_strictly_decreasing_in_q(self):
        qs = np.arange(-10, 10.5, 0.5)
        hs = [analytic_cascade_hurst(q, 0.75) for q in qs]
        assert all(b < a for a, b in zip(hs, hs[1:]))

    def test_q_zero_limit_is_continuous(self):
        h0 = analytic_cascade_hurst(0.0, 0.75)
        assert analytic_cascade_hurst(1e-8, 0.75) == pytest.approx(h0, abs=1e-6)
        assert analytic_cascade_hurst(-1e-8, 0.75) == pytest.approx(h0, abs=1e-6)
        assert h0 == pytest.approx(
            -(math.log(0.75) + math.log(0.25)) / (2 * math.log(2))
        )

    def test_near_equal_weights_flatten(self):
        # a -> 1/2 collapses the cascade toward a uniform (monofractal) measure
        h2 = analytic_cascade_hurst(2.0, 0.500001)
        hm2 = analytic_cascade_hurst(-2.0, 0.500001)
        assert hm2 - h2 < 1e-5
        assert h2 == pytest.approx(1.0, abs=1e-5)

    def test_rejects_bad_weight(self):
        with pytest.raises(ValueError):
            analytic_cascade_hurst(2.0, 0.4)


class TestShuffle:
    def test_preserves_multiset(self):
        ts = white_noise(512, seed=5)
        sh = shuffle(ts, seed=6)
        assert np.array_equal(np.sort(sh.samples), np.sort(ts.samples))
        assert not np.array_equal(sh.samples, ts.samples)

    def test_deterministic(self):
        ts = white_noise(512, seed=5)
        assert np.array_equal(shuffle(ts, seed=6).samples, shuffle(ts, seed=6).samples)

    def test_keeps_sample_rate(self):
        from mfspec import TimeSeries

        ts = TimeSeries(samples=np.arange(8.0), sample_rate=100.0)
        assert shuffle(ts, seed=0).sample_rate == 100.0

    def test_narrows_cascade_spectrum(self):
        # destroying temporal order must destroy correlation multifractality
        cascade = binomial_cascade(CascadeParams(levels=14, a=0.75))
        _, _, spec = analyze(cascade)
        for seed in range(5):
            _, _, sh_spec = analyze(shuffle(cascade, seed=seed))
            assert sh_spec.width_W < spec.width_W
