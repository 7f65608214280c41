import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfspec import (
    AnalysisConfig,
    CascadeParams,
    FluctuationSurface,
    HurstSpectrum,
    TimeSeries,
    analyze,
    binomial_cascade,
    fgn,
    fluctuation_function,
    fluctuation_surface,
    hurst_spectrum,
    local_fluctuations,
    profile,
    quadratic_width,
    quality_flags,
    scale_grid,
    singularity_spectrum,
    white_noise,
)
from mfspec.errors import (
    AllZeroFluctuations,
    DegenerateSignal,
    EmptyGrid,
    InsufficientScales,
    NonConcaveSpectrum,
    ScaleTooLarge,
    ScaleTooSmallForOrder,
)


def series(values):
    return TimeSeries(samples=np.asarray(values, dtype=np.float64))


class TestProfile:
    def test_small_example(self):
        assert np.array_equal(profile(series([1.0, 2.0, 3.0])), [-1.0, -1.0, 0.0])

    def test_constant_rejected(self):
        with pytest.raises(DegenerateSignal):
            profile(series([3.0, 3.0, 3.0]))

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            profile(series([1.0]))

    @given(st.lists(st.integers(-1000, 1000), min_size=2, max_size=200))
    def test_terminal_value_is_zero(self, values):
        x = np.asarray(values, dtype=np.float64)
        if np.all(x == x[0]):
            return
        prof = profile(series(x))
        assert abs(prof[-1]) <= 1e-9 * x.size * np.abs(x).max()


class TestScaleGrid:
    def test_powers_of_two_example(self):
        got = scale_grid(16, 1024, 7)
        assert np.array_equal(got, [16, 32, 64, 128, 256, 512, 1024])

    def test_collapsed_range(self):
        with pytest.raises(EmptyGrid):
            scale_grid(10, 12, 8)

    def test_strictly_increasing_integers(self):
        got = scale_grid(16, 2048, 30)
        assert got.dtype == np.int64
        assert np.all(np.diff(got) > 0)
        assert got[0] == 16 and got[-1] == 2048

    def test_deterministic(self):
        assert np.array_equal(scale_grid(16, 500, 20), scale_grid(16, 500, 20))

    @pytest.mark.parametrize("args", [(1, 100, 10), (16, 16, 10), (16, 8, 10), (16, 100, 1)])
    def test_rejects_bad_ranges(self, args):
        with pytest.raises(ValueError):
            scale_grid(*args)


class TestAnalysisConfig:
    def test_defaults(self):
        cfg = AnalysisConfig()
        assert cfg.scale_min == 16
        assert cfg.scale_max is None
        assert cfg.detrend_order == 1
        assert 2.0 in cfg.q_values

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"detrend_order": 0},
            {"detrend_order": 4},
            {"scale_min": 5},
            {"scale_min": 8, "detrend_order": 3},
            {"scale_max": 16},
            {"n_scales": 7},
            {"q_values": (2.0, 3.0)},
            {"q_values": (0.0, 2.0, 1.0)},
            {"q_values": (0.0, 1.0, 3.0)},
            {"min_fit_r2": 1.5},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            AnalysisConfig(**kwargs)

    def test_resolved_scale_max_default_is_quarter(self):
        assert AnalysisConfig().resolved_scale_max(1000) == 250

    def test_resolved_scale_max_rejects_past_quarter(self):
        with pytest.raises(ScaleTooLarge):
            AnalysisConfig(scale_max=300).resolved_scale_max(1000)

    def test_resolved_scale_max_rejects_short_series(self):
        with pytest.raises(ScaleTooLarge):
            AnalysisConfig().resolved_scale_max(60)


class TestLocalFluctuations:
    def test_linear_profile_detrends_to_zero(self):
        prof = 0.5 * np.arange(256.0) + 3.0
        f2 = local_fluctuations(prof, 16, order=1)
        assert f2.shape == (32,)
        assert np.allclose(f2, 0.0, atol=1e-20)

    def test_quadratic_needs_second_order(self):
        t = np.linspace(0.0, 1.0, 400)
        prof = 2.0 * t * t - t
        assert local_fluctuations(prof, 20, order=1).max() > 1e-8
        assert np.allclose(local_fluctuations(prof, 20, order=2), 0.0, atol=1e-20)

    def test_window_count(self):
        prof = np.cumsum(white_noise(1000, seed=0).samples)
        assert local_fluctuations(prof, 30, order=1).size == 2 * (1000 // 30)

    @pytest.mark.parametrize("order", [1, 2])
    def test_matches_naive_window_loop(self, order):
        rng = np.random.default_rng(12)
        prof = np.cumsum(rng.standard_normal(100))
        scale = 11
        ns = 100 // scale
        expected = []
        for i in range(ns):
            w = prof[i * scale : (i + 1) * scale]
            resid = w - np.polyval(np.polyfit(np.arange(scale), w, order), np.arange(scale))
            expected.append(np.mean(resid**2))
        for j in range(ns):
            w = prof[100 - (j + 1) * scale : 100 - j * scale]
            resid = w - np.polyval(np.polyfit(np.arange(scale), w, order), np.arange(scale))
            expected.append(np.mean(resid**2))
        got = local_fluctuations(prof, scale, order)
        assert np.allclose(got, expected, rtol=1e-9, atol=1e-12)

    def test_scale_above_quarter_rejected(self):
        with pytest.raises(ScaleTooLarge):
            local_fluctuations(np.arange(100.0), 26, order=1)

    def test_scale_too_small_for_order(self):
        with pytest.raises(ScaleTooSmallForOrder):
            local_fluctuations(np.arange(100.0), 5, order=1)
        with pytest.raises(ScaleTooSmallForOrder):
            local_fluctuations(np.arange(100.0), 7, order=2)


class TestFluctuationFunction:
    def test_q2_is_rms(self):
        assert fluctuation_function(np.array([1.0, 4.0]), 2.0) == pytest.approx(
            np.sqrt(2.5), abs=1e-12
        )

    def test_q0_is_geometric(self):
        assert fluctuation_function(np.array([1.0, 4.0]), 0.0) == pytest.approx(
            np.sqrt(2.0), abs=1e-12
        )

    def test_uniform_windows_any_q(self):
        f2 = np.array([4.0, 4.0, 4.0])
        for q in (-10.0, -1.0, 0.0, 0.5, 2.0, 10.0):
            assert fluctuation_function(f2, q) == pytest.approx(2.0, abs=1e-12)

    def test_zero_windows_excluded(self):
        with_zero = fluctuation_function(np.array([0.0, 1.0, 4.0]), 2.0)
        assert with_zero == pytest.approx(np.sqrt(2.5), abs=1e-12)

    def test_all_zero_rejected(self):
        with pytest.raises(AllZeroFluctuations):
            fluctuation_function(np.zeros(5), 2.0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            fluctuation_function(np.array([1.0, -1.0]), 2.0)

    def test_extreme_negative_q_stays_finite(self):
        f2 = np.array([1e-30, 1e-10, 1.0, 1e10])
        val = fluctuation_function(f2, -10.0)
        assert np.isfinite(val)
        assert np.sqrt(f2.min()) <= val <= np.sqrt(f2.max())

    @given(
        st.lists(st.floats(1e-6, 1e6), min_size=2, max_size=40),
        st.floats(-8, 8),
        st.floats(0.1, 4),
    )
    @settings(max_examples=200, deadline=None)
    def test_power_mean_monotone_in_q(self, values, q, dq):
        f2 = np.asarray(values)
        lo = fluctuation_function(f2, q)
        hi = fluctuation_function(f2, q + dq)
        assert hi >= lo * (1.0 - 1e-9)


class TestFluctuationSurface:
    def test_shape_and_counts(self):
        prof = np.cumsum(white_noise(4096, seed=1).samples)
        scales = scale_grid(16, 1024, 12)
        qs = (-2.0, 0.0, 2.0)
        surf = fluctuation_surface(prof, scales, qs, order=1)
        assert surf.F.shape == (3, scales.size)
        assert np.array_equal(surf.segments_used, 2 * (4096 // scales))
        assert surf.dropped_scales == ()
        surf.validate()

    def test_constant_patch_drops_small_scales(self):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(8192)
        x[1000:1500] = 0.25
        ts = TimeSeries(samples=x)
        surface, hs, spec = analyze(ts)
        assert len(surface.dropped_scales) > 0
        assert surface.scales.size >= 8
        flags = quality_flags(surface, hs, spec, AnalysisConfig())
        assert "dropped_scales" in flags

    def test_validate_rejects_nonpositive(self):
        surf = FluctuationSurface(
            scales=np.array([16, 32]),
            q_values=np.array([0.0, 2.0]),
            F=np.array([[1.0, 0.0], [1.0, 2.0]]),
            segments_used=np.array([4, 2]),
            zero_windows=np.array([0, 0]),
        )
        with pytest.raises(ValueError):
            surf.validate()

    def test_validate_rejects_q_ordering_violation(self):
        surf = FluctuationSurface(
            scales=np.array([16, 32]),
            q_values=np.array([0.0, 2.0]),
            F=np.array([[1.0, 2.0], [1.0, 1.5]]),
            segments_used=np.array([4, 2]),
            zero_windows=np.array([0, 0]),
        )
        with pytest.raises(ValueError):
            surf.validate()


def power_law_surface(h, qs=(-2.0, 0.0, 2.0), n_scales=12):
    scales = scale_grid(16, 1024, n_scales)
    F = np.tile(scales.astype(np.float64) ** h, (len(qs), 1))
    return FluctuationSurface(
        scales=scales,
        q_values=np.asarray(qs),
        F=F,
        segments_used=np.full(scales.size, 8),
        zero_windows=np.zeros(scales.size, dtype=np.int64),
    )


class TestHurstSpectrum:
    def test_exact_power_law(self):
        surf = power_law_surface(0.62)
        hs = hurst_spectrum(surf, AnalysisConfig(q_values=surf.q_values))
        assert np.allclose(hs.h, 0.62, atol=1e-12)
        assert np.allclose(hs.fit_r2, 1.0, atol=1e-9)

    def test_tau_identity(self):
        surf = power_law_surface(0.62)
        hs = hurst_spectrum(surf, AnalysisConfig(q_values=surf.q_values))
        assert np.allclose(hs.tau, hs.q_values * hs.h - 1.0, atol=0)

    def test_h_at_lookup(self):
        surf = power_law_surface(0.62)
        hs = hurst_spectrum(surf, AnalysisConfig(q_values=surf.q_values))
        assert hs.h_at(2.0) == pytest.approx(0.62, abs=1e-12)
        with pytest.raises(KeyError):
            hs.h_at(3.5)

    def test_too_few_scales_rejected(self):
        surf = power_law_surface(0.5, n_scales=7)
        trimmed = FluctuationSurface(
            scales=surf.scales[:7],
            q_values=surf.q_values,
            F=surf.F[:, :7],
            segments_used=surf.segments_used[:7],
            zero_windows=surf.zero_windows[:7],
        )
        with pytest.raises(InsufficientScales):
            hurst_spectrum(trimmed, AnalysisConfig())


def hurst_from_callable(fn, q_grid):
    q = np.asarray(q_grid, dtype=np.float64)
    h = np.array([fn(v) for v in q])
    return HurstSpectrum(q_values=q, h=h, fit_r2=np.ones_like(q), tau=q * h - 1.0)


class TestSingularitySpectrum:
    def test_constant_h_collapses_to_point(self):
        hs = hurst_from_callable(lambda q: 0.7, np.arange(-5, 5.5, 0.5))
        spec = singularity_spectrum(hs)
        assert np.allclose(spec.alpha, 0.7, atol=1e-12)
        assert np.allclose(spec.f_alpha, 1.0, atol=1e-12)
        assert spec.width_W == 0.0
        assert spec.width_direct < 1e-12
        assert "degenerate_spectrum" in spec.flags

    def test_finite_difference_accuracy(self):
        # smooth h(q) with known derivative; alpha = h + q h'
        q_grid = np.arange(-10, 10.25, 0.25)
        hs = hurst_from_callable(lambda q: 0.5 + 0.3 / (1 + q * q), q_grid)
        spec = singularity_spectrum(hs)
        hp = -0.6 * q_grid / (1 + q_grid * q_grid) ** 2
        alpha_exact = hs.h + q_grid * hp
        assert np.max(np.abs(spec.alpha - alpha_exact)) < 0.01

    def test_legendre_identities(self):
        q_grid = np.arange(-10, 10.5, 0.5)
        hs = hurst_from_callable(lambda q: 0.5 + 0.3 / (1 + q * q), q_grid)
        spec = singularity_spectrum(hs)
        # f = q (alpha - h) + 1 by construction, and tau = q h - 1 pins
        # the classic form f = q alpha - tau
        assert np.allclose(spec.f_alpha, q_grid * spec.alpha - hs.tau, atol=1e-12)
        # q = 0 always lands on the spectrum apex value f = 1
        zero = np.nonzero(q_grid == 0.0)[0][0]
        assert spec.f_alpha[zero] == pytest.approx(1.0, abs=1e-12)

    def test_failed_fit_reports_nan_width(self):
        # h = -q gives f = 1 - q^2: only one point with f > 0
        hs = hurst_from_callable(lambda q: -q, [-2.0, -1.0, 0.0, 1.0, 2.0])
        spec = singularity_spectrum(hs)
        assert np.isnan(spec.width_W)
        assert "quadratic_fit_failed" in spec.flags
        assert spec.width_direct == pytest.approx(8.0)

    def test_needs_three_points(self):
        hs = HurstSpectrum(
            q_values=np.array([0.0, 2.0]),
            h=np.array([0.6, 0.5]),
            fit_r2=np.ones(2),
            tau=np.array([-1.0, 0.0]),
        )
        with pytest.raises(ValueError):
            singularity_spectrum(hs)


class TestQuadraticWidth:
    def test_exact_symmetric_parabola(self):
        alpha = np.array([0.5, 0.7, 0.9, 1.1, 1.3])
        f = 1.0 - ((alpha - 0.9) / 0.6) ** 2
        A, B, C, W = quadratic_width(alpha, f)
        assert A == pytest.approx(-1 / 0.36, rel=1e-12)
        assert B == pytest.approx(0.0, abs=1e-12)
        assert C == pytest.approx(1.0, rel=1e-12)
        assert W == pytest.approx(1.2, rel=1e-12)

    def test_asymmetric_parabola(self):
        alpha0 = 0.8
        x = np.array([-0.8, -0.4, 0.0, 0.4, 0.8])
        f = 1.0 + 0.2 * x - x * x
        A, B, C, W = quadratic_width(alpha0 + x, f, alpha0)
        assert B == pytest.approx(0.2, rel=1e-9)
        assert W == pytest.approx(np.sqrt(0.2**2 + 4.0), rel=1e-12)

    def test_width_independent_of_anchor(self):
        alpha = np.array([0.5, 0.7, 0.9, 1.1, 1.3])
        f = 1.0 - ((alpha - 0.9) / 0.6) ** 2
        widths = {quadratic_width(alpha, f, a0)[3] for a0 in (None, 0.9, 0.7, 1.3)}
        assert max(widths) - min(widths) < 1e-9

    def test_upward_parabola_rejected(self):
        alpha = np.array([0.4, 0.6, 0.8, 1.0, 1.2])
        f = (alpha - 0.8) ** 2 + 0.1
        with pytest.raises(NonConcaveSpectrum):
            quadratic_width(alpha, f)

    def test_too_few_positive_points(self):
        with pytest.raises(ValueError):
            quadratic_width(np.array([1.0, 2.0, 3.0]), np.array([-1.0, 0.5, 0.0]))

    def test_flat_f_rejected(self):
        with pytest.raises(ValueError):
            quadratic_width(np.array([1.0, 2.0, 3.0]), np.array([0.5, 0.5, 0.5]))


class TestAnalyze:
    def test_deterministic(self):
        ts = white_noise(8192, seed=21)
        s1, h1, p1 = analyze(ts)
        s2, h2, p2 = analyze(ts)
        assert np.array_equal(s1.F, s2.F)
        assert np.array_equal(h1.h, h2.h)
        assert p1.width_W == p2.width_W

    def test_separates_white_from_persistent(self):
        _, hw, _ = analyze(white_noise(16384, seed=30))
        _, hf, _ = analyze(fgn(16384, H=0.8, seed=30))
        assert hf.h_at(2.0) - hw.h_at(2.0) == pytest.approx(0.3, abs=0.07)

    def test_cascade_much_wider_than_noise(self):
        _, _, wide = analyze(binomial_cascade(CascadeParams(levels=14, a=0.75)))
        _, _, narrow = analyze(white_noise(2**14, seed=2))
        assert wide.width_W > 2.0 * narrow.width_W

    def test_strict_fit_gate_flags(self):
        ts = white_noise(4096, seed=8)
        cfg = AnalysisConfig(min_fit_r2=0.99999)
        surface, hs, spec = analyze(ts, cfg)
        assert "low_fit_r2" in quality_flags(surface, hs, spec, cfg)

    def test_short_series_rejected(self):
        with pytest.raises(ScaleTooLarge):
            analyze(white_noise(60, seed=0))
