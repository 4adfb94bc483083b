import math

import numpy as np
import pytest

from patchnoise import (EnsembleConfig, FluctuatorEnsemble, InputError,
                        InsufficientDataError, NoiseDataset, PsdEstimate,
                        ensemble_spectrum, estimate_psd, fit_alpha,
                        sample_ensemble, telegraph_trace)


def white_noise(n, sigma, fs, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(0.0, sigma, n), fs


class TestEstimatePsd:
    def test_white_noise_level(self):
        sigma, fs = 1.3, 1e4
        x, fs = white_noise(2**17, sigma, fs, seed=0)
        est = estimate_psd(x, 1024, sample_rate=fs)
        assert est.segments >= 100
        level = float(np.mean(est.psd))
        assert level == pytest.approx(2 * sigma**2 / fs, rel=0.05)

    def test_parseval_white_noise(self):
        x, fs = white_noise(2**15, 0.7, 5e3, seed=1)
        est = estimate_psd(x, 512, sample_rate=fs)
        df = est.frequencies[1] - est.frequencies[0]
        assert float(np.sum(est.psd) * df) == pytest.approx(float(np.var(x)), rel=0.01)

    def test_parseval_sinusoid(self):
        fs, n = 1e4, 2**15
        t = np.arange(n) / fs
        x = 2.0 * np.sin(2 * np.pi * 997.3 * t)
        est = estimate_psd(x, 1024, sample_rate=fs)
        df = est.frequencies[1] - est.frequencies[0]
        assert float(np.sum(est.psd) * df) == pytest.approx(float(np.var(x)), rel=0.01)

    def test_sinusoid_peak_power(self):
        fs, n, amp = 1e4, 2**15, 2.0
        length = 1024
        f0 = 80 * fs / length  # bin-centered
        t = np.arange(n) / fs
        x = amp * np.sin(2 * np.pi * f0 * t)
        est = estimate_psd(x, length, sample_rate=fs)
        df = est.frequencies[1] - est.frequencies[0]
        peak = np.abs(est.frequencies - f0) <= 4 * df
        assert float(np.sum(est.psd[peak]) * df) == pytest.approx(amp**2 / 2, rel=0.02)

    def test_single_fluctuator_matches_lorentzian(self):
        tau = 1e-3
        ens = FluctuatorEnsemble(np.array([0.0]), np.array([1.0]), tau)
        fs = 2e4
        trace = telegraph_trace(ens, 10.0, fs, 2.7, seed=21)
        est = estimate_psd(trace, 1024)
        assert est.segments >= 100
        analytic = 4 * tau / (1 + (2 * np.pi * est.frequencies * tau) ** 2)
        band = est.frequencies <= fs / 16
        ratio = float(np.mean(est.psd[band] / analytic[band]))
        assert ratio == pytest.approx(1.0, abs=0.1)

    def test_rectangular_window(self):
        x, fs = white_noise(2**14, 1.0, 1e3, seed=3)
        est = estimate_psd(x, 256, window="rectangular", sample_rate=fs)
        assert float(np.mean(est.psd)) == pytest.approx(2 / fs, rel=0.05)

    def test_rejects_non_power_of_two(self):
        x, fs = white_noise(4096, 1.0, 1e3, seed=4)
        with pytest.raises(InputError, match="power of two"):
            estimate_psd(x, 1000, sample_rate=fs)

    def test_rejects_short_trace(self):
        x, fs = white_noise(256, 1.0, 1e3, seed=5)
        with pytest.raises(InsufficientDataError):
            estimate_psd(x, 512, sample_rate=fs)

    def test_rejects_unknown_window(self):
        x, fs = white_noise(1024, 1.0, 1e3, seed=6)
        with pytest.raises(InputError):
            estimate_psd(x, 256, window="hamming", sample_rate=fs)

    def test_requires_sample_rate_for_arrays(self):
        with pytest.raises(InputError):
            estimate_psd(np.zeros(1024), 256)

    def test_frequencies_positive_increasing(self):
        x, fs = white_noise(2**12, 1.0, 2e3, seed=7)
        est = estimate_psd(x, 512, sample_rate=fs)
        assert est.frequencies[0] > 0
        assert np.all(np.diff(est.frequencies) > 0)

    def test_matches_scipy_welch(self):
        # independent implementation cross-check
        from scipy.signal import welch
        x, fs = white_noise(2**14, 0.9, 4e3, seed=8)
        est = estimate_psd(x, 512, sample_rate=fs)
        f_ref, p_ref = welch(x, fs=fs, window="hann", nperseg=512, noverlap=256,
                             detrend=False)
        np.testing.assert_allclose(est.frequencies, f_ref[1:], rtol=1e-12)
        np.testing.assert_allclose(est.psd, p_ref[1:], rtol=1e-8)

    def test_csv_round_trip(self, tmp_path):
        x, fs = white_noise(2**12, 1.0, 2e3, seed=9)
        est = estimate_psd(x, 256, sample_rate=fs)
        path = tmp_path / "psd.csv"
        est.write_csv(path)
        back = PsdEstimate.read_csv(path)
        np.testing.assert_array_equal(back.frequencies, est.frequencies)
        np.testing.assert_array_equal(back.psd, est.psd)


class TestFitAlpha:
    def test_exact_one_over_f(self):
        f = np.geomspace(1e5, 1e7, 30)
        data = PsdEstimate(f, 3.3e-8 / f, segments=1, window="rectangular")
        fit = fit_alpha(data, (1e5, 1e7))
        assert fit.alpha == pytest.approx(1.0, abs=1e-12)
        assert fit.alpha_err == pytest.approx(0.0, abs=1e-10)
        assert fit.prefactor == pytest.approx(3.3e-8, rel=1e-9)

    def test_flat_spectrum(self):
        f = np.geomspace(1e5, 1e7, 20)
        data = PsdEstimate(f, np.full_like(f, 2.2e-13), segments=1, window="hann")
        fit = fit_alpha(data, (1e5, 1e7))
        assert fit.alpha == pytest.approx(0.0, abs=1e-12)

    def test_scale_invariance(self):
        rng = np.random.default_rng(10)
        f = np.geomspace(1e5, 1e7, 25)
        s = 1e-9 * f ** -0.8 * np.exp(0.05 * rng.standard_normal(f.size))
        a1 = fit_alpha(PsdEstimate(f, s, 1, "hann"), (1e5, 1e7))
        a2 = fit_alpha(PsdEstimate(f, 137.0 * s, 1, "hann"), (1e5, 1e7))
        assert a2.alpha == pytest.approx(a1.alpha, abs=1e-12)
        assert a2.prefactor == pytest.approx(137.0 * a1.prefactor, rel=1e-9)

    def test_band_restriction(self):
        f = np.geomspace(1e4, 1e8, 50)
        s = np.where(f < 1e6, 1.0 / f, 1e-6 * (1e6 / f) ** 2 / 1.0)
        fit = fit_alpha(PsdEstimate(f, s, 1, "hann"), (1e4, 9e5))
        assert fit.alpha == pytest.approx(1.0, abs=1e-9)
        assert fit.n_points == int(np.sum((f >= 1e4) & (f <= 9e5)))

    def test_recovery_with_lognormal_noise(self):
        # alpha recovered within 3 reported sigma in at least 95% of trials
        f = np.geomspace(1e5, 1e7, 25)
        hits, trials = 0, 200
        for seed in range(trials):
            rng = np.random.default_rng(seed)
            alpha0 = rng.uniform(0.3, 1.5)
            s = 1e-10 * f ** -alpha0 * np.exp(0.05 * rng.standard_normal(f.size))
            fit = fit_alpha(PsdEstimate(f, s, 1, "hann"), (1e5, 1e7))
            if abs(fit.alpha - alpha0) <= 3 * fit.alpha_err:
                hits += 1
        assert hits >= 0.95 * trials

    def test_accepts_noise_dataset(self):
        f = np.geomspace(1e5, 1e7, 12)
        data = NoiseDataset("x", np.full_like(f, 40.0), f, 1e-14 / (f / 1e6))
        fit = fit_alpha(data, (1e5, 1e7))
        assert fit.alpha == pytest.approx(1.0, abs=1e-9)

    def test_rejects_nonpositive_values(self):
        f = np.geomspace(1e5, 1e7, 10)
        s = 1.0 / f
        s[3] = 0.0
        with pytest.raises(InputError, match="log"):
            fit_alpha(PsdEstimate(f, s, 1, "hann"), (1e5, 1e7))

    def test_too_few_points(self):
        f = np.geomspace(1e5, 1e7, 10)
        with pytest.raises(InsufficientDataError):
            fit_alpha(PsdEstimate(f, 1 / f, 1, "hann"), (1e5, 1.2e5))

    def test_telegraph_knee_exponent(self):
        # well above the knee a telegraph PSD falls as f^-2
        tau = 1e-2
        ens = FluctuatorEnsemble(np.array([0.0]), np.array([1.0]), tau)
        trace = telegraph_trace(ens, 10.0, 2e4, 10.0, seed=30)
        est = estimate_psd(trace, 2048)
        knee = 1.0 / (2 * math.pi * tau)
        fit = fit_alpha(est, (30 * knee, 2e4 / 16))
        assert fit.alpha == pytest.approx(2.0, abs=0.25)


def test_ensemble_trace_psd_consistency():
    # the estimated PSD of a simulated ensemble matches the Lorentzian sum
    cfg = EnsembleConfig(beta=1.5, e_min=1.0, e_max=60.0, tau0=1e-4,
                         n_fluctuators=20, seed=14)
    ens = sample_ensemble(cfg)
    fs = 2e4
    trace = telegraph_trace(ens, 10.0, fs, 3.0, seed=15)
    est = estimate_psd(trace, 1024)
    band = (est.frequencies > 20) & (est.frequencies < fs / 16)
    analytic = ensemble_spectrum(ens, 10.0, est.frequencies[band])
    ratio = float(np.mean(est.psd[band] / analytic))
    assert ratio == pytest.approx(1.0, abs=0.2)
