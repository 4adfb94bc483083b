"""Acceptance suite: one test per release criterion, run at stated tolerances.

Each test prints a single CRITERION line; run with `pytest -v` (or -s) to
see them.  Tolerances are pinned here and nowhere else.
"""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

import patchnoise as pn
from patchnoise import kernels

OMEGA_1MHZ = 2 * math.pi * 1e6
TRAP_IIIA = pn.DuttaHornParams(beta=3.6, t0=46.0)


def _report(num, name, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    print(f"CRITERION {num:2d} [{status}] {name}: {detail}")
    assert passed, f"criterion {num} ({name}): {detail}"


def test_c01_conversion_constant():
    got = pn.field_noise_from_heating(1.0, 1e6)
    rel = abs(got - 1.51e-14) / 1.51e-14
    _report(1, "field-noise conversion constant", rel < 0.01,
            f"S_E(ndot=1, 1 MHz, Sr+) = {got:.4e} V^2/m^2/Hz, "
            f"rel. dev. from 1.51e-14 = {rel:.2%}")


def test_c02_crossover_temperature_and_alpha():
    t1 = pn.crossover_temperature(TRAP_IIIA)
    alpha_at_t1 = pn.model_alpha(TRAP_IIIA, OMEGA_1MHZ, t1)
    ok = abs(t1 - 35.3) <= 0.1 and abs(alpha_at_t1 - 1.0) <= 1e-12
    _report(2, "crossover temperature", ok,
            f"T1 = {t1:.3f} K (claim ~35 K), alpha(T1) - 1 = {alpha_at_t1 - 1:.2e}")


def test_c03_model_self_consistency():
    # numerically differentiated frequency slope of the quadrature spectrum
    # against the closed-form exponent
    h = 0.02
    worst = 0.0
    for temperature in (20.0, 46.0, 100.0):
        hi = pn.spectrum_integral(TRAP_IIIA, OMEGA_1MHZ * math.exp(h), temperature)
        lo = pn.spectrum_integral(TRAP_IIIA, OMEGA_1MHZ * math.exp(-h), temperature)
        slope = -(math.log(hi) - math.log(lo)) / (2 * h)
        alpha = pn.model_alpha(TRAP_IIIA, OMEGA_1MHZ, temperature)
        worst = max(worst, abs(slope - alpha))
    _report(3, "quadrature slope vs closed-form alpha", worst < 0.05,
            f"max |slope - alpha| over T in (20, 46, 100) K = {worst:.4f}")


def test_c04_monte_carlo_vs_quadrature():
    # identical power-law D(E) on both sides; the energy window brackets
    # the dominant slice E ~ 12 T for every probed temperature
    cfg = pn.EnsembleConfig(beta=3.6, e_min=10.0, e_max=1200.0,
                            n_fluctuators=100000, seed=20260810)
    ens = pn.sample_ensemble(cfg)
    freqs = np.geomspace(1e5, 1e7, 13)
    rel = []
    for temperature in (30.0, 60.0, 100.0):
        mc = pn.ensemble_spectrum(ens, temperature, freqs)
        analytic = pn.ensemble_expectation_spectrum(cfg, temperature, freqs)
        rel.extend((mc / analytic - 1.0).tolist())
    rms = float(np.sqrt(np.mean(np.square(rel))))
    _report(4, "1e5-fluctuator ensemble vs quadrature", rms < 0.05,
            f"RMS relative deviation over f in [0.1, 10] MHz, "
            f"T in (30, 60, 100) K = {rms:.2%}")


def test_c05_temperature_scaling_emergence():
    # a power-law activation-energy density with exponent beta-1 generates
    # S ~ T^beta at fixed frequency
    cfg = pn.EnsembleConfig(beta=3.6, n_fluctuators=100000, seed=123)
    ens = pn.sample_ensemble(cfg)
    temps = np.linspace(40.0, 100.0, 13)
    s = np.array([pn.ensemble_spectrum(ens, float(t), 1e6)[0] for t in temps])
    slope = float(np.polyfit(np.log(temps), np.log(s), 1)[0])
    _report(5, "T^beta emergence from D(E) ~ E^(beta-1)", abs(slope - 3.6) <= 0.3,
            f"log-log slope over [40, 100] K = {slope:.3f} (target 3.6 +- 0.3)")


def test_c06_fit_recovery_all_rows():
    table = pn.load_reference_table()
    failures = []
    for row in table.rows:
        noiseless = pn.synthetic_temp_scaling_dataset(row.label, noise=0.0)
        exact = pn.fit_temp_scaling(noiseless)
        for got, true in ((exact.s0, row.s0_si), (exact.t0, row.t0),
                          (exact.beta, row.beta)):
            if abs(got - true) / true > 1e-6:
                failures.append(f"{row.label} noiseless")
        noisy = pn.synthetic_temp_scaling_dataset(row.label, seed=3)
        fit = pn.fit_temp_scaling(noisy)
        err = fit.errors_1sigma
        for got, sigma, true in ((fit.s0, err[0], row.s0_si),
                                 (fit.t0, err[1], row.t0),
                                 (fit.beta, err[2], row.beta)):
            if abs(got - true) > max(0.10 * true, 2.0 * sigma):
                failures.append(f"{row.label} noisy")
    _report(6, "fit recovery on all eight reference rows", not failures,
            "all rows within 1e-6 (noiseless) and 10%/2sigma (5% noise)"
            if not failures else f"failed: {sorted(set(failures))}")


def test_c07_arrhenius_recovery():
    data = pn.synthetic_arrhenius_dataset(seed=3)
    fit = pn.fit_arrhenius(data)
    rel = abs(fit.t0 - 40.0) / 40.0
    _report(7, "activated-anomaly fit", rel <= 0.10,
            f"T0 = {fit.t0:.2f} K (target 40 K +- 10%), rel = {rel:.2%}")


def test_c08_spectral_estimator():
    problems = []
    # white-noise flatness
    rng = np.random.default_rng(0)
    sigma, fs = 1.3, 1e4
    x = rng.normal(0.0, sigma, 2**17)
    est = pn.estimate_psd(x, 1024, sample_rate=fs)
    flat_dev = abs(float(np.mean(est.psd)) / (2 * sigma**2 / fs) - 1.0)
    if flat_dev > 0.05:
        problems.append(f"white-noise level off by {flat_dev:.2%}")
    # single-fluctuator Lorentzian
    tau = 1e-3
    ens = pn.FluctuatorEnsemble(np.array([0.0]), np.array([1.0]), tau)
    trace = pn.telegraph_trace(ens, 10.0, 2e4, 2.7, seed=21)
    est2 = pn.estimate_psd(trace, 1024)
    analytic = 4 * tau / (1 + (2 * np.pi * est2.frequencies * tau) ** 2)
    band = est2.frequencies <= 2e4 / 16
    lor_dev = abs(float(np.mean(est2.psd[band] / analytic[band])) - 1.0)
    if est2.segments < 100:
        problems.append(f"only {est2.segments} segments")
    if lor_dev > 0.10:
        problems.append(f"Lorentzian band deviation {lor_dev:.2%}")
    # exact 1/f recovery
    f = np.geomspace(1e5, 1e7, 30)
    fit = pn.fit_alpha(pn.PsdEstimate(f, 1e-8 / f, 1, "hann"), (1e5, 1e7))
    if abs(fit.alpha - 1.0) > 1e-3:
        problems.append(f"alpha on exact 1/f = {fit.alpha}")
    _report(8, "spectral estimator", not problems,
            f"white {flat_dev:.2%}, lorentzian {lor_dev:.2%}, "
            f"alpha(1/f) = {fit.alpha:.6f}" if not problems else "; ".join(problems))


def test_c09_extrapolation_trio():
    law = pn.ScalingLaw()
    tip = pn.scale_noise(law, 100e-9, 10e3)
    sigma = pn.dc_field_fluctuation(law, 1e-6, 1.0, 1e-12)
    product = pn.patch_product(100.0, 1e-6)
    formula_tip = 1e-21 / ((100e-9) ** 4 * 10e3)
    formula_sigma = math.sqrt(1e-21 / (1e-6) ** 4 * math.log(1.0 / 1e-12))
    formula_product = 100.0**2 * (1e-6) ** 4
    ok = (abs(tip / formula_tip - 1) < 0.05
          and abs(sigma / formula_sigma - 1) < 0.05
          and abs(product / formula_product - 1) < 0.05
          and abs(tip / 1e3 - 1) < 0.05
          and abs(product / 1e-20 - 1) < 0.05)
    _report(9, "extrapolation trio", ok,
            f"S_E(100 nm, 10 kHz) = {tip:.4g}, sigma_E(1 um, 1 s) = {sigma:.4g}, "
            f"sigma_V^2 A = {product:.4g}")


def test_c10_cli_determinism(tmp_path):
    config = {"beta": 3.6, "e_min_K": 10.0, "e_max_K": 3000.0, "tau0_s": 1e-12,
              "n": 2000, "amplitude": 1.0, "seed": 42}
    cfg = tmp_path / "config.json"
    cfg.write_text(json.dumps(config))

    def run(out, backend):
        env = dict(os.environ)
        env["PATCHNOISE_BACKEND"] = backend
        proc = subprocess.run(
            [sys.executable, "-m", "patchnoise", "simulate", "-c", str(cfg),
             "-o", str(out), "--temperatures", "lin:40:100:7", "-q"],
            capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        return out.read_bytes()

    default_backend = kernels.active_backend()
    b1 = run(tmp_path / "r1.csv", default_backend)
    b2 = run(tmp_path / "r2.csv", default_backend)
    rerun_ok = b1 == b2
    b3 = run(tmp_path / "r3.csv", "numpy")
    cross_ok = b1 == b3

    def run_fit(out):
        proc = subprocess.run(
            [sys.executable, "-m", "patchnoise", "fit", "--builtin", "II",
             "-o", str(out), "-q"],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        return out.read_bytes()

    fit_ok = run_fit(tmp_path / "f1.json") == run_fit(tmp_path / "f2.json")
    _report(10, "byte-identical reruns", rerun_ok and cross_ok and fit_ok,
            f"simulate rerun identical: {rerun_ok}, numpy-vs-{default_backend} "
            f"identical: {cross_ok}, fit rerun identical: {fit_ok}")


def test_c11_property_suites():
    failures = []
    n_seeds = 100
    # fit equivariances and idempotence
    for seed in range(n_seeds):
        rng = np.random.default_rng(seed)
        data = pn.synthetic_temp_scaling_dataset("II", seed=seed)
        base = pn.fit_temp_scaling(data)
        c = float(10 ** rng.uniform(-2, 2))
        scaled = pn.NoiseDataset("s", data.temperature, data.frequency,
                                 c * data.s_e, c * data.s_e_err)
        fs = pn.fit_temp_scaling(scaled)
        if not (math.isclose(fs.s0, c * base.s0, rel_tol=1e-7)
                and math.isclose(fs.t0, base.t0, rel_tol=1e-7)
                and math.isclose(fs.beta, base.beta, rel_tol=1e-7)):
            failures.append(f"scale equivariance seed {seed}")
        k = float(rng.uniform(0.5, 4.0))
        warmed = pn.NoiseDataset("t", k * data.temperature, data.frequency,
                                 data.s_e, data.s_e_err)
        ft = pn.fit_temp_scaling(warmed)
        if not (math.isclose(ft.t0, k * base.t0, rel_tol=1e-7)
                and math.isclose(ft.beta, base.beta, rel_tol=1e-7)):
            failures.append(f"temperature equivariance seed {seed}")
        self_data = pn.NoiseDataset("i", data.temperature, data.frequency,
                                    base.predict(data.temperature))
        fi = pn.fit_temp_scaling(self_data)
        if not (math.isclose(fi.s0, base.s0, rel_tol=1e-6)
                and math.isclose(fi.t0, base.t0, rel_tol=1e-6)
                and math.isclose(fi.beta, base.beta, rel_tol=1e-6)):
            failures.append(f"idempotence seed {seed}")
    # Parseval within 1%; tone frequencies stay above the first bin since
    # sub-resolution content falls into the dropped DC bin
    for seed in range(n_seeds):
        rng = np.random.default_rng(1000 + seed)
        fs = float(rng.uniform(1e3, 1e5))
        n = 2**15
        t = np.arange(n) / fs
        f_tone = rng.uniform(8 * fs / 512, fs / 3)
        x = (rng.normal(0, rng.uniform(0.1, 3.0), n)
             + rng.uniform(0, 2) * np.sin(2 * np.pi * f_tone * t))
        est = pn.estimate_psd(x, 512, sample_rate=fs)
        df = est.frequencies[1] - est.frequencies[0]
        if abs(float(np.sum(est.psd) * df) / float(np.var(x)) - 1.0) > 0.01:
            failures.append(f"parseval seed {seed}")
    # spectrum monotonicity in frequency
    freqs = np.geomspace(1e3, 1e8, 30)
    for seed in range(n_seeds):
        rng = np.random.default_rng(2000 + seed)
        cfg = pn.EnsembleConfig(beta=float(rng.uniform(1.2, 4.0)),
                                e_min=10.0, e_max=3000.0,
                                n_fluctuators=200, seed=seed)
        spec = pn.ensemble_spectrum(pn.sample_ensemble(cfg),
                                    float(rng.uniform(10, 100)), freqs)
        if not np.all(np.diff(spec) <= spec[0] * 1e-12):
            failures.append(f"monotonicity seed {seed}")
    _report(11, "property suites over 100 seeds", not failures,
            "equivariance, idempotence, Parseval, monotonicity all hold"
            if not failures else f"{len(failures)} failures: {failures[:5]}")
