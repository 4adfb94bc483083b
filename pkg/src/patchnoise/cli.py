"""Command-line front end.

Subcommands: simulate, fit, thermometry, predict-alpha, psd, fit-alpha,
extrapolate, reference-table.  All commands are non-interactive, write a
RunManifest next to any produced file, and exit 0 on success, 2 on input
errors, 3 on numerical failures.  Files are strict SI; the human-readable
summaries use the display units 1e-15 V^2/m^2/Hz, MHz and K.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .constants import SR88
from .dataset import NoiseDataset
from .dutta_horn import (DuttaHornParams, ResistivityCurve,
                         calibrated_spectrum, crossover_temperature,
                         johnson_prediction, model_alpha)
from .errors import InputError, NumericalError, PatchNoiseError
from .extrapolation import (CantileverConfig, ScalingLaw,
                            cantilever_field_noise, dc_field_fluctuation,
                            load_comparison_constants, patch_product,
                            scale_noise)
from .fitting import MODELS, FitOptions, fit_dataset
from .fluctuators import EnsembleConfig, ensemble_spectrum, sample_ensemble
from .manifest import RunManifest, manifest_path_for
from .reference import (DEFAULT_SYNTHETIC_SEED, load_reference_table,
                        synthetic_arrhenius_dataset,
                        synthetic_temp_scaling_dataset)
from .spectral import WINDOWS, PsdEstimate, estimate_psd, fit_alpha
from .thermometry import (SidebandSeries, field_noise_from_heating,
                          heating_rate, rescale_frequency)

S0_DISPLAY = 1e-15


def _parse_grid(spec: str) -> np.ndarray:
    """Parse 'lin:lo:hi:n', 'log:lo:hi:n', or a comma-separated list."""
    spec = spec.strip()
    if spec.startswith(("lin:", "log:")):
        kind, rest = spec.split(":", 1)
        parts = rest.split(":")
        if len(parts) != 3:
            raise InputError(f"grid spec {spec!r}: expected {kind}:lo:hi:n")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1 or not 0 < lo <= hi:
            raise InputError(f"grid spec {spec!r}: need 0 < lo <= hi and n >= 1")
        if kind == "lin":
            return np.linspace(lo, hi, n)
        return np.geomspace(lo, hi, n)
    try:
        values = np.array([float(x) for x in spec.split(",") if x.strip()])
    except ValueError as exc:
        raise InputError(f"grid spec {spec!r}: {exc}") from None
    if values.size == 0:
        raise InputError(f"grid spec {spec!r}: empty")
    return values


def _parse_band(spec: str) -> tuple:
    parts = spec.split(":")
    if len(parts) != 2:
        raise InputError(f"band {spec!r}: expected lo:hi")
    lo, hi = float(parts[0]), float(parts[1])
    if not 0 < lo < hi:
        raise InputError(f"band {spec!r}: need 0 < lo < hi")
    return lo, hi


def _canonical_bytes(doc: dict) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def _write_manifest(args_ns, command: str, config_doc: dict,
                    seed: int | None, output_path) -> None:
    manifest = RunManifest.create(command, _canonical_bytes(config_doc), seed)
    manifest.write(manifest_path_for(output_path))


def _emit_report(report: dict, args, human_lines) -> None:
    if args.output:
        Path(args.output).write_text(json.dumps(report, indent=2) + "\n",
                                     encoding="utf-8")
        _write_manifest(args, args.command, report, getattr(args, "seed", None),
                        args.output)
    if args.quiet:
        return
    if getattr(args, "format", None) == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in human_lines:
            print(line)


# -- simulate ----------------------------------------------------------------

def cmd_simulate(args) -> int:
    cfg = EnsembleConfig.read_json(args.config)
    doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if args.temperatures:
        temps = _parse_grid(args.temperatures)
    elif "temperatures_K" in doc:
        temps = np.asarray([float(x) for x in doc["temperatures_K"]])
    else:
        temps = np.linspace(7.0, 100.0, 13)
    if args.frequencies:
        freqs = _parse_grid(args.frequencies)
    elif "frequencies_Hz" in doc:
        freqs = np.asarray([float(x) for x in doc["frequencies_Hz"]])
    else:
        freqs = np.array([1e6])
    if np.any(temps <= 0) or np.any(freqs <= 0):
        raise InputError("temperatures and frequencies must be > 0")

    ens = sample_ensemble(cfg)
    t_col, f_col, s_col = [], [], []
    for t in temps:
        spec = ensemble_spectrum(ens, float(t), freqs)
        t_col.extend([float(t)] * freqs.size)
        f_col.extend(freqs.tolist())
        s_col.extend(spec.tolist())
    data = NoiseDataset(Path(args.config).stem, np.array(t_col),
                        np.array(f_col), np.array(s_col))
    data.write_csv(args.output)
    config_doc = {"ensemble": cfg.to_json_dict(),
                  "temperatures_K": temps.tolist(),
                  "frequencies_Hz": freqs.tolist()}
    _write_manifest(args, "simulate", config_doc, cfg.seed, args.output)
    if not args.quiet:
        print(f"simulated {len(ens)} fluctuators over {temps.size} temperatures "
              f"x {freqs.size} frequencies -> {args.output}")
    return 0


# -- fit -----------------------------------------------------------------------

_BUILTIN_ALIASES = {
    "i": "I", "ii": "II", "iiia": "III a", "iiib": "III b", "iiic": "III c",
    "iiid": "III d", "iiie": "III e", "iv": "IV",
}


def _load_fit_dataset(args) -> NoiseDataset:
    if args.builtin:
        key = args.builtin.strip().lower().replace(" ", "")
        seed = args.seed if args.seed is not None else DEFAULT_SYNTHETIC_SEED
        if key == "anomaly":
            return synthetic_arrhenius_dataset(seed=seed)
        if key not in _BUILTIN_ALIASES:
            raise InputError(
                f"unknown builtin dataset {args.builtin!r}; "
                f"choose from {', '.join(_BUILTIN_ALIASES)} or anomaly")
        return synthetic_temp_scaling_dataset(_BUILTIN_ALIASES[key], seed=seed)
    return NoiseDataset.read_csv(args.dataset)


def cmd_fit(args) -> int:
    data = _load_fit_dataset(args)
    opts = FitOptions(loss_space=args.loss,
                      bootstrap_resamples=args.bootstrap,
                      bootstrap_seed=args.seed if args.seed is not None else 0)
    fit = fit_dataset(data, args.model, opts)
    report = fit.to_report_dict()
    report["dataset"] = data.label
    p = report["params"]
    e = report["errors_1sigma"]
    if args.model == "temp-scaling":
        human = [
            f"temp-scaling fit of '{data.label}' ({len(data)} points):",
            f"  S0   = {p['s0'] / S0_DISPLAY:9.3f} +- {e['s0'] / S0_DISPLAY:.3f}"
            "  [1e-15 V^2/m^2/Hz]",
            f"  T0   = {p['t0']:9.3f} +- {e['t0']:.3f}  [K]",
            f"  beta = {p['beta']:9.3f} +- {e['beta']:.3f}",
        ]
    else:
        human = [
            f"arrhenius fit of '{data.label}' ({len(data)} points):",
            f"  S0   = {p['s0'] / S0_DISPLAY:9.3f} +- {e['s0'] / S0_DISPLAY:.3f}"
            "  [1e-15 V^2/m^2/Hz]",
            f"  S_T  = {p['s_t'] / S0_DISPLAY:9.3f} +- {e['s_t'] / S0_DISPLAY:.3f}"
            "  [1e-15 V^2/m^2/Hz]",
            f"  T0   = {p['t0']:9.3f} +- {e['t0']:.3f}  [K]",
        ]
    human.append(f"  chi2_reduced = {report['chi2_reduced']:.4g}, "
                 f"{report['iterations']} iterations")
    for w in report["warnings"]:
        human.append(f"  warning: {w}")
    _emit_report(report, args, human)
    return 0


# -- thermometry ---------------------------------------------------------------

def cmd_thermometry(args) -> int:
    series = SidebandSeries.read_csv(args.series, trap_frequency=args.trap_frequency)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        n_dot, n_dot_err = heating_rate(series)
    notes = [str(w.message) for w in caught]
    s_e = field_noise_from_heating(max(n_dot, 0.0), series.trap_frequency, SR88)
    s_e_1mhz = rescale_frequency(s_e, series.trap_frequency, 1e6)
    report = {
        "n_dot": n_dot,
        "n_dot_err": n_dot_err,
        "trap_frequency_Hz": series.trap_frequency,
        "SE_V2m2Hz": s_e,
        "SE_1MHz_V2m2Hz": s_e_1mhz,
        "n_points": len(series.points),
        "warnings": notes,
    }
    human = [
        f"heating rate: {n_dot:.4g} +- {n_dot_err:.2g} quanta/s "
        f"at {series.trap_frequency / 1e6:.4g} MHz",
        f"S_E({series.trap_frequency / 1e6:.4g} MHz) = {s_e:.4g} V^2/m^2/Hz "
        f"({s_e / S0_DISPLAY:.4g} in 1e-15)",
        f"S_E(1 MHz, 1/f rescaled) = {s_e_1mhz:.4g} V^2/m^2/Hz",
    ]
    human.extend(f"warning: {n}" for n in notes)
    _emit_report(report, args, human)
    return 0


# -- predict-alpha ---------------------------------------------------------------

def cmd_predict_alpha(args) -> int:
    p = DuttaHornParams(beta=args.beta, t0=args.t0, s0=args.s0,
                        tau0=args.tau0)
    omega = 2.0 * math.pi * args.freq
    config_doc = {"params": p.to_json_dict(), "freq_Hz": args.freq}
    header = [f"# beta={args.beta!r}", f"# t0_K={args.t0!r}",
              f"# tau0_s={args.tau0!r}", f"# frequency_Hz={args.freq!r}"]
    t1 = None
    if args.beta > 1:
        t1 = crossover_temperature(p)
        header.append(f"# t1_K={t1!r}")
    if args.sxf:
        temps = _parse_grid(args.temperatures) if args.temperatures \
            else np.array([20.0, 40.0, 60.0, 80.0, 100.0])
        f_lo, f_hi = _parse_band(args.band)
        freqs = np.geomspace(f_lo, f_hi, args.band_points)
        lines = header + ["temperature_K,frequency_Hz,sxf"]
        for t in temps:
            s = calibrated_spectrum(p, 2.0 * math.pi * freqs, float(t))
            for f, sv in zip(freqs, np.atleast_1d(s)):
                lines.append(f"{float(t)!r},{float(f)!r},{float(sv * f)!r}")
        config_doc["mode"] = "sxf"
    else:
        temps = _parse_grid(args.temperatures) if args.temperatures \
            else np.linspace(7.0, 100.0, 94)
        if t1 is not None and not np.any(np.isclose(temps, t1)):
            temps = np.sort(np.append(temps, t1))
        lines = header + ["temperature_K,alpha"]
        for t in temps:
            lines.append(f"{float(t)!r},{model_alpha(p, omega, float(t))!r}")
        config_doc["mode"] = "alpha-grid"
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(args, "predict-alpha", config_doc, None, args.output)
    if not args.quiet:
        msg = f"wrote {args.output}"
        if t1 is not None:
            msg += f" (crossover T1 = {t1:.4g} K)"
        print(msg)
    return 0


# -- psd / fit-alpha ---------------------------------------------------------------

def cmd_psd(args) -> int:
    from .fluctuators import TelegraphTrace
    trace = TelegraphTrace.read_csv(args.trace)
    est = estimate_psd(trace, args.segment_length, args.window)
    est.write_csv(args.output)
    config_doc = {"trace": str(args.trace), "segment_length": args.segment_length,
                  "window": args.window}
    _write_manifest(args, "psd", config_doc, None, args.output)
    if not args.quiet:
        print(f"estimated PSD over {est.segments} segments -> {args.output}")
    return 0


def _read_spectrum(path):
    first = ""
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip() and not line.startswith("#"):
                first = line.strip()
                break
    if first == "frequency_Hz,psd":
        return PsdEstimate.read_csv(path)
    return NoiseDataset.read_csv(path)


def cmd_fit_alpha(args) -> int:
    spectrum = _read_spectrum(args.spectrum)
    band = _parse_band(args.band)
    fit = fit_alpha(spectrum, band)
    report = fit.to_report_dict()
    human = [
        f"alpha = {fit.alpha:.4f} +- {fit.alpha_err:.4f} over "
        f"[{band[0] / 1e6:.4g}, {band[1] / 1e6:.4g}] MHz ({fit.n_points} points)",
        f"prefactor = {fit.prefactor:.6g}",
    ]
    _emit_report(report, args, human)
    return 0


# -- extrapolate ---------------------------------------------------------------

def cmd_extrapolate(args) -> int:
    law = ScalingLaw(distance_exponent=args.distance_exponent,
                     frequency_exponent=args.frequency_exponent,
                     reference=args.reference)
    constants = load_comparison_constants()
    s_e = scale_noise(law, args.distance, args.frequency)
    report = {
        "scaling_law": {
            "distance_exponent": law.distance_exponent,
            "frequency_exponent": law.frequency_exponent,
            "reference_V2m2": law.reference,
        },
        "scaled_noise": {
            "distance_m": args.distance,
            "frequency_Hz": args.frequency,
            "SE_V2m2Hz": s_e,
        },
    }
    human = [
        f"S_E({args.distance * 1e9:.4g} nm, {args.frequency / 1e3:.4g} kHz) "
        f"= {s_e:.4g} V^2/m^2/Hz",
    ]
    if law.frequency_exponent == 1.0:
        sigma_e = dc_field_fluctuation(law, args.distance, args.tau, args.tau0)
        product = patch_product(sigma_e, args.distance)
        static = constants["static_field_1um"]
        contact = constants["contact_potential_patch_product"]
        report["dc_fluctuation"] = {
            "tau_s": args.tau,
            "tau0_s": args.tau0,
            "sigma_E_Vm": sigma_e,
            "static_reference_Vm": static["value"],
            "static_reference_source": static["source"],
            "static_mismatch_ratio": static["value"] / sigma_e,
        }
        report["patch_product"] = {
            "sigma_V2_A_V2m2": product,
            "contact_reference_V2m2": contact["value"],
            "contact_reference_source": contact["source"],
            "contact_mismatch_ratio": contact["value"] / product,
        }
        human.append(
            f"sigma_E({args.distance * 1e6:.4g} um, tau={args.tau:.4g} s) "
            f"= {sigma_e:.4g} V/m   [static probes report "
            f"{static['value']:.4g} V/m: mismatch x{static['value'] / sigma_e:.3g}]")
        human.append(
            f"sigma_V^2 A = {product:.4g} V^2 m^2   [contact probes report "
            f"{contact['value']:.4g}: mismatch x{contact['value'] / product:.3g}]")
    else:
        human.append("dc extrapolation skipped: frequency exponent != 1")
    if args.gamma is not None:
        missing = [n for n in ("capacitance", "voltage", "temperature")
                   if getattr(args, n) is None]
        if missing:
            raise InputError(f"cantilever conversion needs --{', --'.join(missing)}")
        cfg = CantileverConfig(gamma=args.gamma, capacitance=args.capacitance,
                               voltage=args.voltage, temperature=args.temperature)
        s_cant = cantilever_field_noise(cfg)
        ratio = s_cant / s_e if s_e > 0 else math.inf
        report["cantilever"] = {
            "gamma_kg_s": cfg.gamma, "capacitance_F": cfg.capacitance,
            "voltage_V": cfg.voltage, "temperature_K": cfg.temperature,
            "SE_V2m2Hz": s_cant,
            "ratio_to_scaled_noise": ratio,
        }
        human.append(f"cantilever S_E = {s_cant:.4g} V^2/m^2/Hz "
                     f"(x{ratio:.3g} of the scaled trap value)")
    if args.johnson_resistivity:
        curve = ResistivityCurve.read_csv(args.johnson_resistivity)
        if args.johnson_temperatures:
            grid = _parse_grid(args.johnson_temperatures)
        else:
            lo = max(20.0, float(curve.temperatures[0]))
            hi = min(100.0, float(curve.temperatures[-1]))
            if not lo < hi:
                raise InputError("resistivity curve does not cover the "
                                 "default 20-100 K comparison window")
            grid = np.linspace(lo, hi, 17)
        pred = johnson_prediction(curve, grid)
        slope = float(np.polyfit(np.log(pred.temperature), np.log(pred.s_e), 1)[0])
        gaps = {r.label: r.beta - slope
                for r in load_reference_table().rows if r.beta >= 3.0}
        report["johnson_model"] = {
            "temperatures_K": pred.temperature.tolist(),
            "shape": pred.s_e.tolist(),
            "log_log_slope": slope,
            "beta_minus_slope": gaps,
        }
        human.append(
            f"Johnson-model slope d(ln S)/d(ln T) = {slope:.3f}; measured "
            f"exponents of the steep datasets exceed it by "
            f"{min(gaps.values()):.2f} to {max(gaps.values()):.2f}")
    _emit_report(report, args, human)
    return 0


# -- reference-table ---------------------------------------------------------------

def cmd_reference_table(args) -> int:
    table = load_reference_table()
    if args.format == "json":
        rows = [{
            "label": r.label, "s0": r.s0, "s0_err": r.s0_err,
            "t0_K": r.t0, "t0_err_K": r.t0_err,
            "beta": r.beta, "beta_err": r.beta_err, "note": r.note,
        } for r in table.rows]
        text = json.dumps({"unit_s0": "1e-15 V^2/m^2/Hz", "rows": rows}, indent=2)
    else:
        lines = ["label,S0_1e-15_V2m2Hz,S0_err,T0_K,T0_err,beta,beta_err,note"]
        for r in table.rows:
            lines.append(f"{r.label},{r.s0!r},{r.s0_err!r},{r.t0!r},{r.t0_err!r},"
                         f"{r.beta!r},{r.beta_err!r},{r.note}")
        text = "\n".join(lines)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        _write_manifest(args, "reference-table", {"format": args.format},
                        None, args.output)
    if not args.quiet:
        print(text)
    return 0


# -- parser ---------------------------------------------------------------

def _add_common(sub, output_required=False, fmt_choices=None, fmt_default=None):
    sub.add_argument("--output", "-o", required=output_required,
                     help="output file path" + ("" if output_required else
                                                " (default: stdout report only)"))
    sub.add_argument("--seed", type=int, default=None, help="override seed")
    if fmt_choices:
        sub.add_argument("--format", choices=fmt_choices, default=fmt_default,
                         help="stdout format")
    else:
        sub.set_defaults(format=None)
    sub.add_argument("--quiet", "-q", action="store_true",
                     help="suppress stdout summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patchnoise",
        description="Surface electric-field noise modelling toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command")

    p = subs.add_parser("simulate", help="fluctuator-ensemble noise spectra")
    p.add_argument("--config", "-c", required=True, help="EnsembleConfig JSON")
    p.add_argument("--temperatures", help="grid: lin:lo:hi:n | log:lo:hi:n | list")
    p.add_argument("--frequencies", help="grid: lin:lo:hi:n | log:lo:hi:n | list")
    _add_common(p, output_required=True)
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("fit", help="fit a temperature-scaling model to a dataset")
    p.add_argument("--dataset", "-d", help="NoiseDataset CSV path")
    p.add_argument("--builtin", "-b",
                   help="bundled synthetic dataset: I, II, IIIa..IIIe, IV, anomaly")
    p.add_argument("--model", "-m", choices=MODELS, default="temp-scaling")
    p.add_argument("--loss", choices=("log", "linear"), default="log")
    p.add_argument("--bootstrap", type=int, default=0,
                   help="residual bootstrap resamples for the covariance")
    _add_common(p, fmt_choices=("json", "text"), fmt_default="text")
    p.set_defaults(func=cmd_fit)

    p = subs.add_parser("thermometry",
                        help="heating rate and field noise from a sideband series")
    p.add_argument("--series", "-s", required=True, help="SidebandSeries CSV")
    p.add_argument("--trap-frequency", "-f", type=float, required=True,
                   help="trap frequency in Hz")
    _add_common(p, fmt_choices=("json", "text"), fmt_default="text")
    p.set_defaults(func=cmd_thermometry)

    p = subs.add_parser("predict-alpha",
                        help="model frequency exponent alpha(T) and crossover")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--t0", type=float, required=True, help="knee temperature in K")
    p.add_argument("--s0", type=float, default=1.0, help="plateau scale")
    p.add_argument("--tau0", type=float, default=1e-12, help="attempt time in s")
    p.add_argument("--freq", type=float, default=1e6, help="evaluation frequency in Hz")
    p.add_argument("--temperatures", help="grid spec for T")
    p.add_argument("--sxf", action="store_true",
                   help="emit S(f)*f against f instead of the alpha grid")
    p.add_argument("--band", default="0.6e6:1.5e6", help="frequency band lo:hi for --sxf")
    p.add_argument("--band-points", type=int, default=25)
    _add_common(p, output_required=True)
    p.set_defaults(func=cmd_predict_alpha)

    p = subs.add_parser("psd", help="averaged-periodogram PSD of a trace CSV")
    p.add_argument("--trace", "-t", required=True, help="trace CSV (time_s,value)")
    p.add_argument("--segment-length", "-n", type=int, required=True,
                   help="segment length, power of two")
    p.add_argument("--window", choices=WINDOWS, default="hann")
    _add_common(p, output_required=True)
    p.set_defaults(func=cmd_psd)

    p = subs.add_parser("fit-alpha", help="fit S ~ f^-alpha over a band")
    p.add_argument("--spectrum", "-s", required=True,
                   help="PSD CSV (frequency_Hz,psd) or NoiseDataset CSV")
    p.add_argument("--band", required=True, help="frequency band lo:hi in Hz")
    _add_common(p, fmt_choices=("json", "text"), fmt_default="text")
    p.set_defaults(func=cmd_fit_alpha)

    p = subs.add_parser("extrapolate",
                        help="compare the scaling law with other probe systems")
    p.add_argument("--distance", type=float, default=100e-9, help="distance in m")
    p.add_argument("--frequency", type=float, default=10e3, help="frequency in Hz")
    p.add_argument("--tau", type=float, default=1.0, help="averaging time in s")
    p.add_argument("--tau0", type=float, default=1e-12, help="attempt time in s")
    p.add_argument("--reference", type=float, default=1e-21,
                   help="S_E * f * d^4 reference in V^2 m^2")
    p.add_argument("--distance-exponent", type=float, default=4.0)
    p.add_argument("--frequency-exponent", type=float, default=1.0)
    p.add_argument("--gamma", type=float, help="cantilever damping rate in kg/s")
    p.add_argument("--capacitance", type=float, help="tip-surface capacitance in F")
    p.add_argument("--voltage", type=float, help="tip-surface voltage in V")
    p.add_argument("--temperature", type=float, help="cantilever temperature in K")
    p.add_argument("--johnson-resistivity", metavar="CSV",
                   help="resistivity table (temperature_K,rho_ohm_m) to add a "
                        "thermal-voltage model comparison")
    p.add_argument("--johnson-temperatures", help="grid spec for that comparison")
    _add_common(p, fmt_choices=("json", "text"), fmt_default="text")
    p.set_defaults(func=cmd_extrapolate)

    p = subs.add_parser("reference-table", help="embedded reference fit parameters")
    _add_common(p, fmt_choices=("csv", "json"), fmt_default="csv")
    p.set_defaults(func=cmd_reference_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 2
    try:
        return args.func(args)
    except (InputError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"patchnoise {args.command}: input error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"patchnoise {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3
    except PatchNoiseError as exc:
        print(f"patchnoise {args.command}: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
